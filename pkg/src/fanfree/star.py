"""The m-star puzzle: arrows on a convex m-gon, combinatorial crossing,
fan-freeness, arrow classification, and exact maximum-arrow search.

Conventions (all indices 0-based, mod m): vertices v_0..v_{m-1} are
counterclockwise, boundary edge e_j joins v_j and v_{j+1}.  An arrow is
(start, exit, slot): it starts at vertex ``start``, leaves through edge
``exit`` (which must not be incident to the start vertex), and ``slot``
ranks its endpoint among all endpoints on that edge, counted from v_exit.

Two arrows sharing their start vertex never cross; otherwise crossing is
decided purely by whether their endpoint pairs interleave along the
refined boundary cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import Graph, StraightLineDrawing
from . import crossings as _cr


@dataclass(frozen=True)
class StarConfig:
    m: int
    arrows: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "arrows", tuple((int(s), int(e), int(t)) for s, e, t in self.arrows)
        )


def legal_exit(m: int, start: int, exit: int) -> bool:
    return exit not in (start % m, (start - 1) % m)


def validate_star(s: StarConfig) -> str | None:
    if s.m < 3:
        return f"m must be >= 3, got {s.m}"
    per_edge: dict[int, list[int]] = {}
    for idx, (a, e, slot) in enumerate(s.arrows):
        if not (0 <= a < s.m and 0 <= e < s.m):
            return f"arrow {idx} = ({a}, {e}, {slot}) out of range"
        if not legal_exit(s.m, a, e):
            return f"arrow {idx} exits through edge {e} incident to its start {a}"
        per_edge.setdefault(e, []).append(slot)
    for e, slots in per_edge.items():
        if sorted(slots) != list(range(len(slots))):
            return f"slots on edge {e} are not a permutation of 0..{len(slots) - 1}"
    return None


def edge_order(s: StarConfig) -> dict[int, list[int]]:
    """Arrow indices on each boundary edge, in slot order."""
    per: dict[int, list[tuple[int, int]]] = {}
    for idx, (_a, e, slot) in enumerate(s.arrows):
        per.setdefault(e, []).append((slot, idx))
    return {e: [i for _sl, i in sorted(v)] for e, v in per.items()}


def refined_cycle(s: StarConfig) -> tuple[tuple[str, int], ...]:
    """Cyclic point order v_0, endpoints on e_0, v_1, endpoints on e_1, ..."""
    per = edge_order(s)
    out: list[tuple[str, int]] = []
    for v in range(s.m):
        out.append(("v", v))
        for idx in per.get(v, []):
            out.append(("a", idx))
    return tuple(out)


def _arrow_keys(s: StarConfig):
    """Each arrow's two cyclic position keys.

    Vertex v gets key (v, 0); the slot-t endpoint on edge e gets
    (e, 2t + 2), which sorts between (e, 0) and (e + 1, 0).
    """
    keys = []
    for a, e, slot in s.arrows:
        keys.append(((a, 0), (e, 2 * slot + 2)))
    return keys


def _in_arc(x, lo, hi) -> bool:
    if lo < hi:
        return lo < x < hi
    return x > lo or x < hi


def _interleaved(a1, a2, b1, b2) -> bool:
    return _in_arc(b1, a1, a2) != _in_arc(b2, a1, a2)


def arrows_cross(s: StarConfig, a: int, b: int) -> bool:
    """Combinatorial crossing of two arrows (same-start arrows never cross)."""
    if a == b:
        raise ValueError("an arrow does not cross itself")
    if s.arrows[a][0] == s.arrows[b][0]:
        return False
    keys = _arrow_keys(s)
    return _interleaved(keys[a][0], keys[a][1], keys[b][0], keys[b][1])


def arrow_length(s: StarConfig, a: int) -> int:
    """Number of vertices on the shorter boundary chain cut off by arrow a."""
    start, exit, _ = s.arrows[a]
    ccw = (exit - start) % s.m
    cw = (start - exit - 1) % s.m
    return min(ccw, cw)


def is_short(s: StarConfig, a: int) -> bool:
    return arrow_length(s, a) == 1


def short_arrow_witness(s: StarConfig, a: int) -> int:
    """The unique vertex on a short arrow's short side.

    For m = 3 both chains have one vertex; the counterclockwise side wins.
    """
    start, exit, _ = s.arrows[a]
    ccw = (exit - start) % s.m
    cw = (start - exit - 1) % s.m
    if min(ccw, cw) != 1:
        raise ValueError(f"arrow {a} is long (length {min(ccw, cw)})")
    if ccw == 1:
        return (start + 1) % s.m
    return (start - 1) % s.m


@dataclass(frozen=True)
class StarFan:
    """A fan-crossing inside a star: ``crosser`` crosses ``members`` at ``apex``.

    Objects are ("arrow", index) or ("edge", boundary edge index).
    """

    crosser: tuple[str, int]
    apex: int
    members: tuple[tuple[str, int], ...]


def _object_sort_key(m: int, obj: tuple[str, int]) -> int:
    kind, idx = obj
    return idx if kind == "edge" else m + idx


def fan_witnesses(s: StarConfig, k: int) -> list[StarFan]:
    """Every (crosser, apex) whose crossed-object count at apex reaches k.

    An arrow crosses the arrows its endpoints interleave with, plus its own
    exit edge.  A boundary edge crosses exactly the arrows leaving through
    it.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    m = s.m
    n_arr = len(s.arrows)
    keys = _arrow_keys(s)
    cross = [[False] * n_arr for _ in range(n_arr)]
    for a in range(n_arr):
        for b in range(a + 1, n_arr):
            if s.arrows[a][0] != s.arrows[b][0] and _interleaved(
                keys[a][0], keys[a][1], keys[b][0], keys[b][1]
            ):
                cross[a][b] = cross[b][a] = True
    out = []
    for a in range(n_arr):
        exit = s.arrows[a][1]
        per_vertex: dict[int, list[tuple[str, int]]] = {}
        for b in range(n_arr):
            if cross[a][b]:
                per_vertex.setdefault(s.arrows[b][0], []).append(("arrow", b))
        for v in (exit, (exit + 1) % m):
            per_vertex.setdefault(v, []).append(("edge", exit))
        for v in sorted(per_vertex):
            objs = per_vertex[v]
            if len(objs) >= k:
                objs.sort(key=lambda o: _object_sort_key(m, o))
                out.append(StarFan(("arrow", a), v, tuple(objs[:k])))
    for e in range(m):
        per_start: dict[int, list[tuple[str, int]]] = {}
        for b in range(n_arr):
            if s.arrows[b][1] == e:
                per_start.setdefault(s.arrows[b][0], []).append(("arrow", b))
        for v in sorted(per_start):
            objs = per_start[v]
            if len(objs) >= k:
                objs.sort(key=lambda o: _object_sort_key(m, o))
                out.append(StarFan(("edge", e), v, tuple(objs[:k])))
    return out


def is_fan_free(s: StarConfig, k: int) -> bool:
    return not fan_witnesses(s, k)


# ---------------------------------------------------------------------------
# Vertex classification (heavy / left-light / right-light / void)

HEAVY = "heavy"
LEFT_LIGHT = "left-light"
RIGHT_LIGHT = "right-light"
VOID = "void"


@dataclass(frozen=True)
class VertexClasses:
    tags: tuple[str, ...]
    h: int
    lam: int
    nu: int

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.h, self.lam, self.nu)


def _arrow_matrix(s: StarConfig):
    deg = [0] * s.m
    a_ij = [[0] * s.m for _ in range(s.m)]
    for start, exit, _slot in s.arrows:
        deg[start] += 1
        a_ij[start][exit] += 1
    return deg, a_ij


def classify_vertices(s: StarConfig) -> VertexClasses:
    """Tag vertices by the zero-degree run rule.

    A maximal run of zero-degree vertices v_s..v_{s+t-1} is all left-light
    when no short arrow from the vertex before the run passes over its first
    vertex; failing that, all right-light when no short arrow from the
    vertex after the run passes over its last vertex; failing both, the
    first t-1 are (right-)light and the run's last vertex is void.  A star
    with no arrows at all is all left-light (every condition holds
    vacuously).
    """
    m = s.m
    deg, a_ij = _arrow_matrix(s)
    tags = [HEAVY if deg[v] > 0 else None for v in range(m)]
    if all(d == 0 for d in deg):
        return VertexClasses(tuple([LEFT_LIGHT] * m), 0, m, 0)
    runs = []
    for v0 in range(m):
        if deg[v0] == 0 and deg[(v0 - 1) % m] > 0:
            t = 0
            while deg[(v0 + t) % m] == 0:
                t += 1
            runs.append((v0, t))
    for v0, t in runs:
        pred = (v0 - 1) % m
        succ = (v0 + t) % m
        last = (v0 + t - 1) % m
        if a_ij[pred][v0] == 0:
            for i in range(t):
                tags[(v0 + i) % m] = LEFT_LIGHT
        elif a_ij[succ][(last - 1) % m] == 0:
            for i in range(t):
                tags[(v0 + i) % m] = RIGHT_LIGHT
        else:
            for i in range(t - 1):
                tags[(v0 + i) % m] = RIGHT_LIGHT
            tags[last] = VOID
    assert all(tag is not None for tag in tags)
    h = tags.count(HEAVY)
    lam = tags.count(LEFT_LIGHT) + tags.count(RIGHT_LIGHT)
    nu = tags.count(VOID)
    return VertexClasses(tuple(tags), h, lam, nu)


def bound_b(h: int, lam: int, nu: int, k: int) -> int:
    """Closed-form arrow bound (3k-5)h + k*lam + (2k-3)*nu - (6k-9)."""
    if k < 3:
        raise ValueError(f"the classified bound needs k >= 3, got {k}")
    if h < 2:
        raise ValueError(f"the classified bound needs h >= 2, got {h}")
    if lam < 0 or nu < 0:
        raise ValueError("negative class counts")
    return (3 * k - 5) * h + k * lam + (2 * k - 3) * nu - (6 * k - 9)


# ---------------------------------------------------------------------------
# Transforms and helpers used by tests and the search

def rotate_star(s: StarConfig, r: int) -> StarConfig:
    arrows = tuple(((a + r) % s.m, (e + r) % s.m, t) for a, e, t in s.arrows)
    return StarConfig(s.m, tuple(sorted(arrows)))


def reflect_star(s: StarConfig) -> StarConfig:
    """Mirror image: vertex i -> -i, edge j -> -(j+1), slot order reversed."""
    m = s.m
    per = edge_order(s)
    arrows = []
    for idx, (a, e, _t) in enumerate(s.arrows):
        cnt = len(per[e])
        rank = per[e].index(idx)
        arrows.append(((-a) % m, (-e - 1) % m, cnt - 1 - rank))
    return StarConfig(m, tuple(sorted(arrows)))


def sub_star(s: StarConfig, keep: list[int]) -> StarConfig:
    """Restriction to a subset of arrows, slots re-ranked."""
    per = edge_order(s)
    kept = set(keep)
    arrows = []
    for e, order in per.items():
        rank = 0
        for idx in order:
            if idx in kept:
                arrows.append((s.arrows[idx][0], e, rank))
                rank += 1
    return StarConfig(s.m, tuple(sorted(arrows)))


def canonical_form(s: StarConfig) -> tuple:
    """Minimal arrow tuple over all rotations (reflection left alone)."""
    return min(rotate_star(s, r).arrows for r in range(s.m))


def realize_star(s: StarConfig, salt: int = 0) -> StraightLineDrawing:
    """Geometric realization: polygon on a rational circle, arrows drawn as
    segments extended just beyond their exit edge.

    The extension factor shrinks until the drawing is simple and every
    arrow segment properly crosses exactly its own exit edge; the arrow to
    arrow crossing pattern is whatever the geometry says, which is what the
    soundness tests compare against.
    """
    m = s.m
    # rational points on the unit circle, ccw by the tan-half parametrisation
    ts = [Fraction(2 * i - (m - 1), m + 1 + salt) * 3 for i in range(m)]
    poly = []
    for t in ts:
        den = 1 + t * t
        poly.append(((1 - t * t) / den, 2 * t / den))
    per = edge_order(s)
    exit_pts = {}
    for e, order in per.items():
        cnt = len(order)
        u = poly[e]
        v = poly[(e + 1) % m]
        for rank, idx in enumerate(order):
            lam = Fraction(rank + 1, cnt + 1)
            exit_pts[idx] = (u[0] + lam * (v[0] - u[0]), u[1] + lam * (v[1] - u[1]))
    eps = Fraction(1, 16)
    for _attempt in range(40):
        coords = list(poly)
        edges = [(i, (i + 1) % m) for i in range(m)]
        for idx, (a, e, _t) in enumerate(s.arrows):
            sx, sy = poly[a]
            qx, qy = exit_pts[idx]
            coords.append((qx + eps * (qx - sx), qy + eps * (qy - sy)))
            edges.append((a, m + idx))
        drawing = StraightLineDrawing(Graph(m + len(s.arrows), tuple(edges)), tuple(coords))
        if _cr.validate_simplicity(drawing).ok:
            rel = _cr.compute_crossings(drawing)
            good = True
            for idx, (a, e, _t) in enumerate(s.arrows):
                hits = [x for x in rel.crossed_by(m + idx) if x < m]
                if hits != [e]:
                    good = False
                    break
            if good:
                return drawing
        eps /= 2
    raise RuntimeError("could not realize star configuration exactly")


# ---------------------------------------------------------------------------
# Exact maximum-arrow search

class InconclusiveError(RuntimeError):
    """Search node budget exhausted; the reported maximum would be unsafe."""

    def __init__(self, nodes: int, best: int | None):
        super().__init__(f"search inconclusive after {nodes} nodes (best seen: {best})")
        self.nodes = nodes
        self.best = best


@dataclass(frozen=True)
class SearchResult:
    maximum: int | None
    configs: tuple[StarConfig, ...]
    nodes: int


class _Search:
    """Exhaustive DFS over fan-free star configurations.

    Arrows are added in nondecreasing (start, exit) order with at most k-1
    copies per pair; every slot gap is branched on.  Cyclic symmetry is
    broken by forcing the lexicographically first arrow to start at v_0.
    Subtrees are pruned against the incumbent using the remaining capacity
    of still-insertable pairs; a pair that fails at every gap stays dead for
    the whole subtree (supersets keep the blocking fan).
    """

    def __init__(self, m, k, pairs, target_class, budget, max_witnesses):
        self.m = m
        self.k = k
        self.pairs = pairs
        self.target = target_class
        self.budget = budget
        self.max_witnesses = max_witnesses
        self.maxmult = k - 1
        self.nodes = 0
        self.best = -1
        self.witnesses: list[tuple] = []
        self.starts: list[int] = []
        self.exits: list[int] = []
        self.counts: list[list[int]] = []
        self.cross_sets: list[list[int]] = []
        self.edge_pts: list[list[int]] = [[] for _ in range(m)]
        self.mult = [0] * len(pairs)
        self.dead = [False] * len(pairs)
        self.deg = [0] * m
        self.a_ij = [[0] * m for _ in range(m)]

    # -- classification on the live arrays (mirrors classify_vertices)

    def _class_counts(self):
        m, deg, a_ij = self.m, self.deg, self.a_ij
        if not self.starts:
            return (0, m, 0)
        h = lam = nu = 0
        for v0 in range(m):
            if deg[v0] > 0:
                h += 1
                continue
            if deg[(v0 - 1) % m] > 0:
                t = 0
                while deg[(v0 + t) % m] == 0:
                    t += 1
                pred = (v0 - 1) % m
                succ = (v0 + t) % m
                last = (v0 + t - 1) % m
                if a_ij[pred][v0] == 0 or a_ij[succ][(last - 1) % m] == 0:
                    lam += t
                else:
                    lam += t - 1
                    nu += 1
        return (h, lam, nu)

    def _snapshot(self) -> StarConfig:
        arrows = []
        for e in range(self.m):
            for rank, aid in enumerate(self.edge_pts[e]):
                arrows.append((self.starts[aid], e, rank))
        return StarConfig(self.m, tuple(sorted(arrows)))

    def _record(self):
        if self.target is not None and self._class_counts() != self.target:
            return
        count = len(self.starts)
        if count > self.best:
            self.best = count
            self.witnesses = [self._snapshot()]
        elif count == self.best and len(self.witnesses) < self.max_witnesses:
            snap = self._snapshot()
            if snap not in self.witnesses:
                self.witnesses.append(snap)

    def _try_insert(self, s, e, gap):
        """Crossing set and per-vertex counts if feasible, else None."""
        k, m = self.k, self.m
        key_s = (s, 0)
        key_q = (e, 2 * gap + 1)
        crosses = []
        cx = [0] * m
        for b in range(len(self.starts)):
            sb = self.starts[b]
            if sb == s:
                continue
            eb = self.exits[b]
            kb2 = (eb, 2 * self.edge_pts[eb].index(b) + 2)
            if _interleaved(key_s, key_q, (sb, 0), kb2):
                crosses.append(b)
                cx[sb] += 1
        e2 = (e + 1) % m
        for v in range(m):
            if cx[v] + (1 if v in (e, e2) else 0) >= k:
                return None
        for b in crosses:
            eb = self.exits[b]
            inc = 1 if s in (eb, (eb + 1) % m) else 0
            if self.counts[b][s] + 1 + inc >= k:
                return None
        return crosses, cx

    def _apply(self, s, e, gap, crosses, cx):
        aid = len(self.starts)
        self.starts.append(s)
        self.exits.append(e)
        self.counts.append(cx)
        self.cross_sets.append(crosses)
        self.edge_pts[e].insert(gap, aid)
        for b in crosses:
            self.counts[b][s] += 1
        self.deg[s] += 1
        self.a_ij[s][e] += 1
        return aid

    def _undo(self, aid, e):
        s = self.starts[aid]
        for b in self.cross_sets[aid]:
            self.counts[b][s] -= 1
        self.edge_pts[e].remove(aid)
        self.starts.pop()
        self.exits.pop()
        self.counts.pop()
        self.cross_sets.pop()
        self.deg[s] -= 1
        self.a_ij[s][e] -= 1

    def run(self, first_limit):
        self._record()
        self._dfs(0, first_limit)
        maximum = self.best if self.best >= 0 else None
        configs = self.witnesses if maximum is not None else []
        return SearchResult(maximum, tuple(configs), self.nodes)

    def _dfs(self, lo, limit):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise InconclusiveError(self.nodes, self.best if self.best >= 0 else None)
        pairs = self.pairs
        cap = 0
        for j in range(lo, limit):
            if not self.dead[j]:
                cap += self.maxmult - self.mult[j]
        # capacity ignores pairs past the first-arrow limit only at the root,
        # where the tail is symmetric to an explored branch anyway
        if limit < len(pairs):
            for j in range(limit, len(pairs)):
                if not self.dead[j]:
                    cap += self.maxmult - self.mult[j]
        count = len(self.starts)
        marked = []
        for idx in range(lo, limit):
            if self.dead[idx]:
                continue
            avail = self.maxmult - self.mult[idx]
            if avail == 0:
                continue
            if count + cap <= self.best:
                break
            s, e = pairs[idx]
            pts = self.edge_pts[e]
            gap_lo = 0
            for pos in range(len(pts) - 1, -1, -1):
                b = pts[pos]
                if self.starts[b] == s and self.exits[b] == e:
                    gap_lo = pos + 1
                    break
            inserted = False
            for gap in range(gap_lo, len(pts) + 1):
                feas = self._try_insert(s, e, gap)
                if feas is None:
                    continue
                inserted = True
                crosses, cx = feas
                self.mult[idx] += 1
                aid = self._apply(s, e, gap, crosses, cx)
                self._record()
                self._dfs(idx, len(pairs))
                self._undo(aid, e)
                self.mult[idx] -= 1
            if not inserted:
                self.dead[idx] = True
                marked.append(idx)
            # later arrows at this node use pairs > idx only
            cap -= avail
        for idx in marked:
            self.dead[idx] = False


def legal_pairs(m: int, long_only: bool = False) -> list[tuple[int, int]]:
    out = []
    for s in range(m):
        for e in range(m):
            if not legal_exit(m, s, e):
                continue
            if long_only and min((e - s) % m, (s - e - 1) % m) < 2:
                continue
            out.append((s, e))
    return out


def max_arrows(
    m: int,
    k: int,
    *,
    long_only: bool = False,
    vertex_class: tuple[int, int, int] | None = None,
    budget: int | None = None,
    max_witnesses: int = 16,
) -> SearchResult:
    """Exact maximum number of arrows over fan-free m-stars.

    ``long_only`` restricts to configurations of long arrows only;
    ``vertex_class`` restricts to configurations whose derived
    (heavy, light, void) counts equal the given triple.  The maximum is
    None when no configuration satisfies the filter.  Exceeding ``budget``
    search nodes raises InconclusiveError rather than returning anything.
    """
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if vertex_class is not None:
        if long_only:
            raise ValueError("choose one filter: long_only or vertex_class")
        if sum(vertex_class) != m or min(vertex_class) < 0:
            raise ValueError(f"class counts {vertex_class} do not partition m={m}")
    pairs = legal_pairs(m, long_only)
    first_limit = sum(1 for s, _e in pairs if s == 0)
    search = _Search(m, k, pairs, vertex_class, budget, max_witnesses)
    return search.run(first_limit)


BASE_CASE_ROWS: tuple[tuple[int, int, int], ...] = (
    (3, 0, 0),
    (2, 0, 1),
    (2, 1, 0),
    (4, 0, 0),
    (3, 0, 1),
    (3, 1, 0),
    (2, 0, 2),
    (2, 1, 1),
    (2, 2, 0),
)


def base_case_formula(h: int, lam: int, nu: int, k: int) -> int:
    """Published exact values for the nine triangle/quadrilateral classes."""
    table = {
        (3, 0, 0): 3 * k - 6,
        (2, 0, 1): 2 * k - 4,
        (2, 1, 0): k - 1,
        (4, 0, 0): 5 * k - 9,
        (3, 0, 1): 4 * k - 6,
        (3, 1, 0): 3 * k - 5,
        (2, 0, 2): 4 * k - 8,
        (2, 1, 1): 3 * k - 5,
        (2, 2, 0): 2 * k - 2,
    }
    return table[(h, lam, nu)]


@dataclass(frozen=True)
class BaseCaseRow:
    h: int
    lam: int
    nu: int
    searched: int | None
    formula: int
    match: bool


def verify_base_cases(k: int, budget: int | None = None) -> list[BaseCaseRow]:
    """Run the class-constrained search for the nine small classes and
    compare each exact maximum with its closed form."""
    if k < 3:
        raise ValueError(f"base cases are defined for k >= 3, got {k}")
    rows = []
    for h, lam, nu in BASE_CASE_ROWS:
        res = max_arrows(h + lam + nu, k, vertex_class=(h, lam, nu), budget=budget)
        formula = base_case_formula(h, lam, nu, k)
        rows.append(
            BaseCaseRow(h, lam, nu, res.maximum, formula, res.maximum == formula)
        )
    return rows
