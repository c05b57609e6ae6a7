"""Deterministic generators for the extremal and lower-bound families.

Every generator verifies its own output with the exact checkers before
returning (simple graph, simplicity of coordinates where present, the
expected crossing pattern, and fan-freeness at the family's k).  A
verification failure is a construction bug or a falsification and raises.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .model import (
    AbstractDrawing,
    CrossingRelation,
    Graph,
    StraightLineDrawing,
    validate_graph,
)
from .crossings import compute_crossings, find_k_fans, validate_simplicity


class ConstructionError(RuntimeError):
    """A generator's self-verification failed."""


def _check(cond: bool, what: str):
    if not cond:
        raise ConstructionError(f"self-verification failed: {what}")


def is_bipartite(n: int, edges) -> bool:
    color = [-1] * n
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for s in range(n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


# ---------------------------------------------------------------------------
# Quadrangulation-plus-diagonals family (4n-8 edges, combinatorial output)

def quad_extremal_parts(n: int):
    """Quadrangulation skeleton for the 4n-8 family: (Q edges, faces).

    Faces are 4-tuples in cyclic order.  n = 8 uses nested squares; even
    n >= 10 uses two poles and an equatorial zig-zag; odd n >= 11 splits
    the north pole of the even construction one size down.
    """
    if not (n == 8 or n >= 10):
        raise ValueError(
            f"no fan-crossing free graph with 4n-8 edges exists for n={n}; "
            "the family is defined for n = 8 and n >= 10"
        )
    if n == 8:
        a = [0, 1, 2, 3]
        b = [4, 5, 6, 7]
        q_edges = [(a[i], a[(i + 1) % 4]) for i in range(4)]
        q_edges += [(b[i], b[(i + 1) % 4]) for i in range(4)]
        q_edges += [(a[i], b[i]) for i in range(4)]
        faces = [(a[i], a[(i + 1) % 4], b[(i + 1) % 4], b[i]) for i in range(4)]
        faces.append((b[0], b[1], b[2], b[3]))
        faces.append((a[0], a[1], a[2], a[3]))
        return q_edges, faces
    if n % 2 == 0:
        t = (n - 2) // 2
        N, S = 0, 1
        u = [2 + 2 * i for i in range(t)]
        w = [3 + 2 * i for i in range(t)]
        q_edges = [(N, u[i]) for i in range(t)]
        q_edges += [(S, w[i]) for i in range(t)]
        q_edges += [(u[i], w[i]) for i in range(t)]
        q_edges += [(w[i], u[(i + 1) % t]) for i in range(t)]
        faces = [(N, u[i], w[i], u[(i + 1) % t]) for i in range(t)]
        faces += [(S, w[i], u[(i + 1) % t], w[(i + 1) % t]) for i in range(t)]
        return q_edges, faces
    # odd n: even construction on n-1 vertices, then split the north pole
    t = (n - 3) // 2
    N1, S, N2 = 0, 1, n - 1
    u = [2 + 2 * i for i in range(t)]
    w = [3 + 2 * i for i in range(t)]
    c = 2  # u[c] and u[0] stay shared between the two pole copies
    q_edges = [(N1, u[i]) for i in range(c + 1)]
    q_edges += [(N2, u[i]) for i in range(c, t)] + [(N2, u[0])]
    q_edges += [(S, w[i]) for i in range(t)]
    q_edges += [(u[i], w[i]) for i in range(t)]
    q_edges += [(w[i], u[(i + 1) % t]) for i in range(t)]
    faces = [(N1, u[i], w[i], u[i + 1]) for i in range(c)]
    faces += [(N2, u[i], w[i], u[(i + 1) % t]) for i in range(c, t)]
    faces += [(S, w[i], u[(i + 1) % t], w[(i + 1) % t]) for i in range(t)]
    faces.append((N1, u[c], N2, u[0]))
    return q_edges, faces


def gen_quad_extremal(n: int) -> AbstractDrawing:
    """Fan-crossing free drawing with exactly 4n-8 edges (n = 8 or n >= 10):
    a quadrilateral-faced skeleton plus both diagonals of every face, drawn
    so that the only crossings are the diagonal pairs inside each face."""
    q_edges, faces = quad_extremal_parts(n)
    edges = list(q_edges)
    pairs = set()
    for p, q, r, s in faces:
        i1 = len(edges)
        edges.append((p, r))
        i2 = len(edges)
        edges.append((q, s))
        pairs.add((i1, i2))
    g = Graph(n, tuple(edges))
    _check(validate_graph(g) is None, f"quad-extremal n={n} graph invalid")
    _check(len(edges) == 4 * n - 8, f"quad-extremal n={n} edge count")
    _check(len(faces) == n - 2, f"quad-extremal n={n} face count")
    _check(len(q_edges) == 2 * n - 4, f"quad-extremal n={n} skeleton size")
    _check(is_bipartite(n, q_edges), f"quad-extremal n={n} skeleton not bipartite")
    rel = CrossingRelation(frozenset(pairs))
    _check(not find_k_fans(g, rel, 2), f"quad-extremal n={n} has a fan crossing")
    return AbstractDrawing(g, rel, provenance=f"quad-extremal(n={n})")


# ---------------------------------------------------------------------------
# Straight-line family (4n-9 edges, exact coordinates)

# gadgets filling the innermost triangle for n = 1, 2 (mod 3); coordinates
# live inside the size-16 base triangle (0,16), (-16,-16), (16,-16)
_GADGET4_COORDS = [(0, 6), (-6, -6), (6, -6), (4, 0)]  # D0 D1 D2 E
_GADGET5_COORDS = [(0, 6), (-6, -6), (5, -7), (4, -3), (4, 0)]  # C0..C4


def _straight_parts(n: int):
    """Skeleton Q of the straight-line family: coordinates, edges, and the
    quadrilateral faces (triangle faces carry no diagonals)."""
    if n < 6:
        raise ValueError(f"the straight-line family needs n >= 6, got {n}")
    r = n % 3
    levels = {0: n // 3, 1: (n - 4) // 3, 2: (n - 5) // 3}[r]
    base = [(Fraction(0), Fraction(16)), (Fraction(-16), Fraction(-16)),
            (Fraction(16), Fraction(-16))]
    coords: list[tuple[Fraction, Fraction]] = []
    for j in range(levels):
        scale = Fraction(4) ** j
        coords.extend((x * scale, y * scale) for x, y in base)
    edges = []
    quads = []
    for j in range(levels):
        v = [3 * j, 3 * j + 1, 3 * j + 2]
        edges += [(v[0], v[1]), (v[1], v[2]), (v[0], v[2])]
    for j in range(levels - 1):
        inner = [3 * j, 3 * j + 1, 3 * j + 2]
        outer = [3 * j + 3, 3 * j + 4, 3 * j + 5]
        edges += [(inner[i], outer[i]) for i in range(3)]
        quads += [
            (outer[i], outer[(i + 1) % 3], inner[(i + 1) % 3], inner[i])
            for i in range(3)
        ]
    b = [0, 1, 2]  # innermost level hosts the gadget
    if r == 1:
        d0, d1, d2, e = range(3 * levels, 3 * levels + 4)
        coords.extend((Fraction(x), Fraction(y)) for x, y in _GADGET4_COORDS)
        edges += [(d0, d1), (d1, d2), (d2, e), (e, d0)]
        edges += [(b[0], d0), (b[1], d1), (b[2], d2), (b[0], e)]
        quads += [
            (d0, d1, d2, e),
            (b[0], b[1], d1, d0),
            (b[1], b[2], d2, d1),
            (b[2], b[0], e, d2),
        ]
    elif r == 2:
        c0, c1, c2, c3, c4 = range(3 * levels, 3 * levels + 5)
        coords.extend((Fraction(x), Fraction(y)) for x, y in _GADGET5_COORDS)
        edges += [(c0, c1), (c1, c2), (c2, c3), (c3, c4), (c4, c0), (c0, c3)]
        edges += [(b[0], c0), (b[1], c1), (b[2], c2), (b[2], c4)]
        quads += [
            (c0, c1, c2, c3),
            (b[0], b[1], c1, c0),
            (b[1], b[2], c2, c1),
            (b[2], c4, c3, c2),
            (b[2], b[0], c0, c4),
        ]
    return coords, edges, quads


def gen_straight_extremal(n: int) -> StraightLineDrawing:
    """Straight-line fan-crossing free drawing with exactly 4n-9 edges
    (n >= 6): nested triangles whose annuli are strictly convex
    quadrilaterals, both diagonals added to every quadrilateral face."""
    coords, q_edges, quads = _straight_parts(n)
    edges = list(q_edges)
    expected_pairs = set()
    for p, q, r, s in quads:
        i1 = len(edges)
        edges.append((p, r))
        i2 = len(edges)
        edges.append((q, s))
        expected_pairs.add((i1, i2))
    g = Graph(n, tuple(edges))
    _check(validate_graph(g) is None, f"straight-extremal n={n} graph invalid")
    _check(len(edges) == 4 * n - 9, f"straight-extremal n={n} edge count")
    d = StraightLineDrawing(g, tuple(coords))
    rep = validate_simplicity(d)
    _check(rep.ok, f"straight-extremal n={n} not simple: {rep.violations[:3]}")
    rel = compute_crossings(d)
    _check(
        rel.pairs == frozenset(expected_pairs),
        f"straight-extremal n={n} crossing pattern is not one pair per face",
    )
    _check(not find_k_fans(g, rel, 2), f"straight-extremal n={n} has a fan crossing")
    return d


# ---------------------------------------------------------------------------
# Integer grid with a symmetric short-vector stencil (k >= 3 lower bound)

def grid_stencil(k: int) -> list[tuple[int, int]]:
    """The k-1 shortest primitive vectors with angle in [0, pi), ordered by
    (squared length, angle).  Connecting every grid vertex along these (and
    implicitly their negations) gives degree 2(k-1) away from the border."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    cands = []
    reach = 2
    while True:
        cands = []
        for dx in range(-reach, reach + 1):
            for dy in range(0, reach + 1):
                if dy == 0 and dx <= 0:
                    continue
                if dy > 0 or dx > 0:
                    if gcd(abs(dx), dy) == 1:
                        cands.append((dx, dy))
        if len(cands) >= k - 1:
            break
        reach += 1

    # sort by squared length, then ccw angle via pairwise cross products
    import functools

    def cmp(a, b):
        la = a[0] * a[0] + a[1] * a[1]
        lb = b[0] * b[0] + b[1] * b[1]
        if la != lb:
            return -1 if la < lb else 1
        cr = a[0] * b[1] - a[1] * b[0]
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    cands.sort(key=functools.cmp_to_key(cmp))
    return cands[: k - 1]


def gen_grid(side: int, k: int) -> StraightLineDrawing:
    """side x side integer grid, every vertex joined to its stencil
    neighbors; verified k-fan-crossing free."""
    if side < 4:
        raise ValueError(f"side must be >= 4, got {side}")
    stencil = grid_stencil(k)
    n = side * side
    coords = tuple(
        (Fraction(x), Fraction(y)) for y in range(side) for x in range(side)
    )

    def vid(x, y):
        return y * side + x

    edges = []
    for y in range(side):
        for x in range(side):
            for dx, dy in stencil:
                nx, ny = x + dx, y + dy
                if 0 <= nx < side and 0 <= ny < side:
                    edges.append((vid(x, y), vid(nx, ny)))
    g = Graph(n, tuple(edges))
    _check(validate_graph(g) is None, f"grid side={side} k={k} graph invalid")
    d = StraightLineDrawing(g, coords)
    rep = validate_simplicity(d)
    _check(rep.ok, f"grid side={side} k={k} not simple")
    fans = find_k_fans(g, compute_crossings(d), k)
    _check(not fans, f"grid side={side} k={k} has a {k}-fan: {fans[:1]}")
    return d


# ---------------------------------------------------------------------------
# Complete graph with every edge subdivided into three (fan-crossing free)

def gen_kq_subdivision(q: int) -> StraightLineDrawing:
    """K_q with each edge split u-x-y-v by two vertices close to the hubs;
    fan-crossing free because no two crossable segments share an endpoint.
    The split parameter shrinks until the exact checker accepts."""
    if not (3 <= q <= 12):
        raise ValueError(f"q must be in [3, 12], got {q}")
    hubs = []
    for i in range(q):
        t = Fraction(2 * i - (q - 1), 2)
        den = 1 + t * t
        hubs.append(((1 - t * t) / den, 2 * t / den))
    chords = [(i, j) for i in range(q) for j in range(i + 1, q)]
    n = q + 2 * len(chords)
    eps = Fraction(1, 8 * q * q)
    for _attempt in range(40):
        coords = list(hubs)
        edges = []
        for u, v in chords:
            (ux, uy), (vx, vy) = hubs[u], hubs[v]
            x_id = len(coords)
            coords.append((ux + eps * (vx - ux), uy + eps * (vy - uy)))
            y_id = len(coords)
            coords.append((vx + eps * (ux - vx), vy + eps * (uy - vy)))
            edges += [(u, x_id), (x_id, y_id), (y_id, v)]
        g = Graph(n, tuple(edges))
        d = StraightLineDrawing(g, tuple(coords))
        if validate_simplicity(d).ok:
            if not find_k_fans(g, compute_crossings(d), 2):
                _check(len(edges) == 3 * len(chords), "subdivision edge count")
                return d
        eps /= 2
    raise ConstructionError(
        f"no split parameter made the q={q} subdivision verify; "
        "this contradicts the construction and should be reported"
    )


# ---------------------------------------------------------------------------
# Triangulation plus duals (4-fan-crossing free, about 6n-12 edges)

def gen_tri_plus_dual(rows: int, cols: int) -> StraightLineDrawing:
    """Grid-strip triangulation plus, for every pair of adjacent triangles,
    the edge joining their two unshared vertices; verified 4-fan-free."""
    if rows < 3 or cols < 3:
        raise ValueError("rows and cols must be >= 3")
    n = rows * cols
    coords = tuple(
        (Fraction(x), Fraction(y)) for y in range(rows) for x in range(cols)
    )

    def vid(x, y):
        return y * cols + x

    edge_set = set()

    def add(a, b):
        edge_set.add((a, b) if a < b else (b, a))

    for y in range(rows):
        for x in range(cols):
            if x + 1 < cols:
                add(vid(x, y), vid(x + 1, y))
            if y + 1 < rows:
                add(vid(x, y), vid(x, y + 1))
            if x + 1 < cols and y + 1 < rows:
                add(vid(x, y), vid(x + 1, y + 1))
    # duals: across each cell diagonal, each interior vertical, each
    # interior horizontal edge
    for y in range(rows - 1):
        for x in range(cols - 1):
            add(vid(x + 1, y), vid(x, y + 1))
            if x + 2 < cols:
                add(vid(x, y), vid(x + 2, y + 1))
            if y + 2 < rows:
                add(vid(x, y), vid(x + 1, y + 2))
    edges = tuple(sorted(edge_set))
    g = Graph(n, edges)
    _check(validate_graph(g) is None, "tri-plus-dual graph invalid")
    _check(len(edges) <= 6 * n - 12, "tri-plus-dual exceeds 6n-12 edges")
    d = StraightLineDrawing(g, coords)
    rep = validate_simplicity(d)
    _check(rep.ok, "tri-plus-dual not simple")
    fans = find_k_fans(g, compute_crossings(d), 4)
    _check(not fans, f"tri-plus-dual has a 4-fan: {fans[:1]}")
    return d
