"""Exact crossing computation, drawing simplicity validation, and k-fan
detection.

Predicates clear denominators once per drawing and then work on integer
cross products only.  A configuration where an endpoint touches another
segment's interior, or where collinear segments overlap, is a simplicity
error, never a crossing.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .model import (
    AbstractDrawing,
    CrossingRelation,
    FanWitness,
    Graph,
    StraightLineDrawing,
)


class SimplicityError(ValueError):
    """Raised when a drawing violates the simple-drawing model."""

    def __init__(self, kind: str, indices: tuple, message: str):
        super().__init__(message)
        self.kind = kind
        self.indices = indices


@dataclass(frozen=True)
class SimplicityReport:
    """Exhaustive list of simplicity violations; ok iff none."""

    ok: bool
    violations: tuple[tuple[str, tuple], ...]


# Homogeneous integer points (x, y, w) with w > 0: affine point is (x/w, y/w).

def homogenize(drawing: StraightLineDrawing) -> list[tuple[int, int, int]]:
    pts = []
    for x, y in drawing.coords:
        w = lcm(x.denominator, y.denominator)
        pts.append((x.numerator * (w // x.denominator),
                    y.numerator * (w // y.denominator), w))
    return pts


def orient(a, b, c) -> int:
    """Sign of the cross product (b-a) x (c-a) on homogeneous points."""
    ax, ay, aw = a
    bx, by, bw = b
    cx, cy, cw = c
    d = (bx * aw - ax * bw) * (cy * aw - ay * cw) - (
        by * aw - ay * bw
    ) * (cx * aw - ax * cw)
    return (d > 0) - (d < 0)


def _dot_sign(p, a, b) -> int:
    """Sign of (a-p).(b-p); negative iff p lies strictly between collinear a, b."""
    px, py, pw = p
    ax, ay, aw = a
    bx, by, bw = b
    # x and y terms share the positive denominator aw*bw*pw^2
    sx = (ax * pw - px * aw) * (bx * pw - px * bw)
    sy = (ay * pw - py * aw) * (by * pw - py * bw)
    d = sx + sy
    return (d > 0) - (d < 0)


def strictly_between(p, a, b) -> bool:
    """True iff p lies on the open segment (a, b)."""
    return orient(a, b, p) == 0 and _dot_sign(p, a, b) < 0


def _same_point(a, b) -> bool:
    ax, ay, aw = a
    bx, by, bw = b
    return ax * bw == bx * aw and ay * bw == by * aw


def validate_simplicity(d: StraightLineDrawing) -> SimplicityReport:
    """Report every violation of the simple straight-line drawing model.

    Kinds: coincident-vertices, vertex-on-edge, adjacent-overlap.
    """
    pts = homogenize(d)
    g = d.graph
    violations: list[tuple[str, tuple]] = []

    seen: dict[tuple, int] = {}
    for v, (x, y) in enumerate(d.coords):
        key = (x, y)
        if key in seen:
            violations.append(("coincident-vertices", (seen[key], v)))
        else:
            seen[key] = v

    for i, (u, v) in enumerate(g.edges):
        a, b = pts[u], pts[v]
        for w in range(g.n):
            if w in (u, v):
                continue
            if strictly_between(pts[w], a, b):
                violations.append(("vertex-on-edge", (w, i)))

    for i in range(len(g.edges)):
        for j in range(i + 1, len(g.edges)):
            shared = set(g.edges[i]) & set(g.edges[j])
            if len(shared) != 1:
                continue
            s = shared.pop()
            p = pts[s]
            (a1, b1) = g.edges[i]
            (a2, b2) = g.edges[j]
            o1 = pts[b1 if a1 == s else a1]
            o2 = pts[b2 if a2 == s else a2]
            # collinear and pointing the same way from the shared endpoint
            if orient(p, o1, o2) == 0 and _dot_sign(p, o1, o2) > 0:
                violations.append(("adjacent-overlap", (i, j)))

    violations.sort()
    return SimplicityReport(ok=not violations, violations=tuple(violations))


def _bboxes(drawing: StraightLineDrawing):
    out = []
    for u, v in drawing.graph.edges:
        (x1, y1), (x2, y2) = drawing.coords[u], drawing.coords[v]
        out.append((min(x1, x2), max(x1, x2), min(y1, y2), max(y1, y2)))
    return out


def compute_crossings(d: StraightLineDrawing) -> CrossingRelation:
    """Exact pairwise crossing relation of a simple straight-line drawing.

    Edges sharing an endpoint never cross.  Any degenerate contact between
    two edges raises SimplicityError naming the pair.
    """
    pts = homogenize(d)
    g = d.graph
    boxes = _bboxes(d)
    pairs = set()
    m = len(g.edges)
    for i in range(m):
        u1, v1 = g.edges[i]
        a, b = pts[u1], pts[v1]
        xlo, xhi, ylo, yhi = boxes[i]
        for j in range(i + 1, m):
            u2, v2 = g.edges[j]
            if u1 in (u2, v2) or v1 in (u2, v2):
                continue
            jb = boxes[j]
            if jb[0] > xhi or jb[1] < xlo or jb[2] > yhi or jb[3] < ylo:
                continue
            c, e = pts[u2], pts[v2]
            o1 = orient(a, b, c)
            o2 = orient(a, b, e)
            o3 = orient(c, e, a)
            o4 = orient(c, e, b)
            if o1 * o2 < 0 and o3 * o4 < 0:
                pairs.add((i, j))
                continue
            degenerate = (
                (o1 == 0 and strictly_between(c, a, b))
                or (o2 == 0 and strictly_between(e, a, b))
                or (o3 == 0 and strictly_between(a, c, e))
                or (o4 == 0 and strictly_between(b, c, e))
                or (o1 == 0 and o2 == 0 and _collinear_overlap(a, b, c, e))
            )
            if degenerate:
                raise SimplicityError(
                    "degenerate-contact",
                    (i, j),
                    f"edges {i} and {j} touch degenerately "
                    "(endpoint on interior or collinear overlap)",
                )
    return CrossingRelation(frozenset(pairs))


def _collinear_overlap(a, b, c, e) -> bool:
    # all four collinear here; overlap iff some endpoint is inside the other
    # segment or the segments coincide
    if strictly_between(c, a, b) or strictly_between(e, a, b):
        return True
    if strictly_between(a, c, e) or strictly_between(b, c, e):
        return True
    return (_same_point(a, c) and _same_point(b, e)) or (
        _same_point(a, e) and _same_point(b, c)
    )


def find_k_fans(g: Graph, c: CrossingRelation, k: int) -> list[FanWitness]:
    """All (crosser, apex) pairs where the crosser crosses >= k edges at apex.

    The fan reported for each witness is the k lexicographically smallest
    members of the apex bucket.  Empty result iff the drawing is
    k-fan-crossing free.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    crossed_by: dict[int, list[int]] = {}
    for i, j in c.pairs:
        crossed_by.setdefault(i, []).append(j)
        crossed_by.setdefault(j, []).append(i)
    witnesses = []
    for crosser in sorted(crossed_by):
        buckets: dict[int, list[int]] = {}
        for e in crossed_by[crosser]:
            for v in g.edges[e]:
                buckets.setdefault(v, []).append(e)
        gu, gv = g.edges[crosser]
        for apex in sorted(buckets):
            fan = buckets[apex]
            if len(fan) >= k:
                assert apex not in (gu, gv), "crosser incident to its own apex"
                witnesses.append(FanWitness(crosser, apex, tuple(sorted(fan)[:k])))
    return witnesses


def crossings_of(d) -> tuple[Graph, CrossingRelation]:
    """Graph and crossing relation of either drawing flavour."""
    if isinstance(d, AbstractDrawing):
        return d.graph, d.crossings
    if isinstance(d, StraightLineDrawing):
        return d.graph, compute_crossings(d)
    raise TypeError(f"not a drawing: {type(d).__name__}")


def is_k_fan_free(d, k: int) -> bool:
    g, c = crossings_of(d)
    return not find_k_fans(g, c, k)
