import random
from fractions import Fraction

import pytest

from fanfree.model import Graph, StraightLineDrawing
from fanfree.star import StarConfig, is_fan_free, legal_exit


def F(x, y):
    return (Fraction(x), Fraction(y))


@pytest.fixture
def fan_fixture():
    """v at the origin with spokes to a and b, both cut by the vertical
    edge cd: the canonical 2-fan."""
    g = Graph(5, ((0, 1), (0, 2), (3, 4)))  # va, vb, cd
    coords = (F(0, 0), F(2, 2), F(2, -2), F(1, 3), F(1, -3))
    return StraightLineDrawing(g, coords)


@pytest.fixture
def triangle():
    return StraightLineDrawing(
        Graph(3, ((0, 1), (1, 2), (0, 2))), (F(0, 0), F(4, 0), F(0, 4))
    )


def random_star(rng: random.Random, m: int, k: int, attempts: int = 30) -> StarConfig:
    """Random fan-free star built by rejection: insert random arrows at
    random slots, keep an insertion only if the config stays fan-free."""
    per_edge: list[list[int]] = [[] for _ in range(m)]

    def materialize():
        arrows = []
        for e in range(m):
            for rank, s in enumerate(per_edge[e]):
                arrows.append((s, e, rank))
        return StarConfig(m, tuple(sorted(arrows)))

    for _ in range(attempts):
        s = rng.randrange(m)
        e = rng.randrange(m)
        if not legal_exit(m, s, e):
            continue
        pos = rng.randint(0, len(per_edge[e]))
        per_edge[e].insert(pos, s)
        if not is_fan_free(materialize(), k):
            per_edge[e].pop(pos)
    return materialize()
