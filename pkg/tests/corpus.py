"""Deterministic test instances shared by the test modules."""

import random
from fractions import Fraction

from splitspan.config import ConfigurationError, PointConfiguration, Subdivision

SQUARE_CENTER = PointConfiguration.of([(0, 0), (0, 2), (2, 0), (2, 2), (1, 1)])
HEXAGON = PointConfiguration.of([(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1), (1, 1)])
CUBE3 = PointConfiguration.of([(x, y, z) for z in (0, 1) for y in (0, 1) for x in (0, 1)])
TRIANGLE = PointConfiguration.of([(0, 0), (1, 0), (0, 1)])

# Outer triangle with a rotated inner triangle; the inner triangle and the
# three quadrilaterals between the triangles form a non-regular 4-subdivision.
TWISTED = PointConfiguration.of([(0, 0), (12, 0), (0, 12), (2, 1), (7, 2), (1, 7)])
TWISTED_SUBDIVISION = Subdivision.of([{3, 4, 5}] + [{i, (i + 1) % 3, 3 + i, 3 + (i + 1) % 3} for i in range(3)])

# Octahedron with an interior point; the five cells below form a coarsest
# subdivision whose tight span is a tetrahedron with a triangle on one edge.
OCTAHEDRON_POINT = PointConfiguration.of(
    [(1, 0, 0), (0, 1, 0), (0, -1, 0), (-1, 0, 0), (0, 0, 1), (0, 0, -1), ("1/4", "-1/4", "1/4")]
)
OCTAHEDRON_POINT_SUBDIVISION = Subdivision.one_based(
    [{2, 3, 4, 5, 7}, {1, 2, 5, 7}, {1, 3, 5, 7}, {2, 3, 4, 6}, {1, 2, 3, 6, 7}]
)

# Square with an interior edge: two triangles and two quadrilaterals; tight
# span is two triangles glued along an edge.
SQUARE_EDGE = PointConfiguration.of([(0, 0), (4, 0), (4, 4), (0, 4), (1, 2), (3, 2)])
SQUARE_EDGE_SUBDIVISION = Subdivision.of([{0, 3, 4}, {1, 2, 5}, {0, 1, 4, 5}, {2, 3, 4, 5}])

# Simplex with an interior point coned over the facets: a 4-split.
TETRA_POINT = PointConfiguration.of([(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4), (1, 1, 1)])
TETRA_POINT_SUBDIVISION = Subdivision.of([{0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}, {1, 2, 3, 4}])


def random_configuration(rng: random.Random, n: int, d: int, box: int = 4) -> PointConfiguration:
    while True:
        pts = []
        for _ in range(n):
            pts.append(tuple(Fraction(rng.randint(0, box * 2), 2) for _ in range(d)))
        if len(set(pts)) < n:
            continue
        try:
            return PointConfiguration(tuple(pts))
        except ConfigurationError:
            continue


def random_corpus(seed: int = 20240601, size: int = 24) -> list[PointConfiguration]:
    """Configurations with n <= 7 points in dimension 2 or 3."""
    rng = random.Random(seed)
    out = []
    for i in range(size):
        d = 2 if i % 3 else 3
        n = rng.randint(d + 2, 7)
        out.append(random_configuration(rng, n, d))
    return out
