"""Secondary polytopes of small configurations, split polyhedra, total splittability."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .config import (
    PointConfiguration,
    Subdivision,
    WeightFunction,
    as_weights,
    proper_intersection,
    regular_subdivision,
    simplex_volume,
)
from .kernel import Vector, affine_rank, dot, primitive, rref
from .polyhedron import HPolyhedron, VPolyhedron, dd_convert_VtoH


class SizeGuardError(ValueError):
    pass


DEFAULT_GUARDS = {"max_points": 10, "max_dim": 4}


def guards() -> dict[str, int]:
    """Size limits; override with SPLITSPAN_GUARDS="max_points=12,max_dim=4"."""
    out = dict(DEFAULT_GUARDS)
    raw = os.environ.get("SPLITSPAN_GUARDS", "")
    for item in filter(None, (s.strip() for s in raw.split(","))):
        key, _, val = item.partition("=")
        out[key.strip()] = int(val)
    return out


def check_size(A: PointConfiguration, max_points: int | None = None, max_dim: int | None = None) -> None:
    g = guards()
    mp = g["max_points"] if max_points is None else max_points
    md = g["max_dim"] if max_dim is None else max_dim
    if A.n > mp or A.d > md:
        raise SizeGuardError(f"configuration with {A.n} points in dimension {A.d} exceeds guard ({mp} points, dim {md})")


# --------------------------------------------------------- triangulations


def _generic_interior_point(A: PointConfiguration, hyperplanes) -> Vector:
    """A point of int conv A on none of the given hyperplanes."""
    d = A.d
    simplex = next(
        s for s in itertools.combinations(range(A.n), d + 1) if affine_rank(A.subset(s)) == d
    )
    base = [sum(A.points[i][t] for i in simplex) / (d + 1) for t in range(d)]
    for k in itertools.count(7):
        eps = Fraction(1, k)
        x = tuple(base[t] + eps ** (t + 1) / 97 for t in range(d))
        if not all(A.hull.contains(x) and dot(a, x) > b for a, b in A.hull.inequalities):
            continue
        if all(dot(a, x) != b for a, b in hyperplanes):
            return x
    raise AssertionError("unreachable")


class _Enumerator:
    def __init__(self, A: PointConfiguration):
        self.A = A
        d = A.d
        self.simplices = [
            frozenset(s) for s in itertools.combinations(range(A.n), d + 1) if affine_rank(A.subset(s)) == d
        ]
        self.hyperplanes = {}
        for f in itertools.combinations(range(A.n), d):
            hp = _hyperplane(A, f)
            if hp is not None:
                self.hyperplanes[frozenset(f)] = hp
        self.compat: dict[frozenset, bool] = {}

    def compatible(self, s: frozenset, t: frozenset) -> bool:
        key = frozenset((s, t))
        if key not in self.compat:
            self.compat[key] = proper_intersection(self.A, s, t)
        return self.compat[key]

    def side(self, facet: frozenset, i: int) -> int:
        a, b = self.hyperplanes[facet]
        v = dot(a, self.A.points[i]) - b
        return (v > 0) - (v < 0)

    def interior_facet(self, facet: frozenset) -> bool:
        sides = {self.side(facet, i) for i in range(self.A.n)}
        return 1 in sides and -1 in sides

    def run(self) -> list[frozenset[frozenset[int]]]:
        A = self.A
        x = _generic_interior_point(A, list(self.hyperplanes.values()))
        seeds = [s for s in self.simplices if _strictly_inside(A, s, x)]
        found: set[frozenset[frozenset[int]]] = set()
        for s in seeds:
            self._extend([s], found)
        total = A.volume
        out = []
        for t in found:
            if sum(simplex_volume(A.subset(s)) for s in t) == total:
                out.append(t)
        return out

    def _extend(self, chosen: list[frozenset], found: set) -> None:
        open_facet = None
        for s in chosen:
            for i in sorted(s):
                f = s - {i}
                if not self.interior_facet(f):
                    continue
                own = self.side(f, i)
                if not any(f < t and self.side(f, next(iter(t - f))) == -own for t in chosen):
                    open_facet = (f, own)
                    break
            if open_facet:
                break
        if open_facet is None:
            found.add(frozenset(chosen))
            return
        f, own = open_facet
        for q in range(self.A.n):
            if q in f or self.side(f, q) != -own:
                continue
            t = f | {q}
            if affine_rank(self.A.subset(t)) != self.A.d:
                continue
            if all(self.compatible(t, c) for c in chosen):
                self._extend(chosen + [t], found)


def _hyperplane(A: PointConfiguration, idx) -> tuple[Vector, Fraction] | None:
    from .kernel import kernel_basis

    rows = [A.points[i] + (Fraction(-1),) for i in idx]
    ker = kernel_basis(rows)
    if len(ker) != 1:
        return None
    v = primitive(ker[0])
    return tuple(Fraction(x) for x in v[:-1]), Fraction(v[-1])


def _strictly_inside(A: PointConfiguration, s: frozenset, x: Vector) -> bool:
    from .kernel import solve

    idx = sorted(s)
    M = [[Fraction(1)] * len(idx)] + [[A.points[i][t] for i in idx] for t in range(A.d)]
    lam = solve(M, (Fraction(1),) + tuple(x))
    return lam is not None and all(l > 0 for l in lam)


@lru_cache(maxsize=64)
def _triangulations(A: PointConfiguration) -> tuple[Subdivision, ...]:
    tris = _Enumerator(A).run()
    return tuple(sorted((Subdivision.of(t) for t in tris), key=lambda s: s.as_one_based()))


def enumerate_triangulations(A: PointConfiguration, max_points: int | None = None, max_dim: int | None = None) -> list[Subdivision]:
    """All triangulations of A (vertices may be any subset of the points)."""
    check_size(A, max_points, max_dim)
    return list(_triangulations(A))


def gkz_vector(A: PointConfiguration, T: Subdivision) -> tuple[Fraction, ...]:
    x = [Fraction(0)] * A.n
    for s in T.cells:
        v = simplex_volume(A.subset(s))
        for i in s:
            x[i] += v
    return tuple(x)


# ------------------------------------------------------ secondary polytope


@dataclass(frozen=True)
class SecondaryFacet:
    normal: tuple[Fraction, ...]
    offset: Fraction
    subdivision: Subdivision


@dataclass(frozen=True)
class SecondaryPolytope:
    vertices: tuple[tuple[Fraction, ...], ...]
    triangulations: tuple[Subdivision, ...]
    hrep: HPolyhedron
    facets: tuple[SecondaryFacet, ...]

    @property
    def dim(self) -> int:
        return affine_rank(list(self.vertices))

    def canonical_facets(self) -> frozenset:
        return frozenset(canonical_inequality(f.normal, f.offset, self.hrep.equations) for f in self.facets)


def canonical_inequality(a, b, equations) -> tuple[tuple[int, ...], int]:
    """Normal form of a.x >= b modulo the given affine equations (primitive ints)."""
    E, piv = rref([[-eb] + list(ea) for ea, eb in equations]) if equations else ([], [])
    z = [-Fraction(b)] + [Fraction(x) for x in a]
    for row, p in zip(E, piv):
        if z[p] != 0:
            f = z[p]
            z = [u - f * v for u, v in zip(z, row)]
    pr = primitive(z)
    return tuple(pr[1:]), -pr[0]


@lru_cache(maxsize=64)
def _secondary(A: PointConfiguration) -> SecondaryPolytope:
    from .ksplit import is_regular

    regular = tuple(T for T in _triangulations(A) if is_regular(A, T) is not None)
    verts = tuple(gkz_vector(A, T) for T in regular)
    h = dd_convert_VtoH(VPolyhedron(tuple(sorted(set(verts))), (), A.n))
    facets = []
    for a, b in h.inequalities:
        facets.append(SecondaryFacet(a, b, regular_subdivision(A, a)))
    return SecondaryPolytope(verts, regular, h, tuple(facets))


def secondary_polytope(A: PointConfiguration, max_points: int | None = None, max_dim: int | None = None) -> SecondaryPolytope:
    """Convex hull of the GKZ vectors of the regular triangulations.

    A facet with inner normal c (minimized on the facet) corresponds to the
    coarsest regular subdivision Σ_c.
    """
    check_size(A, max_points, max_dim)
    return _secondary(A)


def facet_inequality_from_weight(A: PointConfiguration, w, sec: SecondaryPolytope | None = None):
    """(w, min over GKZ vertices of <w, x>) in canonical form; Σ_w must be coarsest."""
    from .ksplit import is_coarsest

    w = as_weights(w)
    if sec is None:
        sec = secondary_polytope(A)
    S = regular_subdivision(A, w)
    if not is_coarsest(A, S, witness=w):
        raise ValueError("Σ_w is not a coarsest subdivision")
    offset = min(dot(w.weights, x) for x in sec.vertices)
    return canonical_inequality(w.weights, offset, sec.hrep.equations)


def tight_vertices(sec: SecondaryPolytope, a, b) -> list[int]:
    return [i for i, x in enumerate(sec.vertices) if dot(a, x) == b]


# --------------------------------------------------------- split polyhedra


@dataclass(frozen=True)
class SplitPolyhedron:
    level: int
    inequalities: frozenset
    equations: tuple

    def contains(self, x) -> bool:
        return all(dot(a, x) >= b for a, b in self.inequalities) and all(dot(a, x) == b for a, b in self.equations)


def split_weights(A: PointConfiguration, k: int) -> list[tuple[int, WeightFunction]]:
    """(l, weight) for every l-split of A with l <= k (1-splits and 2-splits included)."""
    from .ksplit import k_splits, ksplit_weight
    from .splits import one_split_weight, one_splits, split_weight, two_splits

    out = [(1, one_split_weight(A, s.point_index)) for s in one_splits(A)]
    if k >= 2:
        out += [(2, split_weight(A, S)) for S in two_splits(A)]
    if k >= 3:
        for K in k_splits(A, max_k=k):
            if K.k >= 3:
                out.append((K.k, ksplit_weight(A, K)))
    return out


def split_polyhedron(A: PointConfiguration, k: int) -> SplitPolyhedron:
    if k < 2:
        raise ValueError("k must be at least 2")
    sec = secondary_polytope(A)
    ineqs = frozenset(facet_inequality_from_weight(A, w, sec) for _, w in split_weights(A, k))
    return SplitPolyhedron(k, ineqs, sec.hrep.equations)


def is_totally_k_splittable(A: PointConfiguration, k: int) -> bool:
    """Every coarsest regular subdivision of A is an l-split with l <= k."""
    sec = secondary_polytope(A)
    return split_polyhedron(A, k).inequalities == sec.canonical_facets()
