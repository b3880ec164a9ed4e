"""Gale duality and constructions moving between configurations and polytopes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import (
    PointConfiguration,
    WeightFunction,
    as_weights,
    regular_subdivision,
)
from .kernel import Vector, kernel_basis, transpose
from .lp import strict_lp_feasible
from .polyhedron import VPolyhedron, dd_convert_VtoH, vertex_indices


class GaleError(ValueError):
    pass


@dataclass(frozen=True)
class GaleDual:
    """Row i is the dual vector a_i* of configuration point i."""

    vectors: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0


def homogenized_matrix(A: PointConfiguration) -> list[list[Fraction]]:
    """(d+1) x n matrix with columns (1, a)."""
    return transpose(A.homogenized())


def gale_dual(A: PointConfiguration) -> GaleDual:
    V = homogenized_matrix(A)
    ker = kernel_basis(V)
    return GaleDual(tuple(tuple(k[i] for k in ker) for i in range(A.n)))


def weight_to_chamber_point(A: PointConfiguration, dual: GaleDual, w) -> Vector:
    w = as_weights(w)
    out = [Fraction(0)] * dual.dim
    for wi, b in zip(w.weights, dual.vectors):
        for j, x in enumerate(b):
            out[j] += wi * x
    return tuple(out)


def chamber_face_test(A: PointConfiguration, dual: GaleDual, w, F) -> bool:
    """w~ lies in the relative interior of pos{a* : a not in F}.

    Equivalent to F being a face of Σ_w: an affine function agrees with w
    on F and lies strictly below w elsewhere.
    """
    F = frozenset(F)
    wt = weight_to_chamber_point(A, dual, w)
    comp = [i for i in range(A.n) if i not in F]
    if not comp:
        return all(x == 0 for x in wt)
    m = len(comp)
    strict = [(tuple(int(i == j) for j in range(m)), 0) for i in range(m)]
    eqs = [(tuple(dual.vectors[i][t] for i in comp), wt[t]) for t in range(dual.dim)]
    return strict_lp_feasible(strict=strict, eqs=eqs, nvars=m) is not None


# ------------------------------------------- same secondary polytope


def _lonely(vectors: list[Vector], i: int) -> bool:
    """Some open halfspace through 0 contains vectors[i] and no other vector."""
    r = len(vectors[i])
    if r == 0 or all(x == 0 for x in vectors[i]):
        return False
    strict = [(vectors[i], 0)]
    weak = [(tuple(-x for x in vectors[j]), 0) for j in range(len(vectors)) if j != i]
    return strict_lp_feasible(strict=strict, weak=weak, nvars=r) is not None


def duplicate_lonely_vectors(vectors: list[Vector]) -> list[Vector]:
    vs = list(vectors)
    changed = True
    while changed:
        changed = False
        for i in range(len(vs)):
            if _lonely(vs, i):
                vs.append(vs[i])
                changed = True
                break
    return vs


def configuration_from_dual(vectors: list[Vector]) -> PointConfiguration:
    """A point configuration whose Gale dual is ``vectors`` (up to affine maps).

    The rows of the kernel of B^T form a homogenized configuration; a linear
    functional positive on every column dehomogenizes it.
    """
    n = len(vectors)
    r = len(vectors[0]) if vectors else 0
    if r == 0:
        rows = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    else:
        rows = kernel_basis(transpose(vectors))
    cols = list(zip(*rows))
    m = len(rows)
    y = strict_lp_feasible(strict=[(c, 0) for c in cols], nvars=m)
    if y is None:
        raise GaleError("dual vectors do not come from an acyclic configuration")
    drop = next(k for k in range(m) if y[k] != 0)
    pts = []
    for c in cols:
        s = sum((a * b for a, b in zip(y, c)), Fraction(0))
        pts.append(tuple(x / s for k, x in enumerate(c) if k != drop))
    return PointConfiguration(tuple(pts))


def polytope_with_same_secondary(A: PointConfiguration) -> tuple[PointConfiguration, int]:
    """Vertex set of a polytope with the same chamber complex, and the number m of added points.

    The first n points correspond to the points of A.
    """
    B = list(gale_dual(A).vectors)
    if not B or len(B[0]) == 0:
        return A, 0
    B2 = duplicate_lonely_vectors(B)
    return configuration_from_dual(B2), len(B2) - len(B)


# ------------------------------------------- tight spans of polytopes


@dataclass(frozen=True)
class PolytopeLift:
    """Output of the configuration-to-polytope tight span transfer.

    Point 2j of ``polytope`` is (a, +w(a)) and point 2j+1 is (a, -w(a)) for
    the j-th kept configuration point ``kept[j]``; ``shift`` was added to w.
    """

    polytope: PointConfiguration
    weights: WeightFunction
    kept: tuple[int, ...]
    shift: Fraction
    reduced: PointConfiguration
    reduced_weights: WeightFunction


def pc_to_polytope_tightspan(A: PointConfiguration, w) -> PolytopeLift:
    """Polytope in one dimension higher with an affinely isomorphic tight span.

    Keeps one copy of every point that is a vertex of some cell of Σ_w, and
    shifts w down by max(w)+1 when w is not already negative.
    """
    w = as_weights(w)
    S = regular_subdivision(A, w)
    keep = set()
    for c in S.cells:
        idx = sorted(c)
        for j in vertex_indices(A.subset(idx)):
            keep.add(idx[j])
    seen = {}
    for i in sorted(keep):
        seen.setdefault(A.points[i], i)
    kept = tuple(sorted(seen.values()))
    shift = Fraction(0)
    top = max(w[i] for i in kept)
    if top >= 0:
        shift = -(top + 1)
    ws = [w[i] + shift for i in kept]
    pts, wp = [], []
    for i, wi in zip(kept, ws):
        a = A.points[i]
        pts.append(a + (wi,))
        pts.append(a + (-wi,))
        wp += [wi, wi]
    reduced = PointConfiguration(tuple(A.points[i] for i in kept))
    return PolytopeLift(
        PointConfiguration(tuple(pts)), WeightFunction(tuple(wp)), kept, shift, reduced, WeightFunction(tuple(ws))
    )


def polytope_as_tightspan(P: VPolyhedron) -> tuple[PointConfiguration, WeightFunction, Vector]:
    """Configuration and weight whose tight span is {0} x (P - c).

    c is the vertex centroid of P. The points are the negated vertices of the
    polar of P - c, plus the origin with weight 0.
    """
    if not P.bounded or not P.vertices:
        raise GaleError("need a nonempty polytope")
    d = P.ambient_dim
    c = tuple(sum(v[t] for v in P.vertices) / len(P.vertices) for t in range(d))
    Q = VPolyhedron(tuple(tuple(x - y for x, y in zip(v, c)) for v in P.vertices), (), d)
    h = dd_convert_VtoH(Q)
    if h.equations:
        raise GaleError("polytope is not full-dimensional")
    pts, ws = [], []
    for a, b in h.inequalities:
        if b >= 0:
            raise GaleError("centroid is not interior")
        pts.append(tuple(-x / b for x in a))
        ws.append(Fraction(1))
    pts.append(tuple(Fraction(0) for _ in range(d)))
    ws.append(Fraction(0))
    return PointConfiguration(tuple(pts)), WeightFunction(tuple(ws)), c
