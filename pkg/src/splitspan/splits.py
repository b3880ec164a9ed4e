"""1-splits, 2-splits and the coherent split decomposition of a weight function."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .config import (
    PointConfiguration,
    Subdivision,
    WeightFunction,
    as_weights,
    cell_affine_function,
    coherence_check,
    is_refinement,
    regular_subdivision,
)
from .kernel import affine_rank, dot, fmt, kernel_basis, primitive
from .lp import in_convex_hull, linprog
from .polyhedron import VPolyhedron, polytope_edges, vertex_indices


class SplitError(ValueError):
    pass


@dataclass(frozen=True)
class OneSplit:
    point_index: int

    def subdivision(self, A: PointConfiguration) -> Subdivision:
        return Subdivision.of([set(range(A.n)) - {self.point_index}])

    def to_json(self) -> dict:
        return {"point": self.point_index + 1}


@dataclass(frozen=True)
class TwoSplit:
    """A split given by the hyperplane normal.x = offset.

    ``side_plus`` holds the points with normal.x >= offset.
    """

    normal: tuple[Fraction, ...]
    offset: Fraction
    side_plus: frozenset[int]
    side_minus: frozenset[int]

    @property
    def on_hyperplane(self) -> frozenset[int]:
        return self.side_plus & self.side_minus

    def subdivision(self) -> Subdivision:
        return Subdivision.of([self.side_plus, self.side_minus])

    def value(self, p) -> Fraction:
        return dot(self.normal, p) - self.offset

    def to_json(self) -> dict:
        return {
            "normal": [fmt(x) for x in self.normal],
            "offset": fmt(self.offset),
            "side_plus": sorted(i + 1 for i in self.side_plus),
            "side_minus": sorted(i + 1 for i in self.side_minus),
        }


# ---------------------------------------------------------------- 1-splits


def one_splits(A: PointConfiguration) -> list[OneSplit]:
    out = []
    for p in range(A.n):
        rest = [A.points[i] for i in range(A.n) if i != p]
        if in_convex_hull(A.points[p], rest):
            out.append(OneSplit(p))
    return out


def one_split_weight(A: PointConfiguration, p: int) -> WeightFunction:
    rest = [A.points[i] for i in range(A.n) if i != p]
    if not in_convex_hull(A.points[p], rest):
        raise SplitError(f"point {p + 1} is not in the hull of the other points")
    return WeightFunction(tuple(Fraction(int(i == p)) for i in range(A.n)))


# ---------------------------------------------------------------- 2-splits


def _hyperplane_through(points) -> tuple[tuple[Fraction, ...], Fraction] | None:
    """Canonical (normal, offset) of the hyperplane through d points, if unique."""
    rows = [tuple(p) + (Fraction(-1),) for p in points]
    ker = kernel_basis(rows)
    if len(ker) != 1:
        return None
    v = primitive(ker[0])
    if next(x for x in v if x != 0) < 0:
        v = tuple(-x for x in v)
    return tuple(Fraction(x) for x in v[:-1]), Fraction(v[-1])


def candidate_hyperplanes(A: PointConfiguration) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Distinct hyperplanes spanned by d affinely independent configuration points."""
    seen = set()
    out = []
    distinct = sorted(set(A.points))
    for combo in itertools.combinations(distinct, A.d):
        hp = _hyperplane_through(combo)
        if hp is not None and hp not in seen:
            seen.add(hp)
            out.append(hp)
    return out


def hull_edges(A: PointConfiguration) -> list[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
    verts = [A.points[i] for i in vertex_indices(A.points)]
    V = VPolyhedron(tuple(verts), (), A.d)
    return [(verts[i], verts[j]) for i, j in polytope_edges(V)]


def is_split_hyperplane(A: PointConfiguration, normal, offset, edges=None) -> bool:
    """Hyperplane meets the interior of conv A and cuts every edge in ∅, a point of A, or the edge."""
    vals = [dot(normal, p) - offset for p in A.points]
    if not (any(v > 0 for v in vals) and any(v < 0 for v in vals)):
        return False
    pts = set(A.points)
    for p, q in edges if edges is not None else hull_edges(A):
        s, t = dot(normal, p) - offset, dot(normal, q) - offset
        if s * t < 0:
            lam = s / (s - t)
            cut = tuple(a + lam * (b - a) for a, b in zip(p, q))
            if cut not in pts:
                return False
    return True


def two_splits(A: PointConfiguration) -> list[TwoSplit]:
    edges = hull_edges(A)
    out = []
    for normal, offset in candidate_hyperplanes(A):
        if not is_split_hyperplane(A, normal, offset, edges):
            continue
        vals = [dot(normal, p) - offset for p in A.points]
        plus = frozenset(i for i, v in enumerate(vals) if v >= 0)
        minus = frozenset(i for i, v in enumerate(vals) if v <= 0)
        out.append(TwoSplit(normal, offset, plus, minus))
    return out


def split_from_sides(A: PointConfiguration, side_plus: Iterable[int], side_minus: Iterable[int]) -> TwoSplit | None:
    """The 2-split of A with the given sides (in either order), if any."""
    sides = {frozenset(side_plus), frozenset(side_minus)}
    return next((s for s in two_splits(A) if {s.side_plus, s.side_minus} == sides), None)


def inherit_split(A_sub: PointConfiguration, A: PointConfiguration, S: TwoSplit) -> TwoSplit:
    """The split of A cut by the hyperplane of a split of a spanning subconfiguration."""
    if A_sub.d != A.d:
        raise SplitError("configurations live in different dimensions")
    remaining = list(A.points)
    for p in A_sub.points:
        if p not in remaining:
            raise SplitError("A_sub is not a subconfiguration of A")
        remaining.remove(p)
    if not all(A_sub.hull.contains(p) for p in A.points):
        raise SplitError("conv A_sub differs from conv A")
    vals = [dot(S.normal, p) - S.offset for p in A.points]
    plus = frozenset(i for i, v in enumerate(vals) if v >= 0)
    minus = frozenset(i for i, v in enumerate(vals) if v <= 0)
    if not is_split_hyperplane(A, S.normal, S.offset):
        raise SplitError("inherited hyperplane is not a split hyperplane of A")
    return TwoSplit(S.normal, S.offset, plus, minus)


def split_weight(A: PointConfiguration, S: TwoSplit) -> WeightFunction:
    """Hinge weight max(0, normal.a - offset); zero on the minus side."""
    return WeightFunction(tuple(max(Fraction(0), S.value(p)) for p in A.points))


# ------------------------------------------------------ split decomposition


@dataclass
class SplitDecomposition:
    lambda_one: dict[int, Fraction] = field(default_factory=dict)
    lambda_two: list[tuple[TwoSplit, Fraction]] = field(default_factory=list)
    residual: WeightFunction | None = None

    def reconstruct(self, A: PointConfiguration) -> WeightFunction:
        w = self.residual
        for p, lam in self.lambda_one.items():
            w = w + one_split_weight(A, p) * lam
        for S, lam in self.lambda_two:
            w = w + split_weight(A, S) * lam
        return w

    def to_json(self) -> dict:
        return {
            "one_splits": [{"point": p + 1, "coefficient": fmt(lam)} for p, lam in sorted(self.lambda_one.items())],
            "two_splits": [dict(S.to_json(), coefficient=fmt(lam)) for S, lam in self.lambda_two],
            "residual": [fmt(x) for x in self.residual.weights],
        }


def _eval(h, p) -> Fraction:
    return h[0] + dot(h[1:], p)


def split_coefficient(A: PointConfiguration, w, S: TwoSplit, sigma: Subdivision | None = None) -> Fraction:
    """Largest λ with w - λ w_S still convex across the split hyperplane.

    Zero unless Σ_w refines S. Each wall of Σ_w on the hyperplane has a fold
    (jump of the slope) proportional to the fold of w_S; λ is the least ratio.
    """
    w = as_weights(w)
    if sigma is None:
        sigma = regular_subdivision(A, w)
    if not is_refinement(A, sigma, S.subdivision()):
        return Fraction(0)
    best = None
    on_h = S.on_hyperplane
    for c1, c2 in itertools.combinations(sigma.cells, 2):
        wall = c1 & c2
        if not wall <= on_h or affine_rank(A.subset(wall)) != A.d - 1:
            continue
        cp, cm = (c1, c2) if c1 <= S.side_plus else (c2, c1)
        q = next(i for i in cm if i not in on_h)
        hp = cell_affine_function(A, w, cp)
        hm = cell_affine_function(A, w, cm)
        fold = (_eval(hm, A.points[q]) - _eval(hp, A.points[q])) / (-S.value(A.points[q]))
        best = fold if best is None else min(best, fold)
    return best if best is not None else Fraction(0)


def lower_hull_value(A: PointConfiguration, w, p: int) -> Fraction:
    """Height at a_p of the lower hull of {(a, w(a)) : a in A, a != a_p}."""
    w = as_weights(w)
    idx = [i for i in range(A.n) if i != p]
    m = len(idx)
    weak = [(tuple(int(i == j) for j in range(m)), 0) for i in range(m)]
    eqs = [(tuple(A.points[i][k] for i in idx), A.points[p][k]) for k in range(A.d)]
    eqs.append(((1,) * m, 1))
    status, _, val = linprog([-w[i] for i in idx], weak, eqs, m)
    if status != "optimal":
        raise SplitError(f"point {p + 1} is not in the hull of the other points")
    return -val


def split_decomposition(A: PointConfiguration, w) -> SplitDecomposition:
    """Coherent decomposition w = w0 + Σ λ_p w_p + Σ λ_S w_S with split-prime w0.

    2-split parts are extracted first, then 1-split parts from the reduced weight.
    """
    w = as_weights(w)
    sigma = regular_subdivision(A, w)
    dec = SplitDecomposition()
    rest = w
    for S in two_splits(A):
        lam = split_coefficient(A, w, S, sigma)
        if lam > 0:
            dec.lambda_two.append((S, lam))
            rest = rest - split_weight(A, S) * lam
    used = regular_subdivision(A, rest).used_points()
    for s in one_splits(A):
        p = s.point_index
        if p in used:
            continue
        lam = rest[p] - lower_hull_value(A, rest, p)
        if lam > 0:
            dec.lambda_one[p] = lam
    for p, lam in dec.lambda_one.items():
        rest = rest - one_split_weight(A, p) * lam
    dec.residual = rest
    return dec


def verify_decomposition(A: PointConfiguration, w, dec: SplitDecomposition) -> bool:
    """Exact reconstruction, coherence of every partial sum, split-prime residual."""
    w = as_weights(w)
    if dec.reconstruct(A) != w:
        return False
    terms = [one_split_weight(A, p) * lam for p, lam in dec.lambda_one.items()]
    terms += [split_weight(A, S) * lam for S, lam in dec.lambda_two]
    running = dec.residual
    for t in terms:
        if not coherence_check(A, running, t):
            return False
        running = running + t
    return is_split_prime(A, dec.residual)


def is_split_prime(A: PointConfiguration, w) -> bool:
    """Σ_w refines no 1-split and no 2-split of A."""
    sigma = regular_subdivision(A, w)
    used = sigma.used_points()
    if any(s.point_index not in used for s in one_splits(A)):
        return False
    return not any(is_refinement(A, sigma, S.subdivision()) for S in two_splits(A))
