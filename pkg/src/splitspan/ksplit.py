"""k-splits and coarsest subdivisions: regularity, coarseness, weights, shapes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .config import (
    PointConfiguration,
    Subdivision,
    Verdict,
    WeightFunction,
    abstract_tight_span,
    has_G_property,
    interior_faces,
    regular_subdivision,
    subset_faces,
    validate_subdivision,
    volume,
)
from .kernel import AffineSubspace, affine_hull, affine_rank, dot, primitive, rank, solve, sub
from .lp import linprog, strict_lp_feasible


class KSplitError(ValueError):
    pass


@dataclass(frozen=True)
class KSplit:
    subdivision: Subdivision
    k: int
    core_face: frozenset[int]
    core_subspace: AffineSubspace

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "maximal_faces": self.subdivision.as_one_based(),
            "core_face": sorted(i + 1 for i in self.core_face),
        }


# ------------------------------------------------------------- regularity


def _affine_basis(A: PointConfiguration, cell) -> list[int]:
    basis: list[int] = []
    for i in sorted(cell):
        if affine_rank(A.subset(basis + [i])) == len(basis):
            basis.append(i)
    return basis


def _barycentric(A: PointConfiguration, basis: list[int], p) -> tuple[Fraction, ...]:
    M = [[Fraction(1)] * len(basis)] + [[A.points[b][t] for b in basis] for t in range(A.d)]
    lam = solve(M, (Fraction(1),) + tuple(p))
    if lam is None:
        raise KSplitError("point outside the affine hull of a cell")
    return lam


def _fold_row(n: int, q: int, basis: list[int], lam) -> tuple:
    """Coefficients of w_q - (affine interpolation of w on basis at a_q)."""
    r = [Fraction(0)] * n
    r[q] += 1
    for b, l in zip(basis, lam):
        r[b] -= l
    return tuple(r)


def is_regular(A: PointConfiguration, S: Subdivision) -> WeightFunction | None:
    """A weight inducing S, or None if S is not regular.

    Unknowns are the weights only: w must be affine on every cell, fold
    strictly upward across every interior wall, and lift every unused point
    strictly above the cell whose hull contains it.
    """
    n = A.n
    bases = [_affine_basis(A, c) for c in S.cells]
    strict, eqs = [], []
    for c, basis in zip(S.cells, bases):
        for i in sorted(c - set(basis)):
            eqs.append((_fold_row(n, i, basis, _barycentric(A, basis, A.points[i])), 0))
    for (c1, b1), (c2, _) in itertools.combinations(zip(S.cells, bases), 2):
        wall = c1 & c2
        if len(wall) < A.d or affine_rank(A.subset(wall)) != A.d - 1:
            continue
        q = min(c2 - c1)
        strict.append((_fold_row(n, q, b1, _barycentric(A, b1, A.points[q])), 0))
    used = S.used_points()
    for i in range(n):
        if i in used:
            continue
        c, basis = next((c, b) for c, b in zip(S.cells, bases) if A.hull_of(c).contains(A.points[i]))
        strict.append((_fold_row(n, i, basis, _barycentric(A, basis, A.points[i])), 0))
    x = strict_lp_feasible(strict=strict, eqs=eqs, nvars=n)
    if x is None:
        return None
    w = WeightFunction(tuple(x))
    if regular_subdivision(A, w) != S:
        raise KSplitError("regularity witness does not reproduce the subdivision")
    return w


def secondary_cone_dim(A: PointConfiguration, S: Subdivision) -> int:
    """Dimension of {w : w is affine on every maximal cell of S}."""
    n, d = A.n, A.d
    nv = n + len(S.cells) * (d + 1)
    rows = []
    for c, cell in enumerate(S.cells):
        base = n + c * (d + 1)
        for i in cell:
            r = [Fraction(0)] * nv
            r[i] = Fraction(1)
            r[base] = Fraction(-1)
            for t, x in enumerate(A.points[i]):
                r[base + 1 + t] = -x
            rows.append(r)
    return nv - rank(rows)


def _set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def coarsenings(A: PointConfiguration, S: Subdivision) -> Iterator[Subdivision]:
    """Nontrivial subdivisions T != S with S refining T, found by merging cells.

    Each merged cell is the set of points in the hull of the union, either
    restricted to points used by S or taking every point of A.
    """
    used = S.used_points()
    everything = frozenset(range(A.n))
    vols = {c: volume(A.subset(c)) for c in S.cells}
    seen = set()
    for part in _set_partitions(list(S.cells)):
        groups = []
        ok = True
        for g in part:
            union = frozenset().union(*g)
            if len(g) > 1 and volume(A.subset(union)) != sum(vols[c] for c in g):
                ok = False
                break
            groups.append(union)
        if not ok:
            continue
        hulls = [A.hull_of(gr) for gr in groups]
        for pool in (used, everything):
            cells = [frozenset(i for i in pool if h.contains(A.points[i])) for h in hulls]
            T = Subdivision.of(cells)
            if T == S or T in seen or (len(T) == 1 and T.cells[0] == everything):
                continue
            seen.add(T)
            if validate_subdivision(A, T):
                yield T


def is_coarsest(A: PointConfiguration, S: Subdivision, witness: WeightFunction | None = None) -> bool:
    """S is nontrivial and only coarsened by the trivial subdivision.

    Regular S: the secondary cone has dimension d+2 (affine functions plus one
    ray). Non-regular S: no merge of cells gives a valid coarser subdivision.
    """
    if not validate_subdivision(A, S):
        raise KSplitError("not a valid subdivision")
    if len(S) == 1 and S.cells[0] == frozenset(range(A.n)):
        return False
    w = witness if witness is not None else is_regular(A, S)
    if w is not None:
        return secondary_cone_dim(A, S) == A.d + 2
    return next(coarsenings(A, S), None) is None


# ---------------------------------------------------------------- k-splits


def _is_simplex_poset(faces: dict, k: int) -> bool:
    if len(faces) != 2**k - 1:
        return False
    return all(dim == len(f) - 1 for f, dim in faces.items())


def detect_k_split(A: PointConfiguration, S: Subdivision, coarsest: bool | None = None) -> KSplit | None:
    k = len(S.cells)
    if k < 2 or not has_G_property(A, S):
        return None
    ats = abstract_tight_span(A, S)
    if not _is_simplex_poset(ats.faces, k):
        return None
    core = frozenset.intersection(*S.cells)
    if affine_rank(A.subset(core)) != A.d - k + 1:
        return None
    if coarsest is None:
        coarsest = is_coarsest(A, S)
    if not coarsest:
        return None
    return KSplit(S, k, core, affine_hull(A.subset(core)))


def ksplit_weight(A: PointConfiguration, K: KSplit, variant: str = "all") -> WeightFunction:
    """Weight from the complete fan obtained by projecting along the core subspace.

    Each point is written in the primitive ray generators of the cone of its
    cell; ``variant="all"`` sums all coefficients, ``variant="drop_last"``
    leaves out the coefficient of the last ray.
    """
    S, k = K.subdivision, K.k
    core_pts = A.subset(K.core_face)
    center = tuple(sum(c) / len(core_pts) for c in zip(*core_pts))
    normals = K.core_subspace.normals()

    def proj(p):
        q = sub(p, center)
        return tuple(dot(nv, q) for nv in normals)

    cells = list(S.cells)
    rays = []
    for i in range(k):
        g = frozenset.intersection(*(cells[j] for j in range(k) if j != i))
        x = next(proj(A.points[a]) for a in sorted(g) if any(proj(A.points[a])))
        rays.append(tuple(Fraction(t) for t in primitive(x)))
    weights = []
    for a in range(A.n):
        j = next(j for j, c in enumerate(cells) if a in c)
        gens = [i for i in range(k) if i != j]
        p = proj(A.points[a])
        M = [[rays[i][r] for i in gens] for r in range(k - 1)]
        lam = solve(M, p)
        if lam is None or any(x < 0 for x in lam):
            raise KSplitError("projected point is not in the cone of its cell")
        coeff = dict(zip(gens, lam))
        if variant == "drop_last":
            coeff.pop(k - 1, None)
        elif variant != "all":
            raise ValueError(f"unknown variant {variant!r}")
        weights.append(sum(coeff.values(), Fraction(0)))
    w = WeightFunction(tuple(weights))
    if regular_subdivision(A, w) != S:
        raise KSplitError("k-split weight does not induce the k-split")
    return w


def _meets_in_face(points, G: frozenset[int], U: AffineSubspace) -> bool:
    """U ∩ conv G = conv F with F = G ∩ U a face of G (or both empty)."""
    normals = U.normals()
    F = frozenset(i for i in G if U.contains(points[i]))
    if F and F not in subset_faces(points, G):
        return False
    idx = sorted(G)
    m = len(idx)
    weak = [(tuple(int(i == j) for j in range(m)), 0) for i in range(m)]
    eqs = [(tuple(dot(nv, points[i]) for i in idx), dot(nv, U.basepoint)) for nv in normals]
    eqs.append(((1,) * m, 1))
    obj = [int(i not in F) for i in idx]
    status, _, val = linprog(obj, weak, eqs, m)
    if status == "infeasible":
        return not F
    return val == 0


def check_ksplit_subspace_conditions(A: PointConfiguration, U: AffineSubspace, k: int) -> Verdict:
    """Facet test: U meets each facet in a face or cuts it like an l-split, l <= k.

    Passing is necessary for U to carry a k-split, not sufficient.
    """
    if A.d - U.dim != k - 1:
        raise KSplitError("U must have codimension k-1")
    return _subspace_check(A.points, frozenset(range(A.n)), U, k, A.facets)


def _subspace_check(points, G, U, k, facets) -> Verdict:
    for facet in facets:
        if _meets_in_face(points, facet, U):
            continue
        F = frozenset(i for i in facet if U.contains(points[i]))
        fpts = [points[i] for i in sorted(facet)]
        dimG = affine_rank(fpts)
        if not F:
            return Verdict(False, "meets a facet away from configuration points", (tuple(sorted(facet)),))
        # U restricted to aff(facet) must be spanned by configuration points
        inter = affine_hull([points[i] for i in sorted(F)])
        basis = list(affine_hull(fpts).direction_basis)
        udir = list(U.direction_basis)
        dim_cap = len(udir) + len(basis) - rank(udir + basis) if udir and basis else 0
        if inter.dim != dim_cap:
            return Verdict(False, "cut of a facet not spanned by configuration points", (tuple(sorted(facet)),))
        ell = dimG - inter.dim + 1
        if ell > k:
            return Verdict(False, f"facet cut needs an {ell}-split", (tuple(sorted(facet)),))
        sub_facets = [f for f in _facets_of(points, facet)]
        v = _subspace_check(points, facet, inter, ell, sub_facets)
        if not v:
            return v
    return Verdict(True)


def _facets_of(points, G: frozenset[int]) -> list[frozenset[int]]:
    from .config import _facet_sets

    return sorted(_facet_sets(points, G), key=sorted)


# ------------------------------------------------------- tight span shapes

SHAPE_KINDS = (
    "point",
    "segment",
    "simplex",
    "triangle_fan",
    "glued_triangles",
    "polygon",
    "pyramid",
    "bipyramid",
    "stacked_tetrahedra",
    "nonplanar_book",
    "mixed",
    "other",
)


@dataclass(frozen=True)
class TightSpanShape:
    kind: str
    f_vector: tuple[int, ...]
    maximal_faces: tuple[tuple[frozenset[int], int], ...]
    edges: tuple[tuple[int, int], ...]
    vertices: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "f_vector": list(self.f_vector),
            "maximal_faces": [{"cells": sorted(i + 1 for i in f), "dim": d} for f, d in self.maximal_faces],
        }


def _kind(faces: dict[frozenset[int], int], maximal: list[frozenset[int]]) -> str:
    dims = {faces[f] for f in maximal}
    if len(dims) > 1:
        return "mixed"
    dim = dims.pop()
    if dim == 0:
        return "point"
    if dim == 1:
        return "segment" if len(maximal) == 1 else "other"
    if len(maximal) == 1:
        f = maximal[0]
        sub = {g: dm for g, dm in faces.items() if g <= f}
        if len(f) == dim + 1:
            return "simplex"
        if dim == 2:
            return "polygon"
        if dim == 3 and len(f) == 5:
            facets = [g for g, dm in sub.items() if dm == 2]
            sizes = sorted(len(g) for g in facets)
            if sizes == [3, 3, 3, 3, 4]:
                return "pyramid"
            if sizes == [3] * 6:
                return "bipyramid"
        return "other"
    simplices = all(len(f) == dim + 1 for f in maximal)
    if dim == 2 and simplices:
        common_edge = frozenset.intersection(*maximal)
        if len(common_edge) == 2:
            return "glued_triangles" if len(maximal) == 2 else "nonplanar_book"
        if len(common_edge) == 1:
            return "triangle_fan"
        return "glued_triangles"
    if dim == 3 and simplices:
        return "stacked_tetrahedra"
    return "other"


def classify_tight_span(A: PointConfiguration, S: Subdivision) -> TightSpanShape:
    ats = abstract_tight_span(A, S)
    maximal = ats.maximal_faces()
    return TightSpanShape(
        _kind(ats.faces, maximal),
        tuple(ats.f_vector()),
        tuple((f, ats.faces[f]) for f in maximal),
        tuple(ats.edges()),
        tuple(ats.vertices()),
    )


def _two_connected(vertices, edges) -> bool:
    vs = list(vertices)
    if len(vs) <= 2:
        return len(vs) < 2 or len(edges) > 0
    adj = {v: set() for v in vs}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)

    def connected(removed):
        rest = [v for v in vs if v != removed]
        seen = {rest[0]}
        stack = [rest[0]]
        while stack:
            u = stack.pop()
            for x in adj[u]:
                if x != removed and x not in seen:
                    seen.add(x)
                    stack.append(x)
        return len(seen) == len(rest)

    return connected(None) and all(connected(v) for v in vs)


def necessary_shape_filter(shape: TightSpanShape, k: int) -> Verdict:
    """Necessary conditions on the tight span of a coarsest subdivision with k cells."""
    maximal = [f for f, _ in shape.maximal_faces]
    dims = [d for _, d in shape.maximal_faces]
    if len(maximal) == 1 and dims[0] == 2 and len(maximal[0]) == k and k > 3:
        return Verdict(False, f"tight span is a {k}-gon")
    if not _two_connected(shape.vertices, shape.edges):
        return Verdict(False, "graph of the tight span is not 2-connected")
    if len(shape.vertices) >= 3 and any(d == 1 for d in dims):
        return Verdict(False, "tight span has a maximal edge")
    if len(maximal) == 2 and dims == [2, 2]:
        sizes = sorted(len(f) for f in maximal)
        if sizes == [3, k - 1] and k > 4 and len(maximal[0] & maximal[1]) == 2:
            return Verdict(False, f"tight span is a {k - 1}-gon glued to a triangle")
    return Verdict(True)


# ------------------------------------------------------------ enumeration


def enumerate_coarsest(A: PointConfiguration) -> list[Subdivision]:
    """All coarsest regular subdivisions, read off the secondary polytope's facets."""
    from .secondary import secondary_polytope

    out = []
    for facet in secondary_polytope(A).facets:
        S = facet.subdivision
        if not is_coarsest(A, S):
            raise KSplitError("secondary facet subdivision is not coarsest")
        out.append(S)
    return sorted(set(out), key=lambda s: s.as_one_based())


def k_splits(A: PointConfiguration, max_k: int | None = None) -> list[KSplit]:
    out = []
    for S in enumerate_coarsest(A):
        if max_k is not None and len(S) > max_k:
            continue
        K = detect_k_split(A, S, coarsest=True)
        if K is not None:
            out.append(K)
    return out
