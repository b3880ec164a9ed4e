"""Point configurations, subdivisions, regular subdivisions and tight spans."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Sequence

from .kernel import Vector, affine_rank, det, dot, fmt, sub, vec
from .lp import strict_lp_feasible
from .polyhedron import (
    FaceLattice,
    HPolyhedron,
    VPolyhedron,
    dd_convert_HtoV,
    dd_convert_VtoH,
    face_lattice,
)


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class PointConfiguration:
    """Finite multiset of rational points; the index is the identity."""

    points: tuple[Vector, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.points:
            raise ConfigurationError("empty configuration")
        d = len(self.points[0])
        if any(len(p) != d for p in self.points):
            raise ConfigurationError("points have different lengths")
        if affine_rank(self.points) != d:
            raise ConfigurationError(
                f"configuration is not full-dimensional in R^{d} (affine dim {affine_rank(self.points)})"
            )
        if self.labels is not None and len(self.labels) != len(self.points):
            raise ConfigurationError("labels and points differ in length")

    @classmethod
    def of(cls, points: Iterable[Sequence], labels=None) -> "PointConfiguration":
        return cls(tuple(vec(p) for p in points), tuple(labels) if labels is not None else None)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.points[0])

    def homogenized(self) -> list[Vector]:
        return [(Fraction(1),) + p for p in self.points]

    def subset(self, idx: Iterable[int]) -> list[Vector]:
        return [self.points[i] for i in sorted(idx)]

    @cached_property
    def facets(self) -> tuple[frozenset[int], ...]:
        """Index sets A ∩ H over the facet hyperplanes H of conv A."""
        return tuple(sorted(_facet_sets(self.points, frozenset(range(self.n))), key=sorted))

    @cached_property
    def hull(self) -> HPolyhedron:
        return _hull(tuple(sorted(set(self.points))))

    def hull_of(self, idx: Iterable[int]) -> HPolyhedron:
        return _hull(tuple(sorted({self.points[i] for i in idx})))

    @cached_property
    def volume(self) -> Fraction:
        return volume(self.points)

    def to_json(self) -> dict:
        out = {"points": [[fmt(x) for x in p] for p in self.points]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PointConfiguration":
        return cls.of(data["points"], data.get("labels"))


@dataclass(frozen=True)
class Subdivision:
    """A subdivision stored by its maximal faces (0-based index sets)."""

    cells: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, cells: Iterable[Iterable[int]]) -> "Subdivision":
        cs = {frozenset(c) for c in cells}
        return cls(tuple(sorted(cs, key=lambda c: tuple(sorted(c)))))

    @classmethod
    def one_based(cls, cells: Iterable[Iterable[int]]) -> "Subdivision":
        return cls.of([i - 1 for i in c] for c in cells)

    def __len__(self) -> int:
        return len(self.cells)

    def used_points(self) -> frozenset[int]:
        return frozenset().union(*self.cells)

    def as_one_based(self) -> list[list[int]]:
        return [sorted(i + 1 for i in c) for c in self.cells]

    def to_json(self) -> dict:
        return {"maximal_faces": self.as_one_based()}

    @classmethod
    def from_json(cls, data: dict) -> "Subdivision":
        return cls.one_based(data["maximal_faces"])


@dataclass(frozen=True)
class WeightFunction:
    weights: tuple[Fraction, ...]

    @classmethod
    def of(cls, ws: Iterable) -> "WeightFunction":
        return cls(vec(ws))

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __add__(self, other: "WeightFunction") -> "WeightFunction":
        return WeightFunction(tuple(a + b for a, b in zip(self.weights, other.weights)))

    def __sub__(self, other: "WeightFunction") -> "WeightFunction":
        return WeightFunction(tuple(a - b for a, b in zip(self.weights, other.weights)))

    def __mul__(self, c) -> "WeightFunction":
        return WeightFunction(tuple(Fraction(c) * a for a in self.weights))

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"weights": [fmt(x) for x in self.weights]}

    @classmethod
    def from_json(cls, data: dict) -> "WeightFunction":
        return cls.of(data["weights"])


def as_weights(w) -> WeightFunction:
    return w if isinstance(w, WeightFunction) else WeightFunction.of(w)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


# ------------------------------------------------------------ hull helpers


@lru_cache(maxsize=4096)
def _hull(points: tuple[Vector, ...]) -> HPolyhedron:
    return dd_convert_VtoH(VPolyhedron(points, (), len(points[0])))


def _facet_sets(points: Sequence[Vector], idx: frozenset[int]) -> set[frozenset[int]]:
    """Facets of conv(points[idx]) as index sets (within idx)."""
    pts = tuple(sorted({points[i] for i in idx}))
    if len(pts) == 1:
        return set()
    h = _hull(pts)
    out = set()
    for a, b in h.inequalities:
        out.add(frozenset(i for i in idx if dot(a, points[i]) == b))
    return out


def subset_faces(points: Sequence[Vector], idx: Iterable[int]) -> set[frozenset[int]]:
    """All nonempty faces of the subconfiguration idx (including idx itself)."""
    idx = frozenset(idx)
    facets = _facet_sets(points, idx)
    faces = {idx}
    frontier = [idx]
    while frontier:
        nxt = []
        for f in frontier:
            for g in facets:
                h = f & g
                if h and h not in faces:
                    faces.add(h)
                    nxt.append(h)
        frontier = nxt
    return faces


def configuration_faces(A: PointConfiguration) -> list[frozenset[int]]:
    """All faces A ∩ H over supporting hyperplanes H, plus A itself."""
    return sorted(subset_faces(A.points, range(A.n)), key=lambda f: (len(f), sorted(f)))


def simplex_volume(pts: Sequence[Vector]) -> Fraction:
    d = len(pts) - 1
    base = pts[0]
    return abs(det([sub(p, base) for p in pts[1:]])) / factorial(d)


def pulling_triangulation(points: Sequence[Vector], idx: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Triangulate conv(points[idx]) by recursively coning from the first vertex."""
    if idx is None:
        idx = range(len(points))
    return _pull(tuple(points), frozenset(idx))


def _pull(points, idx: frozenset[int]) -> list[tuple[int, ...]]:
    distinct = {}
    for i in sorted(idx):
        distinct.setdefault(points[i], i)
    if len(distinct) == 1:
        return [(min(idx),)]
    facets = _facet_sets(points, idx)
    # first point that is a vertex: lies on >= dim facets with trivial intersection
    apex = None
    for i in sorted(distinct.values()):
        containing = [f for f in facets if i in f]
        if containing:
            common = frozenset.intersection(*containing)
            if {points[j] for j in common} == {points[i]}:
                apex = i
                break
    out = []
    for f in facets:
        if points[apex] in {points[j] for j in f}:
            continue
        for s in _pull(points, f):
            out.append(tuple(sorted(s + (apex,))))
    return out


def volume(points: Sequence[Vector]) -> Fraction:
    pts = [vec(p) for p in points]
    return sum((simplex_volume([pts[i] for i in s]) for s in pulling_triangulation(pts)), Fraction(0))


# ------------------------------------------------------------ subdivisions


def proper_intersection(A: PointConfiguration, c1: frozenset[int], c2: frozenset[int]) -> bool:
    """True iff a hyperplane weakly separates c1 and c2 meeting both exactly in c1 ∩ c2."""
    common = c1 & c2
    if c1 <= c2 or c2 <= c1:
        return c1 == c2
    d = A.d
    strict, eqs = [], []
    for i in c1 - common:
        strict.append((A.points[i] + (Fraction(-1),), 0))
    for i in c2 - common:
        strict.append((tuple(-x for x in A.points[i]) + (Fraction(1),), 0))
    for i in common:
        eqs.append((A.points[i] + (Fraction(-1),), 0))
    return strict_lp_feasible(strict=strict, eqs=eqs, nvars=d + 1) is not None


def validate_subdivision(A: PointConfiguration, S: Subdivision) -> Verdict:
    """Check SD1-SD3 for the complex generated by the maximal faces of S."""
    if not S.cells:
        return Verdict(False, "no cells")
    for c in S.cells:
        if not c or min(c) < 0 or max(c) >= A.n:
            return Verdict(False, "index out of range", (tuple(sorted(c)),))
        if affine_rank(A.subset(c)) != A.d:
            return Verdict(False, "SD2: cell not full-dimensional", (tuple(sorted(c)),))
    for c1, c2 in itertools.combinations(S.cells, 2):
        if not proper_intersection(A, c1, c2):
            return Verdict(False, "SD3: improper intersection", (tuple(sorted(c1)), tuple(sorted(c2))))
    total = sum((volume(A.subset(c)) for c in S.cells), Fraction(0))
    if total != A.volume:
        return Verdict(False, f"SD2: cells cover volume {total} of {A.volume}")
    return Verdict(True)


def subdivision_faces(A: PointConfiguration, S: Subdivision) -> set[frozenset[int]]:
    faces: set[frozenset[int]] = set()
    for c in S.cells:
        faces |= subset_faces(A.points, c)
    return faces


def is_interior_face(A: PointConfiguration, f: frozenset[int]) -> bool:
    return not any(f <= g for g in A.facets)


def interior_faces(A: PointConfiguration, S: Subdivision) -> set[frozenset[int]]:
    return {f for f in subdivision_faces(A, S) if is_interior_face(A, f)}


def face_dim(A: PointConfiguration, f: Iterable[int]) -> int:
    return affine_rank(A.subset(f))


# --------------------------------------------------------- regular subdivisions


def lift(A: PointConfiguration, w) -> VPolyhedron:
    w = as_weights(w)
    pts = tuple((w[i],) + A.points[i] for i in range(A.n))
    return VPolyhedron(pts, ((1,) + (0,) * A.d,), A.d + 1)


def regular_subdivision(A: PointConfiguration, w) -> Subdivision:
    """Σ_w(A): projections of the lower facets of the lifted polyhedron.

    Every configuration point on a lower facet belongs to the cell, not just
    the hull vertices.
    """
    w = as_weights(w)
    if len(w) != A.n:
        raise ConfigurationError("weight vector length differs from configuration size")
    L = lift(A, w)
    h = dd_convert_VtoH(L)
    cells = []
    for a, b in h.inequalities:
        if a[0] > 0:
            cells.append(frozenset(i for i, p in enumerate(L.vertices) if dot(a, p) == b))
    return Subdivision.of(cells)


def induces(A: PointConfiguration, w, S: Subdivision) -> bool:
    """Local certificate that Σ_w(A) = S for a valid subdivision S.

    Each cell must carry an affine function agreeing with w on the cell and
    lying strictly below w on every other point.
    """
    w = as_weights(w)
    for c in S.cells:
        h = cell_affine_function(A, w, c)
        if h is None:
            return False
        for i in range(A.n):
            if i not in c and _eval_affine(h, A.points[i]) >= w[i]:
                return False
    return True


def cell_affine_function(A: PointConfiguration, w, cell: Iterable[int]) -> Vector | None:
    """(c0, c) with c0 + c.a = w(a) on the cell, or None if w is not affine there."""
    from .kernel import solve

    w = as_weights(w)
    cell = sorted(cell)
    M = [[Fraction(1)] + list(A.points[i]) for i in cell]
    return solve(M, [w[i] for i in cell])


def _eval_affine(h: Sequence[Fraction], p: Sequence[Fraction]) -> Fraction:
    return h[0] + dot(h[1:], p)


def envelope(A: PointConfiguration, w) -> HPolyhedron:
    w = as_weights(w)
    return HPolyhedron(tuple(((Fraction(1),) + A.points[i], -w[i]) for i in range(A.n)), (), A.d + 1)


@dataclass
class AbstractTightSpan:
    """Poset dual to the interior faces of a subdivision.

    Each face is the set of maximal cells containing an interior face; its
    dimension is d minus the dimension of that interior face.
    """

    faces: dict[frozenset[int], int]
    n_cells: int

    def f_vector(self) -> list[int]:
        top = max(self.faces.values())
        return [sum(1 for v in self.faces.values() if v == k) for k in range(top + 1)]

    @property
    def dim(self) -> int:
        return max(self.faces.values())

    def vertices(self) -> list[int]:
        return sorted(next(iter(f)) for f, k in self.faces.items() if k == 0)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(f)) for f, k in self.faces.items() if k == 1)

    def maximal_faces(self) -> list[frozenset[int]]:
        fs = list(self.faces)
        return sorted((f for f in fs if not any(f < g for g in fs)), key=lambda f: (len(f), sorted(f)))

    def face_sets(self) -> set[frozenset[int]]:
        return set(self.faces)


def abstract_tight_span(A: PointConfiguration, S: Subdivision) -> AbstractTightSpan:
    faces = {}
    for f in interior_faces(A, S):
        cells = frozenset(i for i, c in enumerate(S.cells) if f <= c)
        faces[cells] = A.d - face_dim(A, f)
    return AbstractTightSpan(faces, len(S.cells))


@dataclass
class TightSpan:
    """Bounded faces of the envelope, with the duality to Σ_w recorded.

    ``cell_of_vertex[i]`` is the maximal cell of Σ_w that is tight at vertex i.
    """

    vertices: tuple[Vector, ...]
    lattice: FaceLattice
    cells: Subdivision
    cell_of_vertex: tuple[int, ...]
    abstract_dual: AbstractTightSpan

    def face_sets(self) -> set[frozenset[int]]:
        """Bounded faces, each as the set of Σ_w cells at its vertices."""
        return {frozenset(self.cell_of_vertex[i] for i in f.vertices) for f in self.lattice.faces}

    def f_vector(self) -> list[int]:
        return self.lattice.f_vector()

    @property
    def dim(self) -> int:
        return max(f.dim for f in self.lattice.faces)


def tight_span(A: PointConfiguration, w) -> TightSpan:
    w = as_weights(w)
    E = envelope(A, w)
    V = dd_convert_HtoV(E)
    lat = face_lattice(E, V, bounded_only=True)
    S = Subdivision.of(
        frozenset(i for i in range(A.n) if dot((Fraction(1),) + A.points[i], v) == -w[i]) for v in V.vertices
    )
    cov = []
    for v in V.vertices:
        t = frozenset(i for i in range(A.n) if dot((Fraction(1),) + A.points[i], v) == -w[i])
        cov.append(S.cells.index(t))
    return TightSpan(V.vertices, lat, S, tuple(cov), abstract_tight_span(A, S))


def has_G_property(A: PointConfiguration, S: Subdivision) -> bool:
    inner = interior_faces(A, S)
    minimal = [f for f in inner if not any(g < f for g in inner)]
    return len(minimal) == 1


# ------------------------------------------------------------ refinement


def is_refinement(A: PointConfiguration, S1: Subdivision, S2: Subdivision) -> bool:
    """True iff S1 refines S2 (every cell of S1 lies in a cell of S2)."""
    return all(any(c1 <= c2 for c2 in S2.cells) for c1 in S1.cells)


def common_refinement(A: PointConfiguration, S1: Subdivision, S2: Subdivision) -> Subdivision | None:
    cand = set()
    for c1 in S1.cells:
        for c2 in S2.cells:
            c = c1 & c2
            if len(c) > A.d and affine_rank(A.subset(c)) == A.d:
                cand.add(c)
    cand = {c for c in cand if not any(c < e for e in cand)}
    if not cand:
        return None
    S = Subdivision.of(cand)
    return S if validate_subdivision(A, S) else None


def coherence_check(A: PointConfiguration, w1, w2) -> bool:
    """w1 + w2 is coherent iff Σ_{w1+w2} refines both Σ_{w1} and Σ_{w2}."""
    w1, w2 = as_weights(w1), as_weights(w2)
    S = regular_subdivision(A, w1 + w2)
    return is_refinement(A, S, regular_subdivision(A, w1)) and is_refinement(A, S, regular_subdivision(A, w2))


def minkowski_coherence_check(A: PointConfiguration, w1, w2) -> bool:
    """Slow verifier: every vertex of E(w1+w2) is a sum of points of E(w1), E(w2).

    Equivalent to the Minkowski identity because E(w1)+E(w2) ⊆ E(w1+w2)
    always holds and both sides share the recession cone.
    """
    w1, w2 = as_weights(w1), as_weights(w2)
    E1, E2 = envelope(A, w1), envelope(A, w2)
    V = dd_convert_HtoV(envelope(A, w1 + w2))
    m = A.d + 1
    for v in V.vertices:
        # find x in E1 with v - x in E2
        weak = [(a, b) for a, b in E1.inequalities]
        weak += [(tuple(-x for x in a), b - dot(a, v)) for a, b in E2.inequalities]
        if strict_lp_feasible(weak=weak, nvars=m) is None:
            return False
    return True


def geometric_cells(A: PointConfiguration, S: Subdivision) -> frozenset[frozenset[Vector]]:
    """The polyhedral complex Σ^G, each cell given by its hull vertices."""
    from .polyhedron import vertex_indices

    out = set()
    for c in S.cells:
        pts = A.subset(c)
        out.add(frozenset(pts[i] for i in vertex_indices(pts)))
    return frozenset(out)


def geometrically_equal(A: PointConfiguration, S1: Subdivision, S2: Subdivision) -> bool:
    return geometric_cells(A, S1) == geometric_cells(A, S2)
