"""H/V conversion by the double description method, faces, lower hulls.

Conversions run on integer homogenized cones; rays are kept primitive so the
whole computation stays in Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .kernel import Vector, affine_rank, dot, fmt, frac, integer_row, primitive, rank, rref, vec
from .lp import strict_lp_feasible

Ineq = tuple[Vector, Fraction]  # a.x >= b


@dataclass(frozen=True)
class HPolyhedron:
    inequalities: tuple[Ineq, ...]
    equations: tuple[Ineq, ...] = ()
    ambient_dim: int = 0

    @classmethod
    def from_rows(cls, ineqs, eqs=(), ambient_dim=None) -> "HPolyhedron":
        ineqs = tuple((vec(a), frac(b)) for a, b in ineqs)
        eqs = tuple((vec(a), frac(b)) for a, b in eqs)
        if ambient_dim is None:
            ambient_dim = len((ineqs or eqs)[0][0])
        return cls(ineqs, eqs, ambient_dim)

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) >= b for a, b in self.inequalities) and all(
            dot(a, x) == b for a, b in self.equations
        )

    def to_json(self) -> dict:
        return {
            "ineqs": [[fmt(x) for x in a] + [fmt(b)] for a, b in self.inequalities],
            "eqs": [[fmt(x) for x in a] + [fmt(b)] for a, b in self.equations],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HPolyhedron":
        ineqs = [(row[:-1], row[-1]) for row in data.get("ineqs", [])]
        eqs = [(row[:-1], row[-1]) for row in data.get("eqs", [])]
        return cls.from_rows(ineqs, eqs)


@dataclass(frozen=True)
class VPolyhedron:
    vertices: tuple[Vector, ...]
    rays: tuple[tuple[int, ...], ...] = ()
    ambient_dim: int = 0
    lineality: tuple[tuple[int, ...], ...] = ()
    empty: bool = False

    @classmethod
    def from_points(cls, vertices, rays=()) -> "VPolyhedron":
        vertices = tuple(vec(v) for v in vertices)
        rays = tuple(primitive(vec(r)) for r in rays)
        dim = len((vertices or rays)[0])
        return cls(vertices, rays, dim)

    @property
    def bounded(self) -> bool:
        return not self.rays and not self.lineality

    def to_json(self) -> dict:
        out = {
            "vertices": [[fmt(x) for x in v] for v in self.vertices],
            "rays": [[str(x) for x in r] for r in self.rays],
        }
        if self.lineality:
            out["lineality"] = [[str(x) for x in r] for r in self.lineality]
        if self.empty:
            out["empty"] = True
        return out

    @classmethod
    def from_json(cls, data: dict) -> "VPolyhedron":
        return cls.from_points(data["vertices"], data.get("rays", []))


@dataclass(frozen=True)
class Face:
    vertices: frozenset[int]
    rays: frozenset[int]
    dim: int

    @property
    def bounded(self) -> bool:
        return not self.rays


@dataclass
class FaceLattice:
    """Nonempty faces of a polyhedron, graded by dimension.

    ``faces`` is sorted by (dim, vertex tuple, ray tuple); ``order`` holds
    index pairs (i, j) with face i a facet of face j (the covering relation).
    """

    faces: list[Face]
    order: list[tuple[int, int]] = field(default_factory=list)

    def f_vector(self) -> list[int]:
        if not self.faces:
            return []
        top = max(f.dim for f in self.faces)
        return [sum(1 for f in self.faces if f.dim == k) for k in range(top + 1)]

    def of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    def maximal(self) -> list[Face]:
        covered = {i for i, _ in self.order}
        return [f for i, f in enumerate(self.faces) if i not in covered]


# ---------------------------------------------------------------- DD core


def _normalize(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def _idot(h, r) -> int:
    return sum(a * b for a, b in zip(h, r) if a and b)


def dd_cone(constraints: Sequence[Sequence[int]], dim: int):
    """Extreme rays and lineality basis of {y : h.y >= 0 for all h}.

    Constraints are integer vectors processed in the given order.
    """
    lin: list[tuple[int, ...]] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[int, ...]] = []
    zeros: list[int] = []  # bitmask of tight constraints per ray
    for idx, h in enumerate(constraints):
        bit = 1 << idx
        hv = [_idot(h, l) for l in lin]
        k = next((i for i, x in enumerate(hv) if x != 0), None)
        if k is not None:
            l0 = lin[k]
            s0 = hv[k]
            if s0 < 0:
                l0 = tuple(-x for x in l0)
                s0 = -s0
            new_lin = []
            for i, l in enumerate(lin):
                if i == k:
                    continue
                s = hv[i]
                if s == 0:
                    new_lin.append(l)
                else:
                    new_lin.append(_normalize([s0 * a - s * b for a, b in zip(l, l0)]))
            new_rays = []
            for r in rays:
                s = _idot(h, r)
                if s == 0:
                    new_rays.append(r)
                else:
                    new_rays.append(_normalize([s0 * a - s * b for a, b in zip(r, l0)]))
            zeros = [z | bit for z in zeros]
            all_prev = bit - 1
            rays = new_rays + [l0]
            zeros.append(all_prev)
            lin = new_lin
            continue
        vals = [_idot(h, r) for r in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        zer = [i for i, s in enumerate(vals) if s == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zeros = [zeros[i] for i in pos] + [zeros[i] | bit for i in zer]
        need = dim - len(lin) - 2
        for p in pos:
            zp = zeros[p]
            for q in neg:
                common = zp & zeros[q]
                if bin(common).count("1") < need:
                    continue
                adjacent = True
                for r in range(len(rays)):
                    if r != p and r != q and common & ~zeros[r] == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                sp, sq = vals[p], vals[q]
                new = _normalize([sp * a - sq * b for a, b in zip(rays[q], rays[p])])
                new_rays.append(new)
                new_zeros.append(common | bit)
        rays, zeros = new_rays, new_zeros
    return rays, lin


# ------------------------------------------------------------ conversions


def dd_convert_HtoV(h: HPolyhedron) -> VPolyhedron:
    """V-representation of an H-polyhedron (exact double description)."""
    d = h.ambient_dim
    cons: list[list[int]] = [[1] + [0] * d]
    for a, b in h.inequalities:
        cons.append(integer_row([-b] + list(a)))
    for a, b in h.equations:
        row = integer_row([-b] + list(a))
        cons.append(row)
        cons.append([-x for x in row])
    rays, lin = dd_cone(cons, d + 1)
    verts, dirs = [], []
    for r in rays:
        if r[0] > 0:
            verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        else:
            dirs.append(primitive(r[1:]))
    lineality = tuple(tuple(l[1:]) for l in lin)
    verts = sorted(set(verts))
    dirs = sorted(set(dirs))
    return VPolyhedron(tuple(verts), tuple(dirs), d, lineality, empty=not verts)


def dd_convert_VtoH(v: VPolyhedron) -> HPolyhedron:
    """Irredundant facet inequalities plus affine-hull equations."""
    d = v.ambient_dim
    if not v.vertices:
        raise ValueError("empty V-polyhedron")
    cons = [integer_row([1] + list(p)) for p in v.vertices]
    cons += [[0] + list(r) for r in v.rays]
    rays, lin = dd_cone(cons, d + 1)
    # canonical equations via RREF of the lineality space
    E, piv = rref(lin) if lin else ([], [])
    eqs = [(tuple(row[1:]), -row[0]) for row in E]
    ineqs = []
    for r in rays:
        z = [Fraction(x) for x in r]
        for row, p in zip(E, piv):
            if z[p] != 0:
                f = z[p]
                z = [a - f * b for a, b in zip(z, row)]
        if all(x == 0 for x in z[1:]):
            continue  # the trivially valid 0 >= -c
        pr = primitive(z)
        ineqs.append((tuple(Fraction(x) for x in pr[1:]), Fraction(-pr[0])))
    ineqs = sorted(set(ineqs))
    eq_out = []
    for a, b in eqs:
        pr = primitive(list(a) + [b])
        eq_out.append((tuple(Fraction(x) for x in pr[:-1]), Fraction(pr[-1])))
    return HPolyhedron(tuple(ineqs), tuple(eq_out), d)


# ------------------------------------------------------------- face lattice


def incidence(h: HPolyhedron, v: VPolyhedron) -> tuple[list[frozenset[int]], list[frozenset[int]]]:
    """Tight inequality sets of each vertex and each ray."""
    vin = [frozenset(i for i, (a, b) in enumerate(h.inequalities) if dot(a, p) == b) for p in v.vertices]
    rin = [frozenset(i for i, (a, b) in enumerate(h.inequalities) if dot(a, r) == 0) for r in v.rays]
    return vin, rin


def face_lattice(h: HPolyhedron, v: VPolyhedron, bounded_only: bool = False) -> FaceLattice:
    """All nonempty faces, computed as closures of inequality-tight sets."""
    nv, nr = len(v.vertices), len(v.rays)
    vin, rin = incidence(h, v)
    facet_sets = []
    for j in range(len(h.inequalities)):
        fv = frozenset(i for i in range(nv) if j in vin[i])
        fr = frozenset(i for i in range(nr) if j in rin[i])
        if fv:
            facet_sets.append((fv, fr))
    top = (frozenset(range(nv)), frozenset(range(nr)))
    seen = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for fv, fr in frontier:
            for gv, gr in facet_sets:
                iv, ir = fv & gv, fr & gr
                if not iv or (iv, ir) in seen:
                    continue
                seen.add((iv, ir))
                nxt.append((iv, ir))
        frontier = nxt
    faces = []
    for fv, fr in seen:
        if bounded_only and fr:
            continue
        pts = [v.vertices[i] for i in sorted(fv)]
        base = pts[0]
        dirs = [tuple(x - y for x, y in zip(p, base)) for p in pts[1:]]
        dirs += [tuple(Fraction(x) for x in v.rays[i]) for i in fr]
        faces.append(Face(fv, fr, rank(dirs) if dirs else 0))
    faces.sort(key=lambda f: (f.dim, tuple(sorted(f.vertices)), tuple(sorted(f.rays))))
    order = []
    for i, f in enumerate(faces):
        for j, g in enumerate(faces):
            if g.dim == f.dim + 1 and f.vertices <= g.vertices and f.rays <= g.rays:
                order.append((i, j))
    return FaceLattice(faces, order)


def lower_faces(lifted: VPolyhedron) -> FaceLattice:
    """Bounded faces of a polyhedron whose recession cone is pos(e_0)."""
    if lifted.lineality or tuple(lifted.rays) not in ((), ((1,) + (0,) * (lifted.ambient_dim - 1),)):
        raise ValueError("recession cone must be generated by the first unit vector")
    ray = (1,) + (0,) * (lifted.ambient_dim - 1)
    v = VPolyhedron(lifted.vertices, (ray,), lifted.ambient_dim)
    h = dd_convert_VtoH(v)
    # keep only generators that are vertices
    vin, _ = incidence(h, v)
    keep = [i for i, p in enumerate(v.vertices) if _is_vertex(h, vin[i], v.ambient_dim)]
    vv = VPolyhedron(tuple(v.vertices[i] for i in keep), (ray,), v.ambient_dim)
    return face_lattice(h, vv, bounded_only=True)


def _is_vertex(h: HPolyhedron, tight: frozenset[int], d: int) -> bool:
    rows = [h.inequalities[i][0] for i in tight] + [a for a, _ in h.equations]
    return rank(rows) == d if rows else d == 0


def polytope_edges(v: VPolyhedron) -> list[tuple[int, int]]:
    """All 1-faces of a polytope, as index pairs into ``v.vertices``."""
    if not v.bounded:
        raise ValueError("polytope_edges needs a bounded polyhedron")
    if len(v.vertices) < 2:
        return []
    h = dd_convert_VtoH(v)
    vin, _ = incidence(h, v)
    n = len(v.vertices)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            common = vin[i] & vin[j]
            face = [k for k in range(n) if common <= vin[k]]
            if face == [i, j]:
                edges.append((i, j))
    return edges


def vertex_indices(points: Sequence[Sequence]) -> list[int]:
    """Indices of the points that are vertices of their convex hull (first copy only)."""
    pts = [vec(p) for p in points]
    v = VPolyhedron(tuple(sorted(set(pts))), (), len(pts[0]))
    h = dd_convert_VtoH(v)
    vin, _ = incidence(h, v)
    verts = {p for p, t in zip(v.vertices, vin) if _is_vertex(h, t, len(pts[0]))}
    out, seen = [], set()
    for i, p in enumerate(pts):
        if p in verts and p not in seen:
            out.append(i)
            seen.add(p)
    return out


def interior_point(h: HPolyhedron) -> Vector | None:
    """A point in the relative interior w.r.t. the inequalities, if any."""
    strict = [(a, b) for a, b in h.inequalities]
    return strict_lp_feasible(strict=strict, eqs=list(h.equations), nvars=h.ambient_dim)
