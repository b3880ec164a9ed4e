import itertools
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from splitspan.kernel import dot
from splitspan.polyhedron import (
    HPolyhedron,
    VPolyhedron,
    dd_convert_HtoV,
    dd_convert_VtoH,
    face_lattice,
    lower_faces,
    polytope_edges,
    vertex_indices,
)

CUBE = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]


def test_cube_h_representation():
    h = dd_convert_VtoH(VPolyhedron.from_points(CUBE))
    assert len(h.inequalities) == 6 and not h.equations
    v = dd_convert_HtoV(h)
    assert sorted(v.vertices) == sorted(tuple(Fraction(x) for x in p) for p in CUBE)


def test_cube_face_lattice():
    v = VPolyhedron.from_points(CUBE)
    h = dd_convert_VtoH(v)
    lat = face_lattice(h, dd_convert_HtoV(h))
    assert lat.f_vector() == [8, 12, 6, 1]
    assert len(polytope_edges(v)) == 12


def test_lower_dimensional_polytope_gets_equations():
    tri = VPolyhedron.from_points([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    h = dd_convert_VtoH(tri)
    assert len(h.equations) == 1 and len(h.inequalities) == 3
    assert sorted(dd_convert_HtoV(h).vertices) == sorted(tri.vertices)


def test_unbounded_polyhedron():
    # quadrant x >= 0, y >= 0 shifted to (1, 1)
    h = HPolyhedron.from_rows([((1, 0), 1), ((0, 1), 1)])
    v = dd_convert_HtoV(h)
    assert v.vertices == ((1, 1),)
    assert sorted(v.rays) == [(0, 1), (1, 0)]
    lat = face_lattice(h, v)
    assert lat.f_vector() == [1, 2, 1]
    assert face_lattice(h, v, bounded_only=True).f_vector() == [1]


def test_lineality_space():
    h = HPolyhedron.from_rows([((1, 0), 0)])
    v = dd_convert_HtoV(h)
    assert v.lineality and not v.bounded


def test_empty_polyhedron():
    h = HPolyhedron.from_rows([((1,), 1), ((-1,), 0)])
    assert dd_convert_HtoV(h).empty


def test_lower_faces_of_lifted_square():
    lifted = VPolyhedron.from_points([(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)], [(1, 0, 0)])
    lat = lower_faces(lifted)
    assert lat.f_vector() == [4, 5, 2]


def test_vertex_indices_skip_interior_and_duplicates():
    pts = [(0, 0), (2, 0), (1, 1), (0, 2), (2, 0), (1, 0)]
    assert vertex_indices(pts) == [0, 1, 3]


points3 = st.lists(st.tuples(*(st.integers(-4, 4),) * 3), min_size=5, max_size=10, unique=True)


@settings(max_examples=40, deadline=None)
@given(points3)
def test_hull_agrees_with_scipy(pts):
    arr = np.array(pts, float)
    if np.linalg.matrix_rank(arr[1:] - arr[0]) < 3:
        return
    ref = ConvexHull(arr)
    v = VPolyhedron.from_points(pts)
    h = dd_convert_VtoH(v)
    assert sorted(vertex_indices(pts)) == sorted(ref.vertices.tolist())
    assert all(dot(a, p) >= b for a, b in h.inequalities for p in v.vertices)
    # facets: scipy reports triangles; merge coplanar ones by their plane
    planes = {tuple(np.round(eq / np.linalg.norm(eq[:3]), 9)) for eq in ref.equations}
    assert len(h.inequalities) == len(planes)


@settings(max_examples=30, deadline=None)
@given(points3)
def test_double_description_round_trip(pts):
    v = VPolyhedron.from_points(pts)
    h = dd_convert_VtoH(v)
    back = dd_convert_HtoV(h)
    verts = {v.vertices[i] for i in vertex_indices(list(v.vertices))}
    assert set(back.vertices) == verts
    assert dd_convert_VtoH(back) == h


def test_euler_characteristic_of_random_polytopes():
    for pts in itertools.islice(itertools.combinations(CUBE + [(2, 2, 2), (-1, 0, 1)], 6), 0, 60, 7):
        v = VPolyhedron.from_points(pts)
        h = dd_convert_VtoH(v)
        if h.equations:
            continue
        f = face_lattice(h, dd_convert_HtoV(h)).f_vector()
        assert f[0] - f[1] + f[2] == 2
