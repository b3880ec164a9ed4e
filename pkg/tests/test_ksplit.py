from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import (
    CUBE3,
    OCTAHEDRON_POINT,
    OCTAHEDRON_POINT_SUBDIVISION,
    SQUARE_CENTER,
    SQUARE_EDGE,
    SQUARE_EDGE_SUBDIVISION,
    TETRA_POINT,
    TETRA_POINT_SUBDIVISION,
    TWISTED,
    TWISTED_SUBDIVISION,
)
from splitspan.config import PointConfiguration, Subdivision, regular_subdivision, validate_subdivision
from splitspan.kernel import AffineSubspace, affine_hull, affine_rank, vec
from splitspan.ksplit import (
    KSplitError,
    check_ksplit_subspace_conditions,
    classify_tight_span,
    coarsenings,
    detect_k_split,
    enumerate_coarsest,
    is_coarsest,
    is_regular,
    k_splits,
    ksplit_weight,
    necessary_shape_filter,
    secondary_cone_dim,
)

TRIANGLE_POINT = PointConfiguration.of([(0, 0), (3, 0), (0, 3), (1, 1)])
TRIANGLE_CONE = Subdivision.of([{0, 1, 3}, {0, 2, 3}, {1, 2, 3}])
OCTAHEDRON = PointConfiguration.of([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])


def cube_diagonal_3split() -> Subdivision:
    """Cells {x_i >= x_j for the two j != i} over i: the 3-split around the main diagonal."""
    P = CUBE3.points
    cells = [frozenset(k for k, p in enumerate(P) if all(p[i] >= p[j] for j in range(3))) for i in range(3)]
    return Subdivision.of(cells)


# ---------------------------------------------------------------- regularity


def test_regular_witness_induces_subdivision():
    S = TRIANGLE_CONE
    w = is_regular(TRIANGLE_POINT, S)
    assert w is not None and regular_subdivision(TRIANGLE_POINT, w) == S


def twisted_fold_ratio(A: PointConfiguration) -> Fraction:
    """Independent obstruction for the twisted configuration.

    Normalize the heights of the inner triangle to 0. On the quadrilateral
    through inner edge b_i b_{i+1} the height is c_i * l_i with l_i the affine
    function vanishing on that edge; consistency at the outer vertices forces
    the product of l_{i-1}(a_i) / l_i(a_i) to be 1 for a nonzero solution.
    """
    a, b = A.points[:3], A.points[3:]

    def ell(i, p):
        (x1, y1), (x2, y2) = b[i], b[(i + 1) % 3]
        return (y2 - y1) * (p[0] - x1) - (x2 - x1) * (p[1] - y1)

    ratio = Fraction(1)
    for i in range(3):
        ratio *= ell((i - 1) % 3, a[i]) / ell(i, a[i])
    return ratio


def test_twisted_subdivision_is_not_regular():
    A, S = TWISTED, TWISTED_SUBDIVISION
    assert validate_subdivision(A, S)
    assert twisted_fold_ratio(A) != 1
    assert is_regular(A, S) is None
    assert is_coarsest(A, S)


def test_untwisted_version_is_regular():
    A = PointConfiguration.of([(0, 0), (12, 0), (0, 12), (2, 2), (6, 2), (2, 6)])
    S = TWISTED_SUBDIVISION
    assert validate_subdivision(A, S)
    assert twisted_fold_ratio(A) == 1
    assert is_regular(A, S) is not None


# ---------------------------------------------------------------- coarsest


def test_secondary_cone_dimension():
    # a 2-split of the square with center: cone of dimension d+2 = 4
    S = regular_subdivision(SQUARE_CENTER, (1, 0, 0, 0, 0))
    assert secondary_cone_dim(SQUARE_CENTER, S) == 4
    assert is_coarsest(SQUARE_CENTER, S)
    fan = Subdivision.one_based([[1, 2, 5], [1, 3, 5], [2, 4, 5], [3, 4, 5]])
    assert secondary_cone_dim(SQUARE_CENTER, fan) == 5
    assert not is_coarsest(SQUARE_CENTER, fan)
    assert any(len(C) == 2 for C in coarsenings(SQUARE_CENTER, fan))


def test_trivial_subdivision_is_not_coarsest():
    assert not is_coarsest(SQUARE_CENTER, Subdivision.of([range(5)]))


# ---------------------------------------------------------------- k-splits


def test_cube_diagonal_3_split():
    S = cube_diagonal_3split()
    assert validate_subdivision(CUBE3, S)
    K = detect_k_split(CUBE3, S)
    assert K is not None and K.k == 3
    assert sorted(K.core_face) == [0, 7]
    w = ksplit_weight(CUBE3, K)
    assert w.weights == (0, 2, 2, 1, 2, 1, 1, 0)
    shape = classify_tight_span(CUBE3, S)
    assert shape.kind == "simplex" and shape.f_vector == (3, 3, 1)


@pytest.mark.parametrize("variant", ["all", "drop_last"])
def test_triangle_cone_weight_variants(variant):
    K = detect_k_split(TRIANGLE_POINT, TRIANGLE_CONE)
    assert K is not None and K.k == 3 and K.core_face == frozenset({3})
    assert regular_subdivision(TRIANGLE_POINT, ksplit_weight(TRIANGLE_POINT, K, variant)) == TRIANGLE_CONE


def test_ksplit_weight_rejects_unknown_variant():
    K = detect_k_split(TRIANGLE_POINT, TRIANGLE_CONE)
    with pytest.raises(ValueError):
        ksplit_weight(TRIANGLE_POINT, K, "sideways")


def test_tetrahedron_cone_is_a_4_split():
    K = detect_k_split(TETRA_POINT, TETRA_POINT_SUBDIVISION)
    assert K is not None and K.k == 4
    assert regular_subdivision(TETRA_POINT, ksplit_weight(TETRA_POINT, K)) == TETRA_POINT_SUBDIVISION


def test_non_split_subdivisions_are_rejected():
    fan = Subdivision.one_based([[1, 2, 5], [1, 3, 5], [2, 4, 5], [3, 4, 5]])
    assert detect_k_split(SQUARE_CENTER, fan) is None
    assert detect_k_split(SQUARE_EDGE, SQUARE_EDGE_SUBDIVISION) is None
    assert detect_k_split(TWISTED, TWISTED_SUBDIVISION) is None


def test_cube_k_splits():
    ks = k_splits(CUBE3, max_k=3)
    assert sorted(K.k for K in ks) == [2] * 14 + [3] * 8
    for K in ks:
        assert regular_subdivision(CUBE3, ksplit_weight(CUBE3, K)) == K.subdivision


# ---------------------------------------------------------------- subspaces


def test_subspace_conditions():
    diag = affine_hull([(0, 0, 0), (1, 1, 1)])
    assert check_ksplit_subspace_conditions(CUBE3, diag, 3)
    generic = AffineSubspace(vec((Fraction(1, 3), Fraction(1, 7), 0)), (vec((1, 2, 5)),))
    assert not check_ksplit_subspace_conditions(CUBE3, generic, 3)
    axis = affine_hull([(0, 0, 1), (0, 0, -1)])
    assert check_ksplit_subspace_conditions(OCTAHEDRON, axis, 3)
    with pytest.raises(KSplitError):
        check_ksplit_subspace_conditions(CUBE3, diag, 2)


def test_octahedron_has_no_3_split():
    assert [K.k for K in k_splits(OCTAHEDRON)] == [2, 2, 2]


# ---------------------------------------------------------------- shapes


@pytest.mark.parametrize(
    "A,S,kind",
    [
        (TWISTED, TWISTED_SUBDIVISION, "triangle_fan"),
        (SQUARE_EDGE, SQUARE_EDGE_SUBDIVISION, "glued_triangles"),
        (TETRA_POINT, TETRA_POINT_SUBDIVISION, "simplex"),
        (OCTAHEDRON_POINT, OCTAHEDRON_POINT_SUBDIVISION, "mixed"),
    ],
)
def test_constructed_shapes(A, S, kind):
    assert validate_subdivision(A, S) and is_coarsest(A, S)
    shape = classify_tight_span(A, S)
    assert shape.kind == kind
    assert necessary_shape_filter(shape, len(S))


def test_octahedron_point_tight_span_is_tetrahedron_plus_triangle():
    shape = classify_tight_span(OCTAHEDRON_POINT, OCTAHEDRON_POINT_SUBDIVISION)
    dims = sorted(d for _, d in shape.maximal_faces)
    assert dims == [2, 3]
    (tri, _), (tet, _) = sorted(shape.maximal_faces, key=lambda fd: fd[1])
    assert len(tri) == 3 and len(tet) == 4 and len(tri & tet) == 2


def test_shape_filter_rejects_polygons():
    fan = Subdivision.one_based([[1, 2, 5], [1, 3, 5], [2, 4, 5], [3, 4, 5]])
    v = necessary_shape_filter(classify_tight_span(SQUARE_CENTER, fan), 4)
    assert not v and "4-gon" in v.reason


configs = st.integers(4, 6).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=n, max_size=n, unique=True)
).filter(lambda pts: affine_rank(pts) == 2)


@settings(max_examples=12, deadline=None)
@given(configs)
def test_coarsest_subdivisions_have_consistent_shapes(pts):
    A = PointConfiguration.of(pts)
    for S in enumerate_coarsest(A):
        shape = classify_tight_span(A, S)
        assert necessary_shape_filter(shape, len(S))
        if 2 <= len(S) <= 3:
            assert detect_k_split(A, S, coarsest=True) is not None
        if len(S) == 4:
            assert shape.kind in {"simplex", "triangle_fan", "glued_triangles"}
        w = is_regular(A, S)
        assert w is not None and regular_subdivision(A, w) == S
