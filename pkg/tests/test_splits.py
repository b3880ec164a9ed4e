import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import CUBE3, HEXAGON, SQUARE_CENTER, TRIANGLE, random_corpus
from splitspan.config import PointConfiguration, coherence_check, regular_subdivision, validate_subdivision
from splitspan.ksplit import enumerate_coarsest
from splitspan.splits import (
    SplitError,
    inherit_split,
    is_split_prime,
    one_split_weight,
    one_splits,
    split_coefficient,
    split_decomposition,
    split_from_sides,
    split_weight,
    two_splits,
    verify_decomposition,
)


def convex_polygon(n: int) -> PointConfiguration:
    return PointConfiguration.of([(i, i * i) for i in range(n)])


def test_square_with_center_splits():
    assert [s.point_index for s in one_splits(SQUARE_CENTER)] == [4]
    S = two_splits(SQUARE_CENTER)
    assert sorted(sorted(s.on_hyperplane) for s in S) == [[0, 3, 4], [1, 2, 4]]


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_convex_polygon_splits_are_diagonals(n):
    assert len(two_splits(convex_polygon(n))) == n * (n - 3) // 2
    assert one_splits(convex_polygon(n)) == []


def test_cube_has_fourteen_splits():
    assert len(two_splits(CUBE3)) == 14


def test_octahedron_splits():
    octa = PointConfiguration.of([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    assert len(two_splits(octa)) == 3


def test_triangle_with_interior_point_has_no_2_splits():
    A = PointConfiguration.of([(0, 0), (3, 0), (0, 3), (1, 1)])
    assert two_splits(A) == []
    assert [s.point_index for s in one_splits(A)] == [3]


def test_split_weight_is_the_hinge_function():
    A = PointConfiguration.of([(0, 0), (1, 0), (0, 1), (1, 1)])
    S = two_splits(A)[0]
    w = split_weight(A, S)
    assert w.weights == tuple(max(Fraction(0), S.value(p)) for p in A.points)
    assert regular_subdivision(A, w) == S.subdivision()


@pytest.mark.parametrize("A", [SQUARE_CENTER, HEXAGON, CUBE3, convex_polygon(6)])
def test_each_split_weight_induces_its_split(A):
    for S in two_splits(A):
        assert regular_subdivision(A, split_weight(A, S)) == S.subdivision()
        assert validate_subdivision(A, S.subdivision())
    for s in one_splits(A):
        sub = regular_subdivision(A, one_split_weight(A, s.point_index))
        assert sub.cells == (frozenset(range(A.n)) - {s.point_index},)


def test_one_split_weight_rejects_vertices():
    with pytest.raises(SplitError):
        one_split_weight(TRIANGLE, 0)


def test_split_from_sides_and_inheritance():
    S = two_splits(SQUARE_CENTER)[0]
    assert split_from_sides(SQUARE_CENTER, S.side_minus, S.side_plus) == S
    corners = PointConfiguration.of([(0, 0), (0, 2), (2, 0), (2, 2)])
    for T in two_splits(corners):
        U = inherit_split(corners, SQUARE_CENTER, T)
        assert U in two_splits(SQUARE_CENTER)


@pytest.mark.parametrize("idx", range(0, 24, 3))
def test_two_splits_match_two_cell_coarsest_subdivisions(idx):
    """Oracle: the 2-splits are the coarsest regular subdivisions with two cells."""
    A = random_corpus()[idx]
    from_sec = {S for S in enumerate_coarsest(A) if len(S) == 2}
    assert {S.subdivision() for S in two_splits(A)} == from_sec


def test_split_decomposition_of_fan_weight():
    dec = split_decomposition(SQUARE_CENTER, (0, 0, 0, 0, -1))
    assert sorted(lam for _, lam in dec.lambda_two) == [1, 1]
    assert dec.lambda_one == {}
    assert regular_subdivision(SQUARE_CENTER, dec.residual).cells == (frozenset(range(5)),)
    assert verify_decomposition(SQUARE_CENTER, (0, 0, 0, 0, -1), dec)


def test_split_decomposition_with_a_lifted_center():
    w = (0, 0, 0, 0, 2)
    dec = split_decomposition(SQUARE_CENTER, w)
    assert dec.lambda_one == {4: 2} and dec.lambda_two == []
    assert verify_decomposition(SQUARE_CENTER, w, dec)


def test_split_coefficient_is_zero_when_not_refining():
    w = (1, 0, 0, 0, 0)  # Σ_w is the split along the other diagonal
    coeffs = sorted(split_coefficient(SQUARE_CENTER, w, S) for S in two_splits(SQUARE_CENTER))
    assert coeffs == [0, Fraction(1, 2)]


def test_split_prime():
    assert is_split_prime(SQUARE_CENTER, (0, 0, 0, 0, 0))
    assert not is_split_prime(SQUARE_CENTER, (1, 0, 0, 0, 0))


weights5 = st.lists(st.integers(-4, 4), min_size=5, max_size=5)
weights7 = st.lists(st.integers(-4, 4), min_size=7, max_size=7)


@settings(max_examples=40, deadline=None)
@given(weights5)
def test_decomposition_properties_square_center(w):
    dec = split_decomposition(SQUARE_CENTER, w)
    assert dec.reconstruct(SQUARE_CENTER).weights == tuple(Fraction(x) for x in w)
    assert all(lam > 0 for lam in dec.lambda_one.values())
    assert all(lam > 0 for _, lam in dec.lambda_two)
    assert verify_decomposition(SQUARE_CENTER, w, dec)


@settings(max_examples=30, deadline=None)
@given(weights7)
def test_decomposition_properties_hexagon(w):
    dec = split_decomposition(HEXAGON, w)
    assert verify_decomposition(HEXAGON, w, dec)
    for S in two_splits(HEXAGON):
        assert split_coefficient(HEXAGON, dec.residual, S) == 0


def test_decomposition_is_coherent_for_polygons():
    rng = random.Random(7)
    for n in (5, 6, 7):
        A = convex_polygon(n)
        for _ in range(5):
            w = [rng.randint(-5, 5) for _ in range(n)]
            dec = split_decomposition(A, w)
            assert verify_decomposition(A, w, dec)
            total = dec.residual
            for S, lam in dec.lambda_two:
                assert coherence_check(A, total, split_weight(A, S) * lam)
                total = total + split_weight(A, S) * lam
            # polygons in convex position are totally split-decomposable
            assert len(regular_subdivision(A, dec.residual)) == 1
