from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from splitspan.kernel import (
    affine_hull,
    affine_rank,
    det,
    fmt,
    frac,
    kernel_basis,
    matvec,
    primitive,
    rank,
    rref,
    solve,
)

small = st.integers(-6, 6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5), entries=rationals):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(entries, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def test_frac_parses_strings_and_rejects_floats():
    assert frac("3/6") == Fraction(1, 2)
    assert frac(4) == 4
    with pytest.raises(TypeError):
        frac(0.5)


def test_fmt_round_trip():
    assert fmt(Fraction(-3, 4)) == "-3/4"
    assert fmt(Fraction(6, 3)) == "2"
    assert frac(fmt(Fraction(7, 9))) == Fraction(7, 9)


def test_primitive_clears_denominators():
    assert primitive([Fraction(1, 2), Fraction(-3, 4), 0]) == (2, -3, 0)
    assert primitive([0, 0]) == (0, 0)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(m):
    assert det(m) == Fraction(str(sympy.Matrix(m).det()))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_basis_is_a_basis_of_the_null_space(m):
    ker = kernel_basis(m)
    cols = len(m[0])
    assert len(ker) == cols - rank(m)
    for v in ker:
        assert all(x == 0 for x in matvec(m, v))
    if ker:
        assert rank(ker) == len(ker)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(m):
    R, piv = rref(m)
    S, spiv = sympy.Matrix(m).rref()
    assert tuple(piv) == tuple(spiv)
    for i, row in enumerate(R):
        assert [Fraction(str(x)) for x in S.row(i)] == row


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_returns_solution_when_consistent(m, data):
    x0 = data.draw(st.lists(rationals, min_size=len(m[0]), max_size=len(m[0])))
    b = matvec(m, x0)
    x = solve(m, b)
    assert x is not None and matvec(m, x) == b


def test_solve_detects_inconsistency():
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


def test_affine_hull_and_rank():
    pts = [(0, 0, 0), (1, 1, 1), (2, 2, 2)]
    U = affine_hull(pts)
    assert U.dim == 1 == affine_rank(pts)
    assert U.contains((5, 5, 5)) and not U.contains((1, 0, 0))
    for nv in U.normals():
        assert sum(a * b for a, b in zip(nv, (1, 1, 1))) == 0
    assert affine_rank([]) == -1
    assert affine_rank([(3, 4)]) == 0
