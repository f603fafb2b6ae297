from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cutdom.ratmat import (
    EchelonBasis,
    as_rational,
    format_rational,
    integer_row,
    minimum_integer_form,
    rank,
    solve,
    solve_square_integer,
    transpose,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=1, max_size=max_rows)
    )


def test_rank_identity():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3


def test_rank_determinant_two():
    m = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert rank(m) == 3
    assert sympy.Matrix(m).det() == 2


def test_rank_zero_and_empty():
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([]) == 0


def test_rank_rejects_ragged():
    with pytest.raises(ValueError):
        rank([[1, 2], [1]])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=100, deadline=None)
@given(matrices(), st.fractions(min_value=F(1, 7), max_value=9).filter(lambda q: q != 0))
def test_rank_transpose_and_scaling(m, s):
    assert rank(m) == rank(transpose(m))
    scaled = [tuple(s * x for x in row) for row in m]
    assert rank(scaled) == rank(m)


def test_solve_unique_and_singular():
    assert solve([[2, 0], [0, 4]], [1, 1]) == (F(1, 2), F(1, 4))
    assert solve([[1, 1], [2, 2]], [1, 2]) is None
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(st.integers(-6, 6), min_size=n, max_size=n),
    )))
def test_square_integer_solver_agrees(ab):
    a, b = ab
    ref = solve(a, b)
    got = solve_square_integer(a, b)
    if ref is None:
        assert got is None
    else:
        nums, den = got
        assert den > 0
        assert tuple(F(x, den) for x in nums) == ref


def test_echelon_basis():
    b = EchelonBasis(3)
    assert b.add([1, 1, 0])
    assert b.add([0, 1, 1])
    assert not b.add([1, 2, 1])
    assert b.contains([2, 3, 1])
    assert b.rank == 2


def test_rational_parsing_and_format():
    assert as_rational("3/6") == F(1, 2)
    assert format_rational(F(4, 2)) == "2"
    assert format_rational(F(-3, 9)) == "-1/3"
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert integer_row([F(1, 2), F(1, 3)]) == [3, 2]


def test_minimum_integer_form_examples():
    assert minimum_integer_form([1, 1, 1], 2) == ((1, 1, 1), 2)
    prism_w = [1] * 6 + [2] * 3
    assert minimum_integer_form(prism_w, 4) == (tuple(prism_w), 4)
    assert minimum_integer_form([F(1, 2), F(1, 2), 1], 2) == ((1, 1, 2), 4)


@pytest.mark.parametrize("c,rhs", [([1, 1], 0), ([1, 1], -1), ([1, -1], 2), ([0, 0], 2)])
def test_minimum_integer_form_rejects(c, rhs):
    with pytest.raises(ValueError):
        minimum_integer_form(c, rhs)


nonneg = st.lists(st.fractions(min_value=0, max_value=10, max_denominator=16), min_size=1, max_size=6).filter(any)


@settings(max_examples=150, deadline=None)
@given(nonneg, st.fractions(min_value=F(1, 9), max_value=10, max_denominator=9),
       st.fractions(min_value=F(1, 9), max_value=10, max_denominator=9))
def test_minimum_integer_form_idempotent_and_scale_free(c, rhs, s):
    form = minimum_integer_form(c, rhs)
    assert minimum_integer_form(*form) == form
    assert minimum_integer_form([s * x for x in c], s * rhs) == form
