from fractions import Fraction

import pytest
from hypothesis import given, seed, settings, strategies as st

from models.matrices import Mat3
from utils.errors import RankDeficient
from utils.exact_linalg import determinant, rank, solve

entries = st.fractions(min_value=-6, max_value=6, max_denominator=6)
square3 = st.lists(entries, min_size=9, max_size=9)


def test_determinant_small_cases():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[Fraction(1, 2), 1], [Fraction(1, 3), 1]]) == Fraction(1, 6)
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0
    assert determinant([]) == 1
    with pytest.raises(ValueError):
        determinant([[1, 2, 3], [4, 5, 6]])


@seed(31)
@settings(max_examples=60, deadline=None)
@given(square3)
def test_determinant_matches_cofactor_expansion(values):
    rows = [values[0:3], values[3:6], values[6:9]]
    assert determinant(rows) == Mat3(tuple(values)).det()


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0, 0], [0, 1, 0], [1, 1, 0]]) == 2
    assert rank([]) == 0


def test_solve_overdetermined_consistent():
    assert solve([[1, 1], [1, -1], [2, 0]], [3, 1, 4]) == [2, 1]


def test_solve_returns_none_when_inconsistent():
    assert solve([[1, 1], [1, -1], [2, 0]], [3, 1, 5]) is None


def test_solve_rank_deficient():
    with pytest.raises(RankDeficient):
        solve([[1, 1], [2, 2]], [2, 4])


def test_solve_rejects_mismatched_rhs():
    with pytest.raises(ValueError):
        solve([[1, 0], [0, 1]], [1])


@seed(32)
@settings(max_examples=40, deadline=None)
@given(square3, st.lists(entries, min_size=3, max_size=3))
def test_solve_recovers_solution(values, x):
    rows = [values[0:3], values[3:6], values[6:9]]
    rhs = [sum(a * b for a, b in zip(row, x)) for row in rows]
    if determinant(rows) == 0:
        return
    assert solve(rows, rhs) == x
