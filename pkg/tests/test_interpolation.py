import pytest

from models.interpolation import Interpolator, degree_schedule, evaluation_point, interpolation_basis
from models.matrices import identity_pair
from models.polynomial import T, T5
from utils.errors import BasisInsufficient
from utils.helpers import parse_word


def test_evaluation_point_at_identity():
    point = evaluation_point(identity_pair())
    assert set(point) == {T(i) for i in (1, -1, 2, -2, 3, -3, 4, -4, 5, -5)}
    assert all(v == 3 for v in point.values())


def test_degree_schedule():
    assert degree_schedule(parse_word("x1x2x1X2")) == (2, 4, 6)
    assert degree_schedule(parse_word("x1^4 x2^4")) == (2, 4, 6, 8)


def test_basis_respects_grading():
    basis = interpolation_basis(parse_word("x1X2x1X2"), 4)
    assert ((T5, 1),) not in basis
    assert ((T(4), 2),) in basis
    assert ((T(-4), 1),) in basis


def test_degree_two_is_insufficient_for_a_cubic_trace():
    with pytest.raises(BasisInsufficient) as info:
        Interpolator().reduce(parse_word("x1x2x1X2"), 2)
    assert info.value.degree_bound == 2


def test_interpolation_reproduces_the_rule_table(store):
    w = parse_word("x1x2x1X2")
    assert Interpolator().reduce(w, 4) == store.lookup_rule(w)


def test_schedule_falls_through_to_a_sufficient_degree(store):
    w = parse_word("x1X2x1X2")
    assert Interpolator().reduce_with_schedule(w) == store.lookup_rule(w)


def test_invalid_degree_bound():
    with pytest.raises(ValueError):
        Interpolator().reduce(parse_word("x1"), 0)
