from fractions import Fraction
from math import isfinite

import numpy as np
import pytest

from data.fiber_terms import SAMPLE_BOUNDARIES
from models import char_ring, rp2
from utils.errors import DomainError, InvalidBoundary


@pytest.fixture
def boundary():
    return rp2.BoundaryData(SAMPLE_BOUNDARIES[0])


def test_discriminant():
    assert rp2.discriminant(3, 3) == 0
    assert rp2.discriminant(Fraction(31, 6), Fraction(41, 6)) == Fraction(34969, 1296)
    assert rp2.discriminant(1, 2) == rp2.discriminant(2, 1) == -23


def test_boundary_validity(boundary):
    assert boundary.traces()[-3] == Fraction(23, 6)
    assert rp2.boundary_valid(boundary) == (True, True, True)
    bad = rp2.BoundaryData(((Fraction(31, 6), Fraction(41, 6)), (1, 2), (3, 3)))
    assert rp2.boundary_valid(bad) == (True, False, False)
    with pytest.raises(InvalidBoundary):
        rp2.boundary_lambdas(bad)


def test_eigenvalues_of_a_known_cubic():
    assert list(rp2.eigenvalues(Fraction(31, 6), Fraction(41, 6))) == pytest.approx([3.0, 2.0, 1 / 6], abs=1e-10)


@pytest.mark.parametrize("pair", [p for b in SAMPLE_BOUNDARIES for p in b])
def test_eigenvalues_match_numpy_roots(pair):
    ti, tmi = pair
    expected = sorted((float(r) for r in np.roots([1, -float(ti), float(tmi), -1]).real), reverse=True)
    assert list(rp2.eigenvalues(ti, tmi)) == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("pair", [(3, 3), (1, 2), (-5, 7), (5, Fraction(41, 6))])
def test_invalid_boundary_pairs(pair):
    with pytest.raises(InvalidBoundary):
        rp2.largest_eigenvalue(*pair)


def test_largest_root_grows_with_the_trace():
    assert rp2.monotonicity_counterexamples(Fraction(41, 6), [5, Fraction(31, 6), Fraction(11, 2), 6]) == []


def test_fiber_params_must_be_positive():
    with pytest.raises(DomainError):
        rp2.FiberParams(0, 1)
    with pytest.raises(DomainError):
        rp2.FiberParams(1, Fraction(-1, 2))


def test_fiber_formulas_reject_nonpositive_eigenvalues():
    with pytest.raises(DomainError):
        rp2.fiber_t4(0, 1, 1, 1, 1, 3, 3, 3)
    with pytest.raises(DomainError):
        rp2.fiber_tm4_direct(1, 1, 1, 1, 0, 3, 3, 3)


@pytest.mark.parametrize("k", range(len(SAMPLE_BOUNDARIES)))
@pytest.mark.parametrize("s,t", [(Fraction(1, 2), 1), (1, 1), (2, Fraction(1, 2))])
def test_term_tables_match_direct_expressions(k, s, t):
    b = rp2.BoundaryData(SAMPLE_BOUNDARIES[k])
    lambdas = rp2.boundary_lambdas(b)
    traces = b.traces()
    args = (*lambdas, s, t, traces[1], traces[2], traces[-3])
    assert rp2.fiber_t4(*args) == pytest.approx(rp2.fiber_t4_direct(*args), rel=1e-9, abs=1e-9)
    assert rp2.fiber_tm4(*args) == pytest.approx(rp2.fiber_tm4_direct(*args), rel=1e-9, abs=1e-9)


def test_fiber_point_roots_satisfy_the_sextic(boundary):
    point = rp2.fiber_point(boundary, rp2.FiberParams(1, 2))
    assert isfinite(point.t4) and isfinite(point.tm4)
    sextic = char_ring.sextic()
    P = char_ring.poly_P()
    plus, minus = point.t5_roots
    for root in point.roots:
        value = sextic.eval_complex(root.assignment())
        assert abs(value) <= 1e-9 * max(1.0, abs(root[5]) ** 2)
        assert root[4] == point.t4
        assert root[5] + root[-5] == pytest.approx(P.eval_complex(root.assignment()))
    assert plus + minus == pytest.approx(P.eval_complex(point.roots[0].assignment()))


def test_fiber_grid(boundary):
    frame = rp2.fiber_grid(boundary, (Fraction(1, 2), 1, 2), (Fraction(1, 2), 1, 2))
    assert frame.shape == (9, 6)
    assert list(frame.columns) == ["s", "t", "t4", "t-4", "t5+", "t5-"]
    assert frame["t4"].map(isfinite).all()
    assert frame.loc[4, "t4"] == pytest.approx(rp2.fiber_point(boundary, rp2.FiberParams(1, 1)).t4)
