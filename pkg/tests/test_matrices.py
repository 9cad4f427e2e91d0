from fractions import Fraction

import numpy as np
import pytest

from models.matrices import (Mat3, RepPair, eval_word, family_ac, family_diag, family_gl2, family_sl2,
                             inverse_sl, pair_rho1_rho2, rational_cube_root, sample_pairs, transvection)
from models.words import invert
from utils.errors import BlockNotUnimodular, NotUnimodular, ZeroParameter
from utils.helpers import parse_word


def test_sampler_is_deterministic_and_unimodular():
    first = sample_pairs(7, 3)
    assert first == sample_pairs(7, 3)
    assert first != sample_pairs(8, 3)
    for pair in first:
        assert pair.is_exact()
        assert pair.m1.det() == 1
        assert pair.m2.det() == 1


def test_integral_sampler_has_integer_entries():
    for pair in sample_pairs(3, 4, integral=True):
        for m in pair:
            assert all(x.denominator == 1 for x in m.entries)


def test_word_times_inverse_is_identity(exact_pairs):
    w = parse_word("x1 X2 x2^2 X1 x1")
    for pair in exact_pairs[:4]:
        assert eval_word(w, pair) @ eval_word(invert(w), pair) == Mat3.identity()


def test_transvection():
    m = transvection(0, 2, Fraction(5))
    assert m[0, 2] == 5
    assert m.det() == 1
    with pytest.raises(ValueError):
        transvection(1, 1, 2)


def test_adjugate_and_powers():
    m = transvection(0, 1, 3) @ transvection(2, 0, Fraction(-1, 2))
    assert m @ m.adjugate() == Mat3.identity() * m.det()
    assert m ** -1 == inverse_sl(m)
    assert m ** 3 @ m ** -3 == Mat3.identity()
    assert np.isclose(np.linalg.det(m.to_numpy()), float(m.det()))


def test_inverse_requires_unimodular():
    with pytest.raises(NotUnimodular):
        inverse_sl(Mat3.diag(2, 1, 1))


def test_integer_entries_become_fractions():
    m = Mat3((1, 2, 3, 4, 5, 6, 7, 8, 10))
    assert all(isinstance(x, Fraction) for x in m.entries)
    with pytest.raises(ValueError):
        Mat3((1, 2, 3))


def test_sl2_and_gl2_families():
    with pytest.raises(BlockNotUnimodular):
        family_sl2((2, 0, 0, 1), (1, 0, 0, 1))
    pair = family_gl2((2, 0, 0, 1), (1, 1, 0, 1))
    assert pair.m1[2, 2] == Fraction(1, 2)
    assert pair.m1.det() == 1 and pair.m2.det() == 1


def test_diag_family():
    pair = family_diag(2, 3, Fraction(1, 2), 5)
    assert pair.m1.det() == 1
    assert pair.m2[2, 2] == Fraction(2, 5)
    with pytest.raises(ZeroParameter):
        family_diag(0, 1, 1, 1)


def test_rational_cube_root():
    assert rational_cube_root(Fraction(27, 8)) == Fraction(3, 2)
    assert rational_cube_root(Fraction(-8)) == -2
    assert rational_cube_root(Fraction(2)) is None


def test_ac_family_is_exact_for_rational_cubes():
    pair = family_ac(2, 4)
    assert pair.is_exact()
    assert pair.m1.det() == 1
    assert pair.m2.det() == 1
    floating = family_ac(2, 3)
    assert not floating.is_exact()
    assert abs(complex(floating.m2.det()) - 1) < 1e-9


def test_rho_pairs_share_first_matrix():
    rho1, rho2 = pair_rho1_rho2(2, 3)
    assert rho1.m1 == rho2.m1
    for pair in (rho1, rho2):
        assert abs(complex(pair.m2.det()) - 1) < 1e-9
        assert isinstance(pair, RepPair)
