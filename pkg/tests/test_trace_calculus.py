import pytest

from models.interpolation import evaluation_point
from models.matrices import Mat3, trace_word
from models.polynomial import t
from models.trace_calculus import (IDENTITY_NAMES, WordCombination, classify_generators, get_identity,
                                   identity_residual, pol_expression, pol_rhs, residual_is_zero,
                                   trace_symbol)
from models.words import weighted_length
from utils.errors import ArityMismatch, NotUnimodular, UnknownIdentity
from utils.helpers import parse_polynomial, parse_word


def _matrices(pairs, count):
    mats = [m for pair in pairs for m in pair]
    return mats[:count]


@pytest.mark.parametrize("name", IDENTITY_NAMES)
def test_catalog_residuals_vanish(name, exact_pairs):
    record = get_identity(name)
    for k in range(3):
        mats = _matrices(exact_pairs[3 * k:3 * k + 3], record.arity)
        assert residual_is_zero(identity_residual(name, mats)), name


def test_identity_names_are_stable():
    assert IDENTITY_NAMES == (
        "cayham", "trinv", "dettr", "cayham2", "detsum", "adjtrace-sum", "polarization", "pol",
        "fundamental", "fund1", "fund2", "inv-square", "inv-cross", "polyp1", "powerreduce",
        "lemma-eq4", "lemma-eq5", "lemma-eq6", "lemma-eq7", "polyp2",
    )
    assert get_identity("lemma-eq6").arity == 3
    assert get_identity("lemma-eq7").arity == 6


def test_parametrized_identities(exact_pairs):
    x, y = exact_pairs[0]
    u, v = exact_pairs[1]
    for n in (2, 4, 5):
        assert residual_is_zero(identity_residual("powerreduce", [x, u, v], n=n))
    assert residual_is_zero(identity_residual("detsum", [x, y], lam=-7))
    assert residual_is_zero(identity_residual("adjtrace-sum", [x, y], lam=5))


def test_catalog_errors(exact_pairs):
    x, y = exact_pairs[0]
    with pytest.raises(ArityMismatch):
        identity_residual("cayham", [x, y])
    with pytest.raises(UnknownIdentity):
        identity_residual("no-such-identity", [x])
    with pytest.raises(NotUnimodular):
        identity_residual("cayham2", [Mat3.diag(2, 1, 1), y])
    with pytest.raises(TypeError):
        identity_residual("cayham", [x], lam=2)


def test_cayley_hamilton_holds_without_unit_determinant():
    assert residual_is_zero(identity_residual("cayham", [Mat3.diag(2, 3, 5)]))


def test_pol_expression_matches_matrix_form(exact_pairs):
    x, y = parse_word("x1"), parse_word("x2")
    combination = pol_expression(x, y)
    for pair in exact_pairs[:3]:
        assert combination.evaluate(pair) == pol_rhs(pair.m1, pair.m2)


def test_word_combination_arithmetic(exact_pairs):
    pair = exact_pairs[0]
    a = WordCombination.of(parse_word("x1"), 2)
    b = WordCombination.of(parse_word("X1"))
    assert (a * b).evaluate(pair) == 2 * Mat3.identity()
    assert (a - a).terms == {}


def test_reductions(reducer):
    assert reducer.reduce_trace_word(parse_word("x1")) == t(1)
    assert reducer.reduce_trace_word(parse_word("x1^2")) == parse_polynomial("t1^2 - 2*t-1")
    assert reducer.reduce_trace_word(parse_word("X2x1x2X1")) == t(5)
    assert reducer.reduce_trace_word(parse_word("x2x1X2X1")) == reducer.store.P - t(5)
    assert reducer.reduce_trace_word(parse_word("x1X1")) == 3


@pytest.mark.parametrize("text", ["x1^3", "X1X2x1", "x1^2x2^2", "x2^2 X1", "x1x2x1x2x1x2",
                                  "X1^3", "X2^4x1", "x1^-4", "X1^2 x2^-3"])
def test_reduction_agrees_with_matrix_traces(text, reducer, exact_pairs):
    w = parse_word(text)
    reduced = reducer.reduce_trace_word(w)
    for pair in exact_pairs[:4]:
        assert reduced.eval_rational(evaluation_point(pair)) == trace_word(w, pair)


def test_reduce_expression(reducer):
    expr = trace_symbol(parse_word("x1")) * trace_symbol(parse_word("x2")) - trace_symbol(parse_word("x2x1"))
    assert reducer.reduce_expression(expr) == t(1) * t(2) - t(3)


def test_classify_generators():
    words = classify_generators(2)
    texts = {w.text() for w in words}
    assert {"x1", "X1", "x2", "x1x2", "x1X2", "x1x2X1X2"} <= texts
    assert len(texts) == len(words)
    assert [weighted_length(w) for w in words] == sorted(weighted_length(w) for w in words)
    with pytest.raises(ValueError):
        classify_generators(0)
