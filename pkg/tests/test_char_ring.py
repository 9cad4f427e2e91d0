from fractions import Fraction

import pytest

from models import char_ring
from models.matrices import Mat3, RepPair, family_diag, family_gl2, identity_pair, sample_pairs
from models.polynomial import T, T5, Polynomial, t
from utils.errors import NotUnimodular, VariableOutOfSubring

ALL_THREES = {T(i): Fraction(3) for i in (1, -1, 2, -2, 3, -3, 4, -4, 5)}


def test_P_and_Q_at_the_trivial_representation():
    assert char_ring.poly_P().eval_rational(ALL_THREES) == 6
    assert char_ring.poly_Q().eval_rational(ALL_THREES) == 9
    assert char_ring.sextic().eval_rational(ALL_THREES) == 0
    assert len(char_ring.poly_P()) == 10


def test_relation_store_loads_every_table(store):
    assert set(store.tabulated_partials_P) == {1, -1, 2, -2, 3, -3, 4, -4}
    assert set(store.tabulated_partials_Q) == {1, 2, 3, 4}
    assert T5 in store.sl2_bindings
    assert len(store.bracket_expansions) == 6
    assert len(store.lambda_basis) == 9
    assert len(store.permutations) == 8
    assert len(store.cayley_table) == 64
    assert store.trace_rules


def test_sextic_is_built_from_P_and_Q():
    t5 = Polynomial.var(T5)
    assert char_ring.sextic() == t5 ** 2 - char_ring.poly_P() * t5 + char_ring.poly_Q()
    assert char_ring.branch_locus() == char_ring.poly_P() ** 2 - 4 * char_ring.poly_Q()


def test_kernel_relations_vanish(exact_pairs):
    for pair in exact_pairs:
        point = char_ring.pi_map(pair)
        assert point.is_exact()
        assert all(v == 0 for v in char_ring.kernel_residuals(point).values())


def test_pi_map_rejects_non_unimodular():
    with pytest.raises(NotUnimodular):
        char_ring.pi_map(RepPair(Mat3.diag(2, 1, 1), Mat3.identity()))


def test_lambda_matrix_shape_and_symmetry(exact_pairs):
    rows = char_ring.lambda_matrix(exact_pairs[0])
    assert len(rows) == 9 and all(len(r) == 9 for r in rows)
    assert all(rows[i][j] == rows[j][i] for i in range(9) for j in range(9))
    assert all(v == 0 for row in char_ring.lambda_matrix(identity_pair()) for v in row)


def test_lambda_determinant_vanishes(exact_pairs):
    for pair in exact_pairs[:4]:
        assert char_ring.lambda_determinant(pair) == 0


def test_bilinear_form():
    assert char_ring.bilinear_form(3, 3, 3) == 0
    assert char_ring.bilinear_form(1, 2, 5) == 13


def test_lambda_factorization_divides_by_the_sextic(reducer, exact_pairs):
    entries = char_ring.lambda_entries(reducer)
    for pair in exact_pairs:
        f = char_ring.lambda_factorization(char_ring.pi_map(pair), entries)
        assert f.is_quadratic()
        assert f.matches_sextic()


def test_lambda_entries_agree_with_matrices(reducer, exact_pairs):
    entries = char_ring.lambda_entries(reducer)
    pair = exact_pairs[5]
    rows = char_ring.lambda_matrix(pair)
    values = char_ring.pi_map(pair).assignment()
    assert [[e.evaluate(values) for e in row] for row in entries] == rows


def test_tabulated_partials_of_P():
    formal, tabulated = char_ring.partials_P(), char_ring.tabulated_partials_P()
    for i in formal:
        assert formal[i] == tabulated[i], i


def test_tabulated_partials_of_Q():
    formal, tabulated = char_ring.formal_partials_Q(), char_ring.partials_Q()
    for i in formal:
        assert formal[i] == tabulated[i], i


def test_mirror_is_an_involution():
    P = char_ring.poly_P()
    assert char_ring.mirror(char_ring.mirror(P)) == P
    assert char_ring.mirror(t(1) * t(5)) == t(-1) * t(5)


def test_jacobian_vanishes_on_sl2_blocks():
    assert all(g.is_zero() for g in char_ring.jacobian_under_sl2().values())


@pytest.mark.parametrize("params", [(2, 3, 3, 2), (Fraction(1, 2), 5, -1, 7), (-3, Fraction(2, 3), 4, 1)])
def test_jacobian_vanishes_on_diagonal_pairs(params):
    values = char_ring.jacobian_at(char_ring.pi_map(family_diag(*params)))
    assert set(values) == set(char_ring.JACOBIAN_LABELS)
    assert all(v == 0 for v in values.values())


def test_branch_locus_vanishes_on_block_pairs_only():
    locus = char_ring.branch_locus()
    block = char_ring.pi_map(family_gl2((2, 1, 1, 3), (1, -2, Fraction(1, 2), 4)))
    assert locus.evaluate(block.assignment()) == 0
    generic = char_ring.pi_map(sample_pairs(1, 1)[0])
    assert locus.evaluate(generic.assignment()) != 0


def test_dihedral_examples():
    i, tau = char_ring.dihedral_element("i"), char_ring.dihedral_element("t")
    assert char_ring.compose(i, tau).name == "it"
    assert char_ring.order(char_ring.dihedral_element("ti")) == 4
    titi = char_ring.dihedral_element("titi")
    assert char_ring.compose(titi, titi).name == "id"
    assert i.image(3) == -4
    assert tau.image(4) == -4
    with pytest.raises(KeyError):
        char_ring.dihedral_element("x")


def test_cayley_table_matches_permutations():
    group = char_ring.dihedral_group()
    assert len(group) == 8
    for a in group:
        for b in group:
            assert char_ring.compose(a, b).permutation == char_ring.compose_permutations(a, b)
    assert len(char_ring.generated_subgroup([group[1], group[2]])) == 8


def test_dihedral_group_fixes_the_sextic():
    sextic = char_ring.sextic()
    for g in char_ring.dihedral_group():
        assert char_ring.apply_dihedral(g, sextic) == sextic, g.name


def test_odd_elements_swap_the_roots():
    tit = char_ring.dihedral_element("tit")
    assert tit.odd
    assert char_ring.apply_dihedral(tit, t(5)) == char_ring.poly_P() - t(5)


def test_symmetrizer_reconstructs_P_and_Q():
    assert char_ring.reconstructed_P() == char_ring.poly_P()
    assert char_ring.reconstructed_Q() == char_ring.poly_Q()
    with pytest.raises(VariableOutOfSubring):
        char_ring.symmetrizer(t(5))


def test_grading():
    assert char_ring.is_homogeneous(char_ring.poly_P()) == (0, 0)
    assert char_ring.is_homogeneous(char_ring.poly_Q()) == (0, 0)
    assert char_ring.is_homogeneous(t(4)) == (1, 2)
    assert char_ring.is_homogeneous(t(4) + t(1)) is None
    assert char_ring.is_homogeneous(Polynomial.zero()) is None
    assert char_ring.is_homogeneous(t(5) * t(3)) == (1, 1)
