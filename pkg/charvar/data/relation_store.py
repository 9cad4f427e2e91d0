from functools import lru_cache
from typing import Dict, List, Tuple
import logging

from data import dihedral, polynomials, trace_rules
from models.polynomial import T, T5, TM5, Polynomial, Variable
from models.words import Letter, Word, cyclic_reduce
from utils.helpers import parse_polynomial, parse_word

logger = logging.getLogger(__name__)


class RelationStore:
    """Parsed relation data: P, Q, tabulated partials, bracket expansions, trace rules and the dihedral tables"""

    def __init__(self):
        self.P: Polynomial = Polynomial.zero()
        self.Q: Polynomial = Polynomial.zero()
        self.sextic: Polynomial = Polynomial.zero()
        self.symmetrizer_seeds: Dict[str, Polynomial] = {}
        self.tabulated_partials_P: Dict[int, Polynomial] = {}
        self.tabulated_partials_Q: Dict[int, Polynomial] = {}
        self.sl2_bindings: Dict[Variable, Polynomial] = {}
        self.bracket_expansions: Dict[str, Polynomial] = {}
        self.trace_rules: Dict[Tuple[Letter, ...], Polynomial] = {}
        self.generator_words: Dict[int, Word] = {}
        self.lambda_basis: List[Word] = []
        self.permutations: Dict[str, Dict[int, int]] = {}
        self.cayley_table: Dict[Tuple[str, str], str] = {}

    def initialize(self):
        """Parse every table once"""
        self._load_polynomials()
        self._load_partials()
        self._load_sl2_bindings()
        self._load_bracket_expansions()
        self._load_generator_words()
        self._load_trace_rules()
        self._load_dihedral()
        logger.info(f"Relation store initialized: {len(self.trace_rules)} trace rules, "
                    f"P with {len(self.P)} terms, Q with {len(self.Q)} terms")
        return self

    def _load_polynomials(self):
        self.P = parse_polynomial(polynomials.P_TEXT)
        self.Q = parse_polynomial(polynomials.Q_TEXT)
        t5 = Polynomial.var(T5)
        self.sextic = t5 ** 2 - self.P * t5 + self.Q
        self.symmetrizer_seeds = {
            "p": parse_polynomial(polynomials.SYMMETRIZER_P_TEXT),
            "q": parse_polynomial(polynomials.SYMMETRIZER_Q_TEXT),
        }

    def _load_partials(self):
        self.tabulated_partials_P = {i: parse_polynomial(text) for i, text in polynomials.PARTIAL_P_TEXTS.items()}
        self.tabulated_partials_Q = {i: parse_polynomial(text) for i, text in polynomials.PARTIAL_Q_TEXTS.items()}

    def _load_sl2_bindings(self):
        t4 = parse_polynomial(polynomials.SL2_BINDING_TEXTS[4])
        bindings = {T(-i): Polynomial.var(T(i)) for i in (1, 2, 3)}
        bindings[T(4)] = t4
        bindings[T(-4)] = t4
        bindings[T5] = parse_polynomial(polynomials.SL2_BINDING_TEXTS[5])
        self.sl2_bindings = bindings

    def _load_bracket_expansions(self):
        self.bracket_expansions = {
            "t4,t5": parse_polynomial(polynomials.BRACKET_T4_T5_TEXT),
            "t-4,t5": parse_polynomial(polynomials.BRACKET_TM4_T5_TEXT),
            "t4,Q": parse_polynomial(polynomials.BRACKET_T4_Q_FACTOR_TEXT),
            "t-4,Q": parse_polynomial(polynomials.BRACKET_TM4_Q_FACTOR_TEXT),
            "t4,P": parse_polynomial(polynomials.BRACKET_T4_P_FACTOR_TEXT),
            "t-4,P": parse_polynomial(polynomials.BRACKET_TM4_P_FACTOR_TEXT),
        }

    def _load_generator_words(self):
        self.generator_words = {i: parse_word(text) for i, text in trace_rules.GENERATOR_WORDS.items()}
        self.lambda_basis = [parse_word(text) for text in trace_rules.LAMBDA_BASIS_WORDS]

    def _load_trace_rules(self):
        rules = {}
        for word_text, poly_text in trace_rules.TRACE_RULES.items():
            key = cyclic_reduce(parse_word(word_text)).letters
            rules[key] = parse_polynomial(poly_text)
        inverse_commutator = cyclic_reduce(parse_word(trace_rules.INVERSE_COMMUTATOR_WORD)).letters
        rules[inverse_commutator] = self.P - Polynomial.var(T5)
        self.trace_rules = rules

    def _load_dihedral(self):
        self.permutations = {name: _cycles_to_permutation(cycles) for name, cycles in dihedral.ELEMENT_CYCLES.items()}
        self.cayley_table = {
            (row, col): product
            for row, products in dihedral.CAYLEY_TABLE.items()
            for col, product in zip(dihedral.ELEMENT_NAMES, products)
        }

    def lookup_rule(self, w: Word):
        """Rule-table entry for the cyclic class of w, or None"""
        return self.trace_rules.get(cyclic_reduce(w).letters)

    def eliminate_tm5(self, f: Polynomial) -> Polynomial:
        if TM5 not in f.variables():
            return f
        return f.substitute({TM5: self.P - Polynomial.var(T5)})

    def normal_form(self, f: Polynomial) -> Polynomial:
        """Representative of f modulo t5^2 - P*t5 + Q with t5-degree at most 1"""
        f = self.eliminate_tm5(f)
        if f.degree_in(T5) <= 1:
            return f
        t5 = Polynomial.var(T5)
        # t5^k = A_k * t5 + B_k
        a_k, b_k = Polynomial.zero(), Polynomial.one()
        result = Polynomial.zero()
        parts = f.coefficients_in(T5)
        for k in range(max(parts) + 1):
            if k in parts:
                result = result + parts[k] * (a_k * t5 + b_k)
            a_k, b_k = a_k * self.P + b_k, -(a_k * self.Q)
        return result


def _cycles_to_permutation(cycles) -> Dict[int, int]:
    perm = {i: i for i in (1, -1, 2, -2, 3, -3, 4, -4)}
    for cycle in cycles:
        for position, index in enumerate(cycle):
            perm[index] = cycle[(position + 1) % len(cycle)]
    return perm


@lru_cache(maxsize=None)
def default_store() -> RelationStore:
    """Process-wide store, initialized on first use"""
    return RelationStore().initialize()
