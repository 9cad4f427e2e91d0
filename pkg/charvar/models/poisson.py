"""
Poisson bracket on the coordinate ring of the three-holed sphere.

Only t(4), t(-4) and t(5) have nonzero brackets; the six boundary traces
t(+-1..+-3) are Casimirs.  The bracket of two ring elements is the
derivation extension of the generator table, reduced modulo the sextic.
"""
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple
import logging

import numpy as np

from data.relation_store import RelationStore, default_store
from data.trace_rules import BRACKET_WORD_SUM
from models.char_ring import GeneratorPoint, mirror
from models.polynomial import GENERATOR_INDICES, T, T5, Polynomial, Variable, make_monomial
from models.trace_calculus import TraceReducer, default_reducer
from utils.helpers import parse_word

logger = logging.getLogger(__name__)

T4, TM4 = T(4), T(-4)
BRACKET_VARIABLES = (T4, TM4, T5)
CASIMIR_INDICES = (1, -1, 2, -2, 3, -3)
GENERATORS = tuple(T(i) for i in GENERATOR_INDICES) + (T5,)


def _store(store: Optional[RelationStore]) -> RelationStore:
    return store or default_store()


def normal_form(f: Polynomial, store: Optional[RelationStore] = None) -> Polynomial:
    """Representative with t5-degree <= 1; t-5 is replaced by P - t5 first"""
    return _store(store).normal_form(f)


class BracketTable:
    """Generator brackets, stored once per unordered pair in variable order"""

    def __init__(self, entries: Mapping[Tuple[Variable, Variable], Polynomial]):
        self._entries: Dict[Tuple[Variable, Variable], Polynomial] = {}
        for (u, v), value in entries.items():
            if u == v:
                raise ValueError(f"Diagonal entry {{{u}, {u}}} must not be stored")
            if u.sort_key > v.sort_key:
                u, v, value = v, u, -value
            self._entries[(u, v)] = value

    def get(self, u: Variable, v: Variable) -> Polynomial:
        if (u, v) in self._entries:
            return self._entries[(u, v)]
        if (v, u) in self._entries:
            return -self._entries[(v, u)]
        return Polynomial.zero()

    def items(self) -> Iterator[Tuple[Tuple[Variable, Variable], Polynomial]]:
        return iter(self._entries.items())

    def __len__(self) -> int:
        return len(self._entries)


def base_table(store: Optional[RelationStore] = None) -> BracketTable:
    s = _store(store)
    t5 = Polynomial.var(T5)
    return BracketTable({
        (T4, TM4): s.P - 2 * t5,
        (T4, T5): s.normal_form(s.bracket_expansions["t4,t5"]),
        (TM4, T5): s.normal_form(s.bracket_expansions["t-4,t5"]),
    })


def bracket(f: Polynomial, g: Polynomial, table: Optional[BracketTable] = None,
            store: Optional[RelationStore] = None) -> Polynomial:
    """{f, g} as a normal form"""
    s = _store(store)
    table = table or base_table(s)
    f, g = s.eliminate_tm5(f), s.eliminate_tm5(g)
    total = Polynomial.zero()
    for (u, v), value in table.items():
        cross = f.partial(u) * g.partial(v) - f.partial(v) * g.partial(u)
        if cross:
            total = total + cross * value
    return s.normal_form(total)


def jacobi_residual(f: Polynomial, g: Polynomial, h: Polynomial, table: Optional[BracketTable] = None,
                    store: Optional[RelationStore] = None) -> Polynomial:
    s = _store(store)
    table = table or base_table(s)
    return s.normal_form(bracket(f, bracket(g, h, table, s), table, s)
                         + bracket(g, bracket(h, f, table, s), table, s)
                         + bracket(h, bracket(f, g, table, s), table, s))


def generator_triples() -> List[Tuple[Variable, Variable, Variable]]:
    return list(combinations(GENERATORS, 3))


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    residual: Polynomial

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


def verify_t5_consistency(store: Optional[RelationStore] = None) -> List[IdentityCheck]:
    """Cleared-denominator form of {t(+-4), t5} and the tabulated Leibniz expansions"""
    s = _store(store)
    table = base_table(s)
    t5 = Polynomial.var(T5)
    cofactor = {T4: s.P - 2 * t5, TM4: 2 * t5 - s.P}
    checks = []
    for var, label in ((T4, "t4"), (TM4, "t-4")):
        with_p = bracket(Polynomial.var(var), s.P, table, s)
        with_q = bracket(Polynomial.var(var), s.Q, table, s)
        cleared = (2 * t5 - s.P) * table.get(var, T5) - (t5 * with_p - with_q)
        checks.append(IdentityCheck(f"{{{label},t5}} cleared", s.normal_form(cleared)))
        checks.append(IdentityCheck(f"{{{label},P}} expansion",
                                    s.normal_form(with_p - cofactor[var] * s.bracket_expansions[f"{label},P"])))
        checks.append(IdentityCheck(f"{{{label},Q}} expansion",
                                    s.normal_form(with_q - cofactor[var] * s.bracket_expansions[f"{label},Q"])))
    for check in checks:
        if not check.passed:
            logger.error(f"Bracket identity {check.name} fails with residual of {len(check.residual)} terms")
    return checks


def bivector(store: Optional[RelationStore] = None) -> Dict[Tuple[Variable, Variable], Polynomial]:
    """Coefficients of the Poisson bivector on d4, d-4, d5, antisymmetric"""
    s = _store(store)
    a45 = s.normal_form(s.bracket_expansions["t4,t5"])
    upper = {
        (T4, TM4): s.P - 2 * Polynomial.var(T5),
        (T4, T5): a45,
        (TM4, T5): s.normal_form(-mirror(a45)),
    }
    coefficients = {}
    for u in BRACKET_VARIABLES:
        for v in BRACKET_VARIABLES:
            if (u, v) in upper:
                coefficients[(u, v)] = upper[(u, v)]
            elif (v, u) in upper:
                coefficients[(u, v)] = -upper[(v, u)]
            else:
                coefficients[(u, v)] = Polynomial.zero()
    return coefficients


def word_sum_expression(reducer: Optional[TraceReducer] = None) -> Polynomial:
    """Signed sum of the four reduced trace words that expands {t4, t5}"""
    reducer = reducer or default_reducer()
    total = Polynomial.zero()
    for text, sign in BRACKET_WORD_SUM:
        total = total + sign * reducer.reduce_trace_word(parse_word(text))
    return reducer.store.normal_form(total)


def word_sum_check(reducer: Optional[TraceReducer] = None) -> IdentityCheck:
    reducer = reducer or default_reducer()
    table = base_table(reducer.store)
    residual = reducer.store.normal_form(word_sum_expression(reducer) - table.get(T4, T5))
    return IdentityCheck("word sum = {t4,t5}", residual)


def same_leaf(p: GeneratorPoint, q: GeneratorPoint, tolerance: float = 0.0) -> bool:
    """Points lie on one symplectic leaf when all six Casimirs agree"""
    if tolerance == 0.0:
        return all(p[i] == q[i] for i in CASIMIR_INDICES)
    return all(abs(p[i] - q[i]) <= tolerance for i in CASIMIR_INDICES)


def random_element(rng: np.random.Generator, n_terms: int = 3, max_degree: int = 2,
                   variables: Sequence[Variable] = GENERATORS) -> Polynomial:
    """Small random polynomial with integer coefficients in -3..3"""
    terms = {}
    for _ in range(n_terms):
        degree = int(rng.integers(0, max_degree + 1))
        picks = rng.integers(0, len(variables), size=degree)
        powers: Dict[Variable, int] = {}
        for k in picks:
            v = variables[int(k)]
            powers[v] = powers.get(v, 0) + 1
        mono = make_monomial(powers)
        terms[mono] = terms.get(mono, 0) + int(rng.integers(-3, 4))
    return Polynomial(terms)
