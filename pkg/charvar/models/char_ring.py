"""
The coordinate ring of the rank-2 character variety: P, Q and the sextic,
the evaluation map from matrix pairs, the bilinear-form matrix, the Jacobian
ideal with its tabulated partials, the dihedral symmetry and the Z3 x Z3
grading.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple
import logging

import numpy as np

from data.relation_store import RelationStore, default_store
from models.interpolation import GENERATOR_BIDEGREES, evaluation_point
from models.matrices import RepPair, Scalar, inverse_sl, trace_word
from models.polynomial import GENERATOR_INDICES, T, T5, TM5, Monomial, Polynomial, Variable
from models.trace_calculus import TraceReducer, default_reducer
from utils.errors import VariableOutOfSubring
from utils.exact_linalg import determinant, solve

logger = logging.getLogger(__name__)

JACOBIAN_LABELS = GENERATOR_INDICES + (5,)
ODD_ELEMENTS = frozenset({"i", "t", "tit", "iti"})


def _store(store: Optional[RelationStore]) -> RelationStore:
    return store or default_store()


def poly_P(store: Optional[RelationStore] = None) -> Polynomial:
    return _store(store).P


def poly_Q(store: Optional[RelationStore] = None) -> Polynomial:
    return _store(store).Q


def sextic(store: Optional[RelationStore] = None) -> Polynomial:
    """t5^2 - P*t5 + Q"""
    return _store(store).sextic


def branch_locus(store: Optional[RelationStore] = None) -> Polynomial:
    s = _store(store)
    return s.P ** 2 - 4 * s.Q


@dataclass(frozen=True)
class GeneratorPoint:
    """Values of t(+-1..+-4), t(5) and optionally t(-5)"""

    values: Mapping[int, Scalar]

    def __getitem__(self, index: int) -> Scalar:
        return self.values[index]

    def assignment(self) -> Dict[Variable, Scalar]:
        return {T(i): v for i, v in self.values.items()}

    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.values.values())

    def r_values(self) -> Dict[int, Scalar]:
        return {i: self.values[i] for i in GENERATOR_INDICES}


def pi_map(pair: RepPair) -> GeneratorPoint:
    """The nine generator traces of a pair, plus t(-5)"""
    for m in pair:
        inverse_sl(m)
    return GeneratorPoint({v.index: value for v, value in evaluation_point(pair).items()})


def kernel_residuals(point: GeneratorPoint, store: Optional[RelationStore] = None) -> Dict[str, Scalar]:
    """Relations that vanish on the image of pi_map"""
    s = _store(store)
    values = point.assignment()
    t5, tm5 = point[5], point[-5]
    return {
        "sextic": s.sextic.evaluate(values),
        "P-sum": s.P.evaluate(values) - (t5 + tm5),
        "Q-product": s.Q.evaluate(values) - t5 * tm5,
    }


# Bilinear form

def bilinear_form(a: Scalar, b: Scalar, ab: Scalar) -> Scalar:
    """B(A, B) = 3 tr(AB) - tr(A) tr(B), from the three traces"""
    return 3 * ab - a * b


def lambda_matrix(pair: RepPair, store: Optional[RelationStore] = None) -> List[List[Scalar]]:
    s = _store(store)
    for m in pair:
        inverse_sl(m)
    basis = s.lambda_basis
    traces = [trace_word(w, pair) for w in basis]
    return [[bilinear_form(traces[i], traces[j], trace_word(basis[i] * basis[j], pair))
             for j in range(len(basis))] for i in range(len(basis))]


def lambda_determinant(pair: RepPair, store: Optional[RelationStore] = None) -> Scalar:
    rows = lambda_matrix(pair, store)
    if pair.is_exact():
        return determinant(rows)
    return complex(np.linalg.det(np.array(rows, dtype=complex)))


def lambda_entries(reducer: Optional[TraceReducer] = None) -> List[List[Polynomial]]:
    """Entries of the bilinear-form matrix as polynomials in the generators"""
    reducer = reducer or default_reducer()
    basis = reducer.store.lambda_basis
    single = [reducer.reduce_trace_word(w) for w in basis]
    return [[reducer.store.normal_form(3 * reducer.reduce_trace_word(a * b) - single[i] * single[j])
             for j, b in enumerate(basis)] for i, a in enumerate(basis)]


@dataclass(frozen=True)
class LambdaFactorization:
    """det of the bilinear-form matrix as P1*t5^2 + P2*t5 + P3 at one R-point"""

    coefficients: Tuple[Fraction, ...]
    P: Fraction
    Q: Fraction

    @property
    def p1(self) -> Fraction:
        return self.coefficients[2] if len(self.coefficients) > 2 else Fraction(0)

    @property
    def p2(self) -> Fraction:
        return self.coefficients[1] if len(self.coefficients) > 1 else Fraction(0)

    @property
    def p3(self) -> Fraction:
        return self.coefficients[0]

    def is_quadratic(self) -> bool:
        return all(c == 0 for c in self.coefficients[3:])

    def matches_sextic(self) -> bool:
        """P2 = -P*P1 and P3 = Q*P1"""
        return self.is_quadratic() and self.p2 == -self.P * self.p1 and self.p3 == self.Q * self.p1


def lambda_factorization(point: GeneratorPoint, entries: Optional[List[List[Polynomial]]] = None,
                         store: Optional[RelationStore] = None) -> LambdaFactorization:
    """Interpolate det(Lambda) as a polynomial in a free t5 over an exact R-point"""
    s = _store(store)
    entries = entries if entries is not None else lambda_entries()
    r_assignment = {T(i): Fraction(point[i]) for i in GENERATOR_INDICES}
    partial_entries = [[e.substitute(r_assignment) for e in row] for row in entries]
    degree = sum(1 for row in partial_entries if any(e.degree_in(T5) > 0 for e in row))
    nodes = [Fraction(k) for k in range(degree + 1)]
    values = []
    for node in nodes:
        rows = [[e.eval_rational({T5: node}) for e in row] for row in partial_entries]
        values.append(determinant(rows))
    vandermonde = [[node ** k for k in range(degree + 1)] for node in nodes]
    coefficients = solve(vandermonde, values)
    return LambdaFactorization(tuple(coefficients), s.P.eval_rational(r_assignment), s.Q.eval_rational(r_assignment))


# Partial derivatives and the Jacobian ideal

def mirror(f: Polynomial) -> Polynomial:
    """t(i) -> t(-i) for 1 <= |i| <= 4; t(5) is fixed"""
    return f.map_variables({T(i): T(-i) for i in GENERATOR_INDICES})


def partials_P(store: Optional[RelationStore] = None) -> Dict[int, Polynomial]:
    """Formal partial derivatives of P"""
    P = poly_P(store)
    return {i: P.partial(T(i)) for i in GENERATOR_INDICES}


def tabulated_partials_P(store: Optional[RelationStore] = None) -> Dict[int, Polynomial]:
    return dict(_store(store).tabulated_partials_P)


def partials_Q(store: Optional[RelationStore] = None) -> Dict[int, Polynomial]:
    """Tabulated partials of Q for 1..4, mirrored for -1..-4"""
    tabulated = _store(store).tabulated_partials_Q
    result = {}
    for i in GENERATOR_INDICES:
        result[i] = tabulated[i] if i > 0 else mirror(tabulated[-i])
    return result


def formal_partials_Q(store: Optional[RelationStore] = None) -> Dict[int, Polynomial]:
    Q = poly_Q(store)
    return {i: Q.partial(T(i)) for i in GENERATOR_INDICES}


def jacobian_generators(store: Optional[RelationStore] = None) -> List[Polynomial]:
    """-t5*dP/di + dQ/di for the eight R-indices, then 2*t5 - P"""
    s = _store(store)
    dP, dQ = partials_P(s), partials_Q(s)
    t5 = Polynomial.var(T5)
    generators = [-t5 * dP[i] + dQ[i] for i in GENERATOR_INDICES]
    generators.append(2 * t5 - s.P)
    return generators


def jacobian_at(point: GeneratorPoint, store: Optional[RelationStore] = None) -> Dict[int, Scalar]:
    values = point.assignment()
    return {label: g.evaluate(values) for label, g in zip(JACOBIAN_LABELS, jacobian_generators(store))}


def jacobian_under_sl2(store: Optional[RelationStore] = None) -> Dict[int, Polynomial]:
    """Jacobian generators after substituting the SL2 block relations; all should be zero"""
    s = _store(store)
    return {label: g.substitute(s.sl2_bindings) for label, g in zip(JACOBIAN_LABELS, jacobian_generators(s))}


# Dihedral symmetry

@dataclass(frozen=True)
class DihedralElement:
    name: str
    permutation: Tuple[Tuple[int, int], ...]
    odd: bool = False

    def image(self, index: int) -> int:
        return dict(self.permutation)[index]

    def bindings(self, store: RelationStore) -> Dict[Variable, Polynomial]:
        bindings = {T(i): Polynomial.var(T(j)) for i, j in self.permutation}
        if self.odd:
            bindings[T5] = store.P - Polynomial.var(T5)
            bindings[TM5] = Polynomial.var(T5)
        return bindings


def dihedral_group(store: Optional[RelationStore] = None) -> List[DihedralElement]:
    s = _store(store)
    return [DihedralElement(name, tuple(sorted(perm.items())), name in ODD_ELEMENTS)
            for name, perm in s.permutations.items()]


def dihedral_element(name: str, store: Optional[RelationStore] = None) -> DihedralElement:
    for g in dihedral_group(store):
        if g.name == name:
            return g
    raise KeyError(f"No dihedral element named {name!r}")


def compose(a: DihedralElement, b: DihedralElement, store: Optional[RelationStore] = None) -> DihedralElement:
    """a after b, read from the Cayley table"""
    return dihedral_element(_store(store).cayley_table[(a.name, b.name)], store)


def compose_permutations(a: DihedralElement, b: DihedralElement) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted((i, a.image(b.image(i))) for i in GENERATOR_INDICES))


def order(g: DihedralElement, store: Optional[RelationStore] = None) -> int:
    power, n = g, 1
    while power.name != "id":
        power = compose(power, g, store)
        n += 1
    return n


def generated_subgroup(generators: Sequence[DihedralElement]) -> List[Tuple[Tuple[int, int], ...]]:
    """Closure of the generators' permutations under composition"""
    identity = tuple((i, i) for i in sorted(GENERATOR_INDICES))
    found = {identity}
    frontier = [identity]
    while frontier:
        current = dict(frontier.pop())
        for g in generators:
            nxt = tuple(sorted((i, g.image(current[i])) for i in GENERATOR_INDICES))
            if nxt not in found:
                found.add(nxt)
                frontier.append(nxt)
    return sorted(found)


def apply_dihedral(g: DihedralElement, f: Polynomial, store: Optional[RelationStore] = None) -> Polynomial:
    return f.substitute(g.bindings(_store(store)))


def symmetrizer(f: Polynomial, store: Optional[RelationStore] = None) -> Polynomial:
    """Sum of the eight dihedral images of an element of R"""
    outside = [v for v in f.variables() if v.kind != "T" or abs(v.index) == 5]
    if outside:
        raise VariableOutOfSubring(f"Symmetrizer needs a polynomial in t(+-1..+-4), found {outside}")
    total = Polynomial.zero()
    for g in dihedral_group(store):
        total = total + f.map_variables({T(i): T(j) for i, j in g.permutation})
    return total


def reconstructed_P(store: Optional[RelationStore] = None) -> Polynomial:
    s = _store(store)
    return symmetrizer(s.symmetrizer_seeds["p"], s) - 3


def reconstructed_Q(store: Optional[RelationStore] = None) -> Polynomial:
    s = _store(store)
    return symmetrizer(s.symmetrizer_seeds["q"], s) + 9


# Grading

GRADING_WEIGHTS: Dict[Variable, Tuple[int, int]] = {
    **{v: (a % 3, b % 3) for v, (a, b) in GENERATOR_BIDEGREES.items()},
    TM5: (0, 0),
}


def grading_weight(m: Monomial) -> Tuple[int, int]:
    a = b = 0
    for v, e in m:
        if v not in GRADING_WEIGHTS:
            raise VariableOutOfSubring(f"No grading weight for {v}")
        wa, wb = GRADING_WEIGHTS[v]
        a, b = a + wa * e, b + wb * e
    return a % 3, b % 3


def is_homogeneous(f: Polynomial) -> Optional[Tuple[int, int]]:
    """The common weight of every monomial, or None when f is zero or mixes weights"""
    weights = {grading_weight(m) for m, _ in f.items()}
    return weights.pop() if len(weights) == 1 else None
