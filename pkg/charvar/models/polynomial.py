"""
Sparse multivariate polynomials with exact rational coefficients.

Variables are tagged identifiers (generator traces t(i), eigenvalues L1..L3,
parameters s, t, a, c and formal trace symbols tr(w)).  A polynomial is an
immutable map Monomial -> Fraction that never stores a zero coefficient, so
two polynomials are equal exactly when their term maps are equal.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple, Union
import logging

import numpy as np

from models.words import letters_to_text
from utils.errors import MissingBinding

logger = logging.getLogger(__name__)

Rational = Fraction
ComplexF = complex
Scalar = Union[int, Fraction, complex]

PARAM_NAMES = ("s", "t", "a", "c")


@dataclass(frozen=True)
class Variable:
    """Tagged variable; kind is one of T, Lam, Param, Trace"""

    kind: str
    index: Any

    @cached_property
    def sort_key(self) -> tuple:
        # T(1) < T(-1) < T(2) < ... < T(5) < T(-5) < Lam < Param < TraceSym
        if self.kind == "T":
            return (0, abs(self.index), 0 if self.index > 0 else 1)
        if self.kind == "Lam":
            return (1, self.index)
        if self.kind == "Param":
            return (2, PARAM_NAMES.index(self.index))
        return (3, len(self.index), tuple((g, 0 if e > 0 else 1, abs(e)) for g, e in self.index))

    @cached_property
    def name(self) -> str:
        if self.kind == "T":
            return f"t{self.index}"
        if self.kind == "Lam":
            return f"L{self.index}"
        if self.kind == "Param":
            return self.index
        return f"tr({letters_to_text(self.index)})"

    def __repr__(self) -> str:
        return self.name


@lru_cache(maxsize=None)
def T(i: int) -> Variable:
    """Generator variable t(i), i in +-1..+-5"""
    if i == 0 or abs(i) > 5:
        raise ValueError(f"Generator index out of range: {i}")
    return Variable("T", i)


@lru_cache(maxsize=None)
def Lam(j: int) -> Variable:
    if j not in (1, 2, 3):
        raise ValueError(f"Eigenvalue index out of range: {j}")
    return Variable("Lam", j)


@lru_cache(maxsize=None)
def Param(name: str) -> Variable:
    if name not in PARAM_NAMES:
        raise ValueError(f"Unknown parameter: {name}")
    return Variable("Param", name)


@lru_cache(maxsize=None)
def TraceSym(key: Tuple[Tuple[int, int], ...]) -> Variable:
    """Formal trace symbol keyed by a canonical cyclic word (tuple of (generator, exponent))"""
    if not key:
        raise ValueError("The identity word has no trace symbol; its trace is 3")
    return Variable("Trace", tuple(key))


GENERATOR_INDICES = (1, -1, 2, -2, 3, -3, 4, -4)
R_VARIABLES = tuple(T(i) for i in GENERATOR_INDICES)
T5 = T(5)
TM5 = T(-5)

Monomial = Tuple[Tuple[Variable, int], ...]


def make_monomial(powers: Mapping[Variable, int]) -> Monomial:
    return tuple(sorted(((v, e) for v, e in powers.items() if e), key=lambda ve: ve[0].sort_key))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for v, e in b:
        merged[v] = merged.get(v, 0) + e
    return make_monomial(merged)


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grlex_key(m: Monomial) -> tuple:
    """Sort key: higher total degree first, then lexicographic under the variable order"""
    return (-monomial_degree(m), tuple((v.sort_key, -e) for v, e in m))


def complexf(value: Scalar, im: float = 0.0) -> complex:
    """Finite complex scalar; NaN and infinities are rejected"""
    z = complex(value) + complex(0.0, im)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError(f"Non-finite complex value: {z}")
    return z


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Polynomial:
    """Immutable sparse polynomial over the rationals"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Union[int, Fraction]]] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if c:
                    clean[mono] = clean.get(mono, Fraction(0)) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, value: Union[int, Fraction]) -> "Polynomial":
        value = Fraction(value)
        return cls._from_clean({(): value} if value else {})

    @classmethod
    def var(cls, v: Variable, exponent: int = 1) -> "Polynomial":
        return cls._from_clean({((v, exponent),): Fraction(1)} if exponent else {(): Fraction(1)})

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._from_clean({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.constant(1)

    # Inspection

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1"""
        if not self._terms:
            return -1
        return max(monomial_degree(m) for m in self._terms)

    def degree_in(self, v: Variable) -> int:
        if not self._terms:
            return -1
        return max(dict(m).get(v, 0) for m in self._terms)

    def variables(self) -> FrozenSet[Variable]:
        return frozenset(v for m in self._terms for v, _ in m)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def coefficients_in(self, v: Variable) -> Dict[int, "Polynomial"]:
        """Split f = sum_k c_k * v^k, returning {k: c_k}"""
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, coeff in self._terms.items():
            k = 0
            rest = mono
            for idx, (w, e) in enumerate(mono):
                if w == v:
                    k = e
                    rest = mono[:idx] + mono[idx + 1:]
                    break
            parts.setdefault(k, {})[rest] = coeff
        return {k: Polynomial._from_clean(t) for k, t in parts.items()}

    # Arithmetic

    @staticmethod
    def _coerce(other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return None

    def __add__(self, other) -> "Polynomial":
        other = Polynomial._coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            c = out.get(mono)
            if c is None:
                out[mono] = coeff
            else:
                c = c + coeff
                if c:
                    out[mono] = c
                else:
                    del out[mono]
        return Polynomial._from_clean(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._from_clean({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = Polynomial._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = Polynomial._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        other = Polynomial._coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return Polynomial.zero()
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = monomial_mul(m1, m2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return Polynomial._from_clean({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and other != 0:
            inv = 1 / Fraction(other)
            return Polynomial._from_clean({m: c * inv for m, c in self._terms.items()})
        return NotImplemented

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Polynomial powers need a nonnegative integer exponent")
        result = Polynomial.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = Polynomial._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # Calculus and substitution

    def partial(self, v: Variable) -> "Polynomial":
        """Formal partial derivative with respect to v"""
        out: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            for idx, (w, e) in enumerate(mono):
                if w == v:
                    if e > 1:
                        new_mono = mono[:idx] + ((w, e - 1),) + mono[idx + 1:]
                    else:
                        new_mono = mono[:idx] + mono[idx + 1:]
                    out[new_mono] = out.get(new_mono, 0) + coeff * e
                    break
        return Polynomial._from_clean({m: c for m, c in out.items() if c})

    def substitute(self, bindings: Mapping[Variable, Union["Polynomial", int, Fraction]]) -> "Polynomial":
        """Simultaneous substitution; unbound variables pass through"""
        if not bindings or not self._terms:
            return self
        images = {v: Polynomial._coerce(p) for v, p in bindings.items()}
        powers: Dict[Tuple[Variable, int], Polynomial] = {}

        def power(v: Variable, e: int) -> Polynomial:
            key = (v, e)
            if key not in powers:
                powers[key] = images[v] ** e
            return powers[key]

        result = Polynomial.zero()
        for mono, coeff in self._terms.items():
            kept = tuple((v, e) for v, e in mono if v not in images)
            term = Polynomial._from_clean({kept: coeff})
            for v, e in mono:
                if v in images:
                    term = term * power(v, e)
            result = result + term
        return result

    def map_variables(self, mapping: Mapping[Variable, Variable]) -> "Polynomial":
        """Rename variables (a permutation or injection); faster than substitute"""
        out: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            powers: Dict[Variable, int] = {}
            for v, e in mono:
                w = mapping.get(v, v)
                powers[w] = powers.get(w, 0) + e
            new_mono = make_monomial(powers)
            out[new_mono] = out.get(new_mono, 0) + coeff
        return Polynomial._from_clean({m: c for m, c in out.items() if c})

    # Evaluation

    def eval_rational(self, assignment: Mapping[Variable, Union[int, Fraction]]) -> Fraction:
        """Exact value under a rational assignment"""
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            value = coeff
            for v, e in mono:
                try:
                    x = assignment[v]
                except KeyError:
                    raise MissingBinding(v) from None
                value *= Fraction(x) ** e
            total += value
        return total

    def eval_complex(self, assignment: Mapping[Variable, Scalar]) -> complex:
        """Floating evaluation, Horner-style one variable at a time"""
        order = sorted(self.variables(), key=lambda v: v.sort_key)
        values: Dict[Variable, complex] = {}
        for v in order:
            if v not in assignment:
                raise MissingBinding(v)
            values[v] = complexf(assignment[v])
        return _horner(list(self._terms.items()), order, 0, values)

    def evaluate(self, assignment: Mapping[Variable, Scalar]) -> Union[Fraction, complex]:
        """Exact when every bound value is rational, floating otherwise"""
        needed = self.variables()
        if all(isinstance(assignment.get(v, 0), (int, Fraction)) for v in needed):
            return self.eval_rational(assignment)
        return self.eval_complex(assignment)

    # Text

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda mc: grlex_key(mc[0]))

    def to_text(self) -> str:
        """Canonical text form, graded lexicographic, bit-exact across runs"""
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for position, (mono, coeff) in enumerate(self.sorted_terms()):
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            factors = [v.name if e == 1 else f"{v.name}^{e}" for v, e in mono]
            if not factors:
                body = _format_coefficient(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_format_coefficient(magnitude)] + factors)
            if position == 0:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


def _horner(terms: List[Tuple[Monomial, Fraction]], order: List[Variable], depth: int,
            values: Dict[Variable, complex]) -> complex:
    if depth == len(order):
        return complex(sum(float(c) for _, c in terms))
    v = order[depth]
    buckets: Dict[int, List[Tuple[Monomial, Fraction]]] = {}
    for mono, coeff in terms:
        k = 0
        for w, e in mono:
            if w == v:
                k = e
                break
        buckets.setdefault(k, []).append((mono, coeff))
    x = values[v]
    acc = 0j
    for k in range(max(buckets), -1, -1):
        acc = acc * x
        if k in buckets:
            acc += _horner(buckets[k], order, depth + 1, values)
    return acc


def t(i: int) -> Polynomial:
    """The generator t(i) as a polynomial"""
    return Polynomial.var(T(i))


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def substitute(f: Polynomial, bindings: Mapping[Variable, Polynomial]) -> Polynomial:
    return f.substitute(bindings)


def partial(f: Polynomial, v: Variable) -> Polynomial:
    return f.partial(v)


def eval_rational(f: Polynomial, assignment: Mapping[Variable, Union[int, Fraction]]) -> Fraction:
    return f.eval_rational(assignment)


def eval_complex(f: Polynomial, assignment: Mapping[Variable, Scalar]) -> complex:
    return f.eval_complex(assignment)


def total(polys: Iterable[Polynomial]) -> Polynomial:
    result = Polynomial.zero()
    for p in polys:
        result = result + p
    return result
