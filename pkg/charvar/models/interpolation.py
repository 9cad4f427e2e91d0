"""
Exact interpolation of trace functions in the nine generators.

tr(w) is fitted as a polynomial in t(+-1..+-4) with t(5)-degree at most one,
restricted to monomials whose generator bidegree matches the word's
weighted bidegree up to multiples of three.  Coefficients come from an exact
solve on integral sample pairs and are certified on a disjoint set of
rational pairs before being returned.
"""
from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union
import logging

from models.matrices import DEFAULT_FACTORS, RepPair, sample_pairs, trace_word
from models.polynomial import R_VARIABLES, T, T5, Monomial, Polynomial, Variable, make_monomial
from models.words import Word, bidegree, cyclic_reduce
from utils.errors import BasisInsufficient, RankDeficient, ReductionFailed
from utils.exact_linalg import solve
from utils.helpers import parse_word
from data.trace_rules import GENERATOR_WORDS

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
DEGREE_SCHEDULE = (2, 4, 6)

_WORDS = {i: parse_word(text) for i, text in GENERATOR_WORDS.items()}
GENERATOR_BIDEGREES: Dict[Variable, Tuple[int, int]] = {T(i): bidegree(w) for i, w in _WORDS.items() if i != -5}


def evaluation_point(pair: RepPair) -> Dict[Variable, Union[Fraction, complex]]:
    """Values of t(+-1..+-5) at a pair"""
    return {T(i): trace_word(w, pair) for i, w in _WORDS.items()}


def interpolation_basis(w: Word, degree_bound: int) -> List[Monomial]:
    """Monomials of R-degree <= degree_bound, times 1 or t5, in the bidegree class of w"""
    a, b = bidegree(cyclic_reduce(w))
    basis: List[Monomial] = []
    for degree in range(degree_bound + 1):
        for combo in combinations_with_replacement(R_VARIABLES, degree):
            da = sum(GENERATOR_BIDEGREES[v][0] for v in combo)
            db = sum(GENERATOR_BIDEGREES[v][1] for v in combo)
            if da > a or db > b:
                continue
            for extra in (0, 1):
                ra, rb = a - da - 3 * extra, b - db - 3 * extra
                if ra < 0 or rb < 0 or ra % 3 or rb % 3:
                    continue
                powers = Counter(combo)
                if extra:
                    powers[T5] += 1
                basis.append(make_monomial(powers))
    return basis


def degree_schedule(w: Word) -> Tuple[int, ...]:
    """2, 4, 6 and then the largest degree a graded monomial can reach"""
    a, b = bidegree(cyclic_reduce(w))
    final = a + b
    return DEGREE_SCHEDULE + ((final,) if final > DEGREE_SCHEDULE[-1] else ())


def _monomial_value(mono: Monomial, point: Mapping[Variable, Fraction]) -> Fraction:
    value = Fraction(1)
    for v, e in mono:
        value *= point[v] ** e
    return value


class Interpolator:
    """Fits and certifies trace polynomials; deterministic for a given seed"""

    def __init__(self, seed: int = DEFAULT_SEED, max_attempts: int = 3, n_factors: int = DEFAULT_FACTORS):
        self.seed = seed
        self.max_attempts = max_attempts
        self.n_factors = n_factors

    def _samples(self, attempt: int, role: int, count: int, integral: bool) -> List[RepPair]:
        return sample_pairs([self.seed, attempt, role], count, self.n_factors, integral=integral)

    def fit(self, w: Word, basis: Sequence[Monomial], attempt: int) -> Optional[Polynomial]:
        """Exact fit on integral samples; None when w is outside the span of the basis"""
        rows, rhs = [], []
        for pair in self._samples(attempt, 0, len(basis) + 8, integral=True):
            point = evaluation_point(pair)
            rows.append([_monomial_value(m, point) for m in basis])
            rhs.append(trace_word(w, pair))
        coefficients = solve(rows, rhs)
        if coefficients is None:
            return None
        return Polynomial({m: c for m, c in zip(basis, coefficients) if c})

    def certify(self, w: Word, candidate: Polynomial, attempt: int, count: int) -> bool:
        for pair in self._samples(attempt, 1, count, integral=False):
            point = evaluation_point(pair)
            if candidate.eval_rational(point) != trace_word(w, pair):
                return False
        return True

    def reduce(self, w: Word, degree_bound: int) -> Polynomial:
        if degree_bound < 1:
            raise ValueError(f"Degree bound must be positive, got {degree_bound}")
        word = cyclic_reduce(w)
        if word.is_identity():
            return Polynomial.constant(3)
        basis = interpolation_basis(word, degree_bound)
        if not basis:
            raise BasisInsufficient(degree_bound, f"Empty basis for {word.text()} at degree {degree_bound}")
        logger.debug(f"Interpolating tr({word.text()}) with {len(basis)} basis monomials at degree {degree_bound}")
        rank_failures = 0
        for attempt in range(self.max_attempts):
            try:
                candidate = self.fit(word, basis, attempt)
            except RankDeficient as e:
                logger.warning(f"Samples for tr({word.text()}) do not determine the fit ({e}); resampling")
                rank_failures += 1
                continue
            if candidate is None:
                raise BasisInsufficient(degree_bound, f"tr({word.text()}) is not in the degree {degree_bound} span")
            if self.certify(word, candidate, attempt, 2 * len(basis)):
                logger.info(f"Interpolated tr({word.text()}) at degree {degree_bound}: "
                            f"{len(candidate)} terms from {len(basis)} basis monomials")
                return candidate
            logger.warning(f"Certification of tr({word.text()}) failed on attempt {attempt}; resampling")
        if rank_failures == self.max_attempts:
            raise RankDeficient(f"Every sample set for tr({word.text()}) was rank deficient")
        raise ReductionFailed(f"Could not certify an interpolation of tr({word.text()}) "
                              f"after {self.max_attempts} attempts")

    def reduce_with_schedule(self, w: Word) -> Polynomial:
        last: Optional[BasisInsufficient] = None
        for bound in degree_schedule(w):
            try:
                return self.reduce(w, bound)
            except BasisInsufficient as e:
                logger.debug(f"Degree {bound} insufficient for tr({cyclic_reduce(w).text()})")
                last = e
        raise last


def reduce_by_interpolation(w: Word, degree_bound: int, seed: int = DEFAULT_SEED) -> Polynomial:
    return Interpolator(seed).reduce(w, degree_bound)
