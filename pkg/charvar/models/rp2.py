"""
Convex projective structures on the three-holed sphere: boundary validity,
boundary eigenvalues and the fiber coordinates t(4), t(-4) in the free
parameters (s, t).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, sqrt
from typing import Dict, Iterable, List, Sequence, Tuple, Union
import logging

import numpy as np
import pandas as pd

from data.fiber_terms import BOUNDARY_TRACES, FIBER_T4_TERMS, FIBER_TM4_TERMS
from data.relation_store import default_store
from models.char_ring import GeneratorPoint
from models.polynomial import T
from utils.errors import DomainError, InvalidBoundary, RootFindingFailure

logger = logging.getLogger(__name__)

Real = Union[int, Fraction, float]

ROOT_TOLERANCE = 1e-12
MAX_ITERATIONS = 200


def discriminant(x: Real, y: Real) -> Real:
    """d(x, y) = x^2 y^2 - 4(x^3 + y^3) + 18xy - 27"""
    return x * x * y * y - 4 * (x ** 3 + y ** 3) + 18 * x * y - 27


@dataclass(frozen=True)
class BoundaryData:
    """(t(i), t(-i)) for the three boundary curves"""

    pairs: Tuple[Tuple[Real, Real], Tuple[Real, Real], Tuple[Real, Real]]

    def traces(self) -> Dict[int, Real]:
        values = {}
        for i, (ti, tmi) in enumerate(self.pairs, start=1):
            values[i], values[-i] = ti, tmi
        return values

    def cubic_coefficients(self, boundary: int) -> Tuple[Real, Real]:
        """(trace, cotrace) of the boundary curve; the third curve is x1^-1 x2^-1"""
        a, b = BOUNDARY_TRACES[boundary]
        values = self.traces()
        return values[a], values[b]


@dataclass(frozen=True)
class FiberParams:
    s: Real
    t: Real

    def __post_init__(self):
        if not (self.s > 0 and self.t > 0):
            raise DomainError(f"Fiber parameters must be positive, got s={self.s}, t={self.t}")


def boundary_valid(b: BoundaryData) -> Tuple[bool, bool, bool]:
    return tuple(ti > 0 and tmi > 0 and discriminant(ti, tmi) > 0 for ti, tmi in b.pairs)


@lru_cache(maxsize=None)
def _warn_cubic_signs() -> None:
    logger.warning("Boundary eigenvalues use the det-1 characteristic cubic "
                   "l^3 - t(i) l^2 + t(-i) l - 1, not the sign-flipped form which is nonzero at the identity")


def _cubic(a: float, b: float, x: float) -> float:
    return ((x - a) * x + b) * x - 1


def largest_eigenvalue(ti: Real, tmi: Real) -> float:
    """Largest root of l^3 - ti l^2 + tmi l - 1 by Newton steps kept inside a bisection bracket"""
    if not (ti > 0 and tmi > 0 and discriminant(ti, tmi) > 0):
        raise InvalidBoundary(f"Boundary pair ({ti}, {tmi}) has no three distinct positive eigenvalues")
    _warn_cubic_signs()
    a, b = float(ti), float(tmi)
    # local minimum of the cubic sits between the middle and the largest root
    lo = (a + sqrt(a * a - 3 * b)) / 3
    hi = a
    if not (_cubic(a, b, lo) < 0 < _cubic(a, b, hi)):
        raise RootFindingFailure(f"Could not bracket the largest eigenvalue for ({ti}, {tmi})")
    x = hi
    for _ in range(MAX_ITERATIONS):
        fx = _cubic(a, b, x)
        if fx < 0:
            lo = x
        else:
            hi = x
        slope = (3 * x - 2 * a) * x + b
        step = x - fx / slope if slope else None
        x_next = step if step is not None and lo < step < hi else (lo + hi) / 2
        if abs(x_next - x) <= ROOT_TOLERANCE * abs(x_next):
            return x_next
        x = x_next
    raise RootFindingFailure(f"Eigenvalue iteration did not converge for ({ti}, {tmi})")


def eigenvalues(ti: Real, tmi: Real) -> Tuple[float, float, float]:
    """All three boundary eigenvalues, largest first; the smaller two by deflation"""
    l1 = largest_eigenvalue(ti, tmi)
    # l^2 - (ti - l1) l + 1/l1
    trace = float(ti) - l1
    root = sqrt(max(trace * trace - 4 / l1, 0.0))
    return l1, (trace + root) / 2, (trace - root) / 2


def monotonicity_counterexamples(tmi: Real, ti_values: Sequence[Real]) -> List[Tuple[Real, Real]]:
    """Consecutive valid ti where the largest root decreases; reported, never asserted"""
    valid = [ti for ti in sorted(ti_values) if ti > 0 and tmi > 0 and discriminant(ti, tmi) > 0]
    roots = [largest_eigenvalue(ti, tmi) for ti in valid]
    found = [(valid[k], valid[k + 1]) for k in range(len(valid) - 1) if roots[k + 1] < roots[k]]
    for lo, hi in found:
        logger.info(f"Largest root decreases between ti={lo} and ti={hi} at tmi={tmi}")
    return found


def _check_domain(lambdas: Sequence[Real], s: Real, t: Real) -> None:
    if any(l <= 0 for l in lambdas):
        raise DomainError(f"Eigenvalues must be positive, got {tuple(lambdas)}")
    if not (s > 0 and t > 0):
        raise DomainError(f"Fiber parameters must be positive, got s={s}, t={t}")


def _power(base: Real, exponent: Fraction) -> Tuple[Real, float]:
    """base^exponent split as an exact integer power and a radical factor"""
    whole = floor(exponent)
    exact = Fraction(base) ** whole if isinstance(base, (int, Fraction)) else float(base) ** whole
    radical = sqrt(float(base)) if exponent - whole else 1.0
    return exact, radical


def evaluate_terms(terms: Iterable[tuple], l1: Real, l2: Real, l3: Real, s: Real, t: Real,
                   t1: Real, t2: Real, tm3: Real) -> float:
    """Sum of a fiber term table, rational parts kept exact until the radicals are applied"""
    factors = {"T1": t1, "T2": t2, "Tm3": tm3}
    total = 0.0
    for coefficient, *exponents, names in terms:
        exact: Real = Fraction(coefficient)
        radical = 1.0
        for base, exponent in zip((s, t, l1, l2, l3), exponents):
            e_part, r_part = _power(base, Fraction(exponent))
            exact *= e_part
            radical *= r_part
        for name in names:
            exact *= factors[name]
        total += float(exact) * radical
    return total


def fiber_t4(l1: Real, l2: Real, l3: Real, s: Real, t: Real, t1: Real, t2: Real, tm3: Real) -> float:
    _check_domain((l1, l2, l3), s, t)
    return evaluate_terms(FIBER_T4_TERMS, l1, l2, l3, s, t, t1, t2, tm3)


def fiber_tm4(l1: Real, l2: Real, l3: Real, s: Real, t: Real, t1: Real, t2: Real, tm3: Real) -> float:
    _check_domain((l1, l2, l3), s, t)
    return evaluate_terms(FIBER_TM4_TERMS, l1, l2, l3, s, t, t1, t2, tm3)


def fiber_t4_direct(l1, l2, l3, s, t, t1, t2, tm3) -> float:
    """t(4) written out as one floating expression"""
    _check_domain((l1, l2, l3), s, t)
    l1, l2, l3, s, t, t1, t2, tm3 = (float(x) for x in (l1, l2, l3, s, t, t1, t2, tm3))
    r1, r2, r3 = sqrt(l1), sqrt(l2), sqrt(l3)
    a = r1 * r2 * r3
    return (1 / (s * a) + a / s - s * l1 ** 1.5 * r2 / r3 - s * l2 ** 1.5 * r3 / r1
            - s * r1 * l3 ** 1.5 / r2 + 2 * s ** 2 - l1 / (t * l2)
            - l3 / (t * l1) + 1 / (s * t * a)
            + s * r2 / (t * l1 ** 1.5 * r3) + s * r3 / (t * r1 * l2 ** 1.5)
            + s * r1 * l3 ** 1.5 / (t * r2) - s ** 2 / t - s ** 2 * l3 ** 2 / (t * l1 * l2)
            + s ** 3 * r3 / (t * l1 ** 1.5 * r2) - t * l1 * l2 ** 2
            + t * a / s + s * t * l1 ** 1.5 * r2 / r3
            + t1 / l2 - l2 ** 2 * t1 + s * r1 * r2 * t1 / r3
            + t1 / (t * l2) - s * l3 ** 1.5 * t1 / (t * r1 * r2)
            + s ** 2 * t1 / (t * l1) + s * r2 * r3 * t2 / r1
            + t * l1 * l2 * t2 + l2 * t1 * t2 + s * r1 * r3 * tm3 / r2
            + tm3 / (t * l1) - s * r1 * r3 * tm3 / (t * r2)
            + s ** 2 * l3 * tm3 / (t * l1 * l2) + s * r3 * t1 * tm3 / (t * r1 * r2))


def fiber_tm4_direct(l1, l2, l3, s, t, t1, t2, tm3) -> float:
    """t(-4) written out as one floating expression"""
    _check_domain((l1, l2, l3), s, t)
    l1, l2, l3, s, t, t1, t2, tm3 = (float(x) for x in (l1, l2, l3, s, t, t1, t2, tm3))
    r1, r2, r3 = sqrt(l1), sqrt(l2), sqrt(l3)
    a = r1 * r2 * r3
    return (2 / s ** 2 - r1 * l2 ** 1.5 / (s * r3) - l1 ** 1.5 * r3 / (s * r2)
            - r2 * l3 ** 1.5 / (s * r1) + s / a + s * a
            + l2 / (t * l1) + l3 / (t * l2) + l1 * l3 ** 2 / t + 1 / (s ** 2 * t)
            - l1 ** 1.5 * r3 / (s * t * r2) - r2 * l3 ** 1.5 / (s * t * r1)
            - s * a / t - s * l3 ** 2.5 / (t * r1 * r2)
            + s ** 2 * l3 / (t * l1) + t * l1 / l3 + t / s ** 2 - t * r1 * l2 ** 1.5 / (s * r3)
            + r1 * r3 * t1 / (s * r2) - l3 ** 2 * t1 / t + r1 * r3 * t1 / (s * t * r2)
            + s * r2 * r3 * t1 / (t * r1) + t2 / l1
            - l1 ** 2 * t2 + r1 * r2 * t2 / (s * r3) + t * r1 * r2 * t2 / (s * r3)
            + l1 * t1 * t2 + r2 * r3 * tm3 / (s * r1)
            - l1 * l3 * tm3 / t + r2 * r3 * tm3 / (s * t * r1)
            + s * l3 ** 1.5 * tm3 / (sqrt(t * l1) * r2) + l3 * t1 * tm3 / t)


def boundary_lambdas(b: BoundaryData) -> Tuple[float, float, float]:
    valid = boundary_valid(b)
    if not all(valid):
        raise InvalidBoundary(f"Boundary data {b.pairs} fails validity on components {valid}")
    return tuple(largest_eigenvalue(*b.cubic_coefficients(i)) for i in (1, 2, 3))


@dataclass(frozen=True)
class FiberPoint:
    s: Real
    t: Real
    t4: float
    tm4: float
    roots: Tuple[GeneratorPoint, GeneratorPoint]

    @property
    def t5_roots(self) -> Tuple[complex, complex]:
        return self.roots[0][5], self.roots[1][5]


def fiber_point(b: BoundaryData, p: FiberParams) -> FiberPoint:
    """Boundary traces, fiber coordinates and both roots of the sextic in t5"""
    l1, l2, l3 = boundary_lambdas(b)
    traces = b.traces()
    t4 = fiber_t4(l1, l2, l3, p.s, p.t, traces[1], traces[2], traces[-3])
    tm4 = fiber_tm4(l1, l2, l3, p.s, p.t, traces[1], traces[2], traces[-3])
    base = {i: float(v) for i, v in traces.items()}
    base[4], base[-4] = t4, tm4
    store = default_store()
    assignment = {T(i): v for i, v in base.items()}
    P = store.P.eval_complex(assignment)
    Q = store.Q.eval_complex(assignment)
    root = complex(np.lib.scimath.sqrt(P * P - 4 * Q))
    points = []
    for t5 in ((P + root) / 2, (P - root) / 2):
        points.append(GeneratorPoint({**base, 5: t5, -5: P - t5}))
    return FiberPoint(p.s, p.t, t4, tm4, (points[0], points[1]))


def fiber_grid(b: BoundaryData, s_values: Sequence[Real], t_values: Sequence[Real]) -> pd.DataFrame:
    rows: List[dict] = []
    for s in s_values:
        for t in t_values:
            point = fiber_point(b, FiberParams(s, t))
            plus, minus = point.t5_roots
            rows.append({"s": float(s), "t": float(t), "t4": point.t4, "t-4": point.tm4,
                         "t5+": plus, "t5-": minus})
    logger.info(f"Evaluated fiber grid of {len(rows)} points")
    return pd.DataFrame(rows, columns=["s", "t", "t4", "t-4", "t5+", "t5-"])
