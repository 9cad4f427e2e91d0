"""
Seeded verification suites.

Every check yields one outcome per sample; a sample fails when its residual
is nonzero.  The exact suite compares with ==, the float suite with the
configured tolerance.
"""
from fractions import Fraction
from itertools import product
from math import ceil, isfinite
from typing import Callable, Dict, Iterable, Iterator, List, Literal, Optional, Tuple
import logging
import os
import time

import numpy as np
import pandas as pd
from dotenv import load_dotenv
from pydantic import BaseModel, field_validator

from data.fiber_terms import SAMPLE_BOUNDARIES
from data.polynomials import FAMILY_AC_JACOBIAN
from data.relation_store import default_store
from data.trace_rules import BRACKET_WORD_SUM
from models import char_ring, poisson, rp2
from models.interpolation import DEFAULT_SEED, evaluation_point
from models.matrices import (family_ac, family_diag, family_gl2, pair_rho1_rho2, sample_pairs,
                             trace_word)
from models.polynomial import GENERATOR_INDICES, T, T5, TM5, Polynomial
from models.trace_calculus import (IDENTITY_NAMES, default_reducer, get_identity, identity_residual,
                                   residual_is_zero)
from models.words import Word, cyclic_reduce, free_reduce, weighted_length, z3_weight
from utils.errors import CharVarError
from utils.helpers import format_record, format_scalar, parse_word

load_dotenv()

logger = logging.getLogger(__name__)

Outcome = Tuple[str, Optional[str]]

ACCEPTANCE_SAMPLES = 200
P1_NONZERO_SHARE = Fraction(195, 200)

_LAMBDA_SWEEP = tuple({"lam": lam} for lam in (Fraction(-2), Fraction(1, 3), Fraction(3, 2), Fraction(5)))

# swept on every catalog sample in addition to the defaults
CATALOG_PARAMETERS: Dict[str, Tuple[Dict[str, object], ...]] = {
    "powerreduce": tuple({"n": n} for n in range(2, 7)),
    "detsum": _LAMBDA_SWEEP,
    "adjtrace-sum": _LAMBDA_SWEEP,
}


def p1_allowance(count: int) -> int:
    """How many of count points may have P1 = 0"""
    return count - ceil(count * P1_NONZERO_SHARE)


class RunConfig(BaseModel):
    seed: int = DEFAULT_SEED
    samples: int = 100
    # lower bound on samples for the det(Lambda) factorization and Leibniz checks
    acceptance_samples: int = ACCEPTANCE_SAMPLES
    tolerance: float = 1e-9
    output_format: Literal["text", "structured"] = "text"
    suite: Literal["exact", "float", "all"] = "exact"

    @field_validator("samples", "acceptance_samples")
    @classmethod
    def samples_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("sample counts must be at least 1")
        return v

    @property
    def extended_samples(self) -> int:
        return max(self.samples, self.acceptance_samples)

    @field_validator("tolerance")
    @classmethod
    def tolerance_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("tolerance must be positive")
        return v

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        """Environment defaults, overridden by any non-None keyword"""
        values = {
            "seed": os.getenv("CHARVAR_SEED", str(DEFAULT_SEED)),
            "samples": os.getenv("CHARVAR_SAMPLES", "100"),
            "acceptance_samples": os.getenv("CHARVAR_ACCEPTANCE_SAMPLES", str(ACCEPTANCE_SAMPLES)),
            "tolerance": os.getenv("CHARVAR_TOLERANCE", "1e-9"),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class Failure(BaseModel):
    sample: str
    residual: str


class CheckResult(BaseModel):
    name: str
    samples: int
    failures: List[Failure]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.failures


class VerificationReport(BaseModel):
    seed: int
    checks: List[CheckResult]

    @property
    def failure_count(self) -> int:
        return sum(len(c.failures) for c in self.checks)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [{"check": c.name, "samples": c.samples, "failures": len(c.failures),
              "status": "ok" if c.passed else "FAIL", "elapsed": round(c.elapsed, 3)} for c in self.checks],
            columns=["check", "samples", "failures", "status", "elapsed"],
        )

    def render_text(self) -> str:
        lines = [self.to_frame().to_string(index=False)]
        for c in self.checks:
            for f in c.failures[:5]:
                lines.append(f"  {c.name} [{f.sample}]: {f.residual}")
        lines.append(f"{len(self.checks)} checks, {self.failure_count} failures")
        return "\n".join(lines)

    def render_structured(self) -> str:
        """Line records without timings, so equal seeds give equal output"""
        lines = []
        for c in self.checks:
            lines.append(format_record({"check": c.name, "samples": c.samples, "failures": len(c.failures),
                                        "passed": c.passed}))
            for f in c.failures:
                lines.append(format_record({"check": c.name, "sample": f.sample, "residual": f.residual}))
        lines.append(format_record({"seed": self.seed, "checks": len(self.checks), "failures": self.failure_count}))
        return "\n".join(lines)


def run_check(name: str, outcomes: Callable[[], Iterable[Outcome]]) -> CheckResult:
    start = time.perf_counter()
    samples, failures = 0, []
    try:
        for label, residual in outcomes():
            samples += 1
            if residual is not None:
                failures.append(Failure(sample=label, residual=residual))
    except CharVarError as e:
        logger.error(f"Check {name} aborted: {e}")
        failures.append(Failure(sample="aborted", residual=f"{type(e).__name__}: {e}"))
    result = CheckResult(name=name, samples=samples, failures=failures, elapsed=time.perf_counter() - start)
    logger.debug(f"{name}: {samples} samples, {len(failures)} failures in {result.elapsed:.2f}s")
    return result


def _pairs(config: RunConfig, stream: int, count: Optional[int] = None):
    return sample_pairs([config.seed, stream], count or config.samples)


def _rng(config: RunConfig, stream: int) -> np.random.Generator:
    return np.random.default_rng([config.seed, stream])


def _nonzero_rational(rng: np.random.Generator) -> Fraction:
    sign = 1 if rng.integers(0, 2) else -1
    return sign * Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 10)))


def _zero_or(value, label: str = "") -> Optional[str]:
    if isinstance(value, Polynomial):
        return None if value.is_zero() else f"{label}{value.to_text()}"
    return None if value == 0 else f"{label}{format_scalar(value)}"


def _close(value, expected, tolerance: float) -> Optional[str]:
    scale = max(1.0, abs(complex(expected)))
    diff = abs(complex(value) - complex(expected))
    return None if diff <= tolerance * scale else f"{format_scalar(complex(value))} vs {format_scalar(complex(expected))}"


# Exact suite

def _catalog_check(name: str, config: RunConfig) -> Callable[[], Iterator[Outcome]]:
    record = get_identity(name)
    stream = 100 + IDENTITY_NAMES.index(name)
    sweep = ({},) + CATALOG_PARAMETERS.get(name, ())

    def outcomes():
        for n in range(config.samples):
            pairs = sample_pairs([config.seed, stream, n], ceil(record.arity / 2))
            mats = [m for pair in pairs for m in pair][:record.arity]
            for params in sweep:
                value = identity_residual(name, mats, **params)
                label = " ".join([f"sample {n}"] + [f"{k}={v}" for k, v in params.items()])
                yield label, None if residual_is_zero(value) else repr(value)
    return outcomes


def check_kernel(config: RunConfig) -> Iterator[Outcome]:
    for n, pair in enumerate(_pairs(config, 1)):
        residuals = char_ring.kernel_residuals(char_ring.pi_map(pair))
        bad = {k: v for k, v in residuals.items() if v != 0}
        yield f"sample {n}", None if not bad else ", ".join(f"{k}={format_scalar(v)}" for k, v in bad.items())


def check_lambda_singular(config: RunConfig) -> Iterator[Outcome]:
    for n, pair in enumerate(_pairs(config, 2)):
        yield f"sample {n}", _zero_or(char_ring.lambda_determinant(pair))


def check_lambda_factorization(config: RunConfig) -> Iterator[Outcome]:
    entries = char_ring.lambda_entries()
    count = config.extended_samples
    degenerate = 0
    for n, pair in enumerate(_pairs(config, 3, count)):
        f = char_ring.lambda_factorization(char_ring.pi_map(pair), entries)
        if f.p1 == 0:
            degenerate += 1
        yield f"sample {n}", None if f.matches_sextic() else f"coefficients {[format_scalar(c) for c in f.coefficients]}"
    yield "P1 nonzero", None if degenerate <= p1_allowance(count) else f"P1 vanished at {degenerate} of {count} points"


def check_partials_P(config: RunConfig) -> Iterator[Outcome]:
    formal, tabulated = char_ring.partials_P(), char_ring.tabulated_partials_P()
    for i in GENERATOR_INDICES:
        yield f"dP/d{i}", _zero_or(formal[i] - tabulated[i])


def check_partials_Q(config: RunConfig) -> Iterator[Outcome]:
    formal, tabulated = char_ring.formal_partials_Q(), char_ring.partials_Q()
    for i in GENERATOR_INDICES:
        yield f"dQ/d{i}", _zero_or(formal[i] - tabulated[i])


def check_symmetrizer(config: RunConfig) -> Iterator[Outcome]:
    yield "P", _zero_or(char_ring.reconstructed_P() - char_ring.poly_P())
    yield "Q", _zero_or(char_ring.reconstructed_Q() - char_ring.poly_Q())


def check_dihedral(config: RunConfig) -> Iterator[Outcome]:
    group = char_ring.dihedral_group()
    for a, b in product(group, group):
        table = char_ring.compose(a, b)
        yield f"{a.name}*{b.name}", None if table.permutation == char_ring.compose_permutations(a, b) \
            else f"table gives {table.name}"
    P, Q = char_ring.poly_P(), char_ring.poly_Q()
    for g in group:
        yield f"{g.name} fixes P", _zero_or(char_ring.apply_dihedral(g, P) - P)
        yield f"{g.name} fixes Q", _zero_or(char_ring.apply_dihedral(g, Q) - Q)
    generators = [char_ring.dihedral_element("i"), char_ring.dihedral_element("t")]
    size = len(char_ring.generated_subgroup(generators))
    yield "closure", None if size == 8 else f"generated {size} elements"


def check_grading(config: RunConfig) -> Iterator[Outcome]:
    for name, f, degree in (("P", char_ring.poly_P(), 4), ("Q", char_ring.poly_Q(), 6)):
        weight = char_ring.is_homogeneous(f)
        yield f"{name} weight", None if weight == (0, 0) else f"weight {weight}"
        yield f"{name} degree", None if f.degree() == degree else f"degree {f.degree()}"


def check_jacobian_sl2(config: RunConfig) -> Iterator[Outcome]:
    for label, g in char_ring.jacobian_under_sl2().items():
        yield f"generator {label}", _zero_or(g)


def check_jacobian_diag(config: RunConfig) -> Iterator[Outcome]:
    rng = _rng(config, 4)
    for n in range(config.samples):
        pair = family_diag(*(_nonzero_rational(rng) for _ in range(4)))
        values = char_ring.jacobian_at(char_ring.pi_map(pair))
        bad = {k: v for k, v in values.items() if v != 0}
        yield f"sample {n}", None if not bad else f"nonzero at {sorted(bad)}"


def check_branch_locus(config: RunConfig) -> Iterator[Outcome]:
    locus = char_ring.branch_locus()
    rng = _rng(config, 5)
    for n in range(config.samples):
        blocks = []
        while len(blocks) < 2:
            block = [_nonzero_rational(rng) for _ in range(4)]
            if block[0] * block[3] != block[1] * block[2]:
                blocks.append(block)
        point = char_ring.pi_map(family_gl2(*blocks))
        yield f"gl2 sample {n}", _zero_or(locus.evaluate(point.assignment()))
    for s in range(1, 6):
        point = char_ring.pi_map(sample_pairs(s, 1)[0])
        value = locus.evaluate(point.assignment())
        yield f"generic seed {s}", None if value != 0 else "vanishes at a generic pair"


def reduction_corpus() -> List[Word]:
    """Short cyclic classes with exponents +-1, generator powers and the bracket word sum"""
    letters = ((1, 1), (1, -1), (2, 1), (2, -1))
    classes: Dict[tuple, Word] = {}
    for length in range(1, 7):
        for combo in product(letters, repeat=length):
            c = cyclic_reduce(free_reduce(Word(combo, 2)))
            if c.is_identity() or any(abs(e) != 1 for _, e in c.letters) or weighted_length(c) > 6:
                continue
            classes.setdefault(c.letters, c)
    words = sorted(classes.values(), key=lambda w: (weighted_length(w), w.text()))
    for gen, sign in letters:
        words.extend(Word.generator(gen, sign * n) for n in (2, 3, 4))
    words.extend(parse_word(text) for text in ("x1^2 x2^2", "x1^2 X2^2"))
    words.extend(parse_word(text) for text, _ in BRACKET_WORD_SUM)
    return words


def check_reduction_corpus(config: RunConfig) -> Iterator[Outcome]:
    reducer = default_reducer()
    pairs = _pairs(config, 6)
    for w in reduction_corpus():
        reduced = reducer.reduce_trace_word(w)
        if reduced.degree_in(T5) > 1 or TM5 in reduced.variables():
            yield w.text(), f"not a normal form: {reduced.to_text()}"
            continue
        if char_ring.is_homogeneous(reduced) != z3_weight(w):
            yield w.text(), f"weight {char_ring.is_homogeneous(reduced)} differs from {z3_weight(w)}"
            continue
        wrong = next((n for n, pair in enumerate(pairs)
                      if reduced.evaluate(evaluation_point(pair)) != trace_word(w, pair)), None)
        yield w.text(), None if wrong is None else f"differs from the matrix trace at sample {wrong}"


def check_discriminant(config: RunConfig) -> Iterator[Outcome]:
    yield "d(3,3)", _zero_or(rp2.discriminant(3, 3))
    value = rp2.discriminant(Fraction(31, 6), Fraction(41, 6))
    yield "d(31/6,41/6)", None if value == Fraction(34969, 1296) else format_scalar(value)
    yield "symmetry", None if rp2.discriminant(1, 2) == rp2.discriminant(2, 1) == -23 else "d(1,2) != d(2,1)"


# Poisson structure

def _random_elements(config: RunConfig, stream: int, count: int):
    rng = _rng(config, stream)
    return [poisson.random_element(rng) for _ in range(count)]


def check_antisymmetry(config: RunConfig) -> Iterator[Outcome]:
    elements = _random_elements(config, 20, 2 * config.samples)
    for n in range(config.samples):
        f, g = elements[2 * n], elements[2 * n + 1]
        yield f"sample {n}", _zero_or(poisson.normal_form(poisson.bracket(f, g) + poisson.bracket(g, f)))


def check_leibniz(config: RunConfig) -> Iterator[Outcome]:
    count = config.extended_samples
    elements = _random_elements(config, 21, 3 * count)
    for n in range(count):
        f, g, h = elements[3 * n:3 * n + 3]
        expected = f * poisson.bracket(g, h) + g * poisson.bracket(f, h)
        yield f"sample {n}", _zero_or(poisson.normal_form(poisson.bracket(f * g, h) - expected))


def check_casimirs(config: RunConfig) -> Iterator[Outcome]:
    elements = _random_elements(config, 22, config.samples)
    for n, f in enumerate(elements):
        for i in poisson.CASIMIR_INDICES:
            yield f"t{i} sample {n}", _zero_or(poisson.bracket(Polynomial.var(T(i)), f))


def check_jacobi(config: RunConfig) -> Iterator[Outcome]:
    for u, v, w in poisson.generator_triples():
        residual = poisson.jacobi_residual(Polynomial.var(u), Polynomial.var(v), Polynomial.var(w))
        yield f"{u},{v},{w}", _zero_or(residual)


def check_bracket_expansions(config: RunConfig) -> Iterator[Outcome]:
    for check in poisson.verify_t5_consistency():
        yield check.name, _zero_or(check.residual)
    word_sum = poisson.word_sum_check()
    yield word_sum.name, _zero_or(word_sum.residual)
    bivector = poisson.bivector()
    table = poisson.base_table()
    yield "bivector mirror", _zero_or(bivector[(poisson.TM4, T5)] - table.get(poisson.TM4, T5))


# Float suite

def check_distinguishing_pair(config: RunConfig) -> Iterator[Outcome]:
    rho1, rho2 = pair_rho1_rho2(2, 3)
    p1, p2 = char_ring.pi_map(rho1), char_ring.pi_map(rho2)
    for i in GENERATOR_INDICES:
        yield f"t{i}", _close(p1[i], p2[i], config.tolerance)
    gap = abs(complex(p1[5]) - complex(p2[5]))
    yield "t5", None if gap > 1e-6 else f"t5 values agree to {gap}"


def check_jacobian_ac(config: RunConfig) -> Iterator[Outcome]:
    for a, c in product((Fraction(2), Fraction(3), Fraction(1, 2)), (1, 2)):
        values = char_ring.jacobian_at(char_ring.pi_map(family_ac(a, c)))
        for label, value in values.items():
            expected = FAMILY_AC_JACOBIAN[label](a) if label in FAMILY_AC_JACOBIAN else 0
            yield f"a={a} c={c} generator {label}", _close(value, expected, config.tolerance)


def check_eigenvalues(config: RunConfig) -> Iterator[Outcome]:
    roots = rp2.eigenvalues(Fraction(31, 6), Fraction(41, 6))
    for got, expected in zip(roots, (3.0, 2.0, 1 / 6)):
        yield f"root {expected:.4f}", None if abs(got - expected) <= 1e-10 else repr(got)
    for boundary in SAMPLE_BOUNDARIES:
        for ti, tmi in boundary:
            l1, l2, l3 = rp2.eigenvalues(ti, tmi)
            yield f"({ti},{tmi}) product", _close(l1 * l2 * l3, 1.0, 1e-10)
            yield f"({ti},{tmi}) sum", _close(l1 + l2 + l3, float(ti), 1e-10)
            product_of_gaps = ((l1 - l2) * (l1 - l3) * (l2 - l3)) ** 2
            yield f"({ti},{tmi}) discriminant", _close(product_of_gaps, float(rp2.discriminant(ti, tmi)), config.tolerance)


def check_fiber(config: RunConfig) -> Iterator[Outcome]:
    grid = (Fraction(1, 2), Fraction(1), Fraction(2))
    sextic = char_ring.sextic()
    for k, boundary in enumerate(SAMPLE_BOUNDARIES):
        b = rp2.BoundaryData(boundary)
        lambdas = rp2.boundary_lambdas(b)
        traces = b.traces()
        for s, t in product(grid, grid):
            label = f"boundary {k} s={s} t={t}"
            point = rp2.fiber_point(b, rp2.FiberParams(s, t))
            if not (isfinite(point.t4) and isfinite(point.tm4)):
                yield label, f"non-finite fiber value ({point.t4}, {point.tm4})"
                continue
            args = (*lambdas, s, t, traces[1], traces[2], traces[-3])
            yield f"{label} t4 paths", _close(rp2.fiber_t4_direct(*args), point.t4, config.tolerance)
            yield f"{label} t-4 paths", _close(rp2.fiber_tm4_direct(*args), point.tm4, config.tolerance)
            for root in point.roots:
                scale = max(1.0, abs(complex(root[5])) ** 2)
                value = sextic.eval_complex(root.assignment())
                yield f"{label} sextic", None if abs(value) <= config.tolerance * scale else format_scalar(value)


EXACT_CHECKS: Dict[str, Callable[[RunConfig], Iterable[Outcome]]] = {
    "kernel": check_kernel,
    "lambda-singular": check_lambda_singular,
    "lambda-factorization": check_lambda_factorization,
    "partials-P": check_partials_P,
    "partials-Q": check_partials_Q,
    "symmetrizer": check_symmetrizer,
    "dihedral": check_dihedral,
    "grading": check_grading,
    "jacobian-sl2": check_jacobian_sl2,
    "jacobian-diag": check_jacobian_diag,
    "branch-locus": check_branch_locus,
    "reduction-corpus": check_reduction_corpus,
    "discriminant": check_discriminant,
}

POISSON_CHECKS: Dict[str, Callable[[RunConfig], Iterable[Outcome]]] = {
    "poisson-antisymmetry": check_antisymmetry,
    "poisson-leibniz": check_leibniz,
    "poisson-casimirs": check_casimirs,
    "poisson-jacobi": check_jacobi,
    "poisson-expansions": check_bracket_expansions,
}

FLOAT_CHECKS: Dict[str, Callable[[RunConfig], Iterable[Outcome]]] = {
    "float-distinguishing-pair": check_distinguishing_pair,
    "float-jacobian-ac": check_jacobian_ac,
    "float-eigenvalues": check_eigenvalues,
    "float-fiber": check_fiber,
}


def _run(config: RunConfig, checks: Dict[str, Callable[[RunConfig], Iterable[Outcome]]]) -> List[CheckResult]:
    return [run_check(name, lambda fn=fn: fn(config)) for name, fn in checks.items()]


def run_poisson_selftest(config: RunConfig) -> VerificationReport:
    logger.info(f"Poisson self-test with seed {config.seed}, {config.samples} samples")
    return VerificationReport(seed=config.seed, checks=sorted(_run(config, POISSON_CHECKS), key=lambda c: c.name))


def cmd_verify(config: RunConfig) -> VerificationReport:
    """Run the configured suites; the report is sorted by check name"""
    logger.info(f"Verifying suite {config.suite} with seed {config.seed}, {config.samples} samples")
    results: List[CheckResult] = []
    if config.suite in ("exact", "all"):
        default_store()
        results.extend(run_check(f"catalog-{name}", _catalog_check(name, config)) for name in IDENTITY_NAMES)
        results.extend(_run(config, EXACT_CHECKS))
        results.extend(_run(config, POISSON_CHECKS))
    if config.suite in ("float", "all"):
        results.extend(_run(config, FLOAT_CHECKS))
    report = VerificationReport(seed=config.seed, checks=sorted(results, key=lambda c: c.name))
    logger.info(f"Verification finished: {len(report.checks)} checks, {report.failure_count} failures")
    return report
