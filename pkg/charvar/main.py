import argparse
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from models import char_ring, fixtures, poisson, rp2
from models.harness import RunConfig, cmd_verify, run_poisson_selftest
from models.matrices import family_ac, family_diag
from models.polynomial import T
from models.trace_calculus import default_reducer
from utils.errors import CharVarError, DomainError, FixtureMismatch, InvalidBoundary, ParseError
from utils.helpers import (format_record, format_scalar, parse_boundary_pair, parse_generator_index,
                           parse_polynomial, parse_scalar, parse_word)

load_dotenv()

# Configure logging
logging.basicConfig(level=os.getenv("CHARVAR_LOG_LEVEL", "INFO").upper(),
                    format="%(asctime)s %(levelname)s %(name)s: %(message)s")
logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


def _emit_lines(lines: List[str]) -> None:
    for line in lines:
        print(line)


def cmd_reduce(args) -> int:
    word = parse_word(args.word)
    print(default_reducer().reduce_trace_word(word, use_table=not args.interpolate).to_text())
    return EXIT_OK


def cmd_bracket(args) -> int:
    f, g = parse_polynomial(args.f), parse_polynomial(args.g)
    print(poisson.bracket(f, g).to_text())
    return EXIT_OK


def _partial_target(target: str):
    kind, _, index_text = target.partition(":")
    index = parse_generator_index(index_text)
    if abs(index) == 5:
        raise ParseError(f"{kind} is taken with respect to t(+-1..+-4), got {index}")
    partials = char_ring.partials_P() if kind == "dP" else char_ring.partials_Q()
    return partials[index]


def cmd_emit(args) -> int:
    target = args.target
    simple = {
        "P": char_ring.poly_P,
        "Q": char_ring.poly_Q,
        "sextic": char_ring.sextic,
        "branch": char_ring.branch_locus,
    }
    if target in simple:
        print(simple[target]().to_text())
    elif target.startswith(("dP:", "dQ:")):
        print(_partial_target(target).to_text())
    elif target == "jacobian":
        _emit_lines([f"{label}\t{g.to_text()}"
                     for label, g in zip(char_ring.JACOBIAN_LABELS, char_ring.jacobian_generators())])
    elif target == "a45":
        print(poisson.base_table().get(poisson.T4, T(5)).to_text())
    elif target == "bivector":
        _emit_lines([f"d{u.index}^d{v.index}\t{value.to_text()}"
                     for (u, v), value in poisson.bivector().items() if u.sort_key < v.sort_key])
    else:
        raise ParseError(f"Unknown emit target {target!r}")
    return EXIT_OK


def cmd_jacobian(args) -> int:
    if args.family == "sl2":
        values = {label: g.to_text() for label, g in char_ring.jacobian_under_sl2().items()}
    else:
        a, c = parse_scalar(args.a), parse_scalar(args.c)
        # diag uses x1 = diag(a, c, 1/(ac)), x2 = diag(c, a, 1/(ac))
        pair = family_ac(a, c) if args.family == "ac" else family_diag(a, c, c, a)
        values = {label: format_scalar(v) for label, v in char_ring.jacobian_at(char_ring.pi_map(pair)).items()}
    _emit_lines([format_record({"generator": label, "value": value}) for label, value in values.items()])
    return EXIT_OK


def cmd_fiber(args) -> int:
    boundary = rp2.BoundaryData(tuple(parse_boundary_pair(text) for text in (args.b1, args.b2, args.b3)))
    s, t = parse_scalar(args.s), parse_scalar(args.t)
    if args.grid:
        values = (s / 2, s, 2 * s), (t / 2, t, 2 * t)
        frame = rp2.fiber_grid(boundary, *values)
        if args.format == "structured":
            _emit_lines([format_record(row) for row in frame.to_dict(orient="records")])
        else:
            print(frame.to_string(index=False))
        return EXIT_OK
    point = rp2.fiber_point(boundary, rp2.FiberParams(s, t))
    for root in point.roots:
        record = {f"t{i}": root[i] for i in (1, -1, 2, -2, 3, -3, 4, -4, 5)}
        if args.format == "structured":
            print(format_record(record))
        else:
            print("\t".join(format_scalar(v) if isinstance(v, (Fraction, complex)) else repr(float(v))
                            for v in record.values()))
    return EXIT_OK


def cmd_verify_command(args) -> int:
    config = RunConfig.from_env(seed=args.seed, samples=args.samples, acceptance_samples=args.acceptance_samples,
                                tolerance=args.tolerance, output_format=args.format, suite=args.suite)
    report = cmd_verify(config)
    print(report.render_structured() if config.output_format == "structured" else report.render_text())
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_poisson_selftest(args) -> int:
    config = RunConfig.from_env(seed=args.seed, samples=args.samples, acceptance_samples=args.acceptance_samples)
    report = run_poisson_selftest(config)
    print(report.render_text())
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_fixture(args) -> int:
    path = Path(args.path or Path(os.getenv("CHARVAR_FIXTURE_DIR", "fixtures")) / "regression.json")
    if args.action == "record":
        print(f"recorded {fixtures.record(path)}")
        return EXIT_OK
    try:
        fixtures.check(path, RunConfig.from_env().tolerance)
    except FixtureMismatch as e:
        print(e.diff, file=sys.stderr)
        raise
    print(f"fixture {path} matches")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charvar", description="Exact computations on the SL(3) character variety of F2")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run the seeded verification suites")
    verify.add_argument("--seed", type=int)
    verify.add_argument("--samples", type=int)
    verify.add_argument("--acceptance-samples", type=int, help="Floor for the factorization and Leibniz checks")
    verify.add_argument("--tolerance", type=float)
    verify.add_argument("--format", choices=["text", "structured"], default="text")
    verify.add_argument("--suite", choices=["exact", "float", "all"], default="exact")
    verify.set_defaults(handler=cmd_verify_command)

    reduce = sub.add_parser("reduce", help="Reduce tr(WORD) to the nine generators")
    reduce.add_argument("word")
    reduce.add_argument("--interpolate", action="store_true", help="Skip the rule table")
    reduce.set_defaults(handler=cmd_reduce)

    bracket = sub.add_parser("bracket", help="Poisson bracket of two polynomials")
    bracket.add_argument("f")
    bracket.add_argument("g")
    bracket.set_defaults(handler=cmd_bracket)

    emit = sub.add_parser("emit", help="Print P, Q, sextic, branch, dP:<i>, dQ:<i>, jacobian, a45 or bivector")
    emit.add_argument("target")
    emit.set_defaults(handler=cmd_emit)

    jacobian = sub.add_parser("jacobian", help="Jacobian generators on a singular family")
    jacobian.add_argument("--family", choices=["sl2", "diag", "ac"], default="sl2")
    jacobian.add_argument("--a", default="2")
    jacobian.add_argument("--c", default="1")
    jacobian.set_defaults(handler=cmd_jacobian)

    fiber = sub.add_parser("fiber", help="Fiber coordinates over boundary data")
    for name in ("--b1", "--b2", "--b3"):
        fiber.add_argument(name, required=True, help="t(i),t(-i)")
    fiber.add_argument("--s", default="1")
    fiber.add_argument("--t", default="1")
    fiber.add_argument("--grid", action="store_true", help="Evaluate at s/2, s, 2s times t/2, t, 2t")
    fiber.add_argument("--format", choices=["text", "structured"], default="text")
    fiber.set_defaults(handler=cmd_fiber)

    selftest = sub.add_parser("poisson-selftest", help="Antisymmetry, Leibniz, Casimir and Jacobi checks")
    selftest.add_argument("--seed", type=int)
    selftest.add_argument("--samples", type=int)
    selftest.add_argument("--acceptance-samples", type=int, help="Floor for the Leibniz check")
    selftest.set_defaults(handler=cmd_poisson_selftest)

    fixture = sub.add_parser("fixture", help="Record or replay regression fixtures")
    fixture.add_argument("action", choices=["record", "check"])
    fixture.add_argument("path", nargs="?")
    fixture.set_defaults(handler=cmd_fixture)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    try:
        return args.handler(args)
    except (ParseError, InvalidBoundary, DomainError, ValidationError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE
    except CharVarError as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
