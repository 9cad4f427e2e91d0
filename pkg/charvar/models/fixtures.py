"""
Regression fixtures: canonical text of reductions, the bracket table and
fiber values, recorded once and replayed.

Exact sections must match byte for byte.  Fiber entries keep their rational
inputs as text, which must match exactly, and their float outputs, which are
compared within a tolerance so that libm differences between machines do
not count as regressions.
"""
from difflib import unified_diff
from fractions import Fraction
from itertools import product
from math import isclose
from pathlib import Path
from typing import Any, Dict, List, Union
import json
import logging

from data.fiber_terms import SAMPLE_BOUNDARIES
from models import char_ring, poisson, rp2
from models.harness import reduction_corpus
from models.trace_calculus import default_reducer
from utils.errors import FixtureMismatch

logger = logging.getLogger(__name__)

FIBER_GRID = (Fraction(1, 2), Fraction(1), Fraction(2))
FIBER_VALUES = ("t4", "t-4")
DEFAULT_TOLERANCE = 1e-9


def canonical_outputs() -> Dict[str, Dict[str, Any]]:
    """Everything a fixture pins; fiber entries carry rational inputs and float outputs"""
    reducer = default_reducer()
    reductions = {w.text(): reducer.reduce_trace_word(w).to_text() for w in reduction_corpus()}
    table = {f"{{{u},{v}}}": value.to_text() for (u, v), value in poisson.base_table().items()}
    polynomials = {
        "P": char_ring.poly_P().to_text(),
        "Q": char_ring.poly_Q().to_text(),
        "branch": char_ring.branch_locus().to_text(),
    }
    fibers = {}
    for k, boundary in enumerate(SAMPLE_BOUNDARIES):
        b = rp2.BoundaryData(boundary)
        for s, t in product(FIBER_GRID, FIBER_GRID):
            point = rp2.fiber_point(b, rp2.FiberParams(s, t))
            fibers[f"{k}:{s}:{t}"] = {
                "boundary": [f"{ti},{tmi}" for ti, tmi in boundary],
                "s": str(s),
                "t": str(t),
                "t4": float(point.t4),
                "t-4": float(point.tm4),
            }
    return {"reductions": reductions, "bracket_table": table, "polynomials": polynomials, "fibers": fibers}


def _serialize(outputs: Dict[str, Dict[str, Any]]) -> str:
    return json.dumps(outputs, indent=2, sort_keys=True) + "\n"


def record(path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_serialize(canonical_outputs()))
    logger.info(f"Recorded fixture {path}")
    return path


def _fiber_mismatches(expected: Dict[str, Any], actual: Dict[str, Any], tolerance: float) -> List[str]:
    if set(expected) != set(actual):
        return ["fiber keys differ"]
    problems = []
    for key, entry in actual.items():
        recorded = expected[key]
        if not isinstance(recorded, dict) or set(recorded) != set(entry):
            problems.append(f"{key}: malformed entry")
            continue
        if any(recorded[field] != entry[field] for field in ("boundary", "s", "t")):
            problems.append(f"{key}: inputs differ")
            continue
        for field in FIBER_VALUES:
            if not isclose(recorded[field], entry[field], rel_tol=tolerance, abs_tol=tolerance):
                problems.append(f"{key}: {field} {recorded[field]!r} vs {entry[field]!r}")
    return problems


def compare(expected: Dict[str, Any], actual: Dict[str, Any], tolerance: float = DEFAULT_TOLERANCE) -> List[str]:
    """Names of the sections or fiber entries where expected and actual disagree"""
    problems = [section for section in sorted(set(expected) | set(actual))
                if section != "fibers" and expected.get(section) != actual.get(section)]
    problems.extend(_fiber_mismatches(expected.get("fibers", {}), actual.get("fibers", {}), tolerance))
    return problems


def check(path: Union[str, Path], tolerance: float = DEFAULT_TOLERANCE) -> None:
    """Replay against a recorded fixture; raises FixtureMismatch with a unified diff"""
    path = Path(path)
    text = path.read_text()
    try:
        expected = json.loads(text)
    except json.JSONDecodeError as e:
        raise FixtureMismatch(f"Fixture {path} is not valid JSON: {e}", "") from e
    actual = canonical_outputs()
    problems = compare(expected, actual, tolerance)
    if problems:
        diff = "".join(unified_diff(text.splitlines(keepends=True), _serialize(actual).splitlines(keepends=True),
                                    fromfile=str(path), tofile="current"))
        logger.error(f"Fixture {path} does not match current output: {', '.join(problems[:5])}")
        raise FixtureMismatch(f"Fixture {path} does not match current output", diff)
    logger.info(f"Fixture {path} matches")
