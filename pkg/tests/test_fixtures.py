import json

import pytest

from models import fixtures
from utils.errors import FixtureMismatch


@pytest.fixture(scope="module")
def recorded(tmp_path_factory):
    return fixtures.record(tmp_path_factory.mktemp("fixtures") / "regression.json")


def test_recorded_fixture_replays(recorded):
    fixtures.check(recorded)


def test_fixture_contents(recorded):
    data = json.loads(recorded.read_text())
    assert set(data) == {"reductions", "bracket_table", "polynomials", "fibers"}
    assert data["reductions"]["x1x2X1X2"] == "t5"
    assert data["reductions"]["x1^2"] == "t1^2 - 2*t-1"
    assert len(data["bracket_table"]) == 3
    assert len(data["fibers"]) == 18
    entry = data["fibers"]["0:1/2:2"]
    assert entry["s"] == "1/2" and entry["t"] == "2"
    assert entry["boundary"][0] == "31/6,41/6"
    assert isinstance(entry["t4"], float) and isinstance(entry["t-4"], float)


def test_tampered_fixture_reports_a_diff(recorded, tmp_path):
    data = json.loads(recorded.read_text())
    data["reductions"]["x1"] = "t2"
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    with pytest.raises(FixtureMismatch) as info:
        fixtures.check(tampered)
    assert '-    "x1": "t2"' in info.value.diff
    assert '+    "x1": "t1"' in info.value.diff


def test_missing_fixture_file(tmp_path):
    with pytest.raises(OSError):
        fixtures.check(tmp_path / "absent.json")


def _rewrite(recorded, tmp_path, edit):
    data = json.loads(recorded.read_text())
    edit(data)
    path = tmp_path / "edited.json"
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return path


def test_fiber_floats_compare_within_tolerance(recorded, tmp_path):
    def nudge(data):
        entry = data["fibers"]["1:2:1/2"]
        entry["t4"] *= 1 + 1e-13

    fixtures.check(_rewrite(recorded, tmp_path, nudge))


def test_fiber_float_drift_is_reported(recorded, tmp_path):
    def drift(data):
        data["fibers"]["1:2:1/2"]["t-4"] *= 1.001

    with pytest.raises(FixtureMismatch):
        fixtures.check(_rewrite(recorded, tmp_path, drift))
    assert fixtures.check(_rewrite(recorded, tmp_path, drift), tolerance=0.01) is None


def test_fiber_inputs_must_match_exactly(recorded, tmp_path):
    def move(data):
        data["fibers"]["0:1:1"]["s"] = "1.0"

    with pytest.raises(FixtureMismatch):
        fixtures.check(_rewrite(recorded, tmp_path, move))


def test_compare_names_the_disagreements():
    actual = {"reductions": {"x1": "t1"}, "fibers": {"k": {"boundary": ["1,2"], "s": "1", "t": "1",
                                                         "t4": 1.0, "t-4": 2.0}}}
    expected = json.loads(json.dumps(actual))
    expected["reductions"]["x1"] = "t2"
    expected["fibers"]["k"]["t4"] = 1.5
    assert fixtures.compare(expected, actual) == ["reductions", "k: t4 1.5 vs 1.0"]
    assert fixtures.compare(actual, actual) == []
