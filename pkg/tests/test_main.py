import pytest

import main
from models import char_ring
from utils.helpers import parse_polynomial

SAMPLE_FIBER = ["--b1", "31/6,41/6", "--b2", "49/8,35/4", "--b3", "25/6,23/6"]


def test_reduce(capsys):
    assert main.main(["reduce", "x1"]) == 0
    assert capsys.readouterr().out == "t1\n"
    assert main.main(["reduce", "X2x1x2X1"]) == 0
    assert capsys.readouterr().out == "t5\n"


def test_bracket(capsys):
    assert main.main(["bracket", "t1", "t4"]) == 0
    assert capsys.readouterr().out == "0\n"
    assert main.main(["bracket", "t4", "t-4"]) == 0
    out = capsys.readouterr().out.strip()
    assert parse_polynomial(out) == char_ring.poly_P() - 2 * parse_polynomial("t5")


def test_emit_partial(capsys):
    assert main.main(["emit", "dP:3"]) == 0
    assert parse_polynomial(capsys.readouterr().out) == char_ring.partials_P()[3]
    assert main.main(["emit", "dQ:-2"]) == 0
    assert parse_polynomial(capsys.readouterr().out) == char_ring.partials_Q()[-2]


def test_emit_tables(capsys):
    assert main.main(["emit", "jacobian"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 9
    assert lines[-1].startswith("5\t")
    assert main.main(["emit", "bivector"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 3


@pytest.mark.parametrize("argv", [
    ["emit", "dP:5"],
    ["emit", "bogus"],
    ["reduce", "x3"],
    ["bracket", "t1", "t1 +"],
    ["fiber", *SAMPLE_FIBER, "--s", "0"],
    ["fiber", "--b1", "1,2", "--b2", "49/8,35/4", "--b3", "25/6,23/6"],
    ["verify", "--samples", "0"],
])
def test_usage_errors_exit_with_two(argv):
    assert main.main(argv) == 2


@pytest.mark.parametrize("argv", [[], ["verify", "--suite", "slow"], ["reduce"]])
def test_argument_errors(argv):
    with pytest.raises(SystemExit) as info:
        main.main(argv)
    assert info.value.code == 2


def test_jacobian_on_sl2_blocks(capsys):
    assert main.main(["jacobian", "--family", "sl2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 9
    assert all(line.endswith("\tvalue=0") for line in lines)


def test_jacobian_on_diagonal_pairs(capsys):
    assert main.main(["jacobian", "--family", "diag", "--a", "2", "--c", "3"]) == 0
    assert all(line.endswith("\tvalue=0") for line in capsys.readouterr().out.splitlines())


def test_fiber_records(capsys):
    assert main.main(["fiber", *SAMPLE_FIBER, "--s", "1", "--t", "2", "--format", "structured"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert all(line.startswith("t1=") and "\tt5=" in line for line in lines)


def test_fiber_grid(capsys):
    assert main.main(["fiber", *SAMPLE_FIBER, "--grid", "--format", "structured"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 9


def test_poisson_selftest(capsys):
    assert main.main(["poisson-selftest", "--samples", "2", "--acceptance-samples", "4"]) == 0
    assert "5 checks, 0 failures" in capsys.readouterr().out


def test_verify_structured_float_suite(capsys):
    argv = ["verify", "--suite", "float", "--samples", "2", "--format", "structured"]
    assert main.main(argv) == 0
    first = capsys.readouterr().out
    assert main.main(argv) == 0
    assert capsys.readouterr().out == first
    assert first.splitlines()[-1].endswith("failures=0")


def test_fixture_round_trip(tmp_path, capsys):
    path = tmp_path / "regression.json"
    assert main.main(["fixture", "record", str(path)]) == 0
    assert main.main(["fixture", "check", str(path)]) == 0
    assert "matches" in capsys.readouterr().out
    path.write_text(path.read_text().replace('"t1"', '"t2"', 1))
    assert main.main(["fixture", "check", str(path)]) == 1
    assert "+++ current" in capsys.readouterr().err
