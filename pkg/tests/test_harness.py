import pytest
from pydantic import ValidationError

from models import harness
from models.harness import CheckResult, Failure, RunConfig, VerificationReport, run_check
from models.words import Word
from utils.errors import ReductionFailed
from utils.helpers import parse_word

SMALL = RunConfig(seed=20240601, samples=3)


def test_run_config_defaults_and_validation():
    config = RunConfig()
    assert config.samples == 100
    assert config.acceptance_samples == 200
    assert config.extended_samples == 200
    assert RunConfig(samples=300).extended_samples == 300
    assert config.tolerance == 1e-9
    assert config.output_format == "text"
    for bad in ({"samples": 0}, {"acceptance_samples": 0}, {"tolerance": 0.0},
                {"output_format": "xml"}, {"suite": "slow"}):
        with pytest.raises(ValidationError):
            RunConfig(**bad)


def test_run_config_from_env(monkeypatch):
    monkeypatch.setenv("CHARVAR_SEED", "7")
    monkeypatch.setenv("CHARVAR_SAMPLES", "3")
    monkeypatch.delenv("CHARVAR_TOLERANCE", raising=False)
    monkeypatch.setenv("CHARVAR_ACCEPTANCE_SAMPLES", "9")
    config = RunConfig.from_env(samples=None)
    assert (config.seed, config.samples, config.tolerance, config.acceptance_samples) == (7, 3, 1e-9, 9)
    assert RunConfig.from_env(samples=5, suite="all").samples == 5
    monkeypatch.setenv("CHARVAR_SAMPLES", "-1")
    with pytest.raises(ValidationError):
        RunConfig.from_env()


def test_run_check_counts_failures():
    result = run_check("demo", lambda: iter([("a", None), ("b", "1/2"), ("c", None)]))
    assert result.samples == 3
    assert [f.sample for f in result.failures] == ["b"]
    assert not result.passed


def test_run_check_records_aborts():
    def outcomes():
        yield "a", None
        raise ReductionFailed("stuck")

    result = run_check("demo", outcomes)
    assert result.samples == 1
    assert result.failures[0].sample == "aborted"
    assert "ReductionFailed" in result.failures[0].residual


def test_report_rendering():
    report = VerificationReport(seed=1, checks=[
        CheckResult(name="a", samples=2, failures=[], elapsed=0.5),
        CheckResult(name="b", samples=1, failures=[Failure(sample="s0", residual="3")], elapsed=0.1),
    ])
    assert report.failure_count == 1
    assert not report.passed
    assert list(report.to_frame()["status"]) == ["ok", "FAIL"]
    structured = report.render_structured().splitlines()
    assert structured[0] == "check=a\tsamples=2\tfailures=0\tpassed=true"
    assert structured[2] == "check=b\tsample=s0\tresidual=3"
    assert structured[-1] == "seed=1\tchecks=2\tfailures=1"
    assert "elapsed" not in report.render_structured()
    assert report.render_text().endswith("2 checks, 1 failures")


@pytest.mark.parametrize("check", [
    harness.check_kernel,
    harness.check_lambda_singular,
    harness.check_partials_P,
    harness.check_partials_Q,
    harness.check_symmetrizer,
    harness.check_dihedral,
    harness.check_grading,
    harness.check_jacobian_sl2,
    harness.check_jacobian_diag,
    harness.check_branch_locus,
    harness.check_discriminant,
    harness.check_casimirs,
    harness.check_bracket_expansions,
    harness.check_distinguishing_pair,
    harness.check_jacobian_ac,
    harness.check_eigenvalues,
    harness.check_fiber,
])
def test_individual_checks_pass(check):
    failures = [(label, residual) for label, residual in check(SMALL) if residual is not None]
    assert failures == []


def test_catalog_checks_pass():
    for name in ("cayham", "fund2", "lemma-eq7", "polyp2"):
        result = run_check(name, harness._catalog_check(name, SMALL))
        assert result.samples == SMALL.samples
        assert result.passed, result.failures


@pytest.mark.parametrize("name, sweep", [("powerreduce", 6), ("detsum", 5), ("adjtrace-sum", 5)])
def test_catalog_checks_sweep_parameters(name, sweep):
    labels = [label for label, residual in harness._catalog_check(name, SMALL)() if residual is None]
    assert len(labels) == SMALL.samples * sweep
    if name == "powerreduce":
        assert {f"sample 0 n={n}" for n in range(2, 7)} <= set(labels)
    else:
        assert "sample 2 lam=-2" in labels and "sample 2 lam=1/3" in labels


def test_p1_allowance_matches_acceptance_share():
    assert harness.p1_allowance(200) == 5
    assert harness.p1_allowance(100) == 2
    assert harness.p1_allowance(3) == 0


def test_lambda_factorization_runs_at_acceptance_size():
    outcomes = list(harness.check_lambda_factorization(RunConfig(samples=3)))
    assert len(outcomes) == harness.ACCEPTANCE_SAMPLES + 1
    assert outcomes[-1] == ("P1 nonzero", None)
    assert [label for label, residual in outcomes if residual is not None] == []


def test_leibniz_sample_floor():
    assert len(list(harness.check_leibniz(RunConfig(samples=2, acceptance_samples=5)))) == 5
    outcomes = list(harness.check_leibniz(RunConfig(samples=6, acceptance_samples=1)))
    assert len(outcomes) == 6
    assert all(residual is None for _, residual in outcomes)


def test_reduction_corpus():
    corpus = harness.reduction_corpus()
    texts = [w.text() for w in corpus]
    assert texts[:4] == ["x1", "x2", "X1", "X2"]
    assert parse_word("x1^2 x2^2") in corpus
    assert Word.generator(2, -4) in corpus


def test_poisson_selftest():
    report = harness.run_poisson_selftest(RunConfig(samples=2, acceptance_samples=2))
    names = [c.name for c in report.checks]
    assert names == sorted(names)
    assert len(names) == 5
    assert report.passed


def test_float_suite_is_deterministic():
    config = RunConfig(samples=2, suite="float")
    first = harness.cmd_verify(config)
    second = harness.cmd_verify(config)
    assert first.passed
    assert [c.name for c in first.checks] == sorted(harness.FLOAT_CHECKS)
    assert first.render_structured() == second.render_structured()
