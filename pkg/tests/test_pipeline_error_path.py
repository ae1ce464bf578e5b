import pytest

from partition_topology.config import CAPS, ToolkitConfig
from partition_topology.engine.errors import CapExceededError, InvalidInputError, TheoremViolation
from partition_topology.pipeline import Claim, Verdict, VerificationPipeline, build_claims, run_claim


def passes():
    return Verdict(witness={"ok": True})


def violates():
    raise TheoremViolation("toy claim", "did not hold", {"n": 3})


def crashes():
    raise RuntimeError("boom")


def bad_input():
    raise InvalidInputError("bad composition")


def test_run_claim_pass():
    result = run_claim(Claim("ok", "anchor", passes))
    assert result.status == "pass"
    assert result.witness == {"ok": True}
    assert result.error_reason is None


def test_run_claim_theorem_violation_is_a_failure_with_witness():
    result = run_claim(Claim("toy", "anchor", violates))
    assert result.status == "fail"
    assert result.witness == {"n": 3}
    assert result.error_reason == "toy claim: did not hold"


def test_run_claim_internal_error_is_a_failure():
    result = run_claim(Claim("crash", "anchor", crashes))
    assert result.status == "fail"
    assert result.error_reason.startswith("internal: RuntimeError")


def test_run_claim_reraises_usage_errors():
    with pytest.raises(InvalidInputError):
        run_claim(Claim("usage", "anchor", bad_input))


def test_build_claims_rejects_bad_arguments():
    cfg = ToolkitConfig()
    with pytest.raises(InvalidInputError):
        build_claims("nope", 3, cfg)
    with pytest.raises(InvalidInputError):
        build_claims("morse", 0, cfg)


def test_build_claims_respects_caps():
    cfg = ToolkitConfig(caps={**CAPS, "lambda": 2})
    with pytest.raises(CapExceededError):
        build_claims("morse", 3, cfg)


def test_failed_claims_fail_the_run(monkeypatch, tmp_path):
    claims = [Claim("ok", "anchor", passes), Claim("toy", "anchor", violates), Claim("crash", "anchor", crashes)]
    monkeypatch.setattr("partition_topology.pipeline.build_claims", lambda suite, max_n, cfg: claims)

    report = VerificationPipeline(ToolkitConfig(witness_dir=tmp_path), suite="morse", log=lambda _: None).run()

    assert [c.status for c in report.claims] == ["pass", "fail", "fail"]
    assert report.failed == 2
    assert report.exit_code == 1
    assert len(list(tmp_path.glob("*.json"))) == 2
