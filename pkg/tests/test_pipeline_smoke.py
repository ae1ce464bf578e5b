from partition_topology.config import ToolkitConfig
from partition_topology.pipeline import VerificationPipeline, build_claims


def test_pipeline_smoke():
    logs = []
    pipeline = VerificationPipeline(ToolkitConfig(max_n=3), suite="all", log=logs.append)

    report = pipeline.run()

    assert report.claims
    assert report.failed == 0, [str(c) for c in report.claims if c.status == "fail"]
    assert report.exit_code == 0
    assert logs[0].startswith("Running ")
    # one log line per claim after the header
    assert len(logs) == len(report.claims) + 1


def test_morse_suite_counts_critical_cells():
    cfg = ToolkitConfig(max_n=4)
    ids = [c.claim_id for c in build_claims("morse", 4, cfg)]

    assert "critical cells of {2,1,_1} = 11" in ids
    assert "matching on {1,_0}" in ids


def test_all_suite_concatenates_in_order():
    cfg = ToolkitConfig(max_n=2)
    everything = [c.claim_id for c in build_claims("all", 2, cfg)]
    by_suite = [c.claim_id for s in cfg.suites for c in build_claims(s, 2, cfg)]
    assert everything == by_suite


def test_parallel_run_keeps_claim_order():
    sequential = VerificationPipeline(ToolkitConfig(max_n=3), suite="morse", log=lambda _: None).run()
    parallel = VerificationPipeline(ToolkitConfig(max_n=3, jobs=2), suite="morse", log=lambda _: None).run()

    assert [c.claim_id for c in parallel.claims] == [c.claim_id for c in sequential.claims]
    assert [c.status for c in parallel.claims] == [c.status for c in sequential.claims]
    assert parallel.exit_code == 0


def test_all_suite_follows_configured_suites():
    cfg = ToolkitConfig(max_n=2, suites=["morse"])
    everything = [c.claim_id for c in build_claims("all", 2, cfg)]
    assert everything == [c.claim_id for c in build_claims("morse", 2, cfg)]


def _sphere_claims(claims):
    return [c for c in claims if c.claim_id.endswith("is a sphere") and " for " not in c.claim_id]


def test_sphere_claims_sample_per_n():
    claims = _sphere_claims(build_claims("cycles", 4, ToolkitConfig(max_n=4, sphere_samples=20)))
    # all of S_n is labelled for n <= 3, 20 of the 24 for n = 4
    assert len(claims) == 1 + 2 + 6 + 20
    assert len({c.claim_id for c in claims}) == len(claims)


def test_sphere_samples_can_be_turned_off():
    claims = build_claims("cycles", 3, ToolkitConfig(max_n=3, sphere_samples=0))
    assert not [c for c in claims if c.claim_id.endswith("is a sphere")]
