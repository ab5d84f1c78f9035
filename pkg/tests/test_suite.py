import json

import pytest

from flagmono import suite
from flagmono.catalog import exhaustive_catalog, named_catalog
from flagmono.matroid import from_bases, uniform
from flagmono.suite import CHECKS, run_suite

CAT = exhaustive_catalog(3)


def test_suite_passes_and_counts():
    report = run_suite(CAT)
    assert report.ok
    assert set(report.checks) == set(CHECKS)
    for c in report.checks.values():
        assert c.passed + c.failed == c.scheduled
    assert report.total_scheduled == sum(c.scheduled for c in report.checks.values())
    data = json.loads(report.to_json())
    assert data["ok"] and data["catalog_size"] == 24


def test_deterministic_and_parallel_agree():
    a = run_suite(CAT, ["relabel-invariance", "duality"], seed=5)
    b = run_suite(CAT, ["relabel-invariance", "duality"], seed=5, parallelism=2)
    for name in a.checks:
        assert (a.checks[name].scheduled, a.checks[name].passed) == (b.checks[name].scheduled, b.checks[name].passed)


def test_unknown_check():
    with pytest.raises(ValueError):
        run_suite(CAT, ["nope"])


def test_failures_carry_witness(monkeypatch):
    def broken(pair):
        A, B = pair
        return False, {"S": [1], "h_A": 0, "h_B": 1}

    monkeypatch.setitem(CHECKS, "flag-monotone", ("rank-preserving", broken))
    report = run_suite(CAT, ["flag-monotone"])
    c = report.checks["flag-monotone"]
    assert not report.ok and c.failed == c.scheduled > 0
    assert all(f["witness"]["S"] == [1] and len(f["subject"]) == 2 for f in c.failures)


def test_crash_is_reported(monkeypatch):
    def crash(M):
        raise RuntimeError("boom")

    monkeypatch.setitem(CHECKS, "uniform-max", ("matroid", crash))
    c = run_suite(CAT, ["uniform-max"]).checks["uniform-max"]
    assert c.failed == len(CAT) and "boom" in c.failures[0]["witness"]["error"]


def test_spot_checks(u34, par23, u23):
    assert suite.check_h_routes(u34)[0]
    assert suite.check_flag_monotone((u23, par23))[0]
    ok, _ = suite.check_coarse_monotone((u34, uniform(2, 4)))
    assert ok
    assert suite.check_independence_counterexample()[0]
    ok, _ = suite.check_coarse_monotone((u34, from_bases(4, [(1, 2), (1, 3)])))
    assert ok


def test_named_catalog_suite():
    report = run_suite(named_catalog(), ["h-routes", "bijections", "uniform-max", "duality"])
    assert report.ok, {k: v.failures for k, v in report.checks.items()}
