import pytest

from purederive.harness import SUITES, SuiteReport, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_suites_pass(name):
    rep = run_suite(name, count=4, seed=3)
    assert rep.checks and rep.passed, [c.to_json() for c in rep.failures()]


def test_reports_are_deterministic():
    a = run_suite("thm45", count=5, seed=12).to_json(verbose=True)
    b = run_suite("thm45", count=5, seed=12).to_json(verbose=True)
    assert a == b
    assert run_suite("prop34", count=3, seed=1).to_json(True) != run_suite("prop34", count=3, seed=2).to_json(True)


def test_report_tally():
    rep = SuiteReport("demo", 0, 2)
    rep.add(0, "a", True)
    rep.add(1, "b", False, "why")
    assert rep.tally() == {"passed": 1, "failed": 1}
    assert not rep.passed
    assert rep.to_json()["failures"] == [{"instance": 1, "check": "b", "pass": False, "detail": "why"}]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("thm99")
