import random

import pytest
from hypothesis import HealthCheck, settings

from purederive.ring import BaseRing

settings.register_profile(
    "default", deadline=None, max_examples=30, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ZZ = BaseRing.integers()


@pytest.fixture
def rng():
    return random.Random(12345)


# -- acceptance summary ----------------------------------------------------------
# tests marked criterion(label) record it as a user property;
# one PASS/FAIL line per criterion is printed at the end of the run.

RUNTIME_LIMIT = 120.0
_criteria = {}
_started = [0.0]


def pytest_sessionstart(session):
    import time

    _started[0] = time.perf_counter()


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        c = props["criterion"]
        _criteria[c] = "failed" if _criteria.get(c) == "failed" else report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import time

    elapsed = time.perf_counter() - _started[0]
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for label in sorted(_criteria, key=lambda s: int(s.split(".")[0])):
            verdict = "PASS" if _criteria[label] == "passed" else "FAIL"
            terminalreporter.write_line(f"{verdict}  criterion {label}")
    terminalreporter.write_line(f"suite runtime {elapsed:.1f} s (limit {RUNTIME_LIMIT:.0f} s)")


def pytest_collection_modifyitems(session, config, items):
    # tests marked run_last see the elapsed time of everything before them
    items.sort(key=lambda it: it.get_closest_marker("run_last") is not None)


def pytest_configure(config):
    config.addinivalue_line("markers", "run_last: run after every other collected test")
    config.addinivalue_line("markers", "criterion(label): acceptance criterion covered by the test")


@pytest.fixture(autouse=True)
def _record_criterion(request, record_property):
    mark = request.node.get_closest_marker("criterion")
    if mark is not None:
        record_property("criterion", mark.args[0])


def session_elapsed() -> float:
    import time

    return time.perf_counter() - _started[0]
