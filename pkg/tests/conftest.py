import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SLOW = os.environ.get("AQC_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if SLOW:
        return
    skip = pytest.mark.skip(reason="set AQC_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


# --- one summary line per acceptance criterion ------------------------------

_criteria: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, text): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    label, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        if hasattr(rep, "wasxfail"):
            status = "FAIL" if rep.skipped else "XPASS"
            text = f"{text}  [expected failure: {rep.wasxfail}]"
        elif rep.skipped:
            status = "SKIP"
        else:
            status = rep.outcome.upper().replace("PASSED", "PASS").replace("FAILED", "FAIL")
        _criteria[item.nodeid] = [label, text, status, rep.duration]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label, text, status, dur in sorted(_criteria.values(), key=lambda r: r[0]):
        tr.write_line(f"criterion {label:<3} {status:<8} {dur:7.2f}s  {text}")
