"""Shared fixtures and the per-criterion acceptance summary.

Tests tagged ``@pytest.mark.acceptance("name")`` get one PASS/FAIL line in
the terminal summary, in collection order.
"""

import os

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

_CRITERIA: dict[str, str] = {}
_OUTCOMES: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): acceptance criterion reported in the summary")


def pytest_collection_finish(session):
    for item in session.items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            _CRITERIA[item.nodeid] = mark.args[0]


def pytest_runtest_logreport(report):
    if report.nodeid not in _CRITERIA:
        return
    if report.when == "call" or report.outcome != "passed":
        if hasattr(report, "wasxfail"):
            _OUTCOMES[report.nodeid] = "FAIL (expected failure: " + report.wasxfail + ")"
        elif report.outcome == "passed":
            _OUTCOMES.setdefault(report.nodeid, "PASS")
        else:
            _OUTCOMES[report.nodeid] = "FAIL" if report.outcome == "failed" else "SKIP"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for nodeid, name in _CRITERIA.items():
        terminalreporter.write_line(f"{_OUTCOMES.get(nodeid, 'NOT RUN'):<6} {name}")
