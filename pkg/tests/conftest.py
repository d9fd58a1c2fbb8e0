import numpy as np
import pytest

from qqpovm.models import reference_pair, uniform_state

C = 2 / (27 * np.sqrt(3))


@pytest.fixture
def ref():
    return reference_pair()


@pytest.fixture
def uniform():
    return uniform_state()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" in report.nodeid and (report.when == "call" or report.failed):
        _ACCEPTANCE.setdefault(report.nodeid, report.outcome)
        if report.failed:
            _ACCEPTANCE[report.nodeid] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _ACCEPTANCE.items():
        name = nodeid.split("::", 1)[1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
