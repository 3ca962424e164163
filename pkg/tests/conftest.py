import warnings

import pytest

from jetframe import JetConfig

warnings.filterwarnings("ignore", message="k = .* is not smaller than min degree")


@pytest.fixture
def cfg212():
    return JetConfig(2, 1, (2,))


@pytest.fixture
def cfg223():
    return JetConfig(2, 2, (3,))


@pytest.fixture
def log112():
    return JetConfig(1, 1, (2,), "log")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
