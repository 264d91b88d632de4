import random

import pytest

from frobmono import a3, g24


@pytest.fixture(scope="session")
def g24_data():
    return g24.g24_reference()


@pytest.fixture(scope="session")
def a3_data():
    return a3.a3_reference(0)


@pytest.fixture
def rng():
    return random.Random(20161209)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import summary_lines

    lines = summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
