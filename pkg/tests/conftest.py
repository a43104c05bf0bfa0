from __future__ import annotations

from functools import lru_cache

import pytest

from kst_spectral.verify.enumeration import enumerate_graphs

# lines recorded by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def graphs_of_order(n: int) -> tuple:
    return tuple(enumerate_graphs(n))


@pytest.fixture(scope="session")
def graphs7():
    return graphs_of_order(7)


@pytest.fixture(scope="session")
def graphs_upto8():
    out = []
    for n in range(1, 9):
        out.extend(graphs_of_order(n))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
