from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import pytest

from perfdiv.graph6 import read_graph6_file

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []


def fixture_path(n: int) -> Path:
    plain = FIXTURES / f"graphs_n{n}.g6"
    return plain if plain.exists() else FIXTURES / f"graphs_n{n}.g6.gz"


@lru_cache(maxsize=None)
def graphs_of_order(n: int) -> tuple:
    return tuple(read_graph6_file(fixture_path(n)))


def graphs_up_to(n: int) -> list:
    return [g for k in range(1, n + 1) for g in graphs_of_order(k)]


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long exhaustive sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
