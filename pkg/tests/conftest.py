from __future__ import annotations

import functools
from pathlib import Path

import pytest

from zonograph import RotationGraph, parse_graph, zonotope_graph

FIXTURES = Path(__file__).parent / "fixtures"

SWEEP_MS = range(3, 11)
SWEEP_SEEDS = range(20)

# (criterion, passed, detail) lines collected by the acceptance suite
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


def load_fixture(name: str) -> RotationGraph:
    return parse_graph((FIXTURES / f"{name}.json").read_text())


@functools.lru_cache(maxsize=None)
def oracle_graph(m: int, seed: int) -> RotationGraph:
    return zonotope_graph(m, seed)


@pytest.fixture
def cube() -> RotationGraph:
    return load_fixture("cube")


@pytest.fixture
def k4() -> RotationGraph:
    return load_fixture("k4")


@pytest.fixture
def glued_quads() -> RotationGraph:
    return load_fixture("glued_quads")


@pytest.fixture
def pseudo_double_wheel() -> RotationGraph:
    return load_fixture("pseudo_double_wheel")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
