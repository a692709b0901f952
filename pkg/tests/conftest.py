"""Shared fixtures: small named graphs and a deterministic random-graph pool."""
from __future__ import annotations

import pytest

# acceptance criteria log: (label, passed, detail), printed after the run
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def record_criterion(label: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((label, passed, detail))
    suffix = f" ({detail})" if detail else ""
    print(f"[PRIMARY] {label}: {'PASS' if passed else 'FAIL'}{suffix}")
    assert passed, f"[PRIMARY] {label}: FAIL{suffix}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_RESULTS:
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(
            f"[PRIMARY] {label}: {'PASS' if passed else 'FAIL'}{suffix}")

from maghom.graphs import Graph, build_graph, cycle_graph
from maghom.randmodels import ErParams, sample_er


def toy_graph() -> Graph:
    """Four vertices: a triangle 0-1-2 with a pendant edge 2-3."""
    return build_graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


def example_relation_graph() -> Graph:
    """Five vertices; (0,1,2,3,4) is a length-5 eulerian 4-trail here."""
    return build_graph(5, [(0, 1), (1, 2), (1, 3), (2, 3), (2, 4), (1, 4),
                           (0, 2)])


def random_graphs(count: int, n: int, p: float, seed: int = 0) -> list[Graph]:
    return [sample_er(ErParams(n=n, p=p, seed=seed, trial=t))
            for t in range(count)]


@pytest.fixture
def toy() -> Graph:
    return toy_graph()


@pytest.fixture
def c5() -> Graph:
    return cycle_graph(5)
