from __future__ import annotations

import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nilgraph import catalog
from nilgraph.graph_core import Graph
from nilgraph.weighted_graph import WeightedGraph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_vertices: int = 1, max_vertices: int = 7) -> Graph:
    n = draw(st.integers(min_vertices, max_vertices))
    vs = [f"v{i}" for i in range(1, n + 1)]
    pairs = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(vs, [pr for pr, keep in zip(pairs, mask) if keep])


@st.composite
def weighted_graphs(draw, max_vertices: int = 7, max_weight: int = 4) -> WeightedGraph:
    g = draw(graphs(max_vertices=max_vertices))
    ws = draw(st.lists(st.integers(1, max_weight), min_size=len(g.edges), max_size=len(g.edges)))
    return WeightedGraph(g, tuple(ws)).ordered()


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    vs = [f"v{i}" for i in range(1, n + 1)]
    return Graph.from_edges(vs, [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def corpus() -> list[Graph]:
    """Graphs used for the exhaustive automorphism checks."""
    rng = random.Random(7)
    base = [catalog.figure1_graph(), catalog.counterexample_graph(), catalog.path4(), catalog.k2_graph(),
            catalog.star(3), catalog.two_edges_and_point(), catalog.edgeless(3)]
    return base + [random_graph(rng, rng.randint(2, 7)) for _ in range(25)]


# --- acceptance reporting -----------------------------------------------------

_CRITERIA: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


import pytest  # noqa: E402


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number, title = marker.args
    _CRITERIA[number] = (title, "PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status, duration = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({duration:.2f} s)")
