from __future__ import annotations

import random
from collections import defaultdict

import pytest

from relsmooth.conditions import TangencyData
from relsmooth.graph import DualMapGraph, Edge, MarkedPoint, Vertex, comb
from relsmooth.target import PROJECTIVE_LINE

INF = PROJECTIVE_LINE.with_relative(("inf",))

CRITERIA = {
    "1": "golden comb and degree-3 examples",
    "2": "dimension of the condition-(1)-only comb is 3n-4",
    "3": "intersection identities on random contracted vertices",
    "4": "reduction preserves condition statuses",
    "5": "Hurwitz counts against the exhaustive oracle",
    "6": "enumeration counts, implication chain and determinism",
    "7": "twisted layer",
    "8": "serialization round trip and relabeling invariance",
}

_results: dict[str, list[tuple[str, str]]] = defaultdict(list)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.keywords.get("acceptance")
    if not marker:
        return
    crit = _criterion_of(report)
    if crit:
        _results[crit].append((report.nodeid.split("::")[-1], report.outcome))


def _criterion_of(report):
    for key in report.keywords:
        if key.startswith("criterion_"):
            return key.removeprefix("criterion_")
    return None


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m and m.args:
            item.keywords[f"criterion_{m.args[0]}"] = True


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_results, key=int):
        outcomes = _results[crit]
        ok = all(o == "passed" for _, o in outcomes)
        failed = [name for name, o in outcomes if o != "passed"]
        detail = f" (failing: {', '.join(failed)})" if failed else ""
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'} - {CRITERIA.get(crit, '')}{detail}")


@pytest.fixture
def rng():
    seed = 20240611
    return random.Random(seed)


def totally_ramified_comb(n: int) -> DualMapGraph:
    return comb(n, n, (1,) * n)


def degree_three_example() -> DualMapGraph:
    """A d=1 mark of ramification 2 on the active side plus a two-mark bubble attached with e=1."""
    return DualMapGraph(
        (Vertex.active(0, 3), Vertex.contracted(1, "inf")),
        (Edge(0, (0, 1), 1),),
        (MarkedPoint(1, 0, 1, "inf", 2), MarkedPoint(2, 1, 1, "inf"), MarkedPoint(3, 1, 1, "inf")),
        INF,
        3,
    )


def star(es, tangencies) -> DualMapGraph:
    """One component contracted to inf joined to totally ramified active components."""
    vertices = (Vertex.contracted(0, "inf"),) + tuple(Vertex.active(j + 1, e) for j, e in enumerate(es))
    edges = tuple(Edge(j, (j + 1, 0), e) for j, e in enumerate(es))
    marks = tuple(MarkedPoint(i + 1, 0, t, "inf") for i, t in enumerate(tangencies))
    return DualMapGraph(vertices, edges, marks, INF, sum(es))


def gamma(text: str) -> TangencyData:
    return TangencyData.parse(text)
