from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest

from metdim import graphs as G
from metdim.graphs import Graph

ACCEPTANCE_LINES: list[str] = []


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def nx_distances(g: Graph) -> dict:
    return dict(nx.all_pairs_shortest_path_length(to_nx(g)))


def naive_dimension(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Smallest size with a resolving subset, and the first such subset, by brute force."""
    d = nx_distances(g)
    verts = range(g.n)
    for s in range(g.n + 1):
        for ws in combinations(verts, s):
            if len({tuple(d[v][w] for w in ws) for v in verts}) == g.n:
                return s, ws
    raise AssertionError("unreachable: V itself resolves")


def _small_corpus() -> list[Graph]:
    out: list[Graph] = []
    out += [G.path(n) for n in range(2, 11)]
    out += [G.cycle(n) for n in range(3, 11)]
    out += [G.complete(n) for n in range(2, 11)]
    out += [G.andrasfai(k) for k in (1, 2, 3)]
    out += [G.complement(G.andrasfai(k)) for k in (2, 3)]
    out += [G.complement(G.path(n)) for n in range(4, 11)]
    out += [G.complement(G.cycle(n)) for n in range(5, 11)]
    out += [
        G.cartesian_product(G.path(2), G.path(2)),
        G.cartesian_product(G.path(2), G.path(3)),
        G.cartesian_product(G.path(2), G.path(5)),
        G.cartesian_product(G.path(3), G.path(3)),
        G.cartesian_product(G.complete(2), G.cycle(3)),
        G.cartesian_product(G.complete(2), G.cycle(4)),
        G.cartesian_product(G.complete(2), G.cycle(5)),
        G.cartesian_product(G.complete(3), G.path(3)),
        G.cartesian_product(G.andrasfai(1), G.path(4)),
        G.cartesian_product(G.andrasfai(2), G.path(2)),
    ]
    out += [G.line_graph(G.path(n)) for n in range(3, 11)]
    out += [G.line_graph(G.cycle(n)) for n in range(3, 11)]
    out += [G.line_graph(G.complete(4)), G.line_graph(G.andrasfai(2))]
    out += [G.line_graph(G.cartesian_product(G.path(2), G.path(3)))]
    return [g for g in out if g.n <= 10 and nx.is_connected(to_nx(g))]


SMALL_CORPUS = _small_corpus()


@pytest.fixture
def record():
    def _record(criterion: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {criterion}" + (f"  [{detail}]" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
