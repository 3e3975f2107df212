import json

import networkx as nx
import pytest
from hypothesis import given

from metdim import graphs as G
from metdim.graphs import Graph, GraphError
from metdim.io import (
    from_graph6,
    from_json,
    read_graph,
    to_graph6,
    to_json,
    write_graph,
)

from conftest import to_nx
from test_graphs import graphs


def _nx_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


@pytest.mark.parametrize(
    "g",
    [G.andrasfai(4), G.complete(1), G.path(2), G.cycle(7), G.complete(9),
     G.cartesian_product(G.andrasfai(4), G.cycle(4))],
    ids=lambda g: g.name,
)
def test_graph6_matches_networkx(g):
    assert to_graph6(g) == _nx_graph6(g)
    assert from_graph6(to_graph6(g)) == g


@pytest.mark.parametrize("n", [62, 63, 100])
def test_graph6_length_prefix(n):
    g = G.cycle(n)
    s = to_graph6(g)
    assert s == _nx_graph6(g)
    assert s.startswith("~") == (n >= 63)
    assert from_graph6(s) == g


def test_graph6_header_and_errors():
    s = to_graph6(G.andrasfai(3))
    assert from_graph6(">>graph6<<" + s + "\n") == G.andrasfai(3)
    with pytest.raises(GraphError):
        from_graph6(s[:-1])
    with pytest.raises(GraphError):
        from_graph6("")


@given(graphs())
def test_graph6_roundtrip(g):
    assert from_graph6(to_graph6(g)) == g


@given(graphs())
def test_json_roundtrip(g):
    back = from_json(to_json(g))
    assert back == g and back.name == g.name


def test_json_schema():
    obj = json.loads(to_json(G.cycle(4)))
    assert obj == {"n": 4, "edges": [[0, 1], [0, 3], [1, 2], [2, 3]], "name": "C4"}
    with pytest.raises(GraphError):
        from_json('{"edges": []}')


def test_file_roundtrip(tmp_path):
    g = G.cartesian_product(G.andrasfai(3), G.path(2))
    for name in ("g.g6", "g.json"):
        write_graph(g, tmp_path / name)
        assert read_graph(tmp_path / name) == g
    assert read_graph(tmp_path / "g.json").name == g.name
