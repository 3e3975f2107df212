import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metdim import graphs as G
from metdim.graphs import ConnectionSet, Graph, GraphError
from metdim.metric import diameter

from conftest import to_nx


def test_cayley_five_cycle():
    g = G.cayley_cyclic(ConnectionSet(5, frozenset({1, 4})))
    assert g == G.cycle(5)


def test_cayley_mobius_ladder():
    g = G.cayley_cyclic(ConnectionSet(8, frozenset({1, 4, 7})))
    assert g.n == 8 and g.regularity() == 3
    # C8 plus the four long diagonals
    ladder = nx.circulant_graph(8, [1, 4])
    assert nx.is_isomorphic(to_nx(g), ladder)
    assert g == G.andrasfai(3)


def test_connection_set_validation():
    ConnectionSet(4, frozenset({1, 2, 3}))
    ConnectionSet(4, frozenset({2}))
    with pytest.raises(GraphError, match="inverse-closed"):
        ConnectionSet(4, frozenset({1}))
    with pytest.raises(GraphError, match="identity"):
        ConnectionSet(4, frozenset({0, 2}))
    with pytest.raises(GraphError):
        ConnectionSet(1, frozenset())


def test_graph_invariants_enforced():
    with pytest.raises(GraphError, match="self-loop"):
        Graph(2, (frozenset({0}), frozenset()))
    with pytest.raises(GraphError, match="asymmetric"):
        Graph(2, (frozenset({1}), frozenset()))
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])


def test_andrasfai_small():
    assert G.andrasfai(1) == G.path(2)
    assert G.andrasfai(2) == G.cycle(5)
    g = G.andrasfai(4)
    assert g.n == 11 and g.regularity() == 4 and g.is_triangle_free()
    assert diameter(g) == 2
    with pytest.raises(GraphError):
        G.andrasfai(0)


@pytest.mark.parametrize("k", range(1, 16))
def test_andrasfai_regular_and_circulant(k):
    g = G.andrasfai(k)
    m = 3 * k - 1
    assert g.n == m
    assert g.regularity() == k
    for u, v in g.edges:
        assert g.has_edge((u + 1) % m, (v + 1) % m)


@pytest.mark.parametrize("k", range(1, 12))
def test_hub_vertex_and_connection_set(k):
    g = G.andrasfai(k)
    S = set(range(1, 3 * k - 1, 3))
    assert g.adj[0] == S
    for x in range(1, g.n):
        assert S - g.adj[x], x


def test_standard_families():
    assert G.complete(1).n == 1 and G.complete(1).num_edges == 0
    assert G.path(3).edges == ((0, 1), (1, 2))
    assert G.cycle(4).edges == ((0, 1), (0, 3), (1, 2), (2, 3))
    for bad in (lambda: G.path(0), lambda: G.cycle(2), lambda: G.complete(0)):
        with pytest.raises(GraphError):
            bad()


def test_complement():
    # the complement of C5 is C5 again, relabelled
    assert nx.is_isomorphic(to_nx(G.complement(G.andrasfai(2))), to_nx(G.cycle(5)))
    for k in range(3, 9):
        c = G.complement(G.andrasfai(k))
        assert c.regularity() == 2 * k - 2
        assert diameter(c) == 2
    assert G.complement(G.complete(4)).num_edges == 0


def test_complement_names_roundtrip():
    g = G.andrasfai(4)
    assert G.complement(g).name == "co(And(4))"
    assert G.complement(G.complement(g)).name == "And(4)"
    p = G.cartesian_product(G.complement(g), G.complement(g))
    assert G.complement(p).name == f"co({p.name})"


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@given(graphs())
def test_complement_involution(g):
    assert G.complement(G.complement(g)) == g


@given(graphs(max_n=5), graphs(max_n=5))
@settings(max_examples=60)
def test_cartesian_product_matches_networkx(g, h):
    p = G.cartesian_product(g, h)
    assert p.n == g.n * h.n
    ref = nx.cartesian_product(to_nx(g), to_nx(h))
    mapping = {(u, v): u + v * g.n for u, v in ref.nodes}
    ref = nx.relabel_nodes(ref, mapping)
    assert sorted(tuple(sorted(e)) for e in ref.edges) == list(p.edges)


def test_product_rows_are_copies():
    base = G.andrasfai(3)
    p = G.cartesian_product(base, G.path(3))
    assert p.name == "And(3)□P3"
    for row in range(3):
        for u, v in base.edges:
            assert p.has_edge(G.product_vertex(8, u, row), G.product_vertex(8, v, row))
    assert G.product_coords(8, G.product_vertex(8, 5, 2)) == (5, 2)
    assert G.cartesian_product(G.path(2), G.path(2)) == G.relabel(G.cycle(4), [0, 1, 3, 2])


def test_line_graph():
    assert G.line_graph(G.path(3)) == G.path(2)
    for n in range(3, 10):
        assert nx.is_isomorphic(to_nx(G.line_graph(G.cycle(n))), to_nx(G.cycle(n)))
    with pytest.raises(GraphError):
        G.line_graph(G.complete(1))


def test_line_graph_of_and3():
    lg = G.line_graph(G.andrasfai(3))
    # 8 * 3 / 2 edges, each meeting 2 * (3 - 1) others
    assert lg.n == 12
    assert lg.regularity() == 4
    ref = nx.line_graph(to_nx(G.andrasfai(3)))
    assert nx.is_isomorphic(ref, to_nx(lg))


def test_line_graph_vertex_order():
    g = G.andrasfai(3)
    lg = G.line_graph(g)
    for i, j in lg.edges:
        assert set(g.edges[i]) & set(g.edges[j])
