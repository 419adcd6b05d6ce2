import networkx as nx
import pytest
from hypothesis import given, settings

from antimagic.errors import ContractError
from antimagic.graph import (
    BipartiteGraph, Graph, bridges, connected_components, edge_blocks, euler_tour, format_edge_list,
    is_even_subgraph, isolated_vertices, parse_edge_list, to_dot, two_removable_edges,
)
from strategies import bipartite_graphs


def _nx(g, edges=None):
    h = nx.Graph()
    h.add_edges_from(g.edges[e] for e in (edges if edges is not None else range(g.m)))
    return h


def test_rejects_loops_and_parallel_edges():
    with pytest.raises(ContractError, match="loop"):
        Graph(2, [(0, 0)])
    with pytest.raises(ContractError, match="parallel"):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(ContractError):
        BipartiteGraph(2, 2, [(0, 1)])


def test_edge_ids_follow_input_order():
    g = BipartiteGraph(2, 2, [(1, 3), (0, 2), (3, 0)])
    assert g.edges == ((1, 3), (0, 2), (0, 3))
    assert g.edge_id(3, 0) == 2
    assert g.other(2, 3) == 0
    assert g.degrees() == [2, 1, 1, 2]


@given(bipartite_graphs(max_side=7))
def test_components_and_bridges_match_networkx(g):
    h = _nx(g)
    comps = connected_components(g)
    assert sorted(sorted(c.vertices) for c in comps) == sorted(sorted(c) for c in nx.connected_components(h))
    want = {g.edge_id(u, v) for u, v in nx.bridges(h)}
    assert bridges(g) == want
    blocks = edge_blocks(g)
    want_blocks = sorted(sorted(g.edge_id(u, v) for u, v in b) for b in nx.biconnected_component_edges(h))
    assert sorted(sorted(b) for b in blocks) == want_blocks


def test_isolated_vertices_relative_to_subset():
    g = BipartiteGraph(2, 2, [(0, 2), (1, 3)])
    assert isolated_vertices(g, [0]) == [1, 3]


@given(bipartite_graphs(max_side=6))
def test_euler_tour_on_even_components(g):
    for c in connected_components(g):
        if all(c.degree(v) % 2 == 0 for v in c.vertices):
            t = euler_tour(c)
            assert sorted(t.edge_seq) == sorted(c.edges)
            assert t.vertex_seq[0] == t.vertex_seq[-1] == min(c.vertices)
            assert is_even_subgraph(g, c.edges)


def test_euler_tour_rejects_odd_component():
    g = BipartiteGraph(1, 2, [(0, 1), (0, 2)])
    with pytest.raises(ContractError):
        euler_tour(connected_components(g)[0])


@settings(max_examples=150)
@given(bipartite_graphs(max_side=6, min_edges=3))
def test_two_removable_edges_keep_component_connected(g):
    for c in connected_components(g):
        cut = bridges(g, c.edges)
        for v in sorted(c.vertices):
            if sum(1 for e in c.incident(v) if e not in cut) >= 3:
                a, b = two_removable_edges(c, v)
                assert a != b and v in g.edges[a] and v in g.edges[b]
                rest = c.edges - {a, b}
                assert len(connected_components(g, rest)) == 1
                assert set().union(*(set(g.edges[e]) for e in rest)) == set(c.vertices)


def test_parse_round_trip_and_diagnostics():
    g = BipartiteGraph(2, 2, [(0, 2), (1, 3)])
    assert parse_edge_list(format_edge_list(g)).edges == g.edges
    assert parse_edge_list("# c\n\nbip 1 1 1\n0 1\n").m == 1
    with pytest.raises(ContractError, match=r"<string>:2:3: expected an integer"):
        parse_edge_list("bip 1 1 1\n0 x\n")
    with pytest.raises(ContractError, match=r":2:1: edge \(0, 0\)|does not join"):
        parse_edge_list("bip 2 1 1\n0 1\n")
    with pytest.raises(ContractError, match="declares 2 edges"):
        parse_edge_list("bip 1 1 2\n0 1\n")
    with pytest.raises(ContractError, match="header"):
        parse_edge_list("0 1\n")


def test_to_dot_marks_sides_and_labels():
    g = BipartiteGraph(1, 1, [(0, 1)])
    dot = to_dot(g, [1])
    assert "0 [shape=box]" in dot and '0 -- 1 [label="1"]' in dot
