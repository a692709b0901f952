from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maghom.graphs import (UNREACHABLE, all_pairs_distances, build_graph,
                           complete_graph, count_full_subgraphs, cycle_graph,
                           f4_graph, read_graph, write_graph)

edge_lists = st.integers(2, 8).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                 .filter(lambda e: e[0] != e[1]), max_size=20)))


def test_build_graph_normalizes_and_dedupes():
    G = build_graph(4, [(1, 0), (0, 1), (2, 3)])
    assert G.edges == ((0, 1), (2, 3))
    assert G.has_edge(1, 0) and not G.has_edge(0, 3)


def test_build_graph_rejects_bad_input():
    with pytest.raises(ValueError):
        build_graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        build_graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        build_graph(-1, [])


@settings(max_examples=60, deadline=None)
@given(edge_lists)
def test_distances_match_networkx(ne):
    n, edges = ne
    G = build_graph(n, edges)
    D = all_pairs_distances(G)
    sp = dict(nx.all_pairs_shortest_path_length(G.to_networkx()))
    for u in range(n):
        for v in range(n):
            expect = sp.get(u, {}).get(v, UNREACHABLE)
            assert D[u, v] == expect


def test_distances_read_only():
    D = all_pairs_distances(cycle_graph(4))
    with pytest.raises(ValueError):
        D[0, 0] = 5


def test_named_graphs():
    assert len(complete_graph(5).edges) == 10
    assert len(cycle_graph(6).edges) == 6
    F4 = f4_graph()
    assert len(F4.edges) == 5 and F4.has_edge(0, 2)
    with pytest.raises(ValueError):
        cycle_graph(2)


def _brute_count(G, H):
    """Induced-subgraph isomorphism count by direct subset scan."""
    hn = H.n
    cnt = 0
    for sub in itertools.combinations(range(G.n), hn):
        gsub = G.to_networkx().subgraph(sub)
        if nx.is_isomorphic(gsub, H.to_networkx()):
            cnt += 1
    return cnt


def test_count_full_subgraphs_against_brute_force():
    G = build_graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5),
                        (3, 5), (2, 4)])
    for H in (complete_graph(3), cycle_graph(4), complete_graph(4), f4_graph()):
        assert count_full_subgraphs(G, H) == _brute_count(G, H)


def test_triangle_counts_on_known_graphs():
    assert count_full_subgraphs(complete_graph(5), complete_graph(3)) == 10
    assert count_full_subgraphs(cycle_graph(6), complete_graph(3)) == 0


def test_graph_file_roundtrip(tmp_path):
    G = build_graph(5, [(0, 1), (1, 2), (3, 4)])
    path = tmp_path / "g.txt"
    write_graph(G, str(path))
    H = read_graph(str(path))
    assert H.n == G.n and H.edges == G.edges


def test_read_graph_rejects_garbage(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("not a graph\n")
    with pytest.raises(ValueError):
        read_graph(str(path))
