import itertools
import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complete, cycle, graphs, path, star, to_nx
from distmatch.enumeration import connected_graphs_up_to
from distmatch.graph import (
    UNREACHABLE,
    Graph,
    GraphError,
    WeightedGraph,
    bfs_distances,
    edge_distance,
    edge_distance_matrix,
    edge_neighborhood,
    graph_power,
    line_graph,
    vertex_edge_distance,
)


class TestGraphInvariants:
    def test_adjacency_sorted_and_symmetric(self):
        g = Graph(4, [(2, 0), (1, 2), (3, 2)])
        assert g.adjacency == ((2,), (2,), (0, 1, 3), (2,))
        assert g.edges == ((0, 2), (1, 2), (2, 3))

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)], [(-1, 0)]])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(GraphError):
            Graph(3, edges)

    def test_equality_by_structure(self):
        assert Graph(3, [(0, 1)]) == Graph(3, [(1, 0)])
        assert Graph(3, [(0, 1)]) != Graph(2, [(0, 1)])
        assert len({Graph(3, [(0, 1)]), Graph(3, [(1, 0)])}) == 1

    def test_weighted_rejects_non_positive(self):
        with pytest.raises(GraphError):
            WeightedGraph(2, [(0, 1, 0)])
        with pytest.raises(GraphError):
            WeightedGraph(2, [(0, 1, Fraction(-1, 2))])

    def test_weights_exact(self):
        g = WeightedGraph(3, [(0, 1, Fraction(1, 3)), (1, 2, Fraction(2, 3))])
        assert g.total_weight(g.edges) == 1
        assert g.weight(1, 0) == Fraction(1, 3)


class TestBfs:
    def test_path(self):
        assert bfs_distances(path(4), 0) == [0, 1, 2, 3]

    def test_clique(self):
        assert bfs_distances(complete(3), 1) == [1, 0, 1]

    def test_disconnected(self):
        d = bfs_distances(Graph(4, [(0, 1), (2, 3)]), 0)
        assert d[:2] == [0, 1]
        assert d[2] == d[3] == UNREACHABLE
        assert all(UNREACHABLE > k for k in (0, 10, 10**9))

    def test_source_out_of_range(self):
        with pytest.raises(GraphError):
            bfs_distances(path(3), 3)

    @given(graphs(max_n=8))
    def test_matches_networkx_and_matrix(self, g):
        h = to_nx(g)
        dm = g.distance_matrix()
        for s in g.vertices():
            ref = nx.single_source_shortest_path_length(h, s)
            d = bfs_distances(g, s)
            assert d == [ref.get(v, math.inf) for v in g.vertices()]
            assert list(dm[s]) == d

    def test_triangle_inequality(self):
        for g in connected_graphs_up_to(6):
            d = [bfs_distances(g, v) for v in g.vertices()]
            for a, b, c in itertools.product(g.vertices(), repeat=3):
                assert d[a][c] <= d[a][b] + d[b][c]


class TestPower:
    def test_p4_square(self):
        assert set(graph_power(path(4), 2).edges) == {(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)}

    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_clique_idempotent(self, k):
        assert graph_power(complete(5), k) == complete(5)

    def test_c6_square(self):
        # brute force: pairs at cyclic offset 1 or 2
        expected = {tuple(sorted((i, (i + d) % 6))) for i in range(6) for d in (1, 2)}
        p = graph_power(cycle(6), 2)
        assert set(p.edges) == expected
        assert all(p.degree(v) == 4 for v in p.vertices())

    def test_k_zero(self):
        with pytest.raises(GraphError):
            graph_power(path(3), 0)

    def test_agrees_with_bfs_exhaustively(self):
        for g in connected_graphs_up_to(7):
            d = [bfs_distances(g, v) for v in g.vertices()]
            for k in (1, 2, 3):
                p = graph_power(g, k)
                for u, v in itertools.combinations(g.vertices(), 2):
                    assert p.has_edge(u, v) == (d[u][v] <= k)

    def test_disconnected_power(self):
        p = graph_power(Graph(4, [(0, 1), (2, 3)]), 3)
        assert p.edges == ((0, 1), (2, 3))


class TestLineGraph:
    def test_p4(self):
        lg, index = line_graph(path(4))
        assert lg == path(3)
        assert index == {(0, 1): 0, (1, 2): 1, (2, 3): 2}

    def test_triangle(self):
        assert line_graph(complete(3))[0] == complete(3)

    def test_claw(self):
        assert line_graph(star(3))[0] == complete(3)

    @given(graphs(max_n=7))
    def test_matches_networkx(self, g):
        lg, index = line_graph(g)
        ref = nx.line_graph(to_nx(g))
        assert lg.n == g.m
        assert sorted(index.values()) == list(range(g.m))
        back = {v: e for e, v in index.items()}
        got = {frozenset((back[a], back[b])) for a, b in lg.edges}
        want = {frozenset((tuple(sorted(a)), tuple(sorted(b)))) for a, b in ref.edges}
        assert got == want


class TestEdgeDistance:
    def test_p4_ends(self):
        assert edge_distance(path(4), (0, 1), (2, 3)) == 1

    def test_shared_endpoint(self):
        g = star(3)
        assert edge_distance(g, (0, 1), (0, 2)) == 0

    def test_c6(self):
        # v1v2 and v4v5 in 1-based labels
        assert edge_distance(cycle(6), (0, 1), (3, 4)) == 2

    def test_edge_missing(self):
        with pytest.raises(GraphError):
            edge_distance(path(4), (0, 2), (2, 3))

    def test_vertex_edge(self):
        assert vertex_edge_distance(path(5), 0, (3, 4)) == 3

    def test_unreachable(self):
        g = Graph(4, [(0, 1), (2, 3)])
        assert edge_distance(g, (0, 1), (2, 3)) == UNREACHABLE

    def test_line_graph_offset_exhaustive(self):
        # distance in L(G) counts the edges themselves, so it is one more
        for g in connected_graphs_up_to(6):
            lg, index = line_graph(g)
            d = [bfs_distances(lg, v) for v in lg.vertices()]
            for e1, e2 in itertools.combinations(g.edges, 2):
                assert edge_distance(g, e1, e2) == d[index[e1]][index[e2]] - 1

    def test_matrix_matches_pairwise(self):
        for g in connected_graphs_up_to(5):
            ed = edge_distance_matrix(g)
            for i, j in itertools.product(range(g.m), repeat=2):
                assert ed[i, j] == edge_distance(g, g.edges[i], g.edges[j])


class TestEdgeNeighborhood:
    def test_radius_one_is_incident(self):
        g = star(3)
        assert edge_neighborhood(g, [1], 1) == [(0, 1)]
        assert edge_neighborhood(g, [0], 1) == list(g.edges)

    def test_p4_radius_two(self):
        assert edge_neighborhood(path(4), [0], 2) == [(0, 1), (1, 2)]

    def test_empty_sources(self):
        assert edge_neighborhood(path(4), [], 3) == []

    def test_bad_vertex(self):
        with pytest.raises(GraphError):
            edge_neighborhood(path(4), [7], 1)

    @given(graphs(max_n=7), st.integers(1, 4), st.data())
    def test_definition(self, g, t, data):
        xs = data.draw(st.sets(st.integers(0, g.n - 1), max_size=3))
        got = set(edge_neighborhood(g, xs, t))
        want = {e for e in g.edges if any(vertex_edge_distance(g, v, e) < t for v in xs)}
        assert got == want
