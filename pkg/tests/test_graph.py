from __future__ import annotations

import random

import pytest

from geodetic.graph import (
    INF,
    DisconnectedError,
    DistanceOracle,
    Graph,
    GraphError,
    GraphFormatError,
    bfs_distances,
    connected_components,
    diameter,
    feedback_edge_number,
    format_graph,
    interval,
    interval_closure,
    is_connected,
    is_geodetic,
    parse_graph,
)
from tests.conftest import complete_graph, cycle_graph, path_graph, star_graph


def test_graph_basic():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.n == 4
    assert g.m == 3
    assert g.adj[1] == (0, 2)
    assert list(g.edges()) == [(0, 1), (1, 2), (2, 3)]


def test_graph_rejects_bad_edges():
    with pytest.raises(GraphError):
        Graph(3, [(0, 3)])
    with pytest.raises(GraphError):
        Graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph(-1, [])


def test_graph_equality_ignores_edge_order():
    a = Graph(3, [(0, 1), (1, 2)])
    b = Graph(3, [(1, 2), (0, 1)])
    assert a == b
    assert a != Graph(3, [(0, 1)])


def test_bfs_distances_path():
    g = path_graph(5)
    assert bfs_distances(g, 0) == [0, 1, 2, 3, 4]
    assert bfs_distances(g, 2) == [2, 1, 0, 1, 2]


def test_bfs_distances_disconnected():
    g = Graph(4, [(0, 1), (2, 3)])
    d = bfs_distances(g, 0)
    assert d[1] == 1
    assert d[2] is INF
    assert d[3] is INF


def test_distance_oracle_matches_bfs(rng: random.Random):
    for _ in range(20):
        n = rng.randrange(2, 12)
        possible = [(u, v) for u in range(n) for v in range(u + 1, n)]
        edges = rng.sample(possible, k=rng.randrange(0, len(possible) + 1))
        g = Graph(n, edges)
        oracle = DistanceOracle(g)
        for s in range(n):
            assert list(oracle.row(s)) == bfs_distances(g, s)
        u, v = rng.randrange(n), rng.randrange(n)
        assert oracle.distance(u, v) == bfs_distances(g, u)[v]


def test_connected_components():
    g = Graph(6, [(0, 1), (1, 2), (3, 4)])
    assert connected_components(g) == [[0, 1, 2], [3, 4], [5]]
    assert not is_connected(g)
    assert is_connected(path_graph(4))
    assert is_connected(Graph(0, []))


def test_feedback_edge_number():
    assert feedback_edge_number(path_graph(5)) == 0
    assert feedback_edge_number(cycle_graph(5)) == 1
    assert feedback_edge_number(complete_graph(4)) == 3
    # forest with two components: still 0
    assert feedback_edge_number(Graph(5, [(0, 1), (2, 3), (3, 4)])) == 0


def test_interval_even_cycle():
    # both shortest 0-2 paths on C4 exist, so the interval is everything
    g = cycle_graph(4)
    oracle = DistanceOracle(g)
    assert interval(g, oracle, 0, 2) == frozenset({0, 1, 2, 3})


def test_interval_odd_cycle():
    g = cycle_graph(5)
    oracle = DistanceOracle(g)
    assert interval(g, oracle, 0, 2) == frozenset({0, 1, 2})
    assert interval(g, oracle, 0, 0) == frozenset({0})


def test_interval_disconnected_pair():
    g = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedError):
        interval(g, DistanceOracle(g), 0, 2)


def test_interval_closure_clique_pair():
    # adjacent vertices in K4 close to just themselves
    g = complete_graph(4)
    assert interval_closure(g, [0, 1]) == frozenset({0, 1})


def test_interval_closure_odd_cycle_triple():
    g = cycle_graph(5)
    assert interval_closure(g, [0, 2, 4]) == frozenset(range(5))


def test_interval_closure_skips_cross_component_pairs():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    assert interval_closure(g, [0, 2, 3]) == frozenset({0, 1, 2, 3})


def test_is_geodetic():
    g = cycle_graph(5)
    assert is_geodetic(g, [0, 2, 4])
    assert not is_geodetic(g, [0, 2])
    assert is_geodetic(path_graph(6), [0, 5])
    with pytest.raises(DisconnectedError):
        is_geodetic(Graph(3, [(0, 1)]), [0, 1, 2])


def test_is_geodetic_star():
    g = star_graph(4)
    assert is_geodetic(g, [1, 2, 3, 4])
    assert not is_geodetic(g, [1, 2, 3])


def test_diameter():
    assert diameter(path_graph(7)) == 6
    assert diameter(cycle_graph(8)) == 4
    assert diameter(complete_graph(5)) == 1
    with pytest.raises(DisconnectedError):
        diameter(Graph(3, [(0, 1)]))
    with pytest.raises(GraphError):
        diameter(Graph(0, []))


def test_diameter_large_path_uses_batched_route():
    n = 1500
    assert diameter(path_graph(n)) == n - 1


def test_parse_and_format_round_trip():
    text = "4 3\n0 1\n1 2\n2 3\n"
    g = parse_graph(text)
    assert g == path_graph(4)
    assert format_graph(g) == text


def test_parse_graph_accepts_comments():
    g = parse_graph("# a path\n3 2\n0 1\n# middle\n1 2\n")
    assert g == path_graph(3)


def test_parse_graph_rejects_malformed():
    for bad in [
        "",
        "3\n",
        "3 2\n0 1\n",
        "3 1\n1 0\n",
        "3 1\n0 1 2\n",
        "3 1\nx y\n",
        "2 2\n0 1\n0 1\n",
    ]:
        with pytest.raises(GraphFormatError):
            parse_graph(bad)


def test_format_sorted_regardless_of_input_order(rng: random.Random):
    edges = [(2, 5), (0, 1), (1, 4), (0, 3)]
    for _ in range(5):
        rng.shuffle(edges)
        assert format_graph(Graph(6, edges)) == "6 4\n0 1\n0 3\n1 4\n2 5\n"
