from __future__ import annotations

import random
from itertools import combinations

import pytest

from geodetic.graph import (
    DisconnectedError,
    Graph,
    interval_closure,
    is_geodetic,
)
from geodetic.oracle import (
    BUDGET_EXHAUSTED,
    EXCEEDS_UPPER,
    OPTIMAL,
    count_geodetic_sets_of_size,
    forced_vertices,
    geodetic_number,
    min_geodetic_brute,
    pair_interval_masks,
)
from tests.conftest import complete_graph, cycle_graph, path_graph, star_graph


def naive_minimum(g: Graph) -> int:
    """Size-ascending enumeration using only set-based closure."""
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            if len(interval_closure(g, combo)) == g.n:
                return size
    raise AssertionError


def random_connected_graph(rng: random.Random, n: int) -> Graph:
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    possible = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges
    ]
    extra = rng.randrange(0, min(4, len(possible)) + 1) if possible else 0
    edges.update(rng.sample(possible, k=extra))
    return Graph(n, sorted(edges))


def test_pair_interval_masks_match_closure():
    g = cycle_graph(6)
    masks = pair_interval_masks(g, range(6))
    for (u, v), mask in masks.items():
        expected = interval_closure(g, [u, v])
        assert mask == sum(1 << w for w in expected)


def test_known_optima():
    assert geodetic_number(path_graph(2)) == 2
    assert geodetic_number(path_graph(9)) == 2
    assert geodetic_number(cycle_graph(4)) == 2
    assert geodetic_number(cycle_graph(5)) == 3
    assert geodetic_number(cycle_graph(6)) == 2
    assert geodetic_number(cycle_graph(7)) == 3
    assert geodetic_number(complete_graph(4)) == 4
    assert geodetic_number(complete_graph(6)) == 6
    assert geodetic_number(star_graph(5)) == 5
    assert geodetic_number(Graph(1, [])) == 1


def test_witness_is_geodetic_and_minimal():
    g = cycle_graph(7)
    result = min_geodetic_brute(g)
    assert result.status == OPTIMAL
    assert result.witness is not None
    assert is_geodetic(g, result.witness)
    assert count_geodetic_sets_of_size(g, result.size - 1) == 0


def test_witness_contains_all_leaves():
    g = Graph(7, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 5), (2, 6), (0, 3)])
    result = min_geodetic_brute(g)
    assert set(forced_vertices(g)) <= set(result.witness)


def test_tree_optimum_is_leaf_count(rng: random.Random):
    for _ in range(30):
        n = rng.randrange(2, 12)
        g = Graph(n, sorted((rng.randrange(i), i) for i in range(1, n)))
        leaves = forced_vertices(g)
        result = min_geodetic_brute(g)
        assert result.size == len(leaves)
        assert result.witness == tuple(sorted(leaves))


def test_matches_naive_enumeration(rng: random.Random):
    for _ in range(40):
        g = random_connected_graph(rng, rng.randrange(2, 9))
        assert geodetic_number(g) == naive_minimum(g)


def test_upper_cap():
    g = complete_graph(5)
    result = min_geodetic_brute(g, upper=3)
    assert result.status == EXCEEDS_UPPER
    assert result.size is None and result.witness is None
    result = min_geodetic_brute(g, upper=5)
    assert result.status == OPTIMAL
    assert result.size == 5


def test_node_budget():
    g = complete_graph(6)
    result = min_geodetic_brute(g, node_budget=3)
    assert result.status == BUDGET_EXHAUSTED
    assert result.size is None and result.witness is None
    assert result.tested == 3
    assert min_geodetic_brute(g, node_budget=10**6).status == OPTIMAL


def test_requires_connected():
    with pytest.raises(DisconnectedError):
        min_geodetic_brute(Graph(4, [(0, 1), (2, 3)]))


def test_deterministic_witness():
    g = cycle_graph(8)
    a = min_geodetic_brute(g)
    b = min_geodetic_brute(g)
    assert a == b
    assert a.witness == (0, 4)  # first antipodal pair in lexicographic order
