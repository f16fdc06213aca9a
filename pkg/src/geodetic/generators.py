"""Random test instance generators.

All generators take an explicit :class:`random.Random` so callers control
reproducibility; nothing here touches the global RNG state.
"""

from __future__ import annotations

import random

from geodetic.graph import Graph, GraphError


def random_fen_graph(n: int, fen: int, rng: random.Random) -> Graph:
    """Connected graph on n vertices with exactly ``fen`` independent cycles.

    Built as a random recursive tree plus ``fen`` extra edges drawn from the
    complement.
    """
    if n < 1:
        raise GraphError("need at least one vertex")
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    complement = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges
    ]
    if fen > len(complement):
        raise GraphError(f"cannot add {fen} extra edges to a tree on {n} vertices")
    edges.update(rng.sample(complement, k=fen))
    return Graph(n, sorted(edges))


def cycle_with_leaves(length: int, leaves: int, rng: random.Random) -> Graph:
    """Cycle of the given length with pendant leaves on distinct positions."""
    if length < 3:
        raise GraphError("cycle length must be at least 3")
    if leaves > length:
        raise GraphError("at most one leaf per cycle position")
    supports = rng.sample(range(length), k=leaves)
    edges = [(i, (i + 1) % length) for i in range(length)]
    edges = [(min(u, v), max(u, v)) for u, v in edges]
    for i, s in enumerate(supports):
        edges.append((s, length + i))
    return Graph(length + leaves, sorted(edges))
