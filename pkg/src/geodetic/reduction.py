"""Data reduction for geodetic set instances with few independent cycles.

The driver shrinks a connected graph with five rewrite rules while tracking
how much the optimum drops.  Each rule application is logged in a trace that
is replayable (for auditing) and invertible (to lift a witness of the reduced
instance back to the input graph).

Terminology used throughout:

* leaf: a degree-1 vertex; its unique neighbor is the support.
* leafed vertex: a vertex with at least one pendant leaf.
* core: the 2-core of the working graph; pendant trees are outside it.
* branch vertex: a core vertex with three or more core neighbors.
* segment: a maximal core path between branch vertices; recorded with its
  full vertex sequence.  A segment whose two ends are the same branch vertex
  is a loop.

Rules fire one application at a time, highest priority first:

* collapse: leaf whose support has degree 2; drop the leaf (optimum kept).
* twin: two leaves on one support; drop one (optimum drops by 1).
* shortcut: consecutive leafed positions on a segment whose graph distance
  beats the along-segment distance; pin the midpoint with a new leaf.
* margin: the extreme leafed position of a segment sits too deep relative to
  the end-to-end distance; pin a position near the end with a new leaf.
* loop-prune: a loop at a branch vertex is removed wholesale (needs at least
  two independent cycles overall).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from geodetic.graph import INF, DisconnectedError, Graph, GraphError, is_geodetic


class FenTooSmallError(GraphError):
    """The core has no branch vertex, so no segment decomposition exists."""


class MutableGraph:
    """Adjacency-set graph with stable integer labels.

    Labels of removed vertices are never reused, so trace entries stay
    unambiguous across an entire reduction run.
    """

    def __init__(self) -> None:
        self._adj: dict[int, set[int]] = {}
        self._next = 0

    @classmethod
    def from_graph(cls, g: Graph) -> "MutableGraph":
        mg = cls()
        for v in range(g.n):
            mg.add_vertex(v)
        for u, v in g.edges():
            mg.add_edge(u, v)
        return mg

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def labels(self) -> list[int]:
        return sorted(self._adj)

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def add_vertex(self, label: int | None = None) -> int:
        if label is None:
            label = self._next
        if label in self._adj:
            raise GraphError(f"label {label} already present")
        self._adj[label] = set()
        self._next = max(self._next, label + 1)
        return label

    def remove_vertex(self, v: int) -> None:
        for u in self._adj.pop(v):
            self._adj[u].discard(v)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise GraphError(f"loop at {u} not allowed")
        if v in self._adj[u]:
            raise GraphError(f"duplicate edge ({u}, {v})")
        self._adj[u].add(v)
        self._adj[v].add(u)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self._adj[v]))

    def attach_leaf(self, support: int, label: int | None = None) -> int:
        leaf = self.add_vertex(label)
        self.add_edge(support, leaf)
        return leaf

    def leaf_of(self, v: int) -> int | None:
        """Smallest pendant leaf hanging off ``v``, or None."""
        for u in self.neighbors(v):
            if self.degree(u) == 1:
                return u
        return None

    def is_leafed(self, v: int) -> bool:
        return self.leaf_of(v) is not None

    def bfs(self, source: int) -> dict[int, int]:
        """Distances to all reachable labels."""
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for v in self._adj[u]:
                if v not in dist:
                    dist[v] = du
                    queue.append(v)
        return dist

    def distance(self, u: int, v: int) -> int | float:
        return self.bfs(u).get(v, INF)

    def component_count(self) -> int:
        seen: set[int] = set()
        comps = 0
        for s in self._adj:
            if s in seen:
                continue
            comps += 1
            seen.add(s)
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self._adj[u]:
                    if v not in seen:
                        seen.add(v)
                        queue.append(v)
        return comps

    def feedback_edge_number(self) -> int:
        return self.m - self.n + self.component_count()

    def to_graph(self) -> tuple[Graph, list[int]]:
        """Relabel to 0..n-1 (sorted label order); returns graph and label list."""
        labels = self.labels()
        index = {lab: i for i, lab in enumerate(labels)}
        edges = [
            (index[u], index[v])
            for u in labels
            for v in self._adj[u]
            if index[u] < index[v]
        ]
        return Graph(len(labels), edges), labels

    def copy(self) -> "MutableGraph":
        mg = MutableGraph()
        mg._adj = {v: set(nb) for v, nb in self._adj.items()}
        mg._next = self._next
        return mg


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    dk: int
    removed: tuple[int, ...]
    added: tuple[int, ...]
    info: dict


@dataclass(frozen=True)
class PathRecord:
    """One segment of the core: vertex labels from one branch end to the other."""

    index: int
    vertices: tuple[int, ...]
    leaf_positions: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.vertices) - 1

    @property
    def left(self) -> int:
        return self.vertices[0]

    @property
    def right(self) -> int:
        return self.vertices[-1]

    @property
    def is_loop(self) -> bool:
        return self.left == self.right

    @property
    def l_left(self) -> int:
        return self.leaf_positions[0]

    @property
    def l_right(self) -> int:
        return self.leaf_positions[-1]


@dataclass(frozen=True)
class FeedbackEdgeDecomposition:
    branch_vertices: tuple[int, ...]
    paths: tuple[PathRecord, ...]


def two_core(work: MutableGraph) -> set[int]:
    """Labels surviving repeated removal of degree <= 1 vertices."""
    deg = {v: work.degree(v) for v in work.labels()}
    queue = deque(v for v, d in deg.items() if d <= 1)
    dead: set[int] = set()
    while queue:
        v = queue.popleft()
        if v in dead:
            continue
        dead.add(v)
        for u in work.neighbors(v):
            if u not in dead:
                deg[u] -= 1
                if deg[u] <= 1:
                    queue.append(u)
    return {v for v in work.labels() if v not in dead}


def build_feg(work: MutableGraph) -> FeedbackEdgeDecomposition:
    """Segment decomposition of the core around its branch vertices.

    Raises :class:`FenTooSmallError` when the core has no branch vertex,
    which happens exactly when there are fewer than two independent cycles.
    """
    core = two_core(work)
    core_deg = {v: sum(1 for u in work.neighbors(v) if u in core) for v in core}
    branch = sorted(v for v in core if core_deg[v] >= 3)
    if not branch:
        raise FenTooSmallError("no branch vertex in the core")
    used: set[frozenset[int]] = set()
    paths: list[PathRecord] = []
    for b in branch:
        for start in work.neighbors(b):
            if start not in core or frozenset((b, start)) in used:
                continue
            verts = [b, start]
            used.add(frozenset((b, start)))
            prev, cur = b, start
            while core_deg[cur] == 2:
                nxt = next(
                    u for u in work.neighbors(cur) if u in core and u != prev
                )
                used.add(frozenset((cur, nxt)))
                verts.append(nxt)
                prev, cur = cur, nxt
            leafed = tuple(
                j for j, v in enumerate(verts) if work.is_leafed(v)
            )
            paths.append(PathRecord(len(paths), tuple(verts), leafed))
    assert all(
        frozenset((u, v)) in used
        for u in core
        for v in work.neighbors(u)
        if v in core and u < v
    )
    return FeedbackEdgeDecomposition(tuple(branch), tuple(paths))


def apply_collapse(work: MutableGraph, trace: list[TraceEntry]) -> bool:
    """Drop a leaf whose support has degree 2; the support takes its place."""
    for u in work.labels():
        if work.degree(u) != 1:
            continue
        (v,) = work.neighbors(u)
        if work.degree(v) == 2:
            work.remove_vertex(u)
            trace.append(
                TraceEntry("collapse", 0, (u,), (), {"leaf": u, "support": v})
            )
            return True
    return False


def apply_twin(work: MutableGraph, trace: list[TraceEntry]) -> bool:
    """Drop the second of two leaves sharing a support; optimum drops by 1."""
    for v in work.labels():
        leaves = [u for u in work.neighbors(v) if work.degree(u) == 1]
        if len(leaves) >= 2:
            kept, gone = leaves[0], leaves[1]
            work.remove_vertex(gone)
            trace.append(
                TraceEntry(
                    "twin", 1, (gone,), (), {"kept": kept, "removed": gone, "support": v}
                )
            )
            return True
    return False


def apply_shortcut(
    work: MutableGraph, fed: FeedbackEdgeDecomposition, trace: list[TraceEntry]
) -> bool:
    """Pin the midpoint between consecutive leafed positions that a shortcut
    elsewhere in the graph makes locally uncoverable."""
    for path in fed.paths:
        for l, l2 in zip(path.leaf_positions, path.leaf_positions[1:]):
            a, b = path.vertices[l], path.vertices[l2]
            if work.distance(a, b) < l2 - l:
                mid = path.vertices[(l + l2) // 2]
                leaf = work.attach_leaf(mid)
                trace.append(
                    TraceEntry(
                        "shortcut", 0, (), (leaf,), {"leaf": leaf, "support": mid}
                    )
                )
                return True
    return False


def apply_margin(
    work: MutableGraph, fed: FeedbackEdgeDecomposition, trace: list[TraceEntry]
) -> bool:
    """Pin a position near a segment end when the nearest leafed position
    sits deeper than the end-to-end distance allows."""
    for path in fed.paths:
        if not path.leaf_positions:
            continue
        h = path.h
        d = 0 if path.is_loop else int(work.distance(path.left, path.right))
        if 2 * path.l_left - h > d:
            pos = path.l_left - (h + d) // 2
        elif h - 2 * path.l_right > d:
            pos = path.l_right + (h + d) // 2
        else:
            continue
        support = path.vertices[pos]
        leaf = work.attach_leaf(support)
        trace.append(
            TraceEntry("margin", 0, (), (leaf,), {"leaf": leaf, "support": support})
        )
        return True
    return False


def apply_loop_prune(
    work: MutableGraph, fed: FeedbackEdgeDecomposition, trace: list[TraceEntry]
) -> bool:
    """Remove a loop at a branch vertex together with its pendant leaves.

    Only valid when the rest of the graph still contains a cycle, which the
    caller guarantees by checking the feedback edge number first.  The
    optimum drops by one less than the number of leafed vertices on the
    loop; a bare odd loop costs one extra.
    """
    for path in fed.paths:
        if not path.is_loop:
            continue
        v = path.left
        h = path.h
        inner = list(path.vertices[1:-1])
        inner_leaves = {
            pos: work.leaf_of(path.vertices[pos])
            for pos in range(1, h)
            if work.is_leafed(path.vertices[pos])
        }
        had_leaf = work.is_leafed(v)
        t = len(inner_leaves) + (1 if had_leaf else 0)
        removed = []
        for pos in range(1, h):
            leaf = inner_leaves.get(pos)
            if leaf is not None:
                work.remove_vertex(leaf)
                removed.append(leaf)
            work.remove_vertex(path.vertices[pos])
            removed.append(path.vertices[pos])
        new_leaf = None if had_leaf else work.attach_leaf(v)
        dk = (h % 2) if t == 0 else t - 1
        trace.append(
            TraceEntry(
                "loop-prune",
                dk,
                tuple(removed),
                () if new_leaf is None else (new_leaf,),
                {
                    "attach": v,
                    "had_leaf": had_leaf,
                    "h": h,
                    "inner": tuple(inner),
                    "inner_leaves": dict(inner_leaves),
                    "new_leaf": new_leaf,
                    "t": t,
                },
            )
        )
        return True
    return False


@dataclass
class ReductionResult:
    graph: MutableGraph
    decomposition: FeedbackEdgeDecomposition | None
    k_decrease: int
    trace: list[TraceEntry] = field(default_factory=list)


def reduce_to_fixpoint(g: Graph) -> ReductionResult:
    """Run all rules to exhaustion on a connected graph.

    Stops early (without a decomposition) once fewer than two independent
    cycles remain; those instances are closed-form territory.
    """
    if g.n == 0:
        raise GraphError("cannot reduce the empty graph")
    work = MutableGraph.from_graph(g)
    if work.component_count() != 1:
        raise DisconnectedError("reduction requires a connected graph")
    trace: list[TraceEntry] = []
    fed: FeedbackEdgeDecomposition | None = None
    # each application shrinks (vertex count + 2 * unleafed non-leaf count)
    limit = 3 * g.n + 5
    for _ in range(limit):
        if apply_collapse(work, trace):
            continue
        if apply_twin(work, trace):
            continue
        if work.feedback_edge_number() < 2:
            fed = None
            break
        fed = build_feg(work)
        if apply_shortcut(work, fed, trace):
            continue
        if apply_margin(work, fed, trace):
            continue
        if apply_loop_prune(work, fed, trace):
            continue
        break
    else:  # pragma: no cover - the potential argument rules this out
        raise AssertionError("reduction failed to reach a fixpoint")
    k_decrease = sum(entry.dk for entry in trace)
    return ReductionResult(work, fed, k_decrease, trace)


def replay_entry(work: MutableGraph, entry: TraceEntry) -> None:
    """Re-apply a logged rule application to a working graph in the same state."""
    if entry.rule in ("collapse", "twin"):
        (gone,) = entry.removed
        work.remove_vertex(gone)
    elif entry.rule in ("shortcut", "margin", "guess-leaf"):
        (leaf,) = entry.added
        work.attach_leaf(entry.info["support"], label=leaf)
    elif entry.rule == "loop-prune":
        for gone in entry.removed:
            work.remove_vertex(gone)
        if entry.info["new_leaf"] is not None:
            work.attach_leaf(entry.info["attach"], label=entry.info["new_leaf"])
    else:  # pragma: no cover
        raise ValueError(f"unknown rule {entry.rule!r}")


def lift_witness(trace: list[TraceEntry], witness: Iterable[int]) -> tuple[int, ...]:
    """Map an optimal witness of the reduced graph back through the trace.

    Inverts rule applications newest first.  The size grows by exactly the
    total optimum drop recorded in the trace.
    """
    current = set(witness)
    for entry in reversed(trace):
        if entry.rule == "collapse":
            support = entry.info["support"]
            leaf = entry.info["leaf"]
            assert support in current, "support became a leaf and is forced"
            current.remove(support)
            current.add(leaf)
        elif entry.rule == "twin":
            removed = entry.info["removed"]
            assert removed not in current
            current.add(removed)
        elif entry.rule in ("shortcut", "margin", "guess-leaf"):
            leaf = entry.info["leaf"]
            support = entry.info["support"]
            assert leaf in current, "pinned leaf is forced"
            assert support not in current, "optimal witness avoids the support"
            current.remove(leaf)
            current.add(support)
        elif entry.rule == "loop-prune":
            info = entry.info
            if info["new_leaf"] is not None:
                assert info["new_leaf"] in current
                current.remove(info["new_leaf"])
            for leaf in info["inner_leaves"].values():
                current.add(leaf)
            if info["t"] == 0:
                h = info["h"]
                inner = info["inner"]
                if h % 2 == 0:
                    current.add(inner[h // 2 - 1])
                else:
                    current.add(inner[(h - 1) // 2 - 1])
                    current.add(inner[(h + 1) // 2 - 1])
        else:  # pragma: no cover
            raise ValueError(f"unknown rule {entry.rule!r}")
    return tuple(sorted(current))


def solve_tree(work: MutableGraph) -> tuple[int, tuple[int, ...]]:
    """Optimum for a tree: exactly its leaves (single vertex: itself)."""
    labels = work.labels()
    if len(labels) == 1:
        return 1, (labels[0],)
    leaves = tuple(v for v in labels if work.degree(v) == 1)
    return len(leaves), leaves


def _cycle_order(work: MutableGraph) -> list[int]:
    core = sorted(v for v in work.labels() if work.degree(v) >= 2)
    core_set = set(core)
    start = core[0]
    second = min(u for u in work.neighbors(start) if u in core_set)
    order = [start, second]
    prev, cur = start, second
    while True:
        nxt = next(u for u in work.neighbors(cur) if u in core_set and u != prev)
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    assert len(order) == len(core)
    return order


def solve_fen1_optimum(work: MutableGraph) -> tuple[int, tuple[int, ...]]:
    """Optimum for a cycle with single pendant leaves (fully reduced, fen 1).

    With leaves present they are all forced; they cover every arc between
    consecutive leafed positions except one that spans more than half the
    cycle, which costs one extra vertex at its midpoint.  A bare or
    singly-leafed cycle needs antipodal picks: two on even, three on odd.
    """
    order = _cycle_order(work)
    length = len(order)
    leafed = [i for i, v in enumerate(order) if work.is_leafed(v)]
    t = len(leafed)
    if t >= 2:
        witness = [work.leaf_of(order[i]) for i in leafed]
        gaps = [(leafed[(j + 1) % t] - leafed[j]) % length for j in range(t)]
        big = max(range(t), key=lambda j: gaps[j])
        if 2 * gaps[big] > length:
            offset = (gaps[big] + 1) // 2
            witness.append(order[(leafed[big] + offset) % length])
        size = len(witness)
    else:
        rot = leafed[0] if t == 1 else 0
        anchor = work.leaf_of(order[rot]) if t == 1 else order[rot]
        if length % 2 == 0:
            witness = [anchor, order[(rot + length // 2) % length]]
        else:
            witness = [
                anchor,
                order[(rot + (length - 1) // 2) % length],
                order[(rot + (length + 1) // 2) % length],
            ]
        size = len(witness)
    graph, labels = work.to_graph()
    index = {lab: i for i, lab in enumerate(labels)}
    assert is_geodetic(graph, [index[v] for v in witness])
    return size, tuple(sorted(witness))


def leafed_positions(work: MutableGraph, vertices: Iterable[int]) -> tuple[int, ...]:
    """Positions along a vertex sequence whose vertex carries a pendant leaf."""
    return tuple(j for j, v in enumerate(vertices) if work.is_leafed(v))
