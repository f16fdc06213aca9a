"""Exact geodetic set solver parameterized by the number of independent cycles.

The pipeline reduces the input to a fixpoint and then splits on what is
left.  Trees and lone cycles are closed forms.  Everything else goes
through guess enumeration: which unleafed branch vertices join the
solution, and how many solution vertices sit in the interior of each
unleafed segment.  A guess fixes the candidate size outright and leaves
only the exact placements open, which a small integer feasibility program
decides.  Guesses are processed in order of candidate size, so the first
feasible one realizes the optimum of the reduced graph.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from geodetic.graph import (
    DisconnectedError,
    Graph,
    GraphError,
    feedback_edge_number,
    is_connected,
    is_geodetic,
)
from geodetic.ilp import (
    BUDGET_EXHAUSTED,
    INFEASIBLE,
    IlpModel,
    solve as solve_ilp,
)
from geodetic.reduction import (
    FeedbackEdgeDecomposition,
    MutableGraph,
    TraceEntry,
    lift_witness,
    reduce_to_fixpoint,
    solve_fen1_optimum,
    solve_tree,
)

OPTIMAL = "optimal"
UNKNOWN = "unknown"

# segment classes once a guess is fixed
LEAFED = "leafed"  # carries a pendant leaf; placements sit at the leafed extremes
EMPTY = "empty"  # no solution vertex inside; must be swept by outside geodesics
SINGLE = "single"  # exactly one interior solution vertex
PAIR = "pair"  # exactly two interior solution vertices

_COUNT_CLASS = (EMPTY, SINGLE, PAIR)

Expr = tuple[list[tuple[int, int]], int]


@dataclass(frozen=True)
class GuessContext:
    """One point of the guess space.

    ``chosen`` lists the unleafed branch vertices that receive a stand-in
    leaf; ``interior_counts`` maps unleafed segment indices to the number
    of interior solution vertices; ``leafed_snapshot`` records each
    segment's leafed positions before the guess touches the graph.
    """

    chosen: tuple[int, ...]
    interior_counts: tuple[tuple[int, int], ...]
    leafed_snapshot: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PreparedInstance:
    """Fixpoint graph with everything the guess loop reads over and over."""

    work: MutableGraph
    fed: FeedbackEdgeDecomposition
    open_branch: tuple[int, ...]
    empty_segments: tuple[int, ...]
    dist: dict[int, dict[int, int]]
    leaf_count: int


@dataclass
class AppliedGuess:
    """Working copy of the fixpoint graph after one guess is grafted on."""

    ctx: GuessContext
    work: MutableGraph
    trace: list[TraceEntry]
    classes: tuple[str, ...]
    leafed: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SolveResult:
    status: str
    optimum: int | None
    witness: tuple[int, ...] | None
    answer: bool | None
    algorithm: str
    stats: dict


def prepare(work: MutableGraph, fed: FeedbackEdgeDecomposition) -> PreparedInstance:
    """Precompute branch distances and the guessable pieces of a fixpoint."""
    for path in fed.paths:
        if path.is_loop:
            raise GraphError("loops survive only below two independent cycles")
    open_branch = tuple(v for v in fed.branch_vertices if not work.is_leafed(v))
    empties = tuple(p.index for p in fed.paths if not p.leaf_positions)
    dist = {b: work.bfs(b) for b in fed.branch_vertices}
    leaf_count = sum(1 for v in work.labels() if work.degree(v) == 1)
    return PreparedInstance(work, fed, open_branch, empties, dist, leaf_count)


def enumerate_guesses(prep: PreparedInstance) -> Iterator[GuessContext]:
    """Yield the full guess product exactly once, deterministically.

    Branch subsets go up by size then numeric pattern; interior counts go
    up by total then lexicographically.  Guesses that pick a branch vertex
    next to an unleafed segment make that segment's count irrelevant; such
    contexts are still yielded (the product is the contract) and the
    solver deduplicates them by effective shape instead.
    """
    snapshot = tuple(p.leaf_positions for p in prep.fed.paths)
    masks = sorted(
        range(1 << len(prep.open_branch)), key=lambda m: (bin(m).count("1"), m)
    )
    assignments = sorted(
        itertools.product((0, 1, 2), repeat=len(prep.empty_segments)),
        key=lambda t: (sum(t), t),
    )
    for mask in masks:
        chosen = tuple(v for b, v in enumerate(prep.open_branch) if mask >> b & 1)
        for assign in assignments:
            yield GuessContext(
                chosen, tuple(zip(prep.empty_segments, assign)), snapshot
            )


def candidate_size(prep: PreparedInstance, ctx: GuessContext) -> int:
    """Size every feasible candidate of this guess must have.

    Leaves of the worked graph are all forced, and each untouched unleafed
    segment contributes exactly its guessed interior count.  A segment
    with a chosen endpoint and an interior longer than the outside
    distance trades its one forced interior vertex for a pinned leaf.
    """
    st = set(ctx.chosen)
    counts = dict(ctx.interior_counts)
    size = prep.leaf_count + len(ctx.chosen)
    for p in prep.fed.paths:
        if p.leaf_positions:
            continue
        if p.left in st or p.right in st:
            if p.h > prep.dist[p.left][p.right]:
                size += 1
        else:
            size += counts[p.index]
    return size


def apply_guess(prep: PreparedInstance, ctx: GuessContext) -> AppliedGuess:
    """Graft a guess onto a copy of the fixpoint graph.

    Chosen branch vertices get a stand-in leaf.  An unleafed segment with
    a chosen endpoint and a strictly shorter outside route gets one more
    pinned leaf: at the midpoint when both ends are chosen, otherwise at
    the deepest position the chosen end can still cover.
    """
    st = set(ctx.chosen)
    counts = dict(ctx.interior_counts)
    work = prep.work.copy()
    trace: list[TraceEntry] = []
    for v in ctx.chosen:
        leaf = work.attach_leaf(v)
        trace.append(
            TraceEntry("guess-leaf", 0, (), (leaf,), {"leaf": leaf, "support": v})
        )
    classes: list[str] = []
    leafed: list[tuple[int, ...]] = []
    for p in prep.fed.paths:
        h = p.h
        positions = set(p.leaf_positions)
        if p.left in st:
            positions.add(0)
        if p.right in st:
            positions.add(h)
        if not p.leaf_positions and positions:
            d = prep.dist[p.left][p.right]
            if h > d:
                if p.left in st and p.right in st:
                    pos, rule = h // 2, "shortcut"
                elif p.left in st:
                    pos, rule = (h + d) // 2, "margin"
                else:
                    pos, rule = h - (h + d) // 2, "margin"
                support = p.vertices[pos]
                leaf = work.attach_leaf(support)
                trace.append(
                    TraceEntry(
                        rule, 0, (), (leaf,), {"leaf": leaf, "support": support}
                    )
                )
                positions.add(pos)
        if positions:
            classes.append(LEAFED)
        else:
            classes.append(_COUNT_CLASS[counts[p.index]])
        leafed.append(tuple(sorted(positions)))
    return AppliedGuess(ctx, work, trace, tuple(classes), tuple(leafed))


def emit_ilp(prep: PreparedInstance, applied: AppliedGuess) -> tuple[IlpModel, dict]:
    """Build the placement feasibility program for one applied guess.

    Variables, in branching order: route claims for ordered anchor pairs
    across segments, route claims within a segment, short-margin flags,
    route comparison helpers, and last the two placement offsets of every
    single and pair segment.  Placements of leafed segments are constants
    and fold into the rows instead of becoming variables.
    """
    fed = prep.fed
    dist = prep.dist
    classes = applied.classes
    big = 100 * applied.work.m
    active = [i for i, c in enumerate(classes) if c != EMPTY]
    sweep = [i for i, c in enumerate(classes) if c == EMPTY]
    anchors = [(i, r) for i in active for r in (0, 1)]
    model = IlpModel([], [])

    def end_vertex(i: int, r: int) -> int:
        return fed.paths[i].left if r == 0 else fed.paths[i].right

    z_cross = {}
    for a in anchors:
        for b in anchors:
            if a[0] != b[0]:
                z_cross[(a, b)] = model.add_variable(0, 1)
    z_self = {a: model.add_variable(0, 1) for a in anchors}
    margin_ok = {a: model.add_variable(0, 1) for a in anchors}
    helper = {}
    for pair in z_cross:
        if classes[pair[0][0]] != LEAFED or classes[pair[1][0]] != LEAFED:
            helper[pair] = tuple(model.add_variable(0, 1) for _ in range(3))
    fixed: dict[tuple[int, int], int] = {}
    placed: dict[tuple[int, int], int] = {}
    for i in active:
        h = fed.paths[i].h
        if classes[i] == LEAFED:
            fixed[(i, 0)] = applied.leafed[i][0]
            fixed[(i, 1)] = h - applied.leafed[i][-1]
        else:
            placed[(i, 0)] = model.add_variable(0, h)
            placed[(i, 1)] = model.add_variable(0, h)

    def offset(a: tuple[int, int]) -> Expr:
        if a in fixed:
            return [], fixed[a]
        return [(placed[a], 1)], 0

    def neg(expr: Expr) -> Expr:
        terms, const = expr
        return [(v, -c) for v, c in terms], -const

    def route_gap(gate: int, plus: list[Expr], minus: list[Expr]) -> None:
        """Add sum(plus) - sum(minus) <= big * (1 - gate), folding constants."""
        terms: list[tuple[int, int]] = []
        const = 0
        for t, c in plus:
            terms.extend(t)
            const += c
        for t, c in minus:
            terms.extend((v, -k) for v, k in t)
            const -= c
        if terms:
            model.add_constraint(terms + [(gate, big)], "<=", big - const)
        elif const > 0:
            model.add_constraint([(gate, 1)], "<=", 0)

    # placement ranges and interior spacing per open segment
    for i in active:
        if classes[i] == LEAFED:
            continue
        h = fed.paths[i].h
        d = dist[fed.paths[i].left][fed.paths[i].right]
        xl, xr = placed[(i, 0)], placed[(i, 1)]
        model.add_constraint([(xl, 1)], ">=", 1)
        model.add_constraint([(xr, 1)], ">=", 1)
        if classes[i] == SINGLE:
            model.add_constraint([(xl, 1), (xr, 1)], "<=", h)
            model.add_constraint([(xl, 1), (xr, 1)], ">=", h)
        else:
            model.add_constraint([(xl, 1), (xr, 1)], "<=", h - 1)
            model.add_constraint([(xl, -2), (xr, -2)], "<=", d - h)

    # an ordered cross pair may claim its through route only if that route
    # is no longer than any of the three detours around a segment end
    for (a, b), gate in z_cross.items():
        ia, ra = a
        ib, rb = b
        ha, hb = fed.paths[ia].h, fed.paths[ib].h
        va, wa = end_vertex(ia, ra), end_vertex(ia, 1 - ra)
        vb, wb = end_vertex(ib, rb), end_vertex(ib, 1 - rb)
        if (a, b) in helper:
            through = [offset(a), offset(b), ([], dist[va][vb])]
            detours = (
                [offset(a), neg(offset(b)), ([], dist[va][wb] + hb)],
                [neg(offset(a)), offset(b), ([], dist[wa][vb] + ha)],
                [neg(offset(a)), neg(offset(b)), ([], dist[wa][wb] + ha + hb)],
            )
            for flag, detour in zip(helper[(a, b)], detours):
                route_gap(flag, through, detour)
            f1, f2, f3 = helper[(a, b)]
            model.add_constraint([(f1, 1), (f2, 1), (f3, 1), (gate, -3)], ">=", 0)
        else:
            xa, xb = fixed[a], fixed[b]
            length = xa + dist[va][vb] + xb
            alts = (
                xa + dist[va][wb] + hb - xb,
                ha - xa + dist[wa][vb] + xb,
                ha - xa + dist[wa][wb] + hb - xb,
            )
            if length > min(alts):
                model.add_constraint([(gate, 1)], "<=", 0)

    # within one segment, the outside route between the two placements may
    # be claimed only if it is no longer than the inside stretch
    for a, gate in z_self.items():
        i, r = a
        h = fed.paths[i].h
        d = dist[fed.paths[i].left][fed.paths[i].right]
        other = (i, 1 - r)
        if a in fixed:
            through = fixed[a] + d + fixed[other]
            inside = h - fixed[a] - fixed[other]
            if through > inside:
                model.add_constraint([(gate, 1)], "<=", 0)
        else:
            xa, xo = placed[a], placed[other]
            model.add_constraint([(xa, 2), (xo, 2), (gate, big)], "<=", big + h - d)

    def ordered_pairs():
        for (a, b), gate in z_cross.items():
            yield a, b, gate
        for a, gate in z_self.items():
            yield a, (a[0], 1 - a[1]), gate

    # every segment without solution vertices must lie on a claimed route
    for i in sweep:
        h = fed.paths[i].h
        if h < 2:
            continue
        left, right = fed.paths[i].left, fed.paths[i].right
        terms = []
        for a, b, gate in ordered_pairs():
            va, vb = end_vertex(*a), end_vertex(*b)
            if dist[va][left] + h + dist[right][vb] == dist[va][vb]:
                terms.append((gate, 1))
        model.add_constraint(terms, ">=", 1)

    # every unchosen open branch vertex must lie on a claimed route
    chosen = set(applied.ctx.chosen)
    for v in prep.open_branch:
        if v in chosen:
            continue
        terms = []
        for a, b, gate in ordered_pairs():
            va, vb = end_vertex(*a), end_vertex(*b)
            if dist[va][v] + dist[v][vb] == dist[va][vb]:
                terms.append((gate, 1))
        model.add_constraint(terms, ">=", 1)

    # a placement deeper than one step from its segment end needs a claimed
    # route leaving through that end
    for a in anchors:
        flag = margin_ok[a]
        if a in fixed:
            if fixed[a] > 1:
                model.add_constraint([(flag, 1)], "<=", 0)
        else:
            model.add_constraint([(placed[a], 1), (flag, big)], "<=", big + 1)
        terms = [(flag, 1)]
        terms.extend((gate, 1) for (p, _q), gate in z_cross.items() if p == a)
        terms.append((z_self[a], 1))
        model.add_constraint(terms, ">=", 1)

    meta = {
        "active": tuple(active),
        "fixed": dict(fixed),
        "placed": dict(placed),
        "z_cross": dict(z_cross),
        "z_self": dict(z_self),
    }
    return model, meta


def reconstruct(
    prep: PreparedInstance,
    applied: AppliedGuess,
    assignment: dict[int, int],
    meta: dict,
) -> tuple[int, ...]:
    """Resolve a feasible assignment into concrete solution vertices."""
    classes = applied.classes

    def value(key: tuple[int, int]) -> int:
        if key in meta["fixed"]:
            return meta["fixed"][key]
        return assignment[meta["placed"][key]]

    solution = {v for v in applied.work.labels() if applied.work.degree(v) == 1}
    for i in meta["active"]:
        if classes[i] == LEAFED:
            continue
        path = prep.fed.paths[i]
        lo = value((i, 0))
        hi = path.h - value((i, 1))
        if classes[i] == SINGLE:
            assert lo == hi
            solution.add(path.vertices[lo])
        else:
            assert lo < hi
            solution.update((path.vertices[lo], path.vertices[hi]))
    assert len(solution) == candidate_size(prep, applied.ctx)
    return tuple(sorted(solution))


def _structurally_impossible(prep: PreparedInstance, applied: AppliedGuess) -> bool:
    for i, cls in enumerate(applied.classes):
        h = prep.fed.paths[i].h
        if cls == SINGLE and h < 2:
            return True
        if cls == PAIR and h < 3:
            return True
    return False


def _effective_items(prep: PreparedInstance) -> list[tuple[int, int, GuessContext]]:
    """Deduplicated guess list, sorted by candidate size then guess order."""
    snapshot = tuple(p.leaf_positions for p in prep.fed.paths)
    items: list[tuple[int, int, GuessContext]] = []
    seq = 0
    masks = sorted(
        range(1 << len(prep.open_branch)), key=lambda m: (bin(m).count("1"), m)
    )
    for mask in masks:
        chosen = tuple(v for b, v in enumerate(prep.open_branch) if mask >> b & 1)
        st = set(chosen)
        free = [
            i
            for i in prep.empty_segments
            if prep.fed.paths[i].left not in st
            and prep.fed.paths[i].right not in st
        ]
        for assign in sorted(
            itertools.product((0, 1, 2), repeat=len(free)),
            key=lambda t: (sum(t), t),
        ):
            ctx = GuessContext(chosen, tuple(zip(free, assign)), snapshot)
            items.append((candidate_size(prep, ctx), seq, ctx))
            seq += 1
    items.sort(key=lambda t: (t[0], t[1]))
    return items


def _process_guess(
    prep: PreparedInstance, ctx: GuessContext, node_budget: int | None
) -> tuple[str, int, tuple[int, ...] | None]:
    applied = apply_guess(prep, ctx)
    if _structurally_impossible(prep, applied):
        return "infeasible", 0, None
    model, meta = emit_ilp(prep, applied)
    res = solve_ilp(model, node_budget=node_budget)
    if res.status == BUDGET_EXHAUSTED:
        return "exhausted", res.nodes, None
    if res.status == INFEASIBLE:
        return "infeasible", res.nodes, None
    assert res.assignment is not None
    solution = reconstruct(prep, applied, res.assignment, meta)
    graph, labels = applied.work.to_graph()
    index = {lab: j for j, lab in enumerate(labels)}
    assert is_geodetic(graph, [index[v] for v in solution])
    witness = lift_witness(applied.trace, solution)
    return "feasible", res.nodes, witness


def _solve_guesses(
    prep: PreparedInstance, threads: int, node_budget: int | None
) -> tuple[str, int | None, tuple[int, ...] | None, int | None, dict]:
    items = _effective_items(prep)
    best: int | None = None
    best_witness: tuple[int, ...] | None = None
    min_exhausted: int | None = None
    nodes_total = 0
    processed = 0

    def absorb(size: int, outcome: tuple[str, int, tuple[int, ...] | None]) -> bool:
        nonlocal best, best_witness, min_exhausted, nodes_total, processed
        kind, nodes, witness = outcome
        processed += 1
        nodes_total += nodes
        if kind == "exhausted":
            min_exhausted = (
                size if min_exhausted is None else min(min_exhausted, size)
            )
        elif kind == "feasible":
            best, best_witness = size, witness
            return True
        return False

    if threads <= 1:
        for size, _seq, ctx in items:
            if absorb(size, _process_guess(prep, ctx, node_budget)):
                break
    else:
        # chunked so the outcome never depends on scheduling: a chunk is
        # fully evaluated, then absorbed in guess order
        chunk = max(4, 2 * threads)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            done = False
            for start in range(0, len(items), chunk):
                block = items[start : start + chunk]
                outcomes = list(
                    pool.map(
                        lambda it: _process_guess(prep, it[2], node_budget), block
                    )
                )
                for (size, _seq, _ctx), outcome in zip(block, outcomes):
                    if absorb(size, outcome):
                        done = True
                        break
                if done:
                    break
    if best is None and min_exhausted is None:
        raise AssertionError("guess space exhausted without a feasible candidate")
    status = OPTIMAL
    if best is None or (min_exhausted is not None and min_exhausted < best):
        status = UNKNOWN
    stats = {
        "guesses_effective": len(items),
        "guesses_processed": processed,
        "ilp_nodes": nodes_total,
    }
    return status, best, best_witness, min_exhausted, stats


def solve_fpt(
    g: Graph,
    k: int | None = None,
    *,
    threads: int = 1,
    node_budget: int | None = None,
) -> SolveResult:
    """Minimum geodetic set of a connected graph, with a verified witness.

    ``k`` only affects the reported yes/no answer.  ``node_budget`` caps
    the search effort per guess; when it bites, the status degrades to
    unknown instead of risking a wrong optimum.
    """
    if g.n == 0:
        raise GraphError("empty graph has no geodetic set")
    if not is_connected(g):
        raise DisconnectedError("solver requires a connected graph")
    stats: dict = {"fen": feedback_edge_number(g)}
    if g.n == 1:
        return SolveResult(
            OPTIMAL, 1, (0,), None if k is None else k >= 1, "single", stats
        )
    red = reduce_to_fixpoint(g)
    stats["k_decrease"] = red.k_decrease
    stats["trace_length"] = len(red.trace)
    lower: int | None = None
    if red.decomposition is None:
        if red.graph.feedback_edge_number() == 0:
            algorithm = "tree"
            size_r, witness_r = solve_tree(red.graph)
        else:
            algorithm = "cycle"
            size_r, witness_r = solve_fen1_optimum(red.graph)
        status = OPTIMAL
    else:
        algorithm = "guess-ilp"
        prep = prepare(red.graph, red.decomposition)
        status, size_r, witness_r, lower, gstats = _solve_guesses(
            prep, threads, node_budget
        )
        stats.update(gstats)
    if size_r is None:
        answer = None
        if k is not None and lower is not None and lower + red.k_decrease > k:
            answer = False
        return SolveResult(UNKNOWN, None, None, answer, algorithm, stats)
    witness = lift_witness(red.trace, witness_r)
    optimum = size_r + red.k_decrease
    assert len(witness) == optimum
    assert is_geodetic(g, witness)
    answer: bool | None = None
    if k is not None:
        if optimum <= k:
            answer = True
        elif status == OPTIMAL:
            answer = False
    return SolveResult(status, optimum, witness, answer, algorithm, stats)
