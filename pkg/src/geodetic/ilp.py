"""Small exact integer linear feasibility solver.

Pure-integer depth-first branch and bound with interval propagation; no
floating point anywhere, so answers on the tiny models built here are exact
by construction.  Branching follows variable id order (callers give decision
binaries the smallest ids) and explores the lower half of a domain first,
which makes runs deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
BUDGET_EXHAUSTED = "budget-exhausted"


class IlpError(ValueError):
    """Malformed model or query."""


@dataclass(frozen=True)
class Variable:
    id: int
    lo: int
    hi: int

    @property
    def binary(self) -> bool:
        return self.lo == 0 and self.hi == 1


@dataclass(frozen=True)
class Constraint:
    """Linear constraint: sum of coeff * var  (sense)  rhs."""

    coeffs: tuple[tuple[int, int], ...]  # (var id, coefficient)
    sense: str  # "<=" or ">="
    rhs: int


@dataclass
class IlpModel:
    variables: list[Variable]
    constraints: list[Constraint]
    objective: tuple[tuple[int, int], ...] | None = None

    def add_variable(self, lo: int, hi: int) -> int:
        if lo > hi:
            raise IlpError(f"empty domain [{lo}, {hi}]")
        vid = len(self.variables)
        self.variables.append(Variable(vid, lo, hi))
        return vid

    def add_constraint(
        self, coeffs: Sequence[tuple[int, int]], sense: str, rhs: int
    ) -> None:
        if sense not in ("<=", ">="):
            raise IlpError(f"unknown sense {sense!r}")
        for vid, _ in coeffs:
            if not 0 <= vid < len(self.variables):
                raise IlpError(f"unknown variable {vid}")
        self.constraints.append(Constraint(tuple(coeffs), sense, rhs))


@dataclass(frozen=True)
class IlpResult:
    status: str
    assignment: dict[int, int] | None
    nodes: int
    objective_value: int | None = None


def _normalized(model: IlpModel) -> list[tuple[tuple[tuple[int, int], ...], int]]:
    """All constraints as (coeffs, rhs) in <= form, duplicate terms merged."""
    rows = []
    for con in model.constraints:
        merged: dict[int, int] = {}
        for vid, c in con.coeffs:
            merged[vid] = merged.get(vid, 0) + c
        items = tuple(sorted((v, c) for v, c in merged.items() if c != 0))
        if con.sense == "<=":
            rows.append((items, con.rhs))
        else:
            rows.append((tuple((v, -c) for v, c in items), -con.rhs))
    return rows


def solve(model: IlpModel, node_budget: int | None = None) -> IlpResult:
    """Find any integral assignment satisfying every constraint."""
    rows = _normalized(model)
    ids = [v.id for v in model.variables]
    lo = {v.id: v.lo for v in model.variables}
    hi = {v.id: v.hi for v in model.variables}
    for v in model.variables:
        if v.lo > v.hi:
            raise IlpError(f"variable {v.id} has empty domain")

    trail: list[tuple[int, int, int]] = []  # (var, 0=lo/1=hi, old value)

    def set_lo(v: int, val: int) -> None:
        trail.append((v, 0, lo[v]))
        lo[v] = val

    def set_hi(v: int, val: int) -> None:
        trail.append((v, 1, hi[v]))
        hi[v] = val

    def undo(mark: int) -> None:
        while len(trail) > mark:
            v, which, old = trail.pop()
            if which == 0:
                lo[v] = old
            else:
                hi[v] = old

    def propagate() -> bool:
        changed = True
        while changed:
            changed = False
            for coeffs, rhs in rows:
                min_act = 0
                for v, c in coeffs:
                    min_act += c * lo[v] if c > 0 else c * hi[v]
                if min_act > rhs:
                    return False
                for v, c in coeffs:
                    if lo[v] == hi[v]:
                        continue
                    contrib = c * lo[v] if c > 0 else c * hi[v]
                    allowed = rhs - (min_act - contrib)
                    if c > 0:
                        bound = allowed // c
                        if bound < hi[v]:
                            if bound < lo[v]:
                                return False
                            set_hi(v, bound)
                            changed = True
                    else:
                        bound = -(allowed // (-c))
                        if bound > lo[v]:
                            if bound > hi[v]:
                                return False
                            set_lo(v, bound)
                            changed = True
        return True

    def next_var() -> tuple[int, bool] | None:
        """Unfixed variable from the first row not yet settled for every
        completion, with the half to try first; None means all rows are."""
        for coeffs, rhs in rows:
            max_act = 0
            for v, c in coeffs:
                max_act += c * hi[v] if c > 0 else c * lo[v]
            if max_act <= rhs:
                continue
            for v, c in coeffs:
                if lo[v] < hi[v]:
                    return v, c < 0
        return None

    nodes = 0
    if not propagate():
        return IlpResult(INFEASIBLE, None, nodes)
    stack: list[list] = []  # frames [var, tried, trail mark, upper first]
    state = "descend"
    while True:
        if state == "descend":
            if node_budget is not None and nodes >= node_budget:
                return IlpResult(BUDGET_EXHAUSTED, None, nodes)
            nodes += 1
            pick = next_var()
            if pick is None:
                assignment = {i: lo[i] for i in ids}
                for coeffs, rhs in rows:
                    assert sum(c * assignment[i] for i, c in coeffs) <= rhs
                return IlpResult(FEASIBLE, assignment, nodes)
            stack.append([pick[0], 0, len(trail), pick[1]])
            state = "branch"
        else:  # branch
            if not stack:
                return IlpResult(INFEASIBLE, None, nodes)
            frame = stack[-1]
            v, tried, mark, upper_first = frame
            undo(mark)
            mid = (lo[v] + hi[v]) // 2
            if tried == 2:
                stack.pop()
                continue
            frame[1] = tried + 1
            take_upper = upper_first == (tried == 0)
            if take_upper:
                set_lo(v, mid + 1)
            else:
                set_hi(v, mid)
            state = "descend" if propagate() else "branch"


def minimize(model: IlpModel, node_budget: int | None = None) -> IlpResult:
    """Minimize the model's objective by repeated feasibility with cuts."""
    if model.objective is None:
        raise IlpError("model has no objective")
    total_nodes = 0
    best: IlpResult | None = None
    cuts: list[Constraint] = []
    while True:
        probe = IlpModel(model.variables, model.constraints + cuts)
        remaining = None if node_budget is None else node_budget - total_nodes
        result = solve(probe, node_budget=remaining)
        total_nodes += result.nodes
        if result.status == BUDGET_EXHAUSTED:
            return IlpResult(BUDGET_EXHAUSTED, None, total_nodes)
        if result.status == INFEASIBLE:
            break
        assert result.assignment is not None
        value = sum(c * result.assignment[v] for v, c in model.objective)
        best = IlpResult(FEASIBLE, result.assignment, total_nodes, value)
        cuts = [Constraint(model.objective, "<=", value - 1)]
    if best is None:
        return IlpResult(INFEASIBLE, None, total_nodes)
    return IlpResult(best.status, best.assignment, total_nodes, best.objective_value)


def dump_model(model: IlpModel) -> str:
    """Readable listing of variables and constraints, for debugging."""
    out = []
    for v in model.variables:
        out.append(f"var x{v.id} in [{v.lo}, {v.hi}]")
    for con in model.constraints:
        terms = " + ".join(f"{c}*x{v}" for v, c in con.coeffs) or "0"
        out.append(f"con {terms} {con.sense} {con.rhs}")
    if model.objective is not None:
        terms = " + ".join(f"{c}*x{v}" for v, c in model.objective)
        out.append(f"min {terms}")
    return "\n".join(out) + "\n"
