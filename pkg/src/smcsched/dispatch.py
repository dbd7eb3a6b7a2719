"""Strategy selection, lower bounds and optimality status for a whole instance."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    PROP_I,
    PROP_II,
    InputError,
    Instance,
    ResourceError,
    Schedule,
    classify_props,
    makespan,
    validate_schedule,
)
from .exact import DEFAULT_NODE_BUDGET, SearchConfig, solve_exact
from .graph import DEFAULT_CAP_M, greedy_1_is, is_bipartite, max_c_is_exact
from .longblock import (
    Bound,
    BoundReport,
    longblock_bounds,
    lpt_assignment,
    schedule_evenly_on_is,
    schedule_lpt_on_is,
    small_exact_on_is,
)
from .shortblock import PatternParams, is_short_identical, normalize_orientation, pattern_width, solve_patterns
from .unit import solve_complete, solve_unit_bipartite

STRATEGIES = ("auto", "exact", "longblock", "patterns", "unit-bipartite", "unit-complete")

PROVEN_OPTIMAL = "proven-optimal"
BOUNDED_RATIO = "bounded-ratio"


@dataclass(frozen=True)
class SolveResult:
    schedule: Schedule
    makespan: int
    strategy: str
    lower_bound: int
    status: str
    ratio_ceiling: Optional[float] = None


def applicable(instance: Instance, strategy: str) -> Optional[str]:
    """None if the strategy can run on the instance, otherwise the reason it cannot."""
    if strategy == "unit-complete":
        if not instance.is_unit():
            return "unit-complete needs unit jobs"
        if not instance.graph.is_complete():
            return "unit-complete needs a complete conflict graph"
    elif strategy == "unit-bipartite":
        if not instance.is_unit():
            return "unit-bipartite needs unit jobs"
        if not is_bipartite(instance.graph):
            return "unit-bipartite needs a bipartite conflict graph"
    elif strategy == "longblock":
        if not classify_props(instance):
            return "longblock needs every job to have long blocking times"
    elif strategy == "patterns":
        if not is_short_identical(instance):
            return "patterns needs identical jobs with 0 < blocking times <= processing time"
    elif strategy not in ("exact", "auto"):
        return f"unknown strategy {strategy!r}"
    return None


def choose_strategy(instance: Instance) -> str:
    for name in ("unit-complete", "unit-bipartite", "longblock", "patterns"):
        if applicable(instance, name) is None:
            return name
    return "exact"


def short_lower_bound(instance: Instance, cap_m: int = DEFAULT_CAP_M) -> Bound:
    """``q * ceil(n / alpha_{k+1})`` for identical short-blocking jobs.

    At most ``beta_{k+1}`` jobs of any schedule start within one system time,
    and ``beta_{k+1}`` never exceeds the largest induced (k+1)-colourable subgraph.
    """
    work, _ = normalize_orientation(instance)
    params = PatternParams.from_job(work.jobs[0])
    alpha = max_c_is_exact(instance.graph, params.k + 1, cap_m).size
    return Bound(params.q * math.ceil(instance.n / alpha), f"blocking capacity at {params.k + 1} time points")


def lower_bounds(instance: Instance, cap_m: int = DEFAULT_CAP_M) -> list:
    """Every lower bound that applies to the instance."""
    if instance.n == 0:
        return [Bound(0, "empty instance")]
    bounds = [
        Bound(max(j.q for j in instance.jobs), "longest system time"),
        Bound(math.ceil(instance.total_q() / instance.m), "total system time over all machines"),
    ]
    if instance.is_unit() and instance.graph.is_complete():
        bounds.append(Bound(solve_complete(instance.m, instance.n)[0], "closed form for cliques"))
    if classify_props(instance):
        alpha1 = max_c_is_exact(instance.graph, 1, cap_m).size
        bounds.extend(b for b in longblock_bounds(instance, alpha1).lower if b.source != "longest system time")
    if is_short_identical(instance):
        bounds.append(short_lower_bound(instance, cap_m))
    return bounds


def _longblock(instance: Instance, cap_m: int):
    machines = max_c_is_exact(instance.graph, 1, cap_m).classes[0]
    props = classify_props(instance)
    if props & {PROP_I, PROP_II}:
        return schedule_evenly_on_is(instance, machines), PROVEN_OPTIMAL, None
    try:
        return small_exact_on_is(instance, machines), PROVEN_OPTIMAL, None
    except ResourceError:
        # gamma = 1 on a maximum independent set
        return schedule_lpt_on_is(instance, machines), BOUNDED_RATIO, 2 - 1 / instance.m


def _patterns(instance: Instance, cap_m: int):
    work, _ = normalize_orientation(instance)
    params = PatternParams.from_job(work.jobs[0])
    cis = max_c_is_exact(instance.graph, pattern_width(params), cap_m)
    return solve_patterns(instance, cis), BOUNDED_RATIO, params.ratio_ceiling()


def solve(
    instance: Instance,
    strategy: str = "auto",
    node_budget: int = DEFAULT_NODE_BUDGET,
    cap_m: int = DEFAULT_CAP_M,
) -> SolveResult:
    """Run one strategy, re-validate its output, and attach a lower bound and status.

    Raises InputError when the strategy does not apply and ResourceError when
    an exhaustive step exceeds its budget.
    """
    if strategy not in STRATEGIES:
        raise InputError(f"unknown strategy {strategy!r}")
    if strategy == "auto":
        strategy = choose_strategy(instance)
    reason = applicable(instance, strategy)
    if reason:
        raise InputError(reason)
    ceiling = None
    if instance.n == 0:
        schedule, status = Schedule(), PROVEN_OPTIMAL
    elif strategy == "unit-complete":
        schedule, status = solve_complete(instance.m, instance.n)[1], PROVEN_OPTIMAL
    elif strategy == "unit-bipartite":
        schedule, status = solve_unit_bipartite(instance.graph, instance.n)[1], PROVEN_OPTIMAL
    elif strategy == "longblock":
        schedule, status, ceiling = _longblock(instance, cap_m)
    elif strategy == "patterns":
        schedule, status, ceiling = _patterns(instance, cap_m)
    else:
        schedule, _ = solve_exact(instance, SearchConfig(node_budget=node_budget))
        status = PROVEN_OPTIMAL
    report = validate_schedule(instance, schedule)
    if not report.valid:
        raise AssertionError(f"{strategy} produced an infeasible schedule: {report.violations[:3]}")
    value = makespan(instance, schedule)
    lower = max(b.value for b in lower_bounds(instance, cap_m))
    if status == PROVEN_OPTIMAL:
        lower = value
        ceiling = 1.0
    elif lower == value:
        status = PROVEN_OPTIMAL
    return SolveResult(schedule, value, strategy, lower, status, ceiling)


def bound_report(instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET, cap_m: int = DEFAULT_CAP_M) -> BoundReport:
    """All lower bounds plus upper bounds from constructive strategies (never the exhaustive one)."""
    lower = tuple(lower_bounds(instance, cap_m))
    upper = []
    if instance.n == 0:
        upper.append(Bound(0, "empty instance"))
    else:
        strategy = choose_strategy(instance)
        if strategy != "exact":
            result = solve(instance, strategy, node_budget, cap_m)
            upper.append(Bound(result.makespan, f"{strategy} schedule"))
        machines = greedy_1_is(instance.graph).classes[0]
        loads = lpt_assignment(instance, machines).loads
        upper.append(Bound(max(loads.values()), "LPT on a greedy independent set"))
    return BoundReport(lower, tuple(upper))
