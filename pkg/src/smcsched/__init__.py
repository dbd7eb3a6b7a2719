"""Makespan scheduling on machines whose blocking times conflict along a graph."""

from .core import (
    BLOCKING_OVERLAP,
    MACHINE_OVERLAP,
    PROP_I,
    PROP_II,
    PROP_III,
    UNIT_JOB,
    ConflictGraph,
    Entry,
    InputError,
    Instance,
    Job,
    ParameterError,
    ResourceError,
    Schedule,
    SchedulingError,
    SizeLimitError,
    ValidationReport,
    Violation,
    active_bipartite_check,
    classify_props,
    is_basic,
    makespan,
    round_to_integral,
    validate_schedule,
)
from .dispatch import SolveResult, bound_report, choose_strategy, lower_bounds, solve
from .exact import SearchConfig, exact_makespan, optimal_makespan_decision, solve_exact
from .formats import format_instance, format_schedule, instance_digest, parse_instance, parse_schedule
from .graph import (
    CIS,
    bipartition,
    greedy_1_is,
    greedy_c_is,
    is_bipartite,
    konig_max_is,
    max_c_is_exact,
    max_matching_bipartite,
)
from .longblock import (
    Bound,
    BoundReport,
    ISAssignment,
    longblock_bounds,
    lpt_assignment,
    partition_min_makespan,
    schedule_evenly_on_is,
    schedule_lpt_on_is,
    small_exact_on_is,
)
from .shortblock import (
    PatternParams,
    beta_c,
    build_c_pattern,
    lower_bound_short,
    normalize_orientation,
    pattern_width,
    refined_lower_bound,
    solve_patterns,
)
from .unit import (
    Colorings,
    StarForest,
    apply_alternating_path,
    assemble_ab_schedule,
    build_star_forest,
    capacity,
    find_alternating_path,
    solve_complete,
    solve_unit_bipartite,
    star_optimum,
)

__version__ = "0.1.0"
