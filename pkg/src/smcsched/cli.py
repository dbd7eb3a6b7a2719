"""Command-line interface: ``smc solve | validate | bound | gantt | bench``.

Exit codes: 0 success, 1 invalid schedule, 2 bad input or inapplicable
strategy, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .bench import format_rows, load_config, run_bench
from .core import InputError, ResourceError, active_bipartite_check, is_basic, validate_schedule
from .dispatch import STRATEGIES, bound_report, solve
from .exact import DEFAULT_NODE_BUDGET
from .formats import format_schedule, parse_instance, parse_schedule
from .gantt import gantt_svg, gantt_text
from .graph import DEFAULT_CAP_M

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "SMC_BUDGET_NODES"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def cmd_solve(args) -> int:
    instance = parse_instance(_read(args.instance))
    result = solve(instance, args.strategy, args.budget_nodes, args.cap_m)
    _write(args.output, format_schedule(instance, result.schedule))
    # summary lines are comments, so stdout stays a loadable schedule file
    print(f"# strategy {result.strategy}")
    print(f"# makespan {result.makespan}")
    print(f"# lower-bound {result.lower_bound}")
    print(f"# status {result.status}")
    if result.ratio_ceiling is not None and result.status != "proven-optimal":
        print(f"# ratio-ceiling {result.ratio_ceiling:.4f}")
    return EXIT_OK


def cmd_validate(args) -> int:
    instance = parse_instance(_read(args.instance))
    schedule = parse_schedule(_read(args.schedule), instance)
    report = validate_schedule(instance, schedule)
    if not report.valid:
        print("invalid")
        for v in report.violations:
            print(f"{v.kind} jobs {v.jobs[0]} {v.jobs[1]} interval ({v.interval[0]}, {v.interval[1]})")
        return EXIT_INVALID
    missing = instance.n - len(schedule)
    print("valid")
    if missing:
        print(f"unscheduled-jobs {missing}")
    print(f"basic {'yes' if is_basic(instance, schedule) else 'no'}")
    print(f"active-bipartite {'yes' if active_bipartite_check(instance, schedule) else 'no'}")
    return EXIT_OK


def cmd_bound(args) -> int:
    instance = parse_instance(_read(args.instance))
    report = bound_report(instance, args.budget_nodes, args.cap_m)
    for b in report.lower:
        print(f"lower {b.value} {b.source}")
    for b in report.upper:
        print(f"upper {b.value} {b.source}")
    print(f"best-lower {report.best_lower}")
    if report.best_upper is not None:
        print(f"best-upper {report.best_upper}")
    return EXIT_OK


def cmd_gantt(args) -> int:
    instance = parse_instance(_read(args.instance))
    schedule = parse_schedule(_read(args.schedule), instance)
    render = gantt_svg if args.format == "svg" else gantt_text
    _write(args.output, render(instance, schedule))
    return EXIT_OK


def cmd_bench(args) -> int:
    config = load_config(_read(args.config))
    if args.seed is not None:
        config["seed"] = args.seed
    _write(args.output, format_rows(run_bench(config), args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smc", description="Scheduling with machine conflicts.")
    sub = parser.add_subparsers(dest="command", required=True)

    def limits(p):
        p.add_argument("--budget-nodes", type=int, default=None, help=f"search node budget (env {BUDGET_ENV})")
        p.add_argument("--cap-m", type=int, default=DEFAULT_CAP_M, help="largest graph for exhaustive set search")

    p = sub.add_parser("solve", help="compute a schedule")
    p.add_argument("instance")
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("-o", "--output", help="schedule file (default: standard output)")
    limits(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="check a schedule against an instance")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bound", help="print lower and upper bounds")
    p.add_argument("instance")
    limits(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("gantt", help="render a schedule")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("-o", "--output", help="output file (default: standard output)")
    p.add_argument("--format", choices=("text", "svg"), default="text")
    p.set_defaults(func=cmd_gantt)

    p = sub.add_parser("bench", help="compare strategies with the exact oracle")
    p.add_argument("config", help="JSON bench configuration")
    p.add_argument("-o", "--output", help="table file (default: standard output)")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "budget_nodes", 0) is None:
            args.budget_nodes = _default_budget()
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
