"""Gantt charts: one row per machine, one column per time unit."""

from __future__ import annotations

from .core import InputError, Instance, Schedule, makespan

BLOCK, PROCESS, IDLE = "#", "=", "."
CELL = 16
LABEL_WIDTH = 40


def _rows(instance: Instance, schedule: Schedule) -> list:
    for e in schedule.entries:
        if int(e.start) != e.start:
            raise InputError(f"job {e.job} starts at non-integral time {e.start}")
    width = int(makespan(instance, schedule))
    rows = [[IDLE] * width for _ in range(instance.m)]
    for e in schedule.entries:
        job, s = instance.jobs[e.job], int(e.start)
        cells = BLOCK * job.b1 + PROCESS * job.p + BLOCK * job.b2
        rows[e.machine][s : s + job.q] = cells
    return ["".join(r) for r in rows]


def gantt_text(instance: Instance, schedule: Schedule) -> str:
    """``#`` marks blocking, ``=`` processing and ``.`` idle time."""
    label = len(str(max(instance.m - 1, 0)))
    return "".join(f"{i:>{label}} {row}\n" for i, row in enumerate(_rows(instance, schedule)))


def gantt_svg(instance: Instance, schedule: Schedule) -> str:
    rows = _rows(instance, schedule)
    width = LABEL_WIDTH + CELL * (len(rows[0]) if rows else 0)
    height = CELL * len(rows)
    colours = {BLOCK: "#555555", PROCESS: "#9ecae1"}
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="{CELL - 4}">'
    ]
    for i, row in enumerate(rows):
        y = i * CELL
        out.append(f'<text x="2" y="{y + CELL - 4}">m{i}</text>')
        # merge runs of equal cells into one rectangle
        t = 0
        while t < len(row):
            end = t
            while end < len(row) and row[end] == row[t]:
                end += 1
            if row[t] in colours:
                out.append(
                    f'<rect x="{LABEL_WIDTH + CELL * t}" y="{y + 1}" width="{CELL * (end - t)}" '
                    f'height="{CELL - 2}" fill="{colours[row[t]]}"/>'
                )
            t = end
    for e in schedule.entries:
        q = instance.jobs[e.job].q
        out.append(
            f'<rect x="{LABEL_WIDTH + CELL * int(e.start)}" y="{e.machine * CELL + 1}" width="{CELL * q}" '
            f'height="{CELL - 2}" fill="none" stroke="black"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
