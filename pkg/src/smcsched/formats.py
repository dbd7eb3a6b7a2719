"""Line-based text formats for instances and schedules.

Instance file::

    smc 1
    machines 3
    edge 0 1
    edge 1 2
    jobs identical 4 1 1 1

Jobs may instead be listed one per line as ``job <b1> <p> <b2>``.  ``#``
starts a comment.  Schedule files carry the digest of the canonical
instance text so a schedule cannot be checked against the wrong instance.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

from .core import ConflictGraph, Entry, InputError, Instance, Job, Schedule, Time, makespan

INSTANCE_HEADER = "smc 1"
SCHEDULE_HEADER = "smc-schedule 1"


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"line {lineno}: {what} must be an integer, got {token!r}") from None


def parse_instance(text: str) -> Instance:
    lines = list(_tokens(text))
    if not lines or lines[0][1] != INSTANCE_HEADER.split():
        raise InputError(f"instance must start with '{INSTANCE_HEADER}'")
    m = None
    edges = []
    seen = set()
    jobs = []
    identical = False
    for lineno, words in lines[1:]:
        key, args = words[0], words[1:]
        if key == "machines":
            if m is not None or len(args) != 1:
                raise InputError(f"line {lineno}: expected a single 'machines <m>' line")
            m = _int(args[0], lineno, "machine count")
            if m < 0:
                raise InputError(f"line {lineno}: machine count must be non-negative")
        elif key == "edge":
            if m is None:
                raise InputError(f"line {lineno}: 'machines' must precede edges")
            if len(args) != 2:
                raise InputError(f"line {lineno}: expected 'edge <u> <v>'")
            u, v = (_int(a, lineno, "machine id") for a in args)
            if not (0 <= u < m and 0 <= v < m):
                raise InputError(f"line {lineno}: machine id out of range")
            if u == v:
                raise InputError(f"line {lineno}: self-loop on machine {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise InputError(f"line {lineno}: duplicate edge {u} {v}")
            seen.add(e)
            edges.append(e)
        elif key == "jobs":
            if jobs or identical or len(args) != 5 or args[0] != "identical":
                raise InputError(f"line {lineno}: expected one 'jobs identical <n> <b1> <p> <b2>' line")
            n, b1, p, b2 = (_int(a, lineno, "job field") for a in args[1:])
            if n < 0:
                raise InputError(f"line {lineno}: job count must be non-negative")
            jobs = [Job(b1, p, b2)] * n
            identical = True
        elif key == "job":
            if identical or len(args) != 3:
                raise InputError(f"line {lineno}: expected 'job <b1> <p> <b2>' without a 'jobs identical' line")
            jobs.append(Job(*(_int(a, lineno, "job field") for a in args)))
        else:
            raise InputError(f"line {lineno}: unknown keyword {key!r}")
    if m is None:
        raise InputError("missing 'machines' line")
    return Instance(ConflictGraph.from_edges(m, edges), tuple(jobs))


def format_instance(instance: Instance) -> str:
    """Canonical text: sorted edges, and the compact jobs line for identical jobs."""
    out = [INSTANCE_HEADER, f"machines {instance.m}"]
    out += [f"edge {u} {v}" for u, v in sorted(instance.graph.edges)]
    if instance.jobs and instance.is_identical():
        j = instance.jobs[0]
        out.append(f"jobs identical {instance.n} {j.b1} {j.p} {j.b2}")
    else:
        out += [f"job {j.b1} {j.p} {j.b2}" for j in instance.jobs]
    return "\n".join(out) + "\n"


def instance_digest(instance: Instance) -> str:
    return hashlib.sha256(format_instance(instance).encode()).hexdigest()


def _format_time(t: Time) -> str:
    return str(t)


def _parse_time(token: str, lineno: int) -> Time:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"line {lineno}: bad start time {token!r}") from None
    return int(value) if value.denominator == 1 else value


def format_schedule(instance: Instance, schedule: Schedule) -> str:
    out = [
        SCHEDULE_HEADER,
        f"instance {instance_digest(instance)}",
        f"makespan {_format_time(makespan(instance, schedule))}",
    ]
    out += [f"entry {e.job} {e.machine} {_format_time(e.start)}" for e in schedule.entries]
    return "\n".join(out) + "\n"


class DigestMismatch(InputError):
    """The schedule file was written for a different instance."""


def parse_schedule(text: str, instance: Instance = None) -> Schedule:
    """Read a schedule file; with ``instance`` given, refuse a foreign digest."""
    lines = list(_tokens(text))
    if not lines or lines[0][1] != SCHEDULE_HEADER.split():
        raise InputError(f"schedule must start with '{SCHEDULE_HEADER}'")
    digest = None
    entries = []
    for lineno, words in lines[1:]:
        key, args = words[0], words[1:]
        if key == "instance" and len(args) == 1:
            digest = args[0]
        elif key == "makespan" and len(args) == 1:
            _parse_time(args[0], lineno)
        elif key == "entry" and len(args) == 3:
            job = _int(args[0], lineno, "job id")
            machine = _int(args[1], lineno, "machine id")
            entries.append(Entry(job, machine, _parse_time(args[2], lineno)))
        else:
            raise InputError(f"line {lineno}: unrecognised schedule line")
    if digest is None:
        raise InputError("schedule is missing its 'instance' digest line")
    if instance is not None and digest != instance_digest(instance):
        raise DigestMismatch("schedule was written for a different instance")
    return Schedule(tuple(entries))
