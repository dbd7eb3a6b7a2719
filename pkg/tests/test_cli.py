import json
import subprocess
import sys

import pytest

from smcsched import ConflictGraph, InputError, Instance, Job, Schedule, Entry
from smcsched.cli import main
from smcsched.formats import (
    DigestMismatch,
    format_instance,
    format_schedule,
    instance_digest,
    parse_instance,
    parse_schedule,
)

K2_TEXT = "smc 1\nmachines 2\nedge 0 1\njobs identical 2 1 1 1\n"
P3_PROP = "smc 1\nmachines 3\nedge 0 1\nedge 1 2\njobs identical 5 2 1 2\n"
P3_UNIT = "smc 1\nmachines 3\nedge 0 1\nedge 1 2\njobs identical 4 1 1 1\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def summary(out: str) -> dict:
    return dict(line[2:].split(" ", 1) for line in out.splitlines() if line.startswith("# "))


class TestInstanceFormat:
    def test_parse(self):
        inst = parse_instance("# comment\nsmc 1\nmachines 3  # three\nedge 2 0\njob 1 2 1\njob 2 1 2\n")
        assert inst.m == 3 and inst.graph.edges == {(0, 2)}
        assert inst.jobs == (Job(1, 2, 1), Job(2, 1, 2))

    @pytest.mark.parametrize(
        "text",
        [
            "machines 2\n",
            "smc 1\nedge 0 1\n",
            "smc 1\nmachines 2\nedge 0 1\nedge 1 0\n",
            "smc 1\nmachines 2\nedge 0 2\n",
            "smc 1\nmachines 2\nedge 1 1\n",
            "smc 1\nmachines 2\njob 0 0 0\n",
            "smc 1\nmachines 2\njobs identical 2 1 1 1\njob 1 1 1\n",
            "smc 1\nmachines x\n",
            "smc 1\nmachines 2\nwidget 3\n",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(InputError):
            parse_instance(text)

    def test_round_trip(self, rng):
        for _ in range(30):
            m = rng.randint(1, 6)
            edges = [(u, v) for u in range(m) for v in range(u + 1, m) if rng.random() < 0.4]
            jobs = tuple(Job(rng.randint(0, 3), rng.randint(0, 3), rng.randint(1, 3)) for _ in range(rng.randint(0, 5)))
            inst = Instance(ConflictGraph.from_edges(m, edges), jobs)
            text = format_instance(inst)
            assert parse_instance(text) == inst
            assert format_instance(parse_instance(text)) == text

    def test_digest_ignores_layout(self):
        a = parse_instance("smc 1\nmachines 2\nedge 1 0\njob 1 1 1\njob 1 1 1\n")
        b = parse_instance(K2_TEXT)
        assert instance_digest(a) == instance_digest(b)


class TestScheduleFormat:
    def test_round_trip(self):
        inst = parse_instance(K2_TEXT)
        s = Schedule((Entry(0, 0, 0), Entry(1, 1, 1)))
        text = format_schedule(inst, s)
        assert parse_schedule(text, inst) == s
        assert format_schedule(inst, parse_schedule(text, inst)) == text

    def test_mismatch(self):
        inst = parse_instance(K2_TEXT)
        text = format_schedule(inst, Schedule((Entry(0, 0, 0),)))
        with pytest.raises(DigestMismatch):
            parse_schedule(text, parse_instance(P3_UNIT))

    def test_rejects_garbage(self):
        with pytest.raises(InputError):
            parse_schedule("smc-schedule 1\nentry 0 0 0\n")
        with pytest.raises(InputError):
            parse_schedule("nonsense\n")


class TestSolve:
    def test_k2_auto(self, capsys, files):
        code, out, _ = run(capsys, "solve", files("k2.txt", K2_TEXT))
        assert code == 0
        info = summary(out)
        assert info == {
            "strategy": "unit-complete",
            "makespan": "4",
            "lower-bound": "4",
            "status": "proven-optimal",
        }

    def test_prop_on_p3(self, capsys, files):
        code, out, _ = run(capsys, "solve", files("p.txt", P3_PROP))
        assert code == 0
        info = summary(out)
        assert info["strategy"] == "longblock" and info["makespan"] == "15"
        assert info["status"] == "proven-optimal"

    def test_patterns_bounded(self, capsys, files):
        inst = files("u.txt", "smc 1\nmachines 3\nedge 0 1\nedge 1 2\nedge 0 2\njobs identical 5 1 2 1\n")
        code, out, _ = run(capsys, "solve", inst)
        info = summary(out)
        assert code == 0 and info["strategy"] == "patterns"
        assert int(info["lower-bound"]) <= int(info["makespan"])
        assert info["status"] in ("bounded-ratio", "proven-optimal")

    def test_stdout_is_loadable(self, capsys, files):
        path = files("k2.txt", K2_TEXT)
        _, out, _ = run(capsys, "solve", path)
        assert len(parse_schedule(out, parse_instance(K2_TEXT))) == 2

    def test_exact_budget(self, capsys, files):
        path = files("big.txt", "smc 1\nmachines 8\nedge 0 1\njobs identical 10 1 3 1\n")
        code, _, err = run(capsys, "solve", path, "--strategy", "exact", "--budget-nodes", "100")
        assert code == 3 and "budget" in err

    def test_budget_from_environment(self, capsys, files, monkeypatch):
        monkeypatch.setenv("SMC_BUDGET_NODES", "50")
        path = files("big.txt", "smc 1\nmachines 8\nedge 0 1\njobs identical 10 1 3 1\n")
        code, _, _ = run(capsys, "solve", path, "--strategy", "exact")
        assert code == 3

    def test_inapplicable_strategy(self, capsys, files):
        code, _, err = run(capsys, "solve", files("k2.txt", K2_TEXT), "--strategy", "longblock")
        assert code == 2 and "longblock" in err

    def test_cap_m(self, capsys, files):
        code, _, _ = run(capsys, "solve", files("p.txt", P3_PROP), "--cap-m", "2")
        assert code == 3

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "solve", str(tmp_path / "nope.txt"))
        assert code == 2

    def test_output_file(self, capsys, files, tmp_path):
        out_path = tmp_path / "k2.sched"
        code, out, _ = run(capsys, "solve", files("k2.txt", K2_TEXT), "-o", str(out_path))
        assert code == 0 and out.startswith("# strategy")
        assert out_path.read_text().startswith("smc-schedule 1")


class TestValidate:
    def solved(self, capsys, files, text=K2_TEXT):
        inst = files("i.txt", text)
        run(capsys, "solve", inst, "-o", inst + ".sched")
        return inst, inst + ".sched"

    def test_round_trip(self, capsys, files):
        inst, sched = self.solved(capsys, files)
        code, out, _ = run(capsys, "validate", inst, sched)
        assert code == 0 and out.startswith("valid")

    def test_corrupted(self, capsys, files):
        inst, sched = self.solved(capsys, files)
        text = open(sched).read().replace("entry 1 1 1", "entry 1 1 0")
        code, out, _ = run(capsys, "validate", inst, files("bad.sched", text))
        assert code == 1 and "conflict-blocking-overlap" in out

    def test_other_instance(self, capsys, files):
        _, sched = self.solved(capsys, files)
        code, _, _ = run(capsys, "validate", files("p3.txt", P3_UNIT), sched)
        assert code == 2


class TestBound:
    def test_short_unit_p3(self, capsys, files):
        code, out, _ = run(capsys, "bound", files("p3.txt", P3_UNIT))
        assert code == 0
        assert "best-lower 6" in out and "blocking capacity" in out

    def test_single_job(self, capsys, files):
        _, out, _ = run(capsys, "bound", files("one.txt", "smc 1\nmachines 2\nedge 0 1\njob 2 3 2\n"))
        assert "best-lower 7" in out and "best-upper 7" in out

    def test_prop_two(self, capsys, files):
        _, out, _ = run(capsys, "bound", files("p.txt", P3_PROP))
        assert "lower 15 even split" in out


class TestGantt:
    def test_two_pattern(self, capsys, files):
        inst = parse_instance(K2_TEXT)
        sched = format_schedule(inst, Schedule((Entry(0, 0, 0), Entry(1, 1, 1))))
        ipath, spath = files("k2.txt", K2_TEXT), files("k2.sched", sched)
        code, out, _ = run(capsys, "gantt", ipath, spath)
        assert code == 0 and out == "0 #=#.\n1 .#=#\n"
        _, again, _ = run(capsys, "gantt", ipath, spath)
        assert again == out

    def test_empty(self, capsys, files):
        text = "smc 1\nmachines 2\n"
        inst = parse_instance(text)
        code, out, _ = run(capsys, "gantt", files("e.txt", text), files("e.sched", format_schedule(inst, Schedule())))
        assert code == 0 and out == "0 \n1 \n"

    def test_svg(self, capsys, files, tmp_path):
        inst = parse_instance(K2_TEXT)
        sched = format_schedule(inst, Schedule((Entry(0, 0, 0), Entry(1, 1, 1))))
        target = tmp_path / "g.svg"
        code, _, _ = run(capsys, "gantt", files("k2.txt", K2_TEXT), files("s", sched), "--format", "svg", "-o", str(target))
        svg = target.read_text()
        assert code == 0 and svg.startswith("<svg") and svg.count("<rect") >= 6

    def test_non_integral(self, capsys, files):
        sched = "smc-schedule 1\ninstance {}\nmakespan 7/2\nentry 0 0 1/2\n".format(
            instance_digest(parse_instance(K2_TEXT))
        )
        code, _, _ = run(capsys, "gantt", files("k2.txt", K2_TEXT), files("s", sched))
        assert code == 2


BENCH = {
    "seed": 3,
    "oracle_budget": 100000,
    "families": [
        {"name": "unit-bip", "graph": "bipartite", "m": [2, 5], "n": [1, 6], "strategy": "unit-bipartite", "trials": 3},
        {
            "name": "short",
            "graph": "random",
            "m": [2, 4],
            "n": [1, 5],
            "jobs": {"b1": [1, 2], "p": [2, 3], "b2": [1, 1], "identical": True},
            "strategy": "patterns",
            "trials": 3,
        },
        {
            "name": "lpt",
            "graph": "random",
            "m": [2, 4],
            "n": [1, 4],
            "jobs": {"b1": [2, 3], "p": [0, 1], "b2": [2, 3], "identical": False},
            "strategy": "lpt",
            "trials": 3,
        },
    ],
}


class TestBench:
    def test_table(self, capsys, files):
        path = files("bench.json", json.dumps(BENCH))
        code, out, _ = run(capsys, "bench", path)
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("family,trial,m,edges,n,jobs,strategy")
        assert len(lines) == 10
        assert all(line.endswith(",yes") for line in lines[1:])
        assert {line.split(",")[10] for line in lines[1:4]} == {"1.0000"}

    def test_deterministic(self, capsys, files):
        path = files("bench.json", json.dumps(BENCH))
        _, first, _ = run(capsys, "bench", path, "--format", "text")
        _, second, _ = run(capsys, "bench", path, "--format", "text")
        assert first == second
        _, other, _ = run(capsys, "bench", path, "--format", "text", "--seed", "4")
        assert other != first

    def test_bad_config(self, capsys, files):
        assert run(capsys, "bench", files("b.json", "{not json"))[0] == 2
        bad = {"families": [{"name": "x", "m": [2, 3], "n": [1, 2], "strategy": "magic"}]}
        assert run(capsys, "bench", files("c.json", json.dumps(bad)))[0] == 2


def test_console_entry_point(tmp_path):
    path = tmp_path / "k2.txt"
    path.write_text(K2_TEXT)
    proc = subprocess.run([sys.executable, "-m", "smcsched.cli", "solve", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0 and "# makespan 4" in proc.stdout
