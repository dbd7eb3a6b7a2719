import math
from itertools import product

import pytest

from smcsched import (
    PROP_III,
    ConflictGraph,
    InputError,
    Instance,
    Job,
    ResourceError,
    classify_props,
    is_basic,
    makespan,
    validate_schedule,
)
from smcsched.exact import exact_makespan
from smcsched.graph import greedy_1_is, max_c_is_exact
from smcsched.longblock import (
    longblock_bounds,
    lpt_assignment,
    partition_min_makespan,
    schedule_evenly_on_is,
    schedule_lpt_on_is,
    small_exact_on_is,
)

from helpers import random_graph

P3 = ConflictGraph.path(3)
MIXED = (Job(4, 1, 4), Job(3, 2, 3), Job(3, 1, 3))  # q = 9, 8, 7


def random_prop3(rng, m, n):
    p = rng.randint(0, 1)
    jobs = tuple(Job(rng.randint(p + 1, p + 2), rng.randint(0, p), rng.randint(p + 1, p + 2)) for _ in range(n))
    return Instance(random_graph(rng, m), jobs)


class TestEven:
    def test_examples(self):
        inst = Instance.identical(P3, 5, Job(2, 1, 2))
        s = schedule_evenly_on_is(inst, [0, 2])
        assert makespan(inst, s) == 15 == exact_makespan(inst)
        assert is_basic(inst, s)
        empty = Instance(P3)
        assert makespan(empty, schedule_evenly_on_is(empty, [0])) == 0
        single = Instance.identical(P3, 4, Job(2, 1, 2))
        assert makespan(single, schedule_evenly_on_is(single, [1])) == 20

    def test_preconditions(self):
        inst = Instance.identical(P3, 2, Job(2, 1, 2))
        with pytest.raises(InputError):
            schedule_evenly_on_is(inst, [])
        with pytest.raises(InputError):
            schedule_evenly_on_is(inst, [0, 1])
        with pytest.raises(InputError):
            schedule_evenly_on_is(Instance(P3, MIXED), [0, 2])

    def test_ceil_gamma_on_greedy_set(self, rng):
        for _ in range(20):
            g = random_graph(rng, rng.randint(2, 6))
            n = rng.randint(1, 8)
            inst = Instance.identical(g, n, Job(2, 1, 2))
            machines = greedy_1_is(g).classes[0]
            alpha = max_c_is_exact(g, 1).size
            value = makespan(inst, schedule_evenly_on_is(inst, machines))
            opt = 5 * math.ceil(n / alpha)
            assert value / opt <= math.ceil(alpha / len(machines))


class TestLPT:
    def test_example(self):
        inst = Instance(P3, MIXED)
        a = lpt_assignment(inst, [0, 2])
        assert sorted(a.loads.values()) == [9, 15]
        s = schedule_lpt_on_is(inst, [0, 2])
        assert makespan(inst, s) == 15 and validate_schedule(inst, s).valid and is_basic(inst, s)

    def test_single_machine_and_empty(self):
        inst = Instance(P3, MIXED)
        assert makespan(inst, schedule_lpt_on_is(inst, [1])) == 24
        empty = Instance(P3)
        assert makespan(empty, schedule_lpt_on_is(empty, [0])) == 0

    def test_requires_prop3(self):
        with pytest.raises(InputError):
            schedule_lpt_on_is(Instance.identical(P3, 2), [0, 2])

    def test_ratio_and_no_idle(self, rng):
        for _ in range(30):
            m = rng.randint(2, 5)
            inst = random_prop3(rng, m, rng.randint(1, 6))
            machines = greedy_1_is(inst.graph).classes[0]
            s = schedule_lpt_on_is(inst, machines)
            assert validate_schedule(inst, s).valid and is_basic(inst, s)
            gamma = max_c_is_exact(inst.graph, 1).size / len(machines)
            assert makespan(inst, s) <= (gamma + 1 - 1 / m) * exact_makespan(inst) + 1e-9
            last = max(s.entries, key=lambda e: e.start + inst.jobs[e.job].q)
            loads = lpt_assignment(inst, machines).loads
            assert all(load >= last.start for load in loads.values())


class TestPartition:
    def brute(self, sizes, k):
        return min(
            max(sum(s for s, a in zip(sizes, assign) if a == i) for i in range(k))
            for assign in product(range(k), repeat=len(sizes))
        )

    def test_examples(self):
        assert partition_min_makespan([5, 5, 8], 2)[0] == 10
        assert partition_min_makespan([9, 8, 7], 2)[0] == 15
        assert partition_min_makespan([4] * 7, 3)[0] == 12
        assert partition_min_makespan([6], 3) == (6, [0])

    def test_against_brute_force(self, rng):
        for _ in range(40):
            sizes = [rng.randint(1, 9) for _ in range(rng.randint(1, 7))]
            k = rng.randint(1, 3)
            value, assign = partition_min_makespan(sizes, k)
            assert value == self.brute(sizes, k)
            assert max(sum(s for s, a in zip(sizes, assign) if a == i) for i in range(k)) == value

    def test_budget(self):
        with pytest.raises(ResourceError):
            partition_min_makespan(list(range(1, 30)), 4, budget=10)

    def test_small_exact_on_is(self, rng):
        for _ in range(20):
            inst = random_prop3(rng, rng.randint(2, 5), rng.randint(1, 6))
            machines = max_c_is_exact(inst.graph, 1).classes[0]
            s = small_exact_on_is(inst, machines)
            assert validate_schedule(inst, s).valid and is_basic(inst, s)
            assert makespan(inst, s) == exact_makespan(inst)


class TestBounds:
    def test_examples(self):
        inst = Instance.identical(P3, 5, Job(2, 1, 2))
        assert longblock_bounds(inst, 2).best_lower == 15
        assert longblock_bounds(Instance.identical(P3, 1, Job(3, 1, 3)), 2).best_lower == 7
        report = longblock_bounds(Instance(P3, MIXED), 2)
        assert report.best_lower == 12
        assert report.best_upper == 15

    def test_sound_on_prop_instances(self, rng):
        for _ in range(25):
            inst = random_prop3(rng, rng.randint(2, 5), rng.randint(1, 6))
            assert PROP_III in classify_props(inst)
            alpha = max_c_is_exact(inst.graph, 1).size
            report = longblock_bounds(inst, alpha)
            opt = exact_makespan(inst)
            assert report.best_lower <= opt <= report.best_upper

    def test_average_load_withheld_without_long_blocking(self):
        # unit jobs on K2 finish 2 jobs by 4 < 2 * 3, so sum(q) / alpha1 is no bound here
        inst = Instance.identical(ConflictGraph.complete(2), 2)
        assert longblock_bounds(inst, 1).best_lower == 3
        assert exact_makespan(inst) == 4
