import numpy as np
import pytest
from conftest import random_instance
from hypothesis import given, settings
from hypothesis import strategies as st

from rbacs.acs import (
    AcsConfig,
    AntState,
    GroupParams,
    choose_next_city,
    construct_tour_arrays,
    construct_tours,
    construct_tours_reference,
    run_acs,
)
from rbacs.core import TspInstance, reference_tau0, validate_tour
from rbacs.pheromone import init_inverse_cost, init_uniform


def line_instance(*dists_from_0: int) -> TspInstance:
    """City 0 at the origin, the others on a ray at the given distances."""
    pos = [0, *dists_from_0]
    d = np.abs(np.subtract.outer(pos, pos))
    return TspInstance(d.astype(np.int64))


class TestGroupParams:
    def test_defaults(self):
        p = GroupParams()
        assert (p.q0, p.beta, p.rho, p.alpha, p.m) == (0.9, 2.0, 0.1, 0.1, 20)

    @pytest.mark.parametrize(
        "kwargs",
        [dict(q0=1.1), dict(q0=-0.1), dict(beta=0), dict(rho=0), dict(rho=1), dict(alpha=0), dict(alpha=1), dict(m=0)],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            GroupParams(**kwargs)


class TestChooseNextCity:
    def test_exploit_picks_nearest(self):
        inst = line_instance(5, 2)  # city 2 is nearer to city 0
        field = init_uniform(3, 1.0)
        rng = np.random.default_rng(0)
        picks = {choose_next_city(AntState.start(0), field, inst, GroupParams(q0=1.0), rng) for _ in range(200)}
        assert picks == {2}

    def test_forced_move(self):
        inst = line_instance(1, 2, 3)
        field = init_uniform(4, 1.0)
        ant = AntState(2, {0, 1, 2}, [0, 1, 2])
        rng = np.random.default_rng(1)
        for q0 in (0.0, 0.5, 1.0):
            assert choose_next_city(ant, field, inst, GroupParams(q0=q0), rng) == 3

    def test_no_city_left(self, triangle):
        ant = AntState(2, {0, 1, 2}, [0, 1, 2])
        with pytest.raises(RuntimeError):
            choose_next_city(ant, init_uniform(3, 1.0), triangle, GroupParams(), np.random.default_rng())

    def test_exploration_frequencies(self):
        # weights 1/1^2 = 1 and 1/2^2 = 0.25  ->  0.8 / 0.2
        inst = line_instance(1, 2)
        field = init_uniform(3, 1.0)
        params = GroupParams(q0=0.0, beta=2.0)
        rng = np.random.default_rng(42)
        heur = inst.visibility() ** 2
        picks = np.array(
            [choose_next_city(AntState.start(0), field, inst, params, rng, heur) for _ in range(100_000)]
        )
        assert abs((picks == 1).mean() - 0.8) <= 0.01
        assert abs((picks == 2).mean() - 0.2) <= 0.01

    def test_exploit_tie_goes_to_lowest_index(self):
        inst = line_instance(3, 3, 3)
        field = init_uniform(4, 1.0)
        rng = np.random.default_rng(3)
        assert choose_next_city(AntState.start(0), field, inst, GroupParams(q0=1.0), rng) == 1


class TestConstructTours:
    def test_triangle(self, triangle):
        field = init_uniform(3, 0.1)
        tours = construct_tours(field, triangle, GroupParams(m=5), [0, 1, 2, 0, 1], np.random.default_rng(0))
        assert [t.length for t in tours] == [3] * 5

    def test_eil51_valid(self, eil51):
        field = init_uniform(51, reference_tau0(eil51))
        starts = np.random.default_rng(5).integers(0, 51, size=20)
        tours = construct_tours(field, eil51, GroupParams(), starts, np.random.default_rng(5))
        assert len(tours) == 20
        for t in tours:
            assert validate_tour(t.order, 51)
            assert t.order[0] in starts

    def test_same_seed_same_tours(self, eil51):
        def once():
            field = init_uniform(51, reference_tau0(eil51))
            return construct_tours(field, eil51, GroupParams(), list(range(20)), np.random.default_rng(11))

        assert once() == once()

    def test_pure_exploitation_ignores_rng(self, eil51):
        params = GroupParams(q0=1.0)

        def once(seed):
            field = init_inverse_cost(eil51, 100.0, reference_tau0(eil51))
            return construct_tours(field, eil51, params, list(range(0, 40, 2)), np.random.default_rng(seed))

        assert once(1) == once(2)

    def test_local_update_on_every_traversed_edge(self, triangle):
        field = init_uniform(3, 1.0)
        field.tau0 = 0.5
        construct_tours(field, triangle, GroupParams(rho=0.5, m=1), [0], np.random.default_rng(0))
        off = field.tau[~np.eye(3, dtype=bool)]
        # each of the three edges, closing edge included, updated exactly once
        assert np.allclose(off, 0.75)

    def test_bad_start(self, triangle):
        with pytest.raises(ValueError):
            construct_tours(init_uniform(3, 1.0), triangle, GroupParams(m=1), [3], np.random.default_rng())

    @settings(max_examples=60, deadline=None)
    @given(
        seed=st.integers(0, 2**32 - 1),
        n=st.integers(3, 14),
        m=st.integers(1, 6),
        q0=st.sampled_from([0.0, 0.5, 0.9, 1.0]),
        beta=st.sampled_from([1.0, 2.0, 3.5]),
        rho=st.sampled_from([0.05, 0.1, 0.6]),
        inverse=st.booleans(),
    )
    def test_kernel_matches_reference(self, seed, n, m, q0, beta, rho, inverse):
        inst = random_instance(seed, n=n)
        params = GroupParams(q0=q0, beta=beta, rho=rho, m=m)
        tau0 = reference_tau0(inst)
        make = (lambda: init_inverse_cost(inst, 100.0, tau0)) if inverse else (lambda: init_uniform(n, tau0))
        starts = np.random.default_rng(seed + 1).integers(0, n, size=m)
        f_ref, f_fast = make(), make()
        ref = construct_tours_reference(f_ref, inst, params, starts, np.random.default_rng(seed))
        fast = construct_tours(f_fast, inst, params, starts, np.random.default_rng(seed))
        assert ref == fast
        assert np.array_equal(f_ref.tau, f_fast.tau)

    def test_kernel_lengths_match_tours(self, eil51):
        from rbacs.core import tour_length

        field = init_uniform(51, reference_tau0(eil51))
        tours, lengths = construct_tour_arrays(
            field, eil51, GroupParams(q0=0.5), list(range(20)), np.random.default_rng(9)
        )
        for t, L in zip(tours, lengths):
            assert tour_length(t.tolist(), eil51) == L


class TestRunAcs:
    def test_triangle(self, triangle):
        best, trace = run_acs(triangle, GroupParams(m=3), budget=1, rng=0)
        assert best.length == 3
        assert trace.global_best == [3]
        assert trace.red_best == [None]

    def test_trace_monotone_and_budget(self, eil51):
        best, trace = run_acs(eil51, GroupParams(), budget=60, rng=3)
        assert len(trace) == 60
        assert trace.stop_reason == "budget"
        g = trace.global_best
        assert all(a >= b for a, b in zip(g, g[1:]))
        assert g[-1] == best.length
        assert trace.black_best == g
        assert validate_tour(best.order, 51)

    def test_deterministic(self, eil51):
        a = run_acs(eil51, GroupParams(), budget=20, rng=7)
        b = run_acs(eil51, GroupParams(), budget=20, rng=7)
        assert a[0] == b[0]
        assert a[1].rows == b[1].rows

    def test_stagnation_stop(self, triangle):
        _, trace = run_acs(triangle, GroupParams(m=2), budget=100, rng=0, stagnation_limit=5)
        assert len(trace) == 6
        assert trace.stop_reason == "stagnation"

    def test_rejects_bad_budget_and_init(self, triangle):
        with pytest.raises(ValueError):
            run_acs(triangle, budget=0)
        with pytest.raises(ValueError):
            run_acs(triangle, budget=1, init="bogus")
        with pytest.raises(ValueError):
            AcsConfig(init="bogus")

    @pytest.mark.parametrize("seed", range(4))
    def test_finds_small_optimum(self, seed):
        from rbacs.core import brute_force_optimum

        inst = random_instance(1000 + seed)
        best, _ = run_acs(inst, GroupParams(), budget=300, rng=seed)
        assert best.length >= brute_force_optimum(inst).length
