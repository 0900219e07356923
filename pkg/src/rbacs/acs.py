"""Single-colony Ant Colony System.

Tour construction has two implementations that consume the random stream in
exactly the same order: a readable per-ant reference built on
:func:`choose_next_city`, and a numba kernel used by the engines.  Each
transition uses two uniform draws ``(q, u)``: ``q`` decides exploitation vs
exploration and ``u`` drives the roulette wheel.  Both are drawn even when
unused so the stream layout does not depend on the outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Sequence

import numba
import numpy as np

from .core import Tour, TspInstance, reference_tau0
from .pheromone import (
    DecayScope,
    PheromoneField,
    global_update,
    init_inverse_cost,
    init_uniform,
    local_update,
)
from .trace import ConvergenceTrace

SeedLike = int | np.random.SeedSequence | np.random.Generator | None


@dataclass(frozen=True)
class GroupParams:
    q0: float = 0.9
    beta: float = 2.0
    rho: float = 0.1
    alpha: float = 0.1
    m: int = 20

    def __post_init__(self) -> None:
        if not 0.0 <= self.q0 <= 1.0:
            raise ValueError(f"q0 must lie in [0, 1], got {self.q0}")
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho must lie in (0, 1), got {self.rho}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.m < 1:
            raise ValueError(f"need at least one ant, got m={self.m}")


@dataclass
class AntState:
    current: int
    visited: set[int]
    tour_so_far: list[int]

    @classmethod
    def start(cls, city: int) -> "AntState":
        return cls(city, {city}, [city])

    def move(self, city: int) -> None:
        self.current = city
        self.visited.add(city)
        self.tour_so_far.append(city)


def heuristic_matrix(inst: TspInstance, beta: float) -> np.ndarray:
    return inst.visibility() ** beta


def transition_probabilities(
    tau_row: np.ndarray, heur_row: np.ndarray, candidates: np.ndarray
) -> np.ndarray:
    w = tau_row[candidates] * heur_row[candidates]
    return w / w.sum()


def choose_next_city(
    ant: AntState,
    field: PheromoneField,
    inst: TspInstance,
    params: GroupParams,
    rng: np.random.Generator,
    heuristic: np.ndarray | None = None,
) -> int:
    """State transition rule: greedy with probability q0, else roulette over tau * eta^beta."""
    if len(ant.visited) >= inst.n:
        raise RuntimeError("ant has no unvisited city left")
    if heuristic is None:
        heuristic = heuristic_matrix(inst, params.beta)
    q, u = rng.random(2)
    mask = np.ones(inst.n, dtype=bool)
    mask[list(ant.visited)] = False
    candidates = np.flatnonzero(mask)
    r = ant.current
    weights = field.tau[r, candidates] * heuristic[r, candidates]
    if q <= params.q0:
        return int(candidates[np.argmax(weights)])
    cum = np.cumsum(weights)
    i = int(np.searchsorted(cum, u * cum[-1], side="right"))
    return int(candidates[min(i, len(candidates) - 1)])


def construct_tours_reference(
    field: PheromoneField,
    inst: TspInstance,
    params: GroupParams,
    starts: Sequence[int],
    rng: np.random.Generator,
) -> list[Tour]:
    """Step-synchronous construction, one ant move at a time, with local updates."""
    heuristic = heuristic_matrix(inst, params.beta)
    ants = [AntState.start(int(s)) for s in starts]
    for _ in range(inst.n - 1):
        for ant in ants:
            r = ant.current
            s = choose_next_city(ant, field, inst, params, rng, heuristic)
            ant.move(s)
            local_update(field, (r, s), params.rho)
    for ant in ants:
        local_update(field, (ant.current, ant.tour_so_far[0]), params.rho)
    return [Tour.of(ant.tour_so_far, inst) for ant in ants]


@numba.njit(cache=True, nogil=True)
def _construct_kernel(tau, heur, dist, starts, draws, q0, rho, tau0, tours, lengths):
    m = starts.shape[0]
    n = tau.shape[0]
    # per-ant unvisited cities, kept in ascending order
    remaining = np.empty((m, n - 1), dtype=np.int64)
    weights = np.empty(n, dtype=np.float64)
    current = starts.copy()
    for k in range(m):
        tours[k, 0] = starts[k]
        lengths[k] = 0
        j = 0
        for c in range(n):
            if c != starts[k]:
                remaining[k, j] = c
                j += 1
    for step in range(1, n):
        left = n - step
        for k in range(m):
            r = current[k]
            pos = 0
            if draws[step - 1, k, 0] <= q0:
                best = -1.0
                for i in range(left):
                    c = remaining[k, i]
                    w = tau[r, c] * heur[r, c]
                    if w > best:
                        best = w
                        pos = i
            else:
                total = 0.0
                for i in range(left):
                    c = remaining[k, i]
                    w = tau[r, c] * heur[r, c]
                    weights[i] = w
                    total += w
                threshold = draws[step - 1, k, 1] * total
                acc = 0.0
                pos = left - 1
                for i in range(left):
                    acc += weights[i]
                    if acc > threshold:
                        pos = i
                        break
            s = remaining[k, pos]
            for i in range(pos, left - 1):
                remaining[k, i] = remaining[k, i + 1]
            tours[k, step] = s
            lengths[k] += dist[r, s]
            current[k] = s
            v = (1.0 - rho) * tau[r, s] + rho * tau0
            tau[r, s] = v
            tau[s, r] = v
    for k in range(m):
        r = current[k]
        s = starts[k]
        lengths[k] += dist[r, s]
        v = (1.0 - rho) * tau[r, s] + rho * tau0
        tau[r, s] = v
        tau[s, r] = v


def construct_tour_arrays(
    field: PheromoneField,
    inst: TspInstance,
    params: GroupParams,
    starts: Sequence[int],
    rng: np.random.Generator,
    heuristic: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Fast path: returns ``(tours, lengths)`` arrays of shape (m, n) and (m,)."""
    if not 0.0 < params.rho < 1.0:
        raise ValueError(f"rho must lie in (0, 1), got {params.rho}")
    n = inst.n
    starts = np.asarray(starts, dtype=np.int64)
    if starts.ndim != 1 or ((starts < 0) | (starts >= n)).any():
        raise ValueError("start cities out of range")
    if heuristic is None:
        heuristic = heuristic_matrix(inst, params.beta)
    draws = rng.random((n - 1, len(starts), 2))
    tours = np.empty((len(starts), n), dtype=np.int64)
    lengths = np.empty(len(starts), dtype=np.int64)
    _construct_kernel(
        field.tau, heuristic, inst.dist, starts, draws,
        float(params.q0), float(params.rho), float(field.tau0), tours, lengths,
    )
    return tours, lengths


def construct_tours(
    field: PheromoneField,
    inst: TspInstance,
    params: GroupParams,
    starts: Sequence[int],
    rng: np.random.Generator,
) -> list[Tour]:
    tours, lengths = construct_tour_arrays(field, inst, params, starts, rng)
    return [Tour(tuple(int(c) for c in t), int(L)) for t, L in zip(tours, lengths)]


@dataclass
class ColonyGroup:
    """One colony: its parameters, its own pheromone field and its best tour so far."""

    label: str
    params: GroupParams
    field: PheromoneField
    rng: np.random.Generator
    decay_scope: DecayScope = DecayScope.ALL_EDGES
    group_best: Tour | None = None
    heuristic: np.ndarray | None = dc_field(default=None, repr=False)


def group_iteration(group: ColonyGroup, inst: TspInstance) -> Tour:
    """Place ants, build their tours, update the group best and apply the global rule."""
    if group.heuristic is None:
        group.heuristic = heuristic_matrix(inst, group.params.beta)
    starts = group.rng.integers(0, inst.n, size=group.params.m)
    tours, lengths = construct_tour_arrays(
        group.field, inst, group.params, starts, group.rng, group.heuristic
    )
    k = int(np.argmin(lengths))
    it_best = Tour(tuple(int(c) for c in tours[k]), int(lengths[k]))
    if group.group_best is None or it_best.length < group.group_best.length:
        group.group_best = it_best
    global_update(group.field, group.group_best, group.params.alpha, group.decay_scope)
    return it_best


@dataclass(frozen=True)
class AcsConfig:
    params: GroupParams = GroupParams()
    budget: int = 2000
    init: str = "uniform"
    c_init: float = 100.0
    decay_scope: DecayScope = DecayScope.ALL_EDGES
    stagnation_limit: int = 0

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.init not in ("uniform", "inverse_cost"):
            raise ValueError(f"unknown init {self.init!r}")
        object.__setattr__(self, "decay_scope", DecayScope(self.decay_scope))


def make_rng(seed: SeedLike) -> np.random.Generator:
    return np.random.default_rng(seed)


def run_acs(
    inst: TspInstance,
    params: GroupParams = GroupParams(),
    budget: int = 2000,
    rng: SeedLike = None,
    *,
    init: str = "uniform",
    c_init: float = 100.0,
    decay_scope: DecayScope | str = DecayScope.ALL_EDGES,
    stagnation_limit: int = 0,
) -> tuple[Tour, ConvergenceTrace]:
    """Classic ACS. ``init="inverse_cost"`` starts from C / cost instead of tau0."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    tau0 = reference_tau0(inst)
    if init == "uniform":
        pheromone = init_uniform(inst.n, tau0)
    elif init == "inverse_cost":
        pheromone = init_inverse_cost(inst, c_init, tau0)
    else:
        raise ValueError(f"unknown init {init!r}")
    group = ColonyGroup("acs", params, pheromone, make_rng(rng), DecayScope(decay_scope))

    trace = ConvergenceTrace()
    stale = 0
    for it in range(1, budget + 1):
        prev = group.group_best.length if group.group_best else None
        group_iteration(group, inst)
        best = group.group_best.length
        trace.append(it, best, None, best)
        stale = 0 if prev is None or best < prev else stale + 1
        if stagnation_limit and stale >= stagnation_limit:
            trace.stop_reason = "stagnation"
            break
    else:
        trace.stop_reason = "budget"
    return group.group_best, trace
