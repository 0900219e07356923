"""Red-Black Ant Colony System.

Two colonies search side by side.  Each owns its pheromone field, its
parameters and its random stream, so neither group ever sees the other's
trails.  The shorter of the two group bests is the answer.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .acs import ColonyGroup, GroupParams, SeedLike, group_iteration
from .core import Tour, TspInstance, reference_tau0
from .pheromone import DecayScope, init_inverse_cost
from .trace import ConvergenceTrace

__all__ = [
    "ColonyGroup",
    "RbacsConfig",
    "group_iteration",
    "group_streams",
    "make_groups",
    "merge_results",
    "run_rbacs",
]

DEFAULT_BLACK = GroupParams(q0=0.9, beta=2.0, rho=0.10, alpha=0.10, m=20)
DEFAULT_RED = GroupParams(q0=0.9, beta=2.0, rho=0.30, alpha=0.10, m=20)


@dataclass(frozen=True)
class RbacsConfig:
    black: GroupParams = field(default_factory=lambda: DEFAULT_BLACK)
    red: GroupParams = field(default_factory=lambda: DEFAULT_RED)
    c_init: float = 100.0
    budget: int = 2000
    stagnation_limit: int = 0
    decay_scope: DecayScope = DecayScope.ALL_EDGES
    parallel_groups: bool = False

    def __post_init__(self) -> None:
        if self.c_init <= 0:
            raise ValueError(f"c_init must be positive, got {self.c_init}")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.stagnation_limit < 0:
            raise ValueError("stagnation_limit must be >= 0")
        object.__setattr__(self, "decay_scope", DecayScope(self.decay_scope))


def group_streams(seed: SeedLike, mirror: bool = False) -> tuple[np.random.Generator, np.random.Generator]:
    """Independent black/red generators derived from one trial seed.

    With ``mirror=True`` both groups get identical streams.
    """
    if isinstance(seed, np.random.Generator):
        seed = int(seed.integers(2**63))
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    black_ss, red_ss = ss.spawn(2)
    if mirror:
        red_ss = black_ss
    return np.random.default_rng(black_ss), np.random.default_rng(red_ss)


def merge_results(black_best: Tour, red_best: Tour) -> Tour:
    # ties go to black
    return red_best if red_best.length < black_best.length else black_best


def make_groups(
    inst: TspInstance, config: RbacsConfig, rng: SeedLike = None, *, mirror_seeds: bool = False
) -> list[ColonyGroup]:
    """Black and red colonies, each with its own C / cost field and stream."""
    tau0 = reference_tau0(inst)
    black_rng, red_rng = group_streams(rng, mirror=mirror_seeds)
    return [
        ColonyGroup("black", config.black, init_inverse_cost(inst, config.c_init, tau0),
                    black_rng, config.decay_scope),
        ColonyGroup("red", config.red, init_inverse_cost(inst, config.c_init, tau0),
                    red_rng, config.decay_scope),
    ]


def run_rbacs(
    inst: TspInstance,
    config: RbacsConfig = RbacsConfig(),
    rng: SeedLike = None,
    *,
    mirror_seeds: bool = False,
) -> tuple[Tour, ConvergenceTrace]:
    groups = make_groups(inst, config, rng, mirror_seeds=mirror_seeds)
    pool = ThreadPoolExecutor(max_workers=2) if config.parallel_groups else None

    trace = ConvergenceTrace()
    stale = 0
    best: Tour | None = None
    try:
        for it in range(1, config.budget + 1):
            if pool is not None:
                # barrier: both groups finish before the trace row is written
                list(pool.map(lambda g: group_iteration(g, inst), groups))
            else:
                for g in groups:
                    group_iteration(g, inst)
            black, red = groups[0].group_best, groups[1].group_best
            merged = merge_results(black, red)
            improved = best is None or merged.length < best.length
            best = merged if improved else best
            trace.append(it, black.length, red.length, best.length)
            stale = 0 if improved else stale + 1
            if config.stagnation_limit and stale >= config.stagnation_limit:
                trace.stop_reason = "stagnation"
                break
        else:
            trace.stop_reason = "budget"
    finally:
        if pool is not None:
            pool.shutdown()
    return best, trace
