"""Repeated independent trials, summary statistics and comparison tables."""

from __future__ import annotations

import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, is_dataclass
from typing import Iterable, Sequence

from .acs import AcsConfig, run_acs
from .core import Tour, TspInstance, tour_length
from .rbacs import RbacsConfig, run_rbacs
from .trace import ConvergenceTrace, emit_trace_csv, read_trace_csv  # noqa: F401

ALGORITHMS = ("acs", "rbacs")
_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(base_seed: int, index: int) -> int:
    """Seed of trial ``index``; independent of how many trials are run."""
    return _splitmix64(_splitmix64(base_seed & _MASK64) ^ (index & _MASK64))


@dataclass
class TrialResult:
    seed: int
    best_length: int
    best_tour: Tour
    iterations_run: int
    wall_time_ms: float
    trace: ConvergenceTrace
    stop_reason: str = ""


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    min: int
    max: int
    stddev: float
    trials: int


def run_engine(inst: TspInstance, algorithm: str, config: AcsConfig | RbacsConfig, seed: int):
    if algorithm == "acs":
        if not isinstance(config, AcsConfig):
            raise TypeError("acs needs an AcsConfig")
        return run_acs(
            inst, config.params, config.budget, seed,
            init=config.init, c_init=config.c_init, decay_scope=config.decay_scope,
            stagnation_limit=config.stagnation_limit,
        )
    if algorithm == "rbacs":
        if not isinstance(config, RbacsConfig):
            raise TypeError("rbacs needs an RbacsConfig")
        return run_rbacs(inst, config, seed)
    raise ValueError(f"unknown algorithm {algorithm!r}, expected one of {ALGORITHMS}")


def _one_trial(inst: TspInstance, algorithm: str, config, seed: int) -> TrialResult:
    t0 = time.perf_counter()
    best, trace = run_engine(inst, algorithm, config, seed)
    elapsed = (time.perf_counter() - t0) * 1000.0
    if tour_length(best.order, inst) != best.length:
        raise RuntimeError("engine reported a length that does not match its tour")
    return TrialResult(seed, best.length, best, len(trace), elapsed, trace, trace.stop_reason)


def run_trials(
    inst: TspInstance,
    algorithm: str,
    config: AcsConfig | RbacsConfig,
    trials: int,
    base_seed: int = 0,
    workers: int = 1,
) -> list[TrialResult]:
    """Run ``trials`` independent runs; results come back in trial order."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}, expected one of {ALGORITHMS}")
    seeds = [derive_seed(base_seed, i) for i in range(trials)]
    if workers <= 1:
        return [_one_trial(inst, algorithm, config, s) for s in seeds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_one_trial, inst, algorithm, config, s) for s in seeds]
        return [f.result() for f in futures]


def summarize(results: Sequence[TrialResult] | Iterable[int]) -> SummaryStats:
    lengths = [r.best_length if isinstance(r, TrialResult) else int(r) for r in results]
    if not lengths:
        raise ValueError("cannot summarize an empty result list")
    stddev = statistics.stdev(lengths) if len(lengths) > 1 else 0.0
    return SummaryStats(statistics.fmean(lengths), min(lengths), max(lengths), stddev, len(lengths))


def excess_percent(value: float, optimum: float) -> float:
    return 100.0 * (value - optimum) / optimum


def compare_table(rows: Sequence[tuple[str, SummaryStats]], reference_optimum: int | None) -> str:
    if not rows:
        raise ValueError("compare_table needs at least one row")
    label_w = max(9, *(len(label) for label, _ in rows))
    head = f"{'algorithm':<{label_w}}  {'mean':>11}  {'min':>8}  {'max':>8}  {'stddev':>9}  {'trials':>6}  {'excess':>8}"
    lines = [head, "-" * len(head)]
    for label, st in rows:
        excess = (
            f"{excess_percent(st.mean, reference_optimum):7.2f}%" if reference_optimum else f"{'n/a':>8}"
        )
        lines.append(
            f"{label:<{label_w}}  {st.mean:11.3f}  {st.min:8d}  {st.max:8d}  {st.stddev:9.3f}  {st.trials:6d}  {excess}"
        )
    if reference_optimum:
        lines.append(f"excess = (mean - optimum) / optimum, optimum = {reference_optimum}")
    return "\n".join(lines) + "\n"


def _flatten(prefix: str, value, out: dict[str, str]) -> None:
    if is_dataclass(value):
        value = asdict(value)
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    else:
        out[prefix] = getattr(value, "value", value)


def metadata_lines(**items) -> list[str]:
    """``key=value`` lines, nested config dataclasses flattened with dots."""
    flat: dict[str, str] = {}
    for key, value in items.items():
        _flatten(key, value, flat)
    return [f"{k}={v}" for k, v in flat.items()]


def summary_lines(label: str, stats: SummaryStats) -> list[str]:
    return [
        f"{label}.mean={stats.mean:.6f}",
        f"{label}.min={stats.min}",
        f"{label}.max={stats.max}",
        f"{label}.stddev={stats.stddev:.6f}",
        f"{label}.trials={stats.trials}",
    ]


__all__ = [
    "ALGORITHMS",
    "ConvergenceTrace",
    "SummaryStats",
    "TrialResult",
    "compare_table",
    "derive_seed",
    "emit_trace_csv",
    "excess_percent",
    "metadata_lines",
    "read_trace_csv",
    "run_engine",
    "run_trials",
    "summarize",
]
