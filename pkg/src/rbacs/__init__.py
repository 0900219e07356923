"""Ant Colony System and Red-Black ACS for the symmetric TSP."""

from .acs import AcsConfig, GroupParams, choose_next_city, construct_tours, run_acs
from .bench import SummaryStats, TrialResult, compare_table, run_trials, summarize
from .core import (
    Tour,
    TspInstance,
    brute_force_optimum,
    nearest_neighbor_tour,
    tour_length,
    validate_tour,
)
from .pheromone import PheromoneField, global_update, init_inverse_cost, init_uniform, local_update
from .rbacs import RbacsConfig, merge_results, run_rbacs
from .trace import ConvergenceTrace, emit_trace_csv
from .tsplib import bundled_path, euc2d_distance, parse_tsplib

__version__ = "0.1.0"

__all__ = [
    "AcsConfig",
    "ConvergenceTrace",
    "GroupParams",
    "PheromoneField",
    "RbacsConfig",
    "SummaryStats",
    "Tour",
    "TrialResult",
    "TspInstance",
    "brute_force_optimum",
    "bundled_path",
    "choose_next_city",
    "compare_table",
    "construct_tours",
    "emit_trace_csv",
    "euc2d_distance",
    "global_update",
    "init_inverse_cost",
    "init_uniform",
    "local_update",
    "merge_results",
    "nearest_neighbor_tour",
    "parse_tsplib",
    "run_acs",
    "run_rbacs",
    "run_trials",
    "summarize",
    "tour_length",
    "validate_tour",
]
