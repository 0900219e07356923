"""Instances, tours and the simple reference solvers used around the colony engines."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .tsplib import InstanceHeader, NodeCoord, euc2d_matrix

BRUTE_FORCE_LIMIT = 11
# stand-in distance for coincident cities, keeps 1/d finite
ZERO_DISTANCE_FLOOR = 0.5


class TourError(ValueError):
    pass


@dataclass(frozen=True)
class TourVerdict:
    valid: bool
    duplicated: tuple[int, ...] = ()
    missing: tuple[int, ...] = ()
    out_of_range: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


def validate_tour(order: Sequence[int], n: int) -> TourVerdict:
    arr = np.asarray(order)
    if (
        len(arr) == n
        and np.issubdtype(arr.dtype, np.integer)
        and n > 0
        and arr.min() >= 0
        and arr.max() < n
        and (np.bincount(arr, minlength=n) == 1).all()
    ):
        return TourVerdict(True)
    counts = Counter(int(c) for c in order)
    duplicated = tuple(sorted(c for c, k in counts.items() if k > 1))
    out_of_range = tuple(sorted(c for c in counts if not 0 <= c < n))
    missing = tuple(c for c in range(n) if c not in counts)
    if not (duplicated or out_of_range or missing) and len(order) == n:
        return TourVerdict(True)

    problems = []
    if len(order) != n:
        problems.append(f"wrong cardinality ({len(order)} cities, expected {n})")
    if duplicated:
        problems.append(f"duplicated: {list(duplicated)}")
    if missing:
        problems.append(f"missing: {list(missing)}")
    if out_of_range:
        problems.append(f"out of range: {list(out_of_range)}")
    return TourVerdict(False, duplicated, missing, out_of_range, "; ".join(problems))


@dataclass(frozen=True, eq=False)
class TspInstance:
    """Symmetric TSP instance backed by an integer distance matrix."""

    dist: np.ndarray
    name: str = ""
    coords: tuple[NodeCoord, ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        d = np.asarray(self.dist)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        if d.shape[0] < 3:
            raise ValueError(f"need at least 3 cities, got {d.shape[0]}")
        if not np.issubdtype(d.dtype, np.integer):
            raise ValueError("distances must be integers")
        if (d < 0).any() or (np.diag(d) != 0).any() or not np.array_equal(d, d.T):
            raise ValueError("distance matrix must be symmetric, nonnegative, zero-diagonal")
        d = d.astype(np.int64, copy=True)
        d.flags.writeable = False
        object.__setattr__(self, "dist", d)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @classmethod
    def from_coords(cls, coords: Sequence[NodeCoord], name: str = "") -> "TspInstance":
        coords = tuple(coords)
        return cls(euc2d_matrix(list(coords)), name=name, coords=coords)

    @classmethod
    def from_tsplib(cls, header: InstanceHeader, coords: Sequence[NodeCoord]) -> "TspInstance":
        return cls.from_coords(coords, name=header.name)

    def visibility(self) -> np.ndarray:
        """1/d for every pair, with coincident cities capped at 1/0.5; diagonal is 0."""
        d = self.dist.astype(float)
        d[d == 0] = ZERO_DISTANCE_FLOOR
        eta = 1.0 / d
        np.fill_diagonal(eta, 0.0)
        return eta


@dataclass(frozen=True)
class Tour:
    order: tuple[int, ...]
    length: int

    @classmethod
    def of(cls, order: Sequence[int], inst: TspInstance) -> "Tour":
        order = tuple(int(c) for c in order)
        return cls(order, tour_length(order, inst))

    def __len__(self) -> int:
        return len(self.order)


def tour_length(order: Sequence[int], inst: TspInstance) -> int:
    verdict = validate_tour(order, inst.n)
    if not verdict:
        raise TourError(f"not a tour of {inst.n} cities: {verdict.reason}")
    idx = np.asarray(order, dtype=np.int64)
    return int(inst.dist[idx, np.roll(idx, -1)].sum())


def nearest_neighbor_tour(inst: TspInstance, start: int = 0) -> Tour:
    if not 0 <= start < inst.n:
        raise IndexError(f"start city {start} out of range 0..{inst.n - 1}")
    visited = np.zeros(inst.n, dtype=bool)
    order = [start]
    visited[start] = True
    current = start
    for _ in range(inst.n - 1):
        row = np.where(visited, np.iinfo(np.int64).max, inst.dist[current])
        current = int(np.argmin(row))  # argmin returns the lowest index on ties
        visited[current] = True
        order.append(current)
    return Tour.of(order, inst)


def brute_force_optimum(inst: TspInstance) -> Tour:
    """Exhaustive search over all tours that start at city 0."""
    if inst.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} cities, got {inst.n}")
    d = inst.dist.tolist()
    best_len = math.inf
    best: tuple[int, ...] = ()
    for perm in itertools.permutations(range(1, inst.n)):
        # skip mirror images of tours already seen
        if perm[0] > perm[-1]:
            continue
        length = d[0][perm[0]] + d[perm[-1]][0]
        prev = perm[0]
        for city in perm[1:]:
            length += d[prev][city]
            prev = city
        if length < best_len:
            best_len = length
            best = (0, *perm)
    return Tour(best, int(best_len))


def reference_tau0(inst: TspInstance) -> float:
    """Base pheromone level 1 / (n * L_nn), NN tour started from city 0."""
    return 1.0 / (inst.n * nearest_neighbor_tour(inst, 0).length)
