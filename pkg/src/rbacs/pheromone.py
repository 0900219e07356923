"""Pheromone matrix and the three update rules used by ACS and RB-ACS."""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import ZERO_DISTANCE_FLOOR, Tour, TourError, TspInstance, validate_tour

log = logging.getLogger(__name__)


class DecayScope(str, Enum):
    ALL_EDGES = "all_edges"
    BEST_TOUR_ONLY = "best_tour_only"


@dataclass
class PheromoneField:
    tau: np.ndarray
    tau0: float
    c_init: float | None = None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.tau.shape[0]

    def copy(self) -> "PheromoneField":
        return PheromoneField(self.tau.copy(), self.tau0, self.c_init, list(self.diagnostics))

    def checksum(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.tau).tobytes()).hexdigest()


def _check_open_unit(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {value}")


def init_uniform(n: int, tau0: float) -> PheromoneField:
    if tau0 <= 0:
        raise ValueError(f"tau0 must be positive, got {tau0}")
    tau = np.full((n, n), float(tau0))
    np.fill_diagonal(tau, 0.0)
    return PheromoneField(tau, float(tau0))


def init_inverse_cost(inst: TspInstance, c: float, tau0: float | None = None) -> PheromoneField:
    """Edge level C / cost(r, s), so expensive edges start out less attractive.

    ``tau0`` is carried along as the local-update target; it does not affect
    the initial levels.  Coincident cities use a cost of 0.5.
    """
    if c <= 0:
        raise ValueError(f"C must be positive, got {c}")
    cost = inst.dist.astype(float)
    off_diag = ~np.eye(inst.n, dtype=bool)
    zero = (cost == 0) & off_diag
    diagnostics = []
    if zero.any():
        pairs = [(int(r), int(s)) for r, s in zip(*np.nonzero(np.triu(zero)))]
        msg = f"{len(pairs)} zero-cost edges floored to {ZERO_DISTANCE_FLOOR}: {pairs[:10]}"
        log.warning(msg)
        diagnostics.append(msg)
        cost[zero] = ZERO_DISTANCE_FLOOR
    np.fill_diagonal(cost, 1.0)
    tau = c / cost
    np.fill_diagonal(tau, 0.0)
    return PheromoneField(tau, float(tau0) if tau0 is not None else 0.0, float(c), diagnostics)


def local_update(field: PheromoneField, edge: tuple[int, int], rho: float) -> PheromoneField:
    """Pull one edge toward tau0; mutates ``field`` in place and returns it."""
    _check_open_unit("rho", rho)
    r, s = edge
    if r == s:
        raise ValueError(f"edge endpoints must differ, got ({r}, {s})")
    value = (1.0 - rho) * field.tau[r, s] + rho * field.tau0
    field.tau[r, s] = field.tau[s, r] = value
    return field


def global_update(
    field: PheromoneField,
    best: Tour,
    alpha: float,
    scope: DecayScope | str = DecayScope.ALL_EDGES,
) -> PheromoneField:
    """Evaporate by ``1 - alpha`` and deposit ``alpha / L`` on the best tour's edges.

    With ``scope="all_edges"`` every edge evaporates; with ``"best_tour_only"``
    edges off the best tour are left untouched (classic ACS).
    """
    _check_open_unit("alpha", alpha)
    verdict = validate_tour(best.order, field.n)
    if not verdict:
        raise TourError(f"best tour invalid: {verdict.reason}")
    if best.length <= 0:
        raise TourError("best tour must have positive length")
    scope = DecayScope(scope)
    idx = np.asarray(best.order, dtype=np.int64)
    nxt = np.roll(idx, -1)
    deposit = alpha / best.length
    if scope is DecayScope.ALL_EDGES:
        field.tau *= 1.0 - alpha
        on_tour = field.tau[idx, nxt] + deposit
    else:
        on_tour = (1.0 - alpha) * field.tau[idx, nxt] + deposit
    field.tau[idx, nxt] = on_tour
    field.tau[nxt, idx] = on_tour
    return field
