"""Compass (coordinate pattern) search, the local descent used by the hybrid
Levy optimizers.

It needs no derivatives, which matters for the discontinuous f0, and is
deterministic apart from the move operator's fallbacks at constraint
boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _engine as eng
from .levy import RandomSource
from .space import EvaluatedPoint, is_feasible

__all__ = ["LocalSearchConfig", "EvalCounter", "local_search"]


@dataclass(frozen=True)
class LocalSearchConfig:
    """Step sizes are fractions of the space's largest side."""

    h0_fraction: float = 0.05
    shrink: float = 0.5
    h_min_fraction: float = 1e-8
    max_evals: int = 300

    def __post_init__(self):
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")
        if not 0 < self.h_min_fraction < self.h0_fraction:
            raise ValueError("need 0 < h_min_fraction < h0_fraction")
        if self.max_evals < 1:
            raise ValueError("max_evals must be >= 1")


@dataclass
class EvalCounter:
    """Remaining objective evaluations, shared by everything that spends them."""

    remaining: int

    def spend(self, n: int) -> None:
        if n > self.remaining:
            raise RuntimeError(f"overspent evaluation budget by {n - self.remaining}")
        self.remaining -= n


def local_search(
    start: EvaluatedPoint,
    objective,
    config: LocalSearchConfig,
    budget: EvalCounter,
    rng: RandomSource,
) -> EvaluatedPoint:
    """Descend from ``start`` until the step falls below the resolution or
    the evaluation allowance ``min(config.max_evals, budget.remaining)`` runs
    out.  The result is never worse than ``start``."""
    space = objective.space
    x = np.array(start.point, dtype=float)
    if not is_feasible(space, x):
        raise ValueError("local search must start from a feasible point")
    allowance = min(config.max_evals, budget.remaining)
    if allowance <= 0:
        return start

    extent = space.max_extent
    st = eng.new_state(allowance, None, None)
    st[eng.BEST] = start.value
    best_x = x.copy()
    rec = (st, np.zeros(0, dtype=np.int64), np.zeros(0), np.zeros(0), best_x)
    box = (space.lower, space.upper, space.constraint_params)
    mv = (space.boundary_policy.code, space.boundary_policy.max_retries)
    fx = eng.compass_search(
        objective.func, objective.params, space.predicate, box, mv, rec, rng.generator,
        x, float(start.value), config.h0_fraction * extent, config.shrink,
        config.h_min_fraction * extent, allowance,
    )
    budget.spend(int(st[eng.EVALS]))
    if fx < start.value:
        return EvaluatedPoint(x, float(fx))
    return start
