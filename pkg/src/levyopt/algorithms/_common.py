from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .. import _engine as eng
from ..levy import LevyParams, RandomSource
from ..space import EvaluatedPoint

# stand-in for "no limit" inside kernels that want an integer
UNLIMITED = 2**62


@dataclass(frozen=True)
class StoppingCriteria:
    """When a run ends.  Whichever criterion fires first wins.

    ``non_improvement_limit`` counts the optimizer's own outer iterations
    (generations, jumps or annealing steps) that fail to improve the best
    value.
    """

    max_evals: int | None = None
    max_time_ms: float | None = None
    target_value: float | None = None
    non_improvement_limit: int | None = None

    def __post_init__(self):
        if self.max_evals is None and self.max_time_ms is None:
            raise ValueError("set max_evals, max_time_ms or both")
        if self.max_evals is not None and self.max_evals < 1:
            raise ValueError("max_evals must be >= 1")
        if self.max_time_ms is not None and not self.max_time_ms > 0:
            raise ValueError("max_time_ms must be positive")
        if self.non_improvement_limit is not None and self.non_improvement_limit < 1:
            raise ValueError("non_improvement_limit must be >= 1")

    @property
    def stall_limit(self) -> int:
        return UNLIMITED if self.non_improvement_limit is None else int(self.non_improvement_limit)


@dataclass(eq=False)
class ConvergenceTrace:
    """Best-so-far values of one run, sampled at evaluation thresholds.

    ``best[i]`` is the best value after exactly ``evals[i]`` objective
    calls.  Thresholds the run never reached (it stopped early) carry the
    final best value and the final elapsed time.
    """

    evals: np.ndarray
    elapsed_ms: np.ndarray
    best: np.ndarray
    final_best: EvaluatedPoint
    seed: int
    evals_used: int
    infeasible_evals: int = 0
    phase_boundary: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def checkpoints(self) -> list[tuple[int, int, float]]:
        return [(int(e), int(t), float(b)) for e, t, b in zip(self.evals, self.elapsed_ms, self.best)]


def default_checkpoints(max_evals: int, count: int = 20, first: int = 100) -> np.ndarray:
    """``count`` log-spaced thresholds from ``first`` to ``max_evals``."""
    if max_evals <= first:
        return np.array([max_evals], dtype=np.int64)
    raw = np.round(np.logspace(math.log10(first), math.log10(max_evals), count))
    return np.unique(raw.astype(np.int64))


# schedule used when only a time budget is given
TIME_ONLY_CHECKPOINT_CAP = 10**7


def resolve_levy(levy: LevyParams | None, space) -> LevyParams:
    return LevyParams.for_extent(space.max_extent) if levy is None else levy


class Run:
    """Tracker arrays for one runner invocation, plus trace assembly."""

    def __init__(self, objective, stop: StoppingCriteria, rng: RandomSource, checkpoints=None):
        if checkpoints is None:
            cap = stop.max_evals if stop.max_evals is not None else TIME_ONLY_CHECKPOINT_CAP
            checkpoints = default_checkpoints(cap)
        cps = np.asarray(checkpoints, dtype=np.int64)
        if cps.ndim != 1 or cps.size == 0 or np.any(cps < 1) or np.any(np.diff(cps) <= 0):
            raise ValueError("checkpoints must be a non-empty, strictly increasing list of positive counts")
        self.objective = objective
        self.stop = stop
        self.rng = rng
        space = objective.space
        self.state = eng.new_state(stop.max_evals, stop.max_time_ms, stop.target_value)
        self.rec = (self.state, cps, np.full(cps.size, np.nan), np.full(cps.size, np.nan), np.zeros(space.dim))
        self.box = (space.lower, space.upper, space.constraint_params)
        self.mv = (space.boundary_policy.code, space.boundary_policy.max_retries)

    @property
    def head(self):
        """Arguments every kernel takes first: ``f, fp, cons, box, mv, rec, gen``."""
        obj = self.objective
        return obj.func, obj.params, obj.space.predicate, self.box, self.mv, self.rec, self.rng.generator

    @property
    def evals(self) -> int:
        return int(self.state[eng.EVALS])

    def finish(self, phase_boundary=None) -> ConvergenceTrace:
        st, cps, cp_el, cp_best, best_x = self.rec
        k = int(st[eng.CP_INDEX])
        if k < cps.size:
            cp_el[k:] = eng.now_ms() - st[eng.T_START]
            cp_best[k:] = st[eng.BEST]
        return ConvergenceTrace(
            evals=cps.copy(),
            elapsed_ms=np.floor(cp_el).astype(np.int64),
            best=cp_best.copy(),
            final_best=EvaluatedPoint(best_x.copy(), float(st[eng.BEST])),
            seed=self.rng.seed,
            evals_used=int(st[eng.EVALS]),
            infeasible_evals=int(st[eng.INFEASIBLE]),
            phase_boundary=phase_boundary,
        )
