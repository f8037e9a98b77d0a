"""Simulated annealing baseline and the LFO-MLS -> SA hybrid."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .. import _engine as eng
from .._engine import BEST, EVALS, T_START, done, evaluate, max_extent, now_ms
from ..levy import LAW_UNIFORM, RandomSource, _draw_direction, _draw_length
from ..space import _propose
from ._common import ConvergenceTrace, Run, StoppingCriteria
from .lfo import LfoMlsConfig, _mls_kernel, _start

__all__ = ["SaConfig", "LfoSaConfig", "sa_temperature", "sa_accept", "run_sa", "run_lfo_sa"]

T0_FLOOR = 1e-6


@dataclass(frozen=True)
class SaConfig:
    """``t0_fraction`` of |f(start)| sets the initial temperature; moves are
    uniform in length up to ``move_scale`` times the largest box side."""

    t0_fraction: float = 0.1
    ts: float = 1e-4
    move_scale: float = 0.05

    def __post_init__(self):
        if not 0 < self.t0_fraction <= 1:
            raise ValueError("t0_fraction must lie in (0, 1]")
        if not self.ts > 0:
            raise ValueError("ts must be positive")
        if not self.move_scale > 0:
            raise ValueError("move_scale must be positive")


@dataclass(frozen=True)
class LfoSaConfig:
    mls: LfoMlsConfig = field(default_factory=LfoMlsConfig)
    sa: SaConfig = field(default_factory=SaConfig)
    split_fraction: float = 0.5

    def __post_init__(self):
        if not 0 < self.split_fraction < 1:
            raise ValueError("split_fraction must lie in (0, 1)")


@njit(cache=True)
def _temperature(t, t_m, t0, ts):
    # r**t * t0 with r = exp(ln(ts/t0)/t_m)
    return t0 * math.exp(t * math.log(ts / t0) / t_m)


@njit(cache=True)
def _accept(delta, temperature, gen):
    if delta <= 0.0:
        return True
    return gen.random() < math.exp(-delta / temperature)


def sa_temperature(t: float, t_m: float, T0: float, Ts: float) -> float:
    """Power cooling: ``T0`` at ``t = 0`` decaying geometrically to ``Ts`` at ``t_m``."""
    if T0 <= 0 or Ts <= 0:
        raise ValueError("temperatures must be positive")
    if t_m <= 0:
        raise ValueError("t_m must be positive")
    if not 0 <= t <= t_m:
        raise ValueError(f"t must lie in [0, {t_m}], got {t}")
    return float(_temperature(float(t), float(t_m), float(T0), float(Ts)))


def sa_accept(delta: float, T: float, rng: RandomSource) -> bool:
    """Metropolis rule; draws one uniform only when ``delta > 0``."""
    if not T > 0:
        raise ValueError("temperature must be positive")
    return bool(_accept(float(delta), float(T), rng.generator))


@njit(cache=True)
def _anneal(f, fp, cons, box, mv, rec, gen, x, fx, t0_fraction, ts, move_scale,
            by_evals, eval_base, time_base, t_m, stall_limit):
    """Anneal from ``(x, fx)``; returns the number of accepted moves.

    ``t`` is measured from the phase start: evaluations since ``eval_base``
    or milliseconds since ``time_base``, both against the horizon ``t_m``.
    """
    lo, hi, cpar = box
    policy, retries = mv
    st = rec[0]
    n = lo.shape[0]
    law = np.array([LAW_UNIFORM, move_scale * max_extent(box), 0.0, np.inf])
    t0 = max(t0_fraction * abs(fx), T0_FLOOR)
    d = np.empty(n)
    cand = np.empty(n)
    accepted = 0
    stall = 0
    while not done(rec):
        if by_evals:
            t = st[EVALS] - eval_base
        else:
            t = now_ms() - st[T_START] - time_base
        t = min(max(t, 0.0), t_m)
        temperature = _temperature(t, t_m, t0, ts)
        before = st[BEST]
        l = _draw_length(law, gen)
        _draw_direction(gen, d)
        _propose(x, l, d, lo, hi, cons, cpar, policy, retries, law, gen, cand)
        fc = evaluate(f, fp, cons, box, cand, rec)
        if _accept(fc - fx, temperature, gen):
            x[:] = cand
            fx = fc
            accepted += 1
        if st[BEST] < before:
            stall = 0
        else:
            stall += 1
            if stall >= stall_limit:
                break
    return accepted


@njit(cache=True)
def _sa(f, fp, cons, box, mv, rec, gen, t0_fraction, ts, move_scale, by_evals, t_m, stall_limit):
    x = np.empty(box[0].shape[0])
    fx = _start(f, fp, cons, box, mv, rec, gen, x)
    return _anneal(f, fp, cons, box, mv, rec, gen, x, fx, t0_fraction, ts, move_scale,
                   by_evals, 0.0, 0.0, t_m, stall_limit)


def _horizon(stop: StoppingCriteria, evals_spent=0, ms_spent=0.0):
    """Cooling horizon: remaining evaluations if they govern, else remaining time."""
    if stop.max_evals is not None:
        return True, float(max(stop.max_evals - evals_spent, 1))
    return False, float(max(stop.max_time_ms - ms_spent, 1e-3))


def run_sa(objective, config: SaConfig | None, stop: StoppingCriteria, rng: RandomSource,
           checkpoints=None) -> ConvergenceTrace:
    config = config or SaConfig()
    run = Run(objective, stop, rng, checkpoints)
    by_evals, t_m = _horizon(stop)
    accepted = _sa(*run.head, config.t0_fraction, config.ts, config.move_scale, by_evals, t_m, stop.stall_limit)
    trace = run.finish()
    trace.meta["accepted"] = int(accepted)
    return trace


def run_lfo_sa(objective, config: LfoSaConfig | None, stop: StoppingCriteria, rng: RandomSource,
               checkpoints=None) -> ConvergenceTrace:
    """LFO-MLS on ``split_fraction`` of the budget, then annealing from its
    best point for whatever budget remains.

    The first phase is exactly a standalone LFO-MLS run with the reduced
    budget, so the two traces agree up to the phase boundary.
    """
    config = config or LfoSaConfig()
    run = Run(objective, stop, rng, checkpoints)
    st = run.state
    phase_stop = split_stop(stop, config.split_fraction)
    st[eng.MAX_EVALS] = np.inf if phase_stop.max_evals is None else phase_stop.max_evals
    st[eng.MAX_TIME] = np.inf if phase_stop.max_time_ms is None else phase_stop.max_time_ms
    jumps, _ = _mls_kernel(run, config.mls, stop)
    boundary = run.evals
    st[eng.MAX_EVALS] = np.inf if stop.max_evals is None else stop.max_evals
    st[eng.MAX_TIME] = np.inf if stop.max_time_ms is None else stop.max_time_ms
    st[eng.STOPPED] = 0.0
    accepted = 0
    if not done(run.rec):
        elapsed = now_ms() - st[T_START]
        by_evals, t_m = _horizon(stop, boundary, elapsed)
        x = run.rec[4].copy()
        accepted = _anneal(*run.head, x, float(st[BEST]), config.sa.t0_fraction, config.sa.ts,
                           config.sa.move_scale, by_evals, float(boundary), elapsed, t_m, stop.stall_limit)
    trace = run.finish(phase_boundary=boundary)
    trace.meta.update(jumps=int(jumps), accepted=int(accepted))
    return trace


def split_stop(stop: StoppingCriteria, fraction: float) -> StoppingCriteria:
    """The first-phase stopping criteria of LFO-SA."""
    return StoppingCriteria(
        max_evals=None if stop.max_evals is None else max(int(math.floor(fraction * stop.max_evals)), 1),
        max_time_ms=None if stop.max_time_ms is None else fraction * stop.max_time_ms,
        target_value=stop.target_value,
        non_improvement_limit=stop.non_improvement_limit,
    )
