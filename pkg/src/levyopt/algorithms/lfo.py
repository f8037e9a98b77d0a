"""Levy-flight optimizers.

LFO-B     one best-known position; each generation scatters ``population``
          Levy jumps around it and keeps the best if it improves.
LFO-LS    as LFO-B, but every jumped particle descends with compass search
          before selection.
LFO-MLS   a single particle alternating local descent and an unconditional
          Levy jump (multistart local search with Levy restarts).
LFO-ILS   as LFO-MLS, but the jump is retried (same length, fresh direction)
          until it lands on a point better than the current local optimum.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .._engine import BEST, compass_search, done, evaluate, random_feasible
from ..levy import LevyParams, RandomSource, _draw_direction, _draw_length
from ..local_search import LocalSearchConfig
from ..space import _propose
from ._common import ConvergenceTrace, Run, StoppingCriteria, resolve_levy

__all__ = [
    "LfoBConfig",
    "LfoLsConfig",
    "LfoMlsConfig",
    "LfoIlsConfig",
    "run_lfo_b",
    "run_lfo_ls",
    "run_lfo_mls",
    "run_lfo_ils",
]


@dataclass(frozen=True)
class LfoBConfig:
    """``levy=None`` scales the law to the space (see ``LevyParams.for_extent``)."""

    levy: LevyParams | None = None
    population: int = 100

    def __post_init__(self):
        if self.population < 1:
            raise ValueError("population must be >= 1")


@dataclass(frozen=True)
class LfoLsConfig:
    levy: LevyParams | None = None
    population: int = 100
    ls: LocalSearchConfig = field(default_factory=LocalSearchConfig)

    def __post_init__(self):
        if self.population < 1:
            raise ValueError("population must be >= 1")


@dataclass(frozen=True)
class LfoMlsConfig:
    levy: LevyParams | None = None
    ls: LocalSearchConfig = field(default_factory=LocalSearchConfig)
    non_improvement_jump_limit: int = 100

    def __post_init__(self):
        if self.non_improvement_jump_limit < 1:
            raise ValueError("non_improvement_jump_limit must be >= 1")


@dataclass(frozen=True)
class LfoIlsConfig:
    levy: LevyParams | None = None
    ls: LocalSearchConfig = field(default_factory=LocalSearchConfig)
    inner_attempt_cap: int = 100

    def __post_init__(self):
        if self.inner_attempt_cap < 1:
            raise ValueError("inner_attempt_cap must be >= 1")


@njit(cache=True)
def _start(f, fp, cons, box, mv, rec, gen, x):
    if not random_feasible(cons, box, gen, x):
        raise ValueError("could not sample a feasible starting point")
    return evaluate(f, fp, cons, box, x, rec)


@njit(cache=True)
def _lfo_b(f, fp, cons, box, mv, rec, gen, law, population, stall_limit):
    lo, hi, cpar = box
    policy, retries = mv
    st = rec[0]
    n = lo.shape[0]
    x = np.empty(n)
    _start(f, fp, cons, box, mv, rec, gen, x)
    anchor = np.empty(n)
    d = np.empty(n)
    cand = np.empty(n)
    generations = 0
    stall = 0
    while not done(rec):
        anchor[:] = rec[4]
        before = st[BEST]
        for _ in range(population):
            if done(rec):
                break
            l = _draw_length(law, gen)
            _draw_direction(gen, d)
            _propose(anchor, l, d, lo, hi, cons, cpar, policy, retries, law, gen, cand)
            evaluate(f, fp, cons, box, cand, rec)
        generations += 1
        if st[BEST] < before:
            stall = 0
        else:
            stall += 1
            if stall >= stall_limit:
                break
    return generations


@njit(cache=True)
def _lfo_ls(f, fp, cons, box, mv, rec, gen, law, population, stall_limit, h0, shrink, h_min, ls_evals):
    lo, hi, cpar = box
    policy, retries = mv
    st = rec[0]
    n = lo.shape[0]
    x = np.empty(n)
    _start(f, fp, cons, box, mv, rec, gen, x)
    anchor = np.empty(n)
    d = np.empty(n)
    cand = np.empty(n)
    generations = 0
    stall = 0
    while not done(rec):
        anchor[:] = rec[4]
        before = st[BEST]
        for _ in range(population):
            if done(rec):
                break
            l = _draw_length(law, gen)
            _draw_direction(gen, d)
            _propose(anchor, l, d, lo, hi, cons, cpar, policy, retries, law, gen, cand)
            fc = evaluate(f, fp, cons, box, cand, rec)
            compass_search(f, fp, cons, box, mv, rec, gen, cand, fc, h0, shrink, h_min, ls_evals)
        generations += 1
        if st[BEST] < before:
            stall = 0
        else:
            stall += 1
            if stall >= stall_limit:
                break
    return generations


@njit(cache=True)
def _lfo_mls(f, fp, cons, box, mv, rec, gen, law, stall_limit, h0, shrink, h_min, ls_evals):
    """Returns ``(jumps, consecutive jumps without a new best at exit)``."""
    lo, hi, cpar = box
    policy, retries = mv
    st = rec[0]
    n = lo.shape[0]
    x = np.empty(n)
    fx = _start(f, fp, cons, box, mv, rec, gen, x)
    fx = compass_search(f, fp, cons, box, mv, rec, gen, x, fx, h0, shrink, h_min, ls_evals)
    d = np.empty(n)
    cand = np.empty(n)
    jumps = 0
    stall = 0
    while not done(rec):
        before = st[BEST]
        l = _draw_length(law, gen)
        _draw_direction(gen, d)
        _propose(x, l, d, lo, hi, cons, cpar, policy, retries, law, gen, cand)
        x[:] = cand
        fx = evaluate(f, fp, cons, box, x, rec)
        jumps += 1
        fx = compass_search(f, fp, cons, box, mv, rec, gen, x, fx, h0, shrink, h_min, ls_evals)
        if st[BEST] < before:
            stall = 0
        else:
            stall += 1
            if stall >= stall_limit:
                break
    return jumps, stall


@njit(cache=True)
def _lfo_ils(f, fp, cons, box, mv, rec, gen, law, cap, stall_limit, h0, shrink, h_min, ls_evals):
    """Returns ``(outer iterations, inner loops that hit the attempt cap)``."""
    lo, hi, cpar = box
    policy, retries = mv
    st = rec[0]
    n = lo.shape[0]
    x = np.empty(n)
    fx = _start(f, fp, cons, box, mv, rec, gen, x)
    fx = compass_search(f, fp, cons, box, mv, rec, gen, x, fx, h0, shrink, h_min, ls_evals)
    d = np.empty(n)
    cand = np.empty(n)
    iterations = 0
    capped = 0
    stall = 0
    while not done(rec):
        before = st[BEST]
        l = _draw_length(law, gen)
        attempts = 0
        fc = fx
        while attempts < cap and not done(rec):
            _draw_direction(gen, d)
            _propose(x, l, d, lo, hi, cons, cpar, policy, retries, law, gen, cand)
            fc = evaluate(f, fp, cons, box, cand, rec)
            attempts += 1
            if fc < fx:
                break
        if attempts == 0:
            break
        if attempts == cap and not fc < fx:
            capped += 1
        x[:] = cand
        fx = fc
        iterations += 1
        fx = compass_search(f, fp, cons, box, mv, rec, gen, x, fx, h0, shrink, h_min, ls_evals)
        if st[BEST] < before:
            stall = 0
        else:
            stall += 1
            if stall >= stall_limit:
                break
    return iterations, capped


def _ls_args(ls: LocalSearchConfig, space):
    extent = space.max_extent
    return ls.h0_fraction * extent, ls.shrink, ls.h_min_fraction * extent, ls.max_evals


def run_lfo_b(objective, config: LfoBConfig | None, stop: StoppingCriteria,
              rng: RandomSource, checkpoints=None) -> ConvergenceTrace:
    config = config or LfoBConfig()
    run = Run(objective, stop, rng, checkpoints)
    law = resolve_levy(config.levy, objective.space).encode()
    generations = _lfo_b(*run.head, law, config.population, stop.stall_limit)
    trace = run.finish()
    trace.meta["generations"] = int(generations)
    return trace


def run_lfo_ls(objective, config: LfoLsConfig | None, stop: StoppingCriteria,
               rng: RandomSource, checkpoints=None) -> ConvergenceTrace:
    config = config or LfoLsConfig()
    run = Run(objective, stop, rng, checkpoints)
    law = resolve_levy(config.levy, objective.space).encode()
    generations = _lfo_ls(*run.head, law, config.population, stop.stall_limit,
                          *_ls_args(config.ls, objective.space))
    trace = run.finish()
    trace.meta["generations"] = int(generations)
    return trace


def _mls_kernel(run: Run, config: LfoMlsConfig, stop: StoppingCriteria):
    law = resolve_levy(config.levy, run.objective.space).encode()
    limit = min(config.non_improvement_jump_limit, stop.stall_limit)
    return _lfo_mls(*run.head, law, limit, *_ls_args(config.ls, run.objective.space))


def run_lfo_mls(objective, config: LfoMlsConfig | None, stop: StoppingCriteria,
                rng: RandomSource, checkpoints=None) -> ConvergenceTrace:
    config = config or LfoMlsConfig()
    run = Run(objective, stop, rng, checkpoints)
    jumps, stall = _mls_kernel(run, config, stop)
    trace = run.finish()
    trace.meta.update(jumps=int(jumps), jumps_without_improvement=int(stall))
    return trace


def run_lfo_ils(objective, config: LfoIlsConfig | None, stop: StoppingCriteria,
                rng: RandomSource, checkpoints=None) -> ConvergenceTrace:
    config = config or LfoIlsConfig()
    run = Run(objective, stop, rng, checkpoints)
    law = resolve_levy(config.levy, objective.space).encode()
    iterations, capped = _lfo_ils(*run.head, law, config.inner_attempt_cap, stop.stall_limit,
                                  *_ls_args(config.ls, objective.space))
    trace = run.finish()
    trace.meta.update(iterations=int(iterations), capped_escapes=int(capped))
    return trace
