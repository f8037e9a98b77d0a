"""Compiled bookkeeping shared by every optimizer.

All runners thread the same small set of arguments through their kernels:

``f, fp``      objective kernel and its parameter array
``cons``       constraint kernel (``no_constraint`` when the box is all)
``box``        ``(lower, upper, constraint_params)``
``mv``         ``(policy_code, max_retries)``
``rec``        ``(state, thresholds, cp_elapsed, cp_best, best_x)``
``gen``        the ``numpy.random.Generator`` behind a RandomSource

``state`` is a float vector indexed by the constants below.  Every objective
call goes through :func:`evaluate`, which is the single place where the
evaluation counter moves, best-so-far is updated and checkpoints fire.
"""
import time

import numpy as np
from numba import njit, objmode

from .space import _feasible, _propose as _propose_kernel

EVALS = 0
MAX_EVALS = 1
T_START = 2
MAX_TIME = 3
TARGET = 4
BEST = 5
CP_INDEX = 6
STOPPED = 7
INFEASIBLE = 8
LAST_CLOCK = 9
STATE_SIZE = 10

# evaluations between wall-clock polls when a time budget is active
CLOCK_STRIDE = 16
INIT_ATTEMPTS = 1_000_000


@njit(cache=True)
def now_ms():
    with objmode(t="float64"):
        t = time.perf_counter() * 1000.0
    return t


def new_state(max_evals, max_time_ms, target):
    st = np.zeros(STATE_SIZE)
    st[MAX_EVALS] = np.inf if max_evals is None else float(max_evals)
    st[MAX_TIME] = np.inf if max_time_ms is None else float(max_time_ms)
    st[TARGET] = -np.inf if target is None else float(target)
    st[BEST] = np.inf
    st[T_START] = now_ms()
    return st


@njit(cache=True)
def _fire_checkpoints(rec):
    st, cps, cp_el, cp_best, _ = rec
    k = int(st[CP_INDEX])
    n = cps.shape[0]
    if k < n and cps[k] <= st[EVALS]:
        elapsed = now_ms() - st[T_START]
        while k < n and cps[k] <= st[EVALS]:
            cp_el[k] = elapsed
            cp_best[k] = st[BEST]
            k += 1
        st[CP_INDEX] = k


@njit(cache=True)
def evaluate(f, fp, cons, box, x, rec):
    lo, hi, cpar = box
    st = rec[0]
    v = f(x, fp)
    if not _feasible(x, lo, hi, cons, cpar):
        st[INFEASIBLE] += 1
    st[EVALS] += 1
    if v < st[BEST]:
        st[BEST] = v
        rec[4][:] = x
    _fire_checkpoints(rec)
    return v


@njit(cache=True)
def done(rec):
    st = rec[0]
    if st[STOPPED] != 0.0:
        return True
    if st[EVALS] >= st[MAX_EVALS] or st[BEST] <= st[TARGET] + 1e-12:
        st[STOPPED] = 1.0
        return True
    if st[MAX_TIME] < np.inf and (st[EVALS] == 0 or st[EVALS] - st[LAST_CLOCK] >= CLOCK_STRIDE):
        st[LAST_CLOCK] = st[EVALS]
        if now_ms() - st[T_START] >= st[MAX_TIME]:
            st[STOPPED] = 1.0
            return True
    return False


@njit(cache=True)
def random_feasible(cons, box, gen, out):
    """Uniform point in the box, rejection-sampled against the constraint."""
    lo, hi, cpar = box
    for _ in range(INIT_ATTEMPTS):
        for i in range(out.shape[0]):
            out[i] = lo[i] + gen.random() * (hi[i] - lo[i])
        if _feasible(out, lo, hi, cons, cpar):
            return True
    return False


@njit(cache=True)
def max_extent(box):
    lo, hi, _ = box
    m = 0.0
    for i in range(lo.shape[0]):
        m = max(m, hi[i] - lo[i])
    return m


@njit(cache=True)
def same_point(a, b):
    for i in range(a.shape[0]):
        if a[i] != b[i]:
            return False
    return True


@njit(cache=True)
def compass_search(f, fp, cons, box, mv, rec, gen, x, fx, h0, shrink, h_min, max_evals):
    """Best-improvement coordinate pattern search, in place on ``x``.

    Probes ``x -/+ h e_i`` for every axis in order, moves to the best
    strictly improving probe, halves (``shrink``) the step otherwise.  Probes
    that the move operator maps back onto ``x`` are not evaluated.  Returns
    the final value.
    """
    lo, hi, cpar = box
    policy, retries = mv
    n = x.shape[0]
    d = np.zeros(n)
    cand = np.empty(n)
    best_c = np.empty(n)
    no_law = np.array([-1.0, 0.0, 0.0, np.inf])
    used = 0
    h = h0
    while h >= h_min:
        best_v = fx
        found = False
        exhausted = False
        for i in range(n):
            for s in (-1.0, 1.0):
                if used >= max_evals or done(rec):
                    exhausted = True
                    break
                d[i] = s
                _propose_kernel(x, h, d, lo, hi, cons, cpar, policy, retries, no_law, gen, cand)
                d[i] = 0.0
                if same_point(cand, x):
                    continue
                v = evaluate(f, fp, cons, box, cand, rec)
                used += 1
                if v < best_v:
                    best_v = v
                    best_c[:] = cand
                    found = True
            if exhausted:
                break
        if found:
            x[:] = best_c
            fx = best_v
        elif not exhausted:
            h *= shrink
        if exhausted:
            break
    return fx

