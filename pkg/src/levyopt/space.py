"""Bounded search spaces, feasibility and the move operator.

A move from a feasible point is ``point + length * direction``.  When that
lands outside the feasible set one of two policies applies:

* :class:`ClipToEdge` stops the move where the ray leaves the box (the
  direction is preserved, only the travelled distance shrinks).
* :class:`Resample` draws a fresh move (length and direction) up to
  ``max_retries`` times, then falls back to clipping.

Both guarantee that the returned point is feasible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numba import njit

from .levy import NO_LAW, LAW_NONE, LevyParams, RandomSource, UniformLength, _draw_direction, _draw_length

__all__ = [
    "ClipToEdge",
    "Resample",
    "SearchSpace",
    "EvaluatedPoint",
    "is_feasible",
    "propose_move",
]

POLICY_CLIP = 0
POLICY_RESAMPLE = 1

# direction redraws tried when a clipped move violates the constraint
CLIP_CONSTRAINT_ATTEMPTS = 100


@dataclass(frozen=True)
class ClipToEdge:
    code = POLICY_CLIP
    max_retries = 0


@dataclass(frozen=True)
class Resample:
    max_retries: int = 100
    code = POLICY_RESAMPLE

    def __post_init__(self):
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")


@njit(cache=True)
def no_constraint(x, params):
    return True


@dataclass(frozen=True, eq=False)
class SearchSpace:
    """Axis-aligned box with an optional extra feasibility predicate.

    ``constraint`` must be a numba-jitted ``f(x, params) -> bool``; it is
    checked in addition to the (closed) box bounds.
    """

    lower: np.ndarray
    upper: np.ndarray
    constraint: Callable | None = None
    constraint_params: np.ndarray = field(default_factory=lambda: np.zeros(1))
    boundary_policy: ClipToEdge | Resample = ClipToEdge()

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float)).copy()
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float)).copy()
        if lower.shape != upper.shape or lower.ndim != 1 or lower.size == 0:
            raise ValueError("lower and upper must be 1-D arrays of equal, non-zero length")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "constraint_params", np.asarray(self.constraint_params, dtype=float))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def max_extent(self) -> float:
        return float(np.max(self.upper - self.lower))

    @property
    def predicate(self):
        return no_constraint if self.constraint is None else self.constraint

    def with_policy(self, policy) -> "SearchSpace":
        return SearchSpace(self.lower, self.upper, self.constraint, self.constraint_params, policy)

    def contains(self, x) -> bool:
        return is_feasible(self, x)


@dataclass(frozen=True, eq=False)
class EvaluatedPoint:
    """A point with its objective value.

    Use :meth:`of` to build one from an objective so the value is computed
    rather than trusted.
    """

    point: np.ndarray
    value: float

    @classmethod
    def of(cls, objective, x) -> "EvaluatedPoint":
        x = np.array(x, dtype=float)
        return cls(x, objective(x))


@njit(cache=True)
def _in_box(x, lo, hi):
    for i in range(x.shape[0]):
        if not (lo[i] <= x[i] <= hi[i]):
            return False
    return True


@njit(cache=True)
def _feasible(x, lo, hi, cons, cparams):
    return _in_box(x, lo, hi) and cons(x, cparams)


@njit(cache=True)
def _ray_clip(frm, length, d, lo, hi, out):
    """Truncate ``frm + length*d`` at the first box face the ray meets."""
    n = frm.shape[0]
    t = 1.0
    for i in range(n):
        s = length * d[i]
        if s > 0.0:
            ti = (hi[i] - frm[i]) / s
        elif s < 0.0:
            ti = (lo[i] - frm[i]) / s
        else:
            continue
        if ti < t:
            t = ti
    if t < 0.0:
        t = 0.0
    for i in range(n):
        v = frm[i] + t * length * d[i]
        # rounding can leave v a hair outside the face it was clipped to
        if v < lo[i]:
            v = lo[i]
        elif v > hi[i]:
            v = hi[i]
        out[i] = v


@njit(cache=True)
def _clip_move(frm, length, d, lo, hi, cons, cparams, gen, out):
    _ray_clip(frm, length, d, lo, hi, out)
    if cons(out, cparams):
        return
    dd = np.empty(frm.shape[0])
    for _ in range(CLIP_CONSTRAINT_ATTEMPTS):
        _draw_direction(gen, dd)
        _ray_clip(frm, length, dd, lo, hi, out)
        if cons(out, cparams):
            return
    out[:] = frm


@njit(cache=True)
def _propose(frm, length, d, lo, hi, cons, cparams, policy, max_retries, law, gen, out):
    if policy == POLICY_CLIP:
        _clip_move(frm, length, d, lo, hi, cons, cparams, gen, out)
        return
    n = frm.shape[0]
    for i in range(n):
        out[i] = frm[i] + length * d[i]
    if _feasible(out, lo, hi, cons, cparams):
        return
    dd = d.copy()
    l = length
    for _ in range(max_retries):
        if law[0] != LAW_NONE:
            l = _draw_length(law, gen)
        _draw_direction(gen, dd)
        for i in range(n):
            out[i] = frm[i] + l * dd[i]
        if _feasible(out, lo, hi, cons, cparams):
            return
    _clip_move(frm, l, dd, lo, hi, cons, cparams, gen, out)


def is_feasible(space: SearchSpace, x) -> bool:
    """Inside the closed box and satisfying the space's constraint, if any."""
    x = np.asarray(x, dtype=float)
    if x.shape != (space.dim,):
        raise ValueError(f"expected a point of dimension {space.dim}, got shape {x.shape}")
    return bool(_feasible(x, space.lower, space.upper, space.predicate, space.constraint_params))


def _encode_law(law) -> np.ndarray:
    if law is None:
        return NO_LAW
    if isinstance(law, (LevyParams, UniformLength)):
        return law.encode()
    raise TypeError(f"unsupported length law {law!r}")


def propose_move(
    start,
    length: float,
    direction,
    space: SearchSpace,
    rng: RandomSource,
    law: LevyParams | UniformLength | None = None,
) -> np.ndarray:
    """Move ``length`` along ``direction`` from ``start``, staying feasible.

    ``law`` is the distribution used to redraw lengths when the
    :class:`Resample` policy rejects a move.  Without it, retries keep the
    original length and only redraw the direction.
    """
    start = np.asarray(start, dtype=float)
    direction = np.asarray(direction, dtype=float)
    if not is_feasible(space, start):
        raise ValueError("move must start from a feasible point")
    if length < 0:
        raise ValueError("length must be non-negative")
    if direction.shape != start.shape:
        raise ValueError("direction and start differ in dimension")
    out = np.empty_like(start)
    policy = space.boundary_policy
    _propose(
        start, float(length), direction, space.lower, space.upper, space.predicate,
        space.constraint_params, policy.code, policy.max_retries, _encode_law(law),
        rng.generator, out,
    )
    return out
