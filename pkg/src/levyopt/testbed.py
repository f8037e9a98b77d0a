"""Benchmark objectives: Corana's f0, Rosenbrock (f2), Shekel's foxholes
(f5), Rastrigin (f6) and Keane's bump.

Every objective is a numba kernel ``f(x, params) -> float`` so the
optimizers can call it from compiled loops; the ``evaluate_*`` functions
are the checked Python entry points.  Bump is posed here as minimisation of
``1 - |...| / sqrt(...)``, so lower is better throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numba import njit

from .space import ClipToEdge, Resample, SearchSpace

__all__ = [
    "Objective",
    "evaluate_f0",
    "evaluate_f2",
    "evaluate_f5",
    "evaluate_f6",
    "evaluate_bump",
    "get_objective",
    "OBJECTIVES",
]

F0_D = np.array([1.0, 1000.0, 10.0, 100.0])
F0_S = 0.2
F0_T = 0.05
F0_C = 0.15

_GRID = np.array([-32.0, -16.0, 0.0, 16.0, 32.0])
# foxhole centres, column j = (a1j, a2j)
F5_A = np.vstack([np.tile(_GRID, 5), np.repeat(_GRID, 5)])


@njit(cache=True)
def _sgn(v):
    if v > 0.0:
        return 1.0
    if v < 0.0:
        return -1.0
    return 0.0


@njit(cache=True)
def f0(x, params):
    total = 0.0
    for i in range(4):
        xi = x[i]
        z = math.floor(abs(xi / F0_S) + 0.49999) * _sgn(xi) * F0_S
        if abs(xi - z) < F0_T:
            w = F0_T * _sgn(z) + z
            total += w * w * F0_C * F0_D[i]
        else:
            total += F0_D[i] * xi * xi
    return total


@njit(cache=True)
def f2(x, params):
    total = 0.0
    for i in range(x.shape[0] - 1):
        a = x[i] * x[i] - x[i + 1]
        b = 1.0 - x[i]
        total += 100.0 * a * a + b * b
    return total


@njit(cache=True)
def f5(x, params):
    s = 0.0
    for j in range(25):
        d1 = x[0] - F5_A[0, j]
        d2 = x[1] - F5_A[1, j]
        s += 1.0 / ((j + 1) + d1 ** 6 + d2 ** 6)
    return 1.0 / (1.0 / 500.0 + s)


@njit(cache=True)
def f6(x, params):
    n = x.shape[0]
    total = 10.0 * n
    for i in range(n):
        total += x[i] * x[i] - 10.0 * math.cos(2.0 * math.pi * x[i])
    return total


@njit(cache=True)
def bump(x, params):
    s4 = 0.0
    p2 = 1.0
    w = 0.0
    for i in range(x.shape[0]):
        c2 = math.cos(x[i]) ** 2
        s4 += c2 * c2
        p2 *= c2
        w += (i + 1) * x[i] * x[i]
    return 1.0 - abs(s4 - 2.0 * p2) / math.sqrt(w)


@njit(cache=True)
def bump_constraint(x, params):
    n = x.shape[0]
    prod = 1.0
    total = 0.0
    for i in range(n):
        if not (0.0 < x[i] < 10.0):
            return False
        prod *= x[i]
        total += x[i]
    return prod > 0.75 and total < 7.5 * n


def _vector(x, dim=None, min_dim=1, name="objective"):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"{name} expects a 1-D point")
    if dim is not None and x.size != dim:
        raise ValueError(f"{name} is defined for dimension {dim}, got {x.size}")
    if x.size < min_dim:
        raise ValueError(f"{name} needs dimension >= {min_dim}, got {x.size}")
    return x


_NOPARAMS = np.zeros(1)


def evaluate_f0(x) -> float:
    return float(f0(_vector(x, 4, name="f0"), _NOPARAMS))


def evaluate_f2(x) -> float:
    return float(f2(_vector(x, min_dim=2, name="f2"), _NOPARAMS))


def evaluate_f5(x) -> float:
    return float(f5(_vector(x, 2, name="f5"), _NOPARAMS))


def evaluate_f6(x) -> float:
    return float(f6(_vector(x, name="f6"), _NOPARAMS))


def evaluate_bump(x) -> float:
    x = _vector(x, min_dim=2, name="bump")
    if not np.any(x):
        raise ValueError("bump is undefined at the origin")
    return float(bump(x, _NOPARAMS))


@dataclass(frozen=True, eq=False)
class Objective:
    """A named objective bound to its search space.

    ``func`` is a numba-jitted ``f(x, params) -> float``.  Calling the
    objective evaluates it at a single point.
    """

    name: str
    func: Callable
    space: SearchSpace
    params: np.ndarray = field(default_factory=lambda: np.zeros(1))
    known_best_value: float | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"{self.name} expects dimension {self.dim}, got shape {x.shape}")
        return float(self.func(x, self.params))

    def with_policy(self, policy) -> "Objective":
        return Objective(self.name, self.func, self.space.with_policy(policy), self.params, self.known_best_value)


@dataclass(frozen=True)
class _Entry:
    func: Callable
    bound: tuple[float, float]
    default_dim: int
    fixed_dim: bool = False
    min_dim: int = 1
    constraint: Callable | None = None
    known_best: float | None = None


OBJECTIVES: dict[str, _Entry] = {
    "f0": _Entry(f0, (-1000.0, 1000.0), 4, fixed_dim=True, min_dim=4, known_best=0.0),
    "f2": _Entry(f2, (-2.048, 2.048), 10, min_dim=2, known_best=0.0),
    "f5": _Entry(f5, (-65.536, 65.536), 2, fixed_dim=True, min_dim=2,
                 known_best=float(f5(np.array([-32.0, -32.0]), _NOPARAMS))),
    "f6": _Entry(f6, (-5.12, 5.12), 10, known_best=0.0),
    "bump": _Entry(bump, (0.0, 10.0), 50, min_dim=2, constraint=bump_constraint),
}


def get_objective(name: str, dim: int | None = None, boundary: ClipToEdge | Resample = ClipToEdge()) -> Objective:
    """Look up a benchmark by name (``f0``, ``f2``, ``f5``, ``f6``, ``bump``)."""
    try:
        entry = OBJECTIVES[name]
    except KeyError:
        raise KeyError(f"unknown objective {name!r}; choose from {', '.join(OBJECTIVES)}") from None
    if dim is None:
        dim = entry.default_dim
    if entry.fixed_dim and dim != entry.default_dim:
        raise ValueError(f"{name} is fixed at dimension {entry.default_dim}, got {dim}")
    if dim < entry.min_dim:
        raise ValueError(f"{name} needs dimension >= {entry.min_dim}, got {dim}")
    lo, hi = entry.bound
    space = SearchSpace(np.full(dim, lo), np.full(dim, hi), entry.constraint, boundary_policy=boundary)
    return Objective(name, entry.func, space, known_best_value=entry.known_best)
