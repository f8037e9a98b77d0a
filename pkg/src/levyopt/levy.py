"""Levy step-length law, random directions and the seeded random source.

Step lengths follow the normalized power law

    P(l) = beta / (l0 * (1 + l/l0) ** (1 + beta)),   l >= 0

whose tail decays like ``l ** -(1 + beta)``.  Small ``beta`` gives frequent
long jumps, large ``beta`` keeps the walker mostly local.  Values of ``beta``
above 2 fall outside the physically meaningful Levy range but are accepted,
since nothing in the computation depends on it.

Lengths are drawn by inverse transform: ``l = l0 * (U ** (-1/beta) - 1)``
with ``U`` uniform on (0, 1).

The scalar samplers are numba kernels so the optimizers can call them from
compiled loops with the very same stream consumption as the Python API.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

__all__ = [
    "LevyParams",
    "UniformLength",
    "RandomSource",
    "levy_pdf",
    "levy_cdf",
    "length_from_uniform",
    "sample_length",
    "sample_lengths",
    "sample_direction",
]

# Length-law encoding shared with the compiled kernels: [kind, a, b, cap].
LAW_NONE = -1.0
LAW_LEVY = 0.0
LAW_UNIFORM = 1.0


@dataclass(frozen=True)
class LevyParams:
    """Parameters of the step-length law.

    ``l_max`` truncates generated lengths (``min(raw, l_max)``); the
    density and CDF always describe the uncapped law.
    """

    beta: float = 1.5
    l0: float = 1.0
    l_max: float | None = None

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be a positive finite number, got {self.beta!r}")
        if not (self.l0 > 0 and math.isfinite(self.l0)):
            raise ValueError(f"l0 must be a positive finite number, got {self.l0!r}")
        if self.l_max is not None and not self.l_max > 0:
            raise ValueError(f"l_max must be positive when given, got {self.l_max!r}")

    @classmethod
    def for_extent(cls, max_extent: float, beta: float = 1.5, l0_fraction: float = 0.05):
        """Scale the law to a search box: ``l0`` is a fraction of the largest
        side and jumps are capped at half of it."""
        return cls(beta=beta, l0=l0_fraction * max_extent, l_max=0.5 * max_extent)

    def encode(self) -> np.ndarray:
        cap = np.inf if self.l_max is None else float(self.l_max)
        return np.array([LAW_LEVY, self.beta, self.l0, cap])


@dataclass(frozen=True)
class UniformLength:
    """Lengths uniform on ``(0, scale]``; the local move law used by annealing."""

    scale: float

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale!r}")

    def encode(self) -> np.ndarray:
        return np.array([LAW_UNIFORM, self.scale, 0.0, np.inf])


NO_LAW = np.array([LAW_NONE, 0.0, 0.0, np.inf])


class RandomSource:
    """Seeded stream of uniform and standard-normal reals.

    Wraps a PCG64 ``numpy.random.Generator``.  Replication streams are
    derived with :meth:`derive`, which hashes ``(master_seed, *keys)``
    through ``numpy.random.SeedSequence`` into a single 64-bit seed, so a
    replication's stream never depends on which worker runs it or when.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    @staticmethod
    def mix(master_seed: int, *keys: int) -> int:
        ss = np.random.SeedSequence([int(master_seed), *(int(k) for k in keys)])
        return int(ss.generate_state(1, np.uint64)[0])

    @classmethod
    def derive(cls, master_seed: int, *keys: int) -> "RandomSource":
        return cls(cls.mix(master_seed, *keys))

    def uniform(self) -> float:
        """Uniform on (0, 1); an exact zero from the generator is redrawn."""
        return _open_uniform(self.generator)

    def normal(self, size=None):
        return self.generator.standard_normal(size)

    def __repr__(self):
        return f"RandomSource(seed={self.seed})"


@njit(cache=True)
def _open_uniform(gen):
    u = gen.random()
    while u == 0.0:
        u = gen.random()
    return u


@njit(cache=True)
def _levy_length(u, beta, l0, cap):
    raw = l0 * (u ** (-1.0 / beta) - 1.0)
    return raw if raw < cap else cap


@njit(cache=True)
def _draw_length(law, gen):
    """One length from an encoded law, consuming exactly one uniform."""
    u = _open_uniform(gen)
    if law[0] == LAW_LEVY:
        return _levy_length(u, law[1], law[2], law[3])
    # (1 - u) maps [0, 1) onto (0, 1]
    return (1.0 - u) * law[1]


@njit(cache=True)
def _draw_direction(gen, out):
    n = out.shape[0]
    while True:
        s = 0.0
        for i in range(n):
            v = gen.standard_normal()
            out[i] = v
            s += v * v
        norm = math.sqrt(s)
        if norm >= 1e-12:
            break
    for i in range(n):
        out[i] /= norm


@njit(cache=True)
def _draw_lengths(n, law, gen):
    out = np.empty(n)
    for i in range(n):
        out[i] = _draw_length(law, gen)
    return out


def levy_pdf(l, params: LevyParams):
    """Density of the uncapped step-length law at ``l >= 0``."""
    l = np.asarray(l, dtype=float)
    if np.any(l < 0):
        raise ValueError("step length must be non-negative")
    out = params.beta / (params.l0 * (1.0 + l / params.l0) ** (1.0 + params.beta))
    return float(out) if out.ndim == 0 else out


def levy_cdf(l, params: LevyParams):
    """``F(l) = 1 - (1 + l/l0) ** -beta`` for the uncapped law."""
    l = np.asarray(l, dtype=float)
    if np.any(l < 0):
        raise ValueError("step length must be non-negative")
    # -expm1(-beta*log1p(.)) keeps precision for tiny l
    out = -np.expm1(-params.beta * np.log1p(l / params.l0))
    return float(out) if out.ndim == 0 else out


def length_from_uniform(u, params: LevyParams):
    """Map a uniform draw ``u`` in (0, 1) to a step length (capped if set)."""
    u = np.asarray(u, dtype=float)
    if np.any((u <= 0) | (u >= 1)):
        raise ValueError("u must lie in the open interval (0, 1)")
    raw = params.l0 * (u ** (-1.0 / params.beta) - 1.0)
    if params.l_max is not None:
        raw = np.minimum(raw, params.l_max)
    return float(raw) if raw.ndim == 0 else raw


def sample_length(params: LevyParams, rng: RandomSource) -> float:
    """Draw one step length, consuming exactly one uniform from ``rng``."""
    return float(_draw_length(params.encode(), rng.generator))


def sample_lengths(params: LevyParams, rng: RandomSource, n: int) -> np.ndarray:
    """``n`` successive :func:`sample_length` draws (same stream, same values)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _draw_lengths(int(n), params.encode(), rng.generator)


def sample_direction(dim: int, rng: RandomSource) -> np.ndarray:
    """Uniform random unit vector in ``dim`` dimensions."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    out = np.empty(int(dim))
    _draw_direction(rng.generator, out)
    return out
