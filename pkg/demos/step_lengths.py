"""How the power index shapes Levy step lengths.

Run:  python demos/step_lengths.py
"""
import numpy as np

from levyopt import LevyParams, RandomSource, levy_cdf, sample_lengths

# %% Draw a million lengths at three values of beta and compare the tails.
for beta in (0.5, 1.5, 3.0):
    p = LevyParams(beta=beta, l0=1.0)
    x = sample_lengths(p, RandomSource(1), 1_000_000)
    q50, q99 = np.quantile(x, [0.5, 0.99])
    print(f"beta={beta:3.1f}  median {q50:8.3f}  99th pct {q99:10.2f}  max {x.max():14.1f}")

# %% Small beta means long jumps are common: the chance of a step beyond 10 l0.
for beta in (0.5, 1.5, 3.0):
    print(f"P(l > 10) at beta={beta}: {1 - levy_cdf(10.0, LevyParams(beta)):.4f}")

# %% A cap clamps long jumps instead of rejecting them, so mass piles up at l_max.
capped = sample_lengths(LevyParams(0.5, 1.0, l_max=20.0), RandomSource(2), 100_000)
print(f"fraction clamped at l_max=20: {np.mean(capped == 20.0):.3f}")
