"""A short tour of the six optimizers on the benchmark set.

Every optimizer gets the same evaluation budget and the same seeds, and we
print the mean best-so-far at a few checkpoints.  Budgets here are small so
the script finishes in about a minute.

Run:  python demos/benchmark_tour.py
"""
import numpy as np

from levyopt.harness import ExperimentConfig, aggregate_traces, run_experiment

BUDGET = 20_000
CHECKPOINTS = (200, 2_000, 20_000)

for fn in ("f0", "f2", "f5", "f6"):
    cfg = ExperimentConfig(function=fn, replications=5, master_seed=1, max_evals=BUDGET, checkpoints=CHECKPOINTS)
    agg = aggregate_traces(run_experiment(cfg))
    print(f"\n{fn} (dim {cfg.objective().dim}), mean best over 5 runs")
    print("algorithm " + "".join(f"{c:>14d}" for c in CHECKPOINTS))
    for alg in cfg.algorithms:
        print(f"{alg:9s} " + "".join(f"{agg.at(alg, c).mean_best:14.5g}" for c in CHECKPOINTS))

# %% The Levy hybrids usually lead early; annealing catches up when the
# budget is long enough for its temperature to fall.
