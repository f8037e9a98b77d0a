"""The constrained Bump problem and the two boundary policies.

The optimum of Bump sits on the product constraint, so many Levy jumps land
outside the feasible region.  ClipToEdge stops a jump at the box wall and
then re-aims it, while Resample draws a whole new move.

Run:  python demos/constrained_bump.py
"""
import numpy as np

from levyopt import ClipToEdge, RandomSource, Resample, StoppingCriteria, get_objective, is_feasible
from levyopt import run_lfo_mls, run_lfo_sa, run_sa

stop = StoppingCriteria(max_evals=50_000)
for policy in (ClipToEdge(), Resample()):
    obj = get_objective("bump", 20, policy)
    print(f"\nboundary policy: {type(policy).__name__}")
    for name, runner in (("lfo-mls", run_lfo_mls), ("sa", run_sa), ("lfo-sa", run_lfo_sa)):
        finals = [runner(obj, None, stop, RandomSource(s)) for s in range(3)]
        vals = np.array([t.final_best.value for t in finals])
        feasible = all(is_feasible(obj.space, t.final_best.point) for t in finals)
        print(f"  {name:8s} mean best {vals.mean():8.4f}  all feasible: {feasible}")

# %% Values are minimized, so lower is better.  The best points crowd the
# surface where the product of coordinates equals 0.75.
