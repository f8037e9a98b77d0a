"""Global optimization with Levy-flight random walks."""
from .levy import LevyParams, RandomSource, UniformLength, levy_cdf, levy_pdf, sample_direction, sample_length, sample_lengths
from .space import ClipToEdge, EvaluatedPoint, Resample, SearchSpace, is_feasible, propose_move
from .testbed import Objective, get_objective
from .local_search import EvalCounter, LocalSearchConfig, local_search
from .algorithms import (
    ALGORITHMS,
    ConvergenceTrace,
    LfoBConfig,
    LfoIlsConfig,
    LfoLsConfig,
    LfoMlsConfig,
    LfoSaConfig,
    SaConfig,
    StoppingCriteria,
    run_lfo_b,
    run_lfo_ils,
    run_lfo_ls,
    run_lfo_mls,
    run_lfo_sa,
    run_sa,
)

__version__ = "0.1.0"
