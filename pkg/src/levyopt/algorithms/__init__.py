"""The six optimizers and their name registry.

Every runner has the signature ``run(objective, config, stop, rng,
checkpoints=None) -> ConvergenceTrace``; ``config=None`` selects defaults.
"""
from ._common import ConvergenceTrace, StoppingCriteria, default_checkpoints
from .annealing import LfoSaConfig, SaConfig, run_lfo_sa, run_sa, sa_accept, sa_temperature, split_stop
from .lfo import LfoBConfig, LfoIlsConfig, LfoLsConfig, LfoMlsConfig, run_lfo_b, run_lfo_ils, run_lfo_ls, run_lfo_mls

# Order matters: a runner's position here is part of its replication seeds.
ALGORITHMS = {
    "lfo-b": (run_lfo_b, LfoBConfig),
    "lfo-ls": (run_lfo_ls, LfoLsConfig),
    "lfo-mls": (run_lfo_mls, LfoMlsConfig),
    "lfo-ils": (run_lfo_ils, LfoIlsConfig),
    "sa": (run_sa, SaConfig),
    "lfo-sa": (run_lfo_sa, LfoSaConfig),
}


def get_runner(name: str):
    try:
        return ALGORITHMS[name][0]
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None


__all__ = [
    "ALGORITHMS",
    "ConvergenceTrace",
    "StoppingCriteria",
    "default_checkpoints",
    "get_runner",
    "LfoBConfig",
    "LfoLsConfig",
    "LfoMlsConfig",
    "LfoIlsConfig",
    "SaConfig",
    "LfoSaConfig",
    "run_lfo_b",
    "run_lfo_ls",
    "run_lfo_mls",
    "run_lfo_ils",
    "run_sa",
    "run_lfo_sa",
    "sa_temperature",
    "sa_accept",
    "split_stop",
]
