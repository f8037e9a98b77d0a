"""Replicated experiments, aggregation and CSV/JSONL output.

Replication ``k`` of the ``i``-th registered algorithm always runs on the
stream ``RandomSource.derive(master_seed, i, k)``, so results do not depend
on how many worker processes share the work or in which order they finish.
"""
from __future__ import annotations

import csv
import io
import json
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .algorithms import ALGORITHMS, ConvergenceTrace, StoppingCriteria, default_checkpoints
from .levy import RandomSource
from .space import ClipToEdge, Resample
from .testbed import get_objective

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "AggregateRow",
    "AggregateResult",
    "run_experiment",
    "aggregate_traces",
    "paper_suite",
    "SUITE_REPLICATIONS",
    "TRACE_FIELDS",
    "SUMMARY_FIELDS",
    "write_trace_csv",
    "write_summary_csv",
    "write_trace_jsonl",
    "write_summary_jsonl",
]

TRACE_FIELDS = ["function", "algorithm", "dim", "replication", "seed", "checkpoint_evals", "elapsed_ms", "best_value"]
SUMMARY_FIELDS = ["function", "algorithm", "checkpoint_evals", "mean_best", "std_best", "median_best", "min_best", "n"]

# replications per benchmark in the reference protocol
SUITE_REPLICATIONS = {"f0": 100, "f2": 100, "f5": 100, "f6": 20, "bump": 10}
DESK_BUDGET = 200_000


class ConfigError(ValueError):
    """An experiment or CLI configuration that cannot be run."""


@dataclass(frozen=True)
class ExperimentConfig:
    function: str
    dim: int | None = None
    algorithms: tuple[str, ...] = tuple(ALGORITHMS)
    configs: Mapping[str, object] = field(default_factory=dict)
    replications: int = 1
    master_seed: int = 0
    max_evals: int | None = DESK_BUDGET
    max_time_ms: float | None = None
    checkpoints: tuple[int, ...] | None = None
    boundary: ClipToEdge | Resample = ClipToEdge()

    def __post_init__(self):
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ConfigError(f"unknown algorithm(s): {', '.join(unknown)}")
        if not self.algorithms:
            raise ConfigError("no algorithms selected")
        if self.replications < 1:
            raise ConfigError("replications must be >= 1")
        try:
            self.objective()
        except (KeyError, ValueError) as exc:
            raise ConfigError(str(exc.args[0] if exc.args else exc)) from None
        try:
            self.stopping()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.checkpoints is not None:
            cps = np.asarray(self.checkpoints)
            if cps.size == 0 or np.any(cps < 1) or np.any(np.diff(cps) <= 0):
                raise ConfigError("checkpoints must be strictly increasing positive counts")
            if self.max_evals is not None and cps[-1] > self.max_evals:
                raise ConfigError("last checkpoint exceeds the evaluation budget")
            object.__setattr__(self, "checkpoints", tuple(int(c) for c in cps))

    def objective(self):
        return get_objective(self.function, self.dim, self.boundary)

    def stopping(self) -> StoppingCriteria:
        return StoppingCriteria(max_evals=self.max_evals, max_time_ms=self.max_time_ms)

    def schedule(self) -> np.ndarray:
        if self.checkpoints is not None:
            return np.asarray(self.checkpoints, dtype=np.int64)
        return default_checkpoints(self.max_evals if self.max_evals is not None else 10**7)


def _run_one(config: ExperimentConfig, name: str, k: int) -> ConvergenceTrace:
    objective = config.objective()
    runner, _ = ALGORITHMS[name]
    index = list(ALGORITHMS).index(name)
    rng = RandomSource.derive(config.master_seed, index, k)
    trace = runner(objective, config.configs.get(name), config.stopping(), rng, config.schedule())
    trace.meta.update(function=config.function, algorithm=name, dim=objective.dim, replication=k)
    return trace


def _run_task(args):
    return _run_one(*args)


def run_experiment(config: ExperimentConfig, parallelism: int = 1) -> list[ConvergenceTrace]:
    """All replications of every selected algorithm, ordered by (algorithm, replication)."""
    if parallelism < 1:
        raise ConfigError("parallelism must be >= 1")
    tasks = [(config, name, k) for name in config.algorithms for k in range(config.replications)]
    if parallelism == 1 or len(tasks) == 1:
        return [_run_task(t) for t in tasks]
    ctx = multiprocessing.get_context("fork" if "fork" in multiprocessing.get_all_start_methods() else "spawn")
    with ProcessPoolExecutor(max_workers=parallelism, mp_context=ctx) as pool:
        # map() yields in submission order, which is already canonical
        return list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * parallelism))))


@dataclass(frozen=True)
class AggregateRow:
    function: str
    algorithm: str
    checkpoint_evals: int
    mean_best: float
    std_best: float
    median_best: float
    min_best: float
    n: int


@dataclass
class AggregateResult:
    rows: list[AggregateRow]

    def select(self, algorithm: str, function: str | None = None) -> list[AggregateRow]:
        return [r for r in self.rows if r.algorithm == algorithm and (function is None or r.function == function)]

    def at(self, algorithm: str, checkpoint_evals: int, function: str | None = None) -> AggregateRow:
        for r in self.select(algorithm, function):
            if r.checkpoint_evals == checkpoint_evals:
                return r
        raise KeyError((algorithm, checkpoint_evals))


def aggregate_traces(traces: Iterable[ConvergenceTrace]) -> AggregateResult:
    """Per (function, algorithm, checkpoint) statistics of best-so-far values.

    ``std_best`` is the population standard deviation (divides by n).
    """
    groups: dict[tuple[str, str], list[ConvergenceTrace]] = {}
    for t in traces:
        key = (t.meta.get("function", ""), t.meta.get("algorithm", ""))
        groups.setdefault(key, []).append(t)
    rows = []
    for (function, algorithm), group in groups.items():
        schedule = group[0].evals
        for t in group[1:]:
            if not np.array_equal(t.evals, schedule):
                raise ValueError(f"traces of {algorithm} on {function} use different checkpoint schedules")
        values = np.vstack([t.best for t in group])
        for j, c in enumerate(schedule):
            col = values[:, j]
            rows.append(AggregateRow(
                function, algorithm, int(c), float(np.mean(col)), float(np.std(col)),
                float(np.median(col)), float(np.min(col)), len(group),
            ))
    return AggregateResult(rows)


def paper_suite(budget: int = DESK_BUDGET, master_seed: int = 0) -> list[ExperimentConfig]:
    """The five benchmark presets with their reference replication counts,
    every algorithm at its defaults, on an evaluation budget."""
    return [
        ExperimentConfig(function=name, replications=reps, master_seed=master_seed, max_evals=budget)
        for name, reps in SUITE_REPLICATIONS.items()
    ]


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def trace_rows(traces: Iterable[ConvergenceTrace]):
    for t in traces:
        m = t.meta
        for e, ms, b in zip(t.evals, t.elapsed_ms, t.best):
            yield {
                "function": m.get("function", ""),
                "algorithm": m.get("algorithm", ""),
                "dim": m.get("dim", t.final_best.point.size),
                "replication": m.get("replication", 0),
                "seed": t.seed,
                "checkpoint_evals": int(e),
                "elapsed_ms": int(ms),
                "best_value": float(b),
            }


def summary_rows(aggregate: AggregateResult):
    for r in aggregate.rows:
        yield {
            "function": r.function,
            "algorithm": r.algorithm,
            "checkpoint_evals": r.checkpoint_evals,
            "mean_best": r.mean_best,
            "std_best": r.std_best,
            "median_best": r.median_best,
            "min_best": r.min_best,
            "n": r.n,
        }


class _Sink:
    """Accept either an open text stream or a path."""

    def __init__(self, sink):
        self.sink = sink
        self.handle = None

    def __enter__(self) -> io.TextIOBase:
        if isinstance(self.sink, (str, Path)):
            self.handle = open(self.sink, "w", encoding="utf-8", newline="")
            return self.handle
        return self.sink

    def __exit__(self, *exc):
        if self.handle is not None:
            self.handle.close()


def _write_csv(rows, fields, sink):
    with _Sink(sink) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fields)
        for row in rows:
            w.writerow([_fmt(row[k]) if isinstance(row[k], float) else row[k] for k in fields])


def _write_jsonl(rows, sink):
    with _Sink(sink) as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")


def write_trace_csv(traces, sink) -> None:
    _write_csv(trace_rows(traces), TRACE_FIELDS, sink)


def write_summary_csv(aggregate: AggregateResult, sink) -> None:
    _write_csv(summary_rows(aggregate), SUMMARY_FIELDS, sink)


def write_trace_jsonl(traces, sink) -> None:
    _write_jsonl(trace_rows(traces), sink)


def write_summary_jsonl(aggregate: AggregateResult, sink) -> None:
    _write_jsonl(summary_rows(aggregate), sink)
