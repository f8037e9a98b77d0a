"""Command-line front end.

    levyopt list
    levyopt sample --beta 1.5 --count 100000 --out lengths.csv
    levyopt run --function f6 --algorithm lfo-mls,sa --budget-evals 20000 --replications 20
    levyopt suite --out-dir results/

Any subcommand accepts ``--config FILE``: a flat ``key = value`` file whose
keys are flag names without the dashes (``budget-evals = 10000``).  Flags
given on the command line override the file.

Exit status is 0 on success, 1 for configuration errors and 2 when a run
fails.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .algorithms import ALGORITHMS, LfoBConfig, LfoIlsConfig, LfoLsConfig, LfoMlsConfig, LfoSaConfig
from .harness import (
    DESK_BUDGET,
    ConfigError,
    ExperimentConfig,
    aggregate_traces,
    paper_suite,
    run_experiment,
    write_summary_csv,
    write_summary_jsonl,
    write_trace_csv,
    write_trace_jsonl,
)
from .levy import LevyParams, RandomSource, sample_lengths
from .space import ClipToEdge, Resample
from .testbed import OBJECTIVES, get_objective

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="levyopt", description="Levy-flight global optimization benchmarks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("list", help="show registered objectives and algorithms")
    p.add_argument("--config")

    p = sub.add_parser("sample", help="write Levy step lengths as CSV")
    p.add_argument("--config")
    p.add_argument("--beta", type=float, default=1.5)
    p.add_argument("--l0", type=float, default=1.0)
    p.add_argument("--count", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("run", help="replicated runs of one benchmark")
    p.add_argument("--config")
    p.add_argument("--function", required=True, choices=list(OBJECTIVES))
    p.add_argument("--dim", type=_positive_int)
    p.add_argument("--algorithm", default="all", help="comma-separated names or 'all'")
    p.add_argument("--beta", type=float)
    p.add_argument("--l0", type=float)
    p.add_argument("--budget-evals", type=_positive_int)
    p.add_argument("--budget-ms", type=_positive_float)
    p.add_argument("--replications", type=_positive_int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--boundary", choices=["clip", "resample"], default="clip")
    p.add_argument("--out", default="results", help="output directory")
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--parallelism", type=_positive_int, default=1)

    p = sub.add_parser("suite", help="all five benchmarks with their standard replication counts")
    p.add_argument("--config")
    p.add_argument("--out-dir", default="results")
    p.add_argument("--budget-evals", type=_positive_int, default=DESK_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--parallelism", type=_positive_int, default=1)
    return parser


def read_config_file(path) -> list[str]:
    """Turn ``key = value`` lines into ``--key value`` tokens."""
    tokens = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        tokens += [f"--{key.lstrip('-')}", value]
    return tokens


def _expand_config(argv: list[str]) -> list[str]:
    if not argv or "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise ConfigError("--config needs a file name")
    rest = argv[:i] + argv[i + 2:]
    # file values go first so that explicit flags win
    return rest[:1] + read_config_file(argv[i + 1]) + rest[1:]


def cmd_list(args, out=sys.stdout) -> int:
    print("objectives:", file=out)
    for name, e in OBJECTIVES.items():
        dim = f"{e.default_dim} (fixed)" if e.fixed_dim else f"{e.default_dim} (default)"
        best = "unknown" if e.known_best is None else f"{e.known_best:.6g}"
        extra = ", constrained" if e.constraint is not None else ""
        print(f"  {name:5s} dim {dim:12s} bounds [{e.bound[0]:g}, {e.bound[1]:g}]{extra}; known best {best}", file=out)
    print("algorithms:", file=out)
    for name in ALGORITHMS:
        print(f"  {name}", file=out)
    return EXIT_OK


def cmd_sample(args, out=sys.stdout) -> int:
    try:
        params = LevyParams(beta=args.beta, l0=args.l0)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    lengths = sample_lengths(params, RandomSource(args.seed), args.count)
    lines = ["index,length"] + [f"{i},{format(v, '.17g')}" for i, v in enumerate(lengths)]
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        out.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    return EXIT_OK


def _levy_configs(args, objective) -> dict:
    if args.beta is None and args.l0 is None:
        return {}
    extent = objective.space.max_extent
    try:
        levy = LevyParams.for_extent(extent, beta=1.5 if args.beta is None else args.beta)
        if args.l0 is not None:
            levy = LevyParams(levy.beta, args.l0, levy.l_max)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    mls = LfoMlsConfig(levy=levy)
    return {
        "lfo-b": LfoBConfig(levy=levy),
        "lfo-ls": LfoLsConfig(levy=levy),
        "lfo-mls": mls,
        "lfo-ils": LfoIlsConfig(levy=levy),
        "lfo-sa": LfoSaConfig(mls=mls),
    }


def _write_outputs(traces, out_dir: Path, function: str, fmt: str):
    out_dir.mkdir(parents=True, exist_ok=True)
    aggregate = aggregate_traces(traces)
    trace_path = out_dir / f"{function}_traces.{fmt}"
    summary_path = out_dir / f"{function}_summary.{fmt}"
    if fmt == "csv":
        write_trace_csv(traces, trace_path)
        write_summary_csv(aggregate, summary_path)
    else:
        write_trace_jsonl(traces, trace_path)
        write_summary_jsonl(aggregate, summary_path)
    return aggregate, trace_path, summary_path


def _print_final(aggregate, out):
    last = {}
    for r in aggregate.rows:
        last[(r.function, r.algorithm)] = r
    print(f"{'function':8s} {'algorithm':8s} {'evals':>8s} {'mean':>14s} {'std':>12s} {'min':>14s} {'n':>4s}", file=out)
    for r in last.values():
        print(f"{r.function:8s} {r.algorithm:8s} {r.checkpoint_evals:8d} {r.mean_best:14.6g} "
              f"{r.std_best:12.4g} {r.min_best:14.6g} {r.n:4d}", file=out)


def cmd_run(args, out=sys.stdout) -> int:
    if args.budget_evals is not None and args.budget_ms is not None:
        raise ConfigError("give either --budget-evals or --budget-ms, not both")
    budget_evals = args.budget_evals
    if budget_evals is None and args.budget_ms is None:
        budget_evals = DESK_BUDGET
    if args.algorithm == "all":
        algorithms = tuple(ALGORITHMS)
    else:
        algorithms = tuple(a.strip() for a in args.algorithm.split(",") if a.strip())
    boundary = ClipToEdge() if args.boundary == "clip" else Resample()
    try:
        objective = get_objective(args.function, args.dim, boundary)
    except (KeyError, ValueError) as exc:
        raise ConfigError(str(exc.args[0])) from None
    config = ExperimentConfig(
        function=args.function,
        dim=objective.dim,
        algorithms=algorithms,
        configs=_levy_configs(args, objective),
        replications=args.replications,
        master_seed=args.seed,
        max_evals=budget_evals,
        max_time_ms=args.budget_ms,
        boundary=boundary,
    )
    traces = run_experiment(config, args.parallelism)
    aggregate, trace_path, summary_path = _write_outputs(traces, Path(args.out), args.function, args.format)
    _print_final(aggregate, out)
    print(f"wrote {trace_path} and {summary_path}", file=out)
    return EXIT_OK


def cmd_suite(args, out=sys.stdout) -> int:
    for config in paper_suite(args.budget_evals, args.seed):
        t0 = time.perf_counter()
        traces = run_experiment(config, args.parallelism)
        aggregate, trace_path, summary_path = _write_outputs(traces, Path(args.out_dir), config.function, args.format)
        _print_final(aggregate, out)
        print(f"{config.function}: {len(traces)} runs in {time.perf_counter() - t0:.1f}s -> {summary_path}", file=out)
    return EXIT_OK


COMMANDS = {"list": cmd_list, "sample": cmd_sample, "run": cmd_run, "suite": cmd_suite}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_expand_config(argv))
        return COMMANDS[args.command](args, out=out)
    except ConfigError as exc:
        print(f"levyopt: error: {exc}", file=err)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - reported as a runtime failure
        print(f"levyopt: run failed: {type(exc).__name__}: {exc}", file=err)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
