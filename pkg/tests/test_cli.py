import csv
import io

import numpy as np
import pytest

from levyopt.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_list():
    code, out, _ = run("list")
    assert code == 0
    assert "bump" in out and "lfo-ils" in out


def test_bad_flags_exit_one():
    assert run()[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("run", "--function", "f6", "--replications", "zero")[0] == 1
    assert run("run", "--function", "nope")[0] == 1


def test_sample_reproducible(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run("sample", "--count", "5", "--seed", "3", "--out", str(a))[0] == 0
    assert run("sample", "--count", "5", "--seed", "3", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.reader(a.read_text().splitlines()))
    assert rows[0] == ["index", "length"] and len(rows) == 6


def test_sample_bad_beta():
    code, _, err = run("sample", "--beta", "0")
    assert code == 1 and "beta" in err


def _lengths(*args):
    _, out, _ = run("sample", *args)
    return np.array([float(line.split(",")[1]) for line in out.splitlines()[1:]])


def test_sample_median():
    x = _lengths("--beta", "1.5", "--l0", "1", "--count", "1000000", "--seed", "1")
    assert abs(np.median(x) / (2 ** (2 / 3) - 1) - 1) < 0.01


def test_sample_heavier_tail_for_small_beta():
    wins = sum(
        _lengths("--beta", "0.5", "--count", "1000", "--seed", str(s)).max()
        > _lengths("--beta", "3.0", "--count", "1000", "--seed", str(s + 1000)).max()
        for s in range(20)
    )
    assert wins >= 19


def test_run_fixed_dim():
    assert run("run", "--function", "f5", "--dim", "3", "--budget-evals", "100")[0] == 1


def test_run_conflicting_budgets(tmp_path):
    assert run("run", "--function", "f6", "--budget-evals", "100", "--budget-ms", "10", "--out", str(tmp_path))[0] == 1


def test_run_reproducible(tmp_path):
    outs = []
    for d in ("a", "b"):
        code, _, _ = run("run", "--function", "f6", "--algorithm", "lfo-mls", "--budget-evals", "10000",
                         "--seed", "7", "--out", str(tmp_path / d))
        assert code == 0
        outs.append(list(csv.DictReader((tmp_path / d / "f6_traces.csv").open())))
        for r in outs[-1]:
            r.pop("elapsed_ms")
    assert outs[0] == outs[1]
    assert (tmp_path / "a" / "f6_summary.csv").read_bytes() == (tmp_path / "b" / "f6_summary.csv").read_bytes()


def test_run_default_dim_and_jsonl(tmp_path):
    code, out, _ = run("run", "--function", "f2", "--algorithm", "sa", "--budget-evals", "500",
                       "--format", "jsonl", "--out", str(tmp_path))
    assert code == 0 and "sa" in out
    assert '"dim": 10' in (tmp_path / "f2_traces.jsonl").read_text()


def test_run_levy_flags_and_resample(tmp_path):
    code, _, _ = run("run", "--function", "bump", "--dim", "5", "--algorithm", "lfo-b,lfo-sa", "--beta", "1.2",
                     "--l0", "0.3", "--boundary", "resample", "--budget-evals", "2000", "--out", str(tmp_path))
    assert code == 0


def test_run_bad_beta(tmp_path):
    assert run("run", "--function", "f6", "--beta", "-1", "--budget-evals", "100", "--out", str(tmp_path))[0] == 1


def test_run_time_budget(tmp_path):
    code, _, _ = run("run", "--function", "f6", "--dim", "2", "--algorithm", "sa", "--budget-ms", "30",
                     "--out", str(tmp_path))
    assert code == 0


def test_runtime_error_exit_two(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run("run", "--function", "f6", "--algorithm", "sa", "--budget-evals", "200", "--out", str(blocker))
    assert code == 2 and "failed" in err


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# desk run\nfunction = f6\ndim = 2\nalgorithm = sa\nbudget-evals = 300\nseed = 4\n")
    code, _, _ = run("run", "--config", str(cfg), "--out", str(tmp_path / "o"), "--dim", "3")
    assert code == 0
    rows = list(csv.DictReader((tmp_path / "o" / "f6_traces.csv").open()))
    # the flag overrides the file
    assert rows[0]["dim"] == "3" and rows[0]["checkpoint_evals"] == "100"
    assert rows[-1]["checkpoint_evals"] == "300"


def test_config_file_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("no equals sign\n")
    assert run("run", "--config", str(bad))[0] == 1
    assert run("run", "--config", str(tmp_path / "missing.cfg"))[0] == 1
    unknown = tmp_path / "unknown.cfg"
    unknown.write_text("colour = blue\n")
    assert run("list", "--config", str(unknown))[0] == 1


@pytest.mark.slow
def test_suite(tmp_path):
    code, out, _ = run("suite", "--out-dir", str(tmp_path), "--budget-evals", "300", "--seed", "1")
    assert code == 0
    summaries = sorted(p.name for p in tmp_path.glob("*_summary.csv"))
    assert summaries == ["bump_summary.csv", "f0_summary.csv", "f2_summary.csv", "f5_summary.csv", "f6_summary.csv"]
    n = {p.name: {r["n"] for r in csv.DictReader(p.open())} for p in tmp_path.glob("*_summary.csv")}
    assert n["f0_summary.csv"] == {"100"} and n["bump_summary.csv"] == {"10"}
