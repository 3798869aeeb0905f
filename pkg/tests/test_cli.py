from __future__ import annotations

import io
import os
import subprocess
import sys
from pathlib import Path

import pytest

from stabgeom.cli import main

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

# (golden file name, argv); file arguments are relative to tests/data
INVOCATIONS = [
    ("count_G", ["count", "--family", "G", "--l", "4", "--k", "2", "--q", "2"]),
    ("count_L", ["count", "--family", "L", "--l", "2", "--q", "2"]),
    ("count_chi_css", ["count", "--family", "chi_css", "--l", "4", "--k", "2"]),
    ("count_F_ratio", ["count", "--family", "F", "--l", "3", "--k", "1", "--j", "1", "--ratio"]),
    ("count_M", ["count", "--family", "M", "--l", "2", "--j", "1", "--s", "1"]),
    ("count_chi_lag", ["count", "--family", "chi_lag", "--l", "4"]),
    ("bound_tail", ["bound", "--kind", "tail", "--N", "4", "--epsilon", "1"]),
    ("bound_css", ["bound", "--kind", "css", "--l", "3", "--k", "1", "--j", "1", "--N", "2"]),
    ("bound_ghz", ["bound", "--kind", "ghz", "--l", "5", "--N", "2"]),
    ("homology_ghz3", ["homology", "ghz3.json"]),
    ("homology_bell", ["homology", "bell.json"]),
    ("homology_zero", ["homology", "zero.json"]),
    ("homology_ghz3_css", ["homology", "ghz3_css.json"]),
    ("sample_lines", ["sample", "--l", "2", "--k", "1", "--q", "2", "--trials", "30000", "--seed", "1"]),
    ("experiment_ghz", ["experiment", "--kind", "ghz", "--l", "5", "--N", "1", "--trials", "2000", "--seed", "7"]),
    ("experiment_intersection", ["experiment", "--kind", "intersection", "--l", "3", "--k", "1", "--j", "1",
                                 "--N", "1..2", "--trials", "500", "--seed", "3"]),
]


def run(argv, cwd=DATA):
    out = io.StringIO()
    old = os.getcwd()
    os.chdir(cwd)
    try:
        code = main(argv, out=out)
    finally:
        os.chdir(old)
    return code, out.getvalue()


@pytest.mark.parametrize("name,argv", INVOCATIONS, ids=[n for n, _ in INVOCATIONS])
def test_golden(name, argv):
    code, text = run(argv)
    assert code == 0
    assert text == (GOLDEN / f"{name}.txt").read_text()


def test_sample_frequencies_sum_to_one():
    _, text = run(INVOCATIONS[13][1])
    lines = text.strip().splitlines()[1:]
    assert len(lines) == 3
    assert sum(float(x.split(",")[12]) for x in lines) == pytest.approx(1.0)


def test_verify_exit_zero(tmp_path):
    code, _ = run(["verify", "--out", str(tmp_path / "v.csv")])
    assert code == 0
    assert (tmp_path / "v.csv").read_text().startswith("experiment,q,l,k,j,s,N")


@pytest.mark.parametrize("argv", [
    ["count", "--family", "G", "--l", "2", "--k", "5"],
    ["count", "--family", "H", "--l", "3", "--k", "1"],
    ["count", "--family", "chi_lag", "--l", "3"],
    ["count", "--family", "Lk", "--l", "3", "--k", "1", "--ratio"],
    ["count", "--family", "nope"],
    ["bound", "--kind", "css", "--l", "2", "--k", "1", "--j", "1", "--N", "1"],
    ["homology", "not_isotropic.json"],
    ["homology", "bad_entry.json"],
    ["homology", "does_not_exist.json"],
    ["experiment", "--kind", "ghz", "--l", "3", "--trials", "5"],
    ["experiment", "--kind", "lag_theorem", "--l", "3", "--concentration", "--trials", "5"],
    ["experiment", "--kind", "ghz", "--l", "5", "--N", "x"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(argv)
    assert code == 2
    err = capsys.readouterr().err
    assert err.strip() and len(err.strip().splitlines()) >= 1


def test_isotropy_diagnostic_names_row(capsys):
    run(["homology", "not_isotropic.json"])
    assert "row 2" in capsys.readouterr().err


def test_failed_row_exits_1(monkeypatch):
    import stabgeom.cli as cli
    from stabgeom.experiments import ExperimentResult, ResultRow

    def fake(cfg):
        return ExperimentResult("x", [ResultRow("x", "s", passed=False)])

    monkeypatch.setattr(cli, "run_experiment", fake)
    code, text = run(["experiment", "--kind", "ghz", "--l", "5"])
    assert code == 1 and text.endswith(",false\n")


def test_json_format_and_seed_env(monkeypatch):
    code, text = run(["experiment", "--kind", "ghz", "--l", "5", "--N", "1", "--trials", "200", "--format", "json"])
    assert code == 0 and text.lstrip().startswith("[")
    env = dict(os.environ, STABGEOM_SEED="7")
    cmd = [sys.executable, "-m", "stabgeom.cli", "experiment", "--kind", "ghz", "--l", "5", "--N", "1",
           "--trials", "2000"]
    proc = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    assert proc.stdout == (GOLDEN / "experiment_ghz.txt").read_text()
    env["STABGEOM_SEED"] = "abc"
    assert subprocess.run(cmd, env=env, capture_output=True).returncode == 2


def test_workers_flag_deterministic():
    argv = ["experiment", "--kind", "intersection", "--l", "3", "--k", "1", "--j", "1", "--N", "1..2",
            "--trials", "500", "--seed", "3"]
    assert run(argv + ["--workers", "2"])[1] == run(argv)[1]
