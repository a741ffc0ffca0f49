# -*- coding: utf-8 -*-
"""
任务描述、报告、清单与命令行入口测试（无需求解器）
"""

import json

import pandas as pd
import pytest

import bench as bench_script
import verify as verify_script
from src.cli.bench import RESULT_COLUMNS, bench, format_table, load_manifest, row_job, run_bench
from src.cli.job import JobSpec, Report, parse_json, render, render_human, render_json
from src.cli.runner import load_problem, run
from src.config import BENCHMARK_DIR
from src.expectations.transformers import Mode
from src.lattice.domain import EngineError, Exhausted, Inductive, Outcome, Refuted, Stats, Timeout
from src.pgcl.ast import State
from src.utils.errors import JobSpecError, ProgramSemanticError, ProgramSyntaxError
from src.utils.validator import JobValidator

MISSING_SOLVER = "/nonexistent/bin/definitely-not-a-solver"


# =============================================================================
# 报告
# =============================================================================

def test_report_from_refutation():
    outcome = Outcome(Refuted(12, State(c=1, f=1)), Stats(formula_count=40, sat_time=0.5, total_time=0.2,
                                                          formulae_time=0.1, worker="bmc"))
    report = Report.from_outcome(outcome, ("c", "f"), program="geo.pgcl", name="geo_v2")
    assert report.verdict == "ref"
    assert report.k == 11
    assert report.n == 12
    assert report.witness == {"c": 1, "f": 1}
    assert report.total_time == pytest.approx(0.6)
    assert report.exit_code == 1

    text = render_human(report)
    assert "结论: ref   k = 11 (Φ^12)" in text
    assert "c=1 f=1" in text
    assert "bmc" in text


def test_report_from_other_verdicts():
    assert Report.from_outcome(Outcome(Inductive(2))).k == 2
    assert Report.from_outcome(Outcome(Inductive(2))).exit_code == 0
    assert "Φ^" not in render_human(Report.from_outcome(Outcome(Inductive(2))))

    exhausted = Report.from_outcome(Outcome(Exhausted(5)))
    assert exhausted.k is None
    assert exhausted.extra == {"bound": 5}
    assert exhausted.exit_code == 2

    assert Report.from_outcome(Outcome(Timeout())).exit_code == 2

    error = Report.from_outcome(Outcome(EngineError("solver died")))
    assert error.message == "solver died"
    assert error.exit_code == 3
    assert "solver died" in render(error)


def test_report_json_roundtrip():
    report = Report(verdict="ref", k=2, n=3, witness={"count": 0, "f": 0}, formula_count=17,
                    sat_time=0.25, total_time=1.5, worker="bmc", program="chain.pgcl", name="chain")
    assert parse_json(render_json(report)) == report
    assert parse_json(render(report, "json")) == report
    assert json.loads(render_json(report))["n"] == 3
    assert Report.from_dict({**report.to_dict(), "unknown": 1}) == report


def test_error_report():
    report = Report.error("boom", program="p.pgcl", name="p")
    assert report.verdict == "error"
    assert report.exit_code == 3


# =============================================================================
# 校验
# =============================================================================

def test_job_errors():
    validator = JobValidator()
    assert validator.job_errors(JobSpec(program="p", pre="x", post="x")) == []
    assert validator.job_errors(JobSpec(program="p", pre="x", mode="ert")) == []

    errors = validator.job_errors(JobSpec(program="p", pre="", mode="wp", deadline=0, max_k=0, max_n=-1))
    assert len(errors) == 5

    assert validator.job_errors(JobSpec(program="p", pre="x", post="x", mode="ert"))
    assert validator.job_errors(JobSpec(program="p", pre="x", post="x", mode="bogus"))
    with pytest.raises(JobSpecError):
        validator.validate_job(JobSpec(program="p", pre="x"))


def test_validate_manifest():
    df = pd.DataFrame([
        {"name": "ok", "program": "a.pgcl", "pre": "x", "mode": "wp", "post": "x"},
        {"name": "ert-with-post", "program": "a.pgcl", "pre": "x", "mode": "ert", "post": "x"},
        {"name": "no-pre", "program": "a.pgcl", "pre": " ", "mode": "wp", "post": "x"},
        {"name": "bad-mode", "program": "a.pgcl", "pre": "x", "mode": "xyz", "post": "x"},
        {"name": "bad-expected", "program": "a.pgcl", "pre": "x", "mode": "wp", "post": "x",
         "expected": "maybe"},
        {"name": "bad-budget", "program": "a.pgcl", "pre": "x", "mode": "wp", "post": "x", "budget": -3},
    ])
    valid, invalid = JobValidator().validate_manifest(df)
    assert list(valid["name"]) == ["ok"]
    assert len(invalid) == 5

    valid, invalid = JobValidator().validate_manifest(df.drop(columns=["pre"]))
    assert valid.empty and len(invalid) == len(df)


# =============================================================================
# 任务装载
# =============================================================================

def test_load_problem(programs_dir):
    program, problem = load_problem(JobSpec(program=str(programs_dir / "geo.pgcl"), pre="c + 1", post="c"))
    assert program.variables == ("c", "f")
    assert problem.mode == Mode.WP
    assert problem.tag == "geo"


def test_load_problem_errors(programs_dir):
    geo = str(programs_dir / "geo.pgcl")
    with pytest.raises(ProgramSyntaxError):
        load_problem(JobSpec(program=geo, pre="c * f", post="c"))
    with pytest.raises(ProgramSemanticError):
        load_problem(JobSpec(program=geo, pre="z + 1", post="c"))
    with pytest.raises(JobSpecError):
        load_problem(JobSpec(program=geo, pre="c + 1"))
    with pytest.raises(OSError):
        load_problem(JobSpec(program=str(programs_dir / "missing.pgcl"), pre="1", post="1"))


def test_run_reports_errors_instead_of_raising(programs_dir):
    geo = str(programs_dir / "geo.pgcl")
    assert run(JobSpec(program=str(programs_dir / "missing.pgcl"), pre="1", post="1")).verdict == "error"
    assert run(JobSpec(program=geo, pre="[c = 1] - 1", post="c")).verdict == "error"
    report = run(JobSpec(program=geo, pre="c + 1", post="c", solver_path=MISSING_SOLVER))
    assert report.verdict == "error"
    assert MISSING_SOLVER in report.message


def test_verify_main_exit_code_on_error(programs_dir, capsys):
    code = verify_script.main([str(programs_dir / "missing.pgcl"), "--post", "1", "--pre", "1", "--json"])
    assert code == 3
    out = capsys.readouterr().out
    assert parse_json(out[out.index("{\n"):]).verdict == "error"


def test_verify_arguments():
    args = verify_script.parse_args(["p.pgcl", "--pre", "x", "--ert", "--max-k", "4",
                                     "--solver-arg=-in", "--solver-arg=-smt2", "--no-closure"])
    assert args.ert and args.no_closure
    assert args.max_k == 4
    assert args.solver_args == ["-in", "-smt2"]
    assert not args.verbose and not args.quiet
    assert verify_script.parse_args(["p.pgcl", "--pre", "x", "-q"]).quiet


# =============================================================================
# 清单
# =============================================================================

@pytest.mark.parametrize("manifest", ["wp.toml", "ert.toml"])
def test_shipped_manifests_are_valid(manifest):
    suite, df = load_manifest(BENCHMARK_DIR / manifest)
    assert suite["name"] == manifest.split(".")[0]
    valid, invalid = JobValidator().validate_manifest(df)
    assert invalid.empty
    for _, row in df.iterrows():
        load_problem(row_job(row, float(suite["budget"])))


def test_row_budget_overrides_suite_budget():
    _, df = load_manifest(BENCHMARK_DIR / "wp.toml")
    row = df[df["name"] == "brp_v2"].iloc[0]
    assert row_job(row, 120.0).deadline == 300.0
    row = df[df["name"] == "geo_v1"].iloc[0]
    job = row_job(row, 120.0)
    assert job.deadline == 120.0
    assert job.post == "c"


def test_empty_manifest(tmp_path):
    manifest = tmp_path / "empty.toml"
    manifest.write_text('[suite]\nname = "empty"\n', encoding="utf-8")
    results = run_bench(manifest, progress=False)
    assert list(results.columns) == RESULT_COLUMNS
    assert results.empty
    results, code = bench(manifest, output_dir=tmp_path / "out")
    assert code == 0


def test_invalid_rows_are_reported_not_run(tmp_path, capsys):
    manifest = tmp_path / "broken.toml"
    manifest.write_text(
        '[suite]\nname = "broken"\n\n'
        '[[rows]]\nname = "bad_mode"\nprogram = "x.pgcl"\nmode = "fast"\npre = "1"\n\n'
        '[[rows]]\nname = "skipped"\nprogram = "x.pgcl"\npost = "1"\npre = "1"\nexpected_timeout = true\n',
        encoding="utf-8",
    )
    results, code = bench(manifest, output_dir=tmp_path / "out")
    assert code == 1
    assert list(results["name"]) == ["bad_mode"]
    assert results.iloc[0]["verdict"] == "error"
    assert not results.iloc[0]["match"]
    assert "bad_mode" in capsys.readouterr().out
    assert list((tmp_path / "out").glob("broken_*.csv"))
    assert list((tmp_path / "out").glob("broken_*.json"))


def test_format_table():
    results = pd.DataFrame([
        {"name": "geo_v1", "mode": "wp", "expected": "ind", "expected_k": 2, "verdict": "ind", "k": 2,
         "match": True, "formula_count": 12, "formulae_time": 0.01, "sat_time": 0.02, "total_time": 0.05},
        {"name": "rdwalk", "mode": "ert", "expected": None, "expected_k": None, "verdict": "timeout",
         "k": None, "match": True},
        {"name": "chain", "mode": "wp", "expected": "ref", "expected_k": 2, "verdict": "ref", "k": 2, "n": 3,
         "match": True},
    ], columns=RESULT_COLUMNS)
    table = format_table(results)
    assert "ind 2" in table
    assert "ind 2 (" not in table
    assert "ref 2 (Φ^3)" in table
    assert "timeout" in table
    assert "符合预期 3 行" in table


def test_malformed_manifest(tmp_path):
    manifest = tmp_path / "bad.toml"
    manifest.write_text("[suite\nname = ", encoding="utf-8")
    with pytest.raises(JobSpecError):
        load_manifest(manifest)
    assert bench_script.main([str(manifest)]) == 3
    assert bench_script.main([str(tmp_path / "missing.toml")]) == 3
