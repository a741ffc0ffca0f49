# -*- coding: utf-8 -*-
"""
基准测试：按 TOML 清单逐行运行验证任务并汇总成表

清单格式：
    [suite]
    name = "wp"
    budget = 120            # 可选，单行预算（秒）

    [[rows]]
    name = "geo c+1"
    program = "programs/geo.pgcl"   # 相对清单文件
    mode = "wp"
    post = "c"
    pre = "c + 1"
    expected = "ind"
    expected_k = 2
    expected_timeout = false
    budget = 300            # 可选

每行相互隔离：单行失败只记为 error，不影响其余各行。
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from concurrent.futures import ThreadPoolExecutor, as_completed
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import pandas as pd
from tqdm import tqdm

from ..config import BenchConfig
from ..utils.errors import JobSpecError
from ..utils.logger import get_logger, log_banner
from ..utils.validator import JobValidator
from .job import JobSpec, Report
from .runner import run

logger = get_logger(__name__)

RESULT_COLUMNS = [
    "name", "mode", "pre", "expected", "expected_k", "verdict", "k", "n", "match",
    "formula_count", "formulae_time", "sat_time", "total_time", "worker", "message",
]


def load_manifest(path: Union[str, Path]) -> Tuple[Dict[str, Any], pd.DataFrame]:
    """
    读取清单

    Returns:
        (suite 元数据, 每行一个变体的 DataFrame)

    Raises:
        JobSpecError: 清单不是合法的 TOML
    """
    path = Path(path)
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise JobSpecError(f"清单 {path} 解析失败: {e}") from e

    suite = dict(data.get("suite", {}))
    suite.setdefault("name", path.stem)
    rows = data.get("rows", [])
    df = pd.DataFrame(rows)
    if not df.empty:
        df["program"] = df["program"].map(lambda p: str((path.parent / p).resolve()))
        if "mode" not in df.columns:
            df["mode"] = "wp"
        df["mode"] = df["mode"].fillna("wp")
        if "expected_timeout" not in df.columns:
            df["expected_timeout"] = False
        df["expected_timeout"] = df["expected_timeout"].fillna(False).astype(bool)
    logger.info(f"读取清单 {path}: {len(df)} 行")
    return suite, df


def _optional(row: pd.Series, key: str) -> Optional[Any]:
    value = row.get(key)
    if value is None or (not isinstance(value, str) and pd.isna(value)):
        return None
    return value


def row_job(row: pd.Series, budget: float, solver_path: Optional[str] = None,
            solver_args: Optional[List[str]] = None) -> JobSpec:
    """把清单行转为任务描述"""
    row_budget = _optional(row, "budget")
    return JobSpec(
        program=str(row["program"]),
        pre=str(row["pre"]),
        post=_optional(row, "post"),
        mode=str(row["mode"]),
        deadline=float(row_budget) if row_budget is not None else budget,
        solver_path=solver_path,
        solver_args=solver_args,
        name=str(row["name"]),
    )


def _matches(row: pd.Series, report: Report) -> bool:
    expected = _optional(row, "expected")
    if expected is None:
        return True
    if report.verdict != expected:
        return False
    expected_k = _optional(row, "expected_k")
    return expected_k is None or report.k == int(expected_k)


def run_row(row: pd.Series, budget: float, solver_path: Optional[str] = None,
            solver_args: Optional[List[str]] = None) -> Dict[str, Any]:
    """运行单行；任何异常都记为 error 行"""
    try:
        report = run(row_job(row, budget, solver_path, solver_args))
    except Exception as e:
        logger.error(f"[{row['name']}] 运行失败: {e}")
        report = Report.error(str(e), program=str(row["program"]), name=str(row["name"]))

    expected_k = _optional(row, "expected_k")
    result = {
        "name": row["name"],
        "mode": row["mode"],
        "pre": row["pre"],
        "expected": _optional(row, "expected"),
        "expected_k": int(expected_k) if expected_k is not None else None,
        "verdict": report.verdict,
        "k": report.k,
        "n": report.n,
        "match": _matches(row, report),
        "formula_count": report.formula_count,
        "formulae_time": report.formulae_time,
        "sat_time": report.sat_time,
        "total_time": report.total_time,
        "worker": report.worker,
        "message": report.message,
    }
    status = "✓" if result["match"] else "✗"
    logger.info(f"{status} {row['name']}: {report.verdict}" + (f" {report.depth_label}" if report.depth_label else ""))
    return result


def run_bench(manifest: Union[str, Path], jobs: int = BenchConfig.DEFAULT_JOBS,
              include_timeouts: bool = False, solver_path: Optional[str] = None,
              solver_args: Optional[List[str]] = None, progress: bool = True) -> pd.DataFrame:
    """
    运行清单中的全部变体

    Args:
        manifest: 清单路径
        jobs: 并行行数
        include_timeouts: 是否运行标记为预期超时的行
        solver_path / solver_args: 求解器命令行
        progress: 是否显示进度条

    Returns:
        pd.DataFrame: 按清单顺序排列的结果，列见 RESULT_COLUMNS
    """
    suite, df = load_manifest(manifest)
    budget = float(suite.get("budget", BenchConfig.ROW_BUDGET))
    log_banner(logger, f"基准套件 {suite['name']}")

    if df.empty:
        return pd.DataFrame(columns=RESULT_COLUMNS)

    valid_df, invalid_df = JobValidator().validate_manifest(df)
    if not include_timeouts:
        skipped = valid_df[valid_df["expected_timeout"]]
        if not skipped.empty:
            logger.info(f"跳过 {len(skipped)} 个预期超时的行: {', '.join(skipped['name'])}")
        valid_df = valid_df[~valid_df["expected_timeout"]]

    results: Dict[Any, Dict[str, Any]] = {}
    for index, row in invalid_df.iterrows():
        results[index] = {
            "name": row.get("name"), "mode": row.get("mode"), "pre": row.get("pre"),
            "expected": _optional(row, "expected"), "verdict": "error", "match": False,
            "message": "清单行不合法",
        }

    rows = list(valid_df.iterrows())
    bar = tqdm(total=len(rows), desc=suite["name"], disable=not progress)
    try:
        if jobs <= 1:
            for index, row in rows:
                results[index] = run_row(row, budget, solver_path, solver_args)
                bar.update(1)
        else:
            with ThreadPoolExecutor(max_workers=jobs, thread_name_prefix="bench") as executor:
                futures = {
                    executor.submit(run_row, row, budget, solver_path, solver_args): index
                    for index, row in rows
                }
                for future in as_completed(futures):
                    results[futures[future]] = future.result()
                    bar.update(1)
    finally:
        bar.close()

    ordered = [results[index] for index in df.index if index in results]
    return pd.DataFrame(ordered, columns=RESULT_COLUMNS)


def format_table(results: pd.DataFrame) -> str:
    """终端汇总表：每行一个变体，预期与实际结论并列"""
    width = BenchConfig.TABLE_WIDTH
    lines = ["=" * width]
    lines.append(
        f"{'name':<28}{'mode':<6}{'expected':<12}{'result':<16}{'match':<7}"
        f"{'#formulae':>10}{'formulae_t':>12}{'sat_t':>10}{'total_t':>10}"
    )
    lines.append("-" * width)
    for _, row in results.iterrows():
        expected = _cell(row.get("expected"), row.get("expected_k"))
        result = _cell(row.get("verdict"), row.get("k"), row.get("n"))
        lines.append(
            f"{str(row.get('name'))[:27]:<28}{str(row.get('mode')):<6}{expected:<12}{result:<16}"
            f"{'yes' if row.get('match') else 'NO':<7}"
            f"{_number(row.get('formula_count'), '{:.0f}'):>10}{_number(row.get('formulae_time'), '{:.2f}'):>12}"
            f"{_number(row.get('sat_time'), '{:.2f}'):>10}{_number(row.get('total_time'), '{:.2f}'):>10}"
        )
    lines.append("=" * width)
    if not results.empty:
        lines.append(f"共 {len(results)} 行，符合预期 {int(results['match'].fillna(False).sum())} 行")
    return "\n".join(lines)


def _cell(verdict: Any, k: Any, n: Any = None) -> str:
    if verdict is None or (not isinstance(verdict, str) and pd.isna(verdict)):
        return "-"
    if k is None or pd.isna(k):
        return str(verdict)
    if n is None or pd.isna(n):
        return f"{verdict} {int(k)}"
    return f"{verdict} {int(k)} (Φ^{int(n)})"


def _number(value: Any, fmt: str) -> str:
    if value is None or pd.isna(value):
        return "-"
    return fmt.format(value)


def write_results(results: pd.DataFrame, suite_name: str,
                  output_dir: Union[str, Path] = BenchConfig.RESULT_DIR) -> Tuple[Path, Path]:
    """把结果写成 CSV 与 JSON"""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    stamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    csv_path = output_dir / f"{suite_name}_{stamp}.csv"
    json_path = output_dir / f"{suite_name}_{stamp}.json"
    results.to_csv(csv_path, index=False, encoding="utf-8")
    results.to_json(json_path, orient="records", force_ascii=False, indent=2)
    logger.info(f"结果已写入 {csv_path} 与 {json_path}")
    return csv_path, json_path


def bench(manifest: Union[str, Path], jobs: int = BenchConfig.DEFAULT_JOBS,
          include_timeouts: bool = False, solver_path: Optional[str] = None,
          solver_args: Optional[List[str]] = None,
          output_dir: Union[str, Path] = BenchConfig.RESULT_DIR) -> Tuple[pd.DataFrame, int]:
    """
    运行清单、打印汇总表并写出结果文件

    Returns:
        (结果表, 退出码)：全部行符合预期时为 0，否则为 1
    """
    suite_name = load_manifest(manifest)[0]["name"]
    results = run_bench(manifest, jobs, include_timeouts, solver_path, solver_args)
    print(format_table(results))
    if not results.empty:
        write_results(results, suite_name, output_dir)
    exit_code = 0 if results.empty or bool(results["match"].fillna(False).all()) else 1
    return results, exit_code


__all__ = [
    'RESULT_COLUMNS', 'load_manifest', 'row_job', 'run_row', 'run_bench', 'format_table',
    'write_results', 'bench',
]
