# -*- coding: utf-8 -*-
"""
验证任务与报告

JobSpec 描述一次验证（程序、g、f、模式、上限、求解器）；Report 是其结果，
可渲染为人类可读的表格或 JSON，JSON 可解析回相同的 Report。
"""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from ..config import EngineConfig
from ..lattice.domain import EngineError, Inductive, Outcome, Refuted

# 退出码
EXIT_CODES = {
    "ind": 0,
    "ref": 1,
    "exhausted": 2,
    "timeout": 2,
    "error": 3,
}


@dataclass
class JobSpec:
    """
    一次验证任务

    Attributes:
        program: 程序文件路径
        pre: 候选上界 f 的文本
        post: 后期望 g 的文本（wp 模式必填，ert 模式必须为空）
        mode: wp / ert
        max_k / max_n: 两个引擎的迭代上限，None 表示不限
        deadline: 秒
        solver_path / solver_args: 求解器命令行，None 取配置
        emit_smt2: 脚本转储目录
        output: human / json
        close_instances: 关闭后复现缺少实例闭包的不可靠编码
        symbolic: 使用符号期望领域代替增量编码
    """
    program: str
    pre: str
    post: Optional[str] = None
    mode: str = "wp"
    max_k: Optional[int] = None
    max_n: Optional[int] = None
    deadline: Optional[float] = EngineConfig.DEFAULT_DEADLINE
    solver_path: Optional[str] = None
    solver_args: Optional[List[str]] = None
    emit_smt2: Optional[str] = None
    output: str = "human"
    close_instances: bool = True
    symbolic: bool = False
    name: str = ""


@dataclass
class Report:
    """
    验证结果

    k 为报告约定的深度：ind 时为检查次数，ref 时为展开深度 n−1；
    n 只在 ref 时给出 Kleene 幂次。
    """
    verdict: str
    k: Optional[int] = None
    n: Optional[int] = None
    witness: Optional[Dict[str, int]] = None
    formula_count: int = 0
    formulae_time: float = 0.0
    sat_time: float = 0.0
    total_time: float = 0.0
    worker: str = ""
    message: str = ""
    program: str = ""
    name: str = ""
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def depth_label(self) -> str:
        """ref 时形如 `k = 2 (Φ^3)`，ind 时为 `k = 2`"""
        if self.k is None:
            return ""
        return f"k = {self.k}" + (f" (Φ^{self.n})" if self.n is not None else "")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES.get(self.verdict, 3)

    @classmethod
    def from_outcome(cls, outcome: Outcome, variables: Sequence[str] = (),
                     program: str = "", name: str = "") -> "Report":
        """由引擎结论构造报告；反例只保留程序声明的变量"""
        verdict = outcome.verdict
        stats = outcome.stats
        report = cls(
            verdict=outcome.label,
            formula_count=int(stats.formula_count),
            formulae_time=max(0.0, float(stats.formulae_time)),
            sat_time=max(0.0, float(stats.sat_time)),
            worker=stats.worker,
            program=program,
            name=name,
        )
        report.total_time = max(float(stats.total_time), report.sat_time + report.formulae_time)
        if isinstance(verdict, Inductive):
            report.k = verdict.k
        elif isinstance(verdict, Refuted):
            report.k = verdict.depth
            report.n = verdict.n
            if verdict.witness is not None:
                report.witness = {v: int(verdict.witness.get(v, 0)) for v in variables}
        elif isinstance(verdict, EngineError):
            report.message = verdict.message
        else:
            report.extra['bound'] = getattr(verdict, 'bound', None)
        return report

    @classmethod
    def error(cls, message: str, program: str = "", name: str = "") -> "Report":
        return cls(verdict="error", message=message, program=program, name=name)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Report":
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**known)


def render_json(report: Report) -> str:
    """JSON 渲染"""
    return json.dumps(report.to_dict(), ensure_ascii=False, indent=2)


def parse_json(text: str) -> Report:
    """render_json 的逆"""
    return Report.from_dict(json.loads(text))


def format_witness(witness: Optional[Dict[str, int]]) -> str:
    if not witness:
        return "-"
    return " ".join(f"{var}={value}" for var, value in witness.items())


def render_human(report: Report) -> str:
    """人类可读的报告"""
    lines = ["=" * 60]
    if report.program:
        lines.append(f"程序: {report.program}")
    lines.append(f"结论: {report.verdict}" + (f"   {report.depth_label}" if report.depth_label else ""))
    if report.verdict == "ref":
        lines.append(f"反例初始状态: {format_witness(report.witness)}")
    if report.message:
        lines.append(f"信息: {report.message}")
    lines.append(
        f"#formulae: {report.formula_count}   formulae_t: {report.formulae_time:.3f}s   "
        f"sat_t: {report.sat_time:.3f}s   total_t: {report.total_time:.3f}s"
    )
    if report.worker:
        lines.append(f"得出结论的引擎: {report.worker}")
    lines.append("=" * 60)
    return "\n".join(lines)


def render(report: Report, output: str = "human") -> str:
    return render_json(report) if output == "json" else render_human(report)


__all__ = [
    'EXIT_CODES', 'JobSpec', 'Report', 'render_json', 'parse_json', 'render_human', 'render',
    'format_witness',
]
