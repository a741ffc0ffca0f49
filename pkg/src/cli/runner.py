# -*- coding: utf-8 -*-
"""
单个验证任务的执行：解析 → 检查 → 构造领域 → 并行验证 → 报告
"""

from pathlib import Path
from typing import Tuple

from ..expectations.linexp import LinExp, ZERO
from ..expectations.parser import check_expectation, parse_expectation
from ..expectations.transformers import Mode
from ..lattice.engine import verify_parallel
from ..pgcl.ast import Program
from ..pgcl.parser import load_program
from ..smt.domains import EncodedDomain, ExpectationDomain, VerificationProblem
from ..smt.solver_client import ensure_solver
from ..utils.errors import SentinelError
from ..utils.logger import get_logger
from ..utils.validator import JobValidator
from .job import JobSpec, Report

logger = get_logger(__name__)


def load_problem(job: JobSpec) -> Tuple[Program, VerificationProblem]:
    """
    读取程序并解析两个期望

    Raises:
        JobSpecError: 任务描述不合法
        ProgramSyntaxError / ProgramSemanticError: 程序或期望有误
        OSError: 程序文件不可读
    """
    JobValidator().validate_job(job)
    program = load_program(job.program)
    declared = set(program.variables)
    mode = Mode.parse(job.mode)

    post: LinExp = ZERO
    if mode == Mode.WP:
        post = check_expectation(parse_expectation(job.post), declared)
    bound = check_expectation(parse_expectation(job.pre), declared)

    problem = VerificationProblem(
        program=program,
        post=post,
        bound=bound,
        mode=mode,
        solver_path=job.solver_path,
        solver_args=tuple(job.solver_args) if job.solver_args is not None else None,
        emit_dir=job.emit_smt2,
        close_instances=job.close_instances,
        tag=job.name or Path(job.program).stem,
    )
    return program, problem


def run(job: JobSpec) -> Report:
    """
    执行一个验证任务

    Args:
        job: 任务描述

    Returns:
        Report: 结论与统计；任何解析、语义或求解器错误都转为 verdict=error 的报告
    """
    name = job.name or Path(job.program).stem
    try:
        program, problem = load_problem(job)
        ensure_solver(job.solver_path, job.solver_args)
    except (SentinelError, OSError) as e:
        logger.error(f"[{name}] 任务无法开始: {e}")
        return Report.error(str(e), program=job.program, name=name)

    domain = ExpectationDomain(problem) if job.symbolic else EncodedDomain(problem)
    logger.info(f"[{name}] 开始验证（模式 {problem.mode.value}，领域 {domain.name}）")
    outcome = verify_parallel(domain, job.max_k, job.max_n, job.deadline)
    report = Report.from_outcome(outcome, program.variables, program=job.program, name=name)
    logger.info(f"[{name}] 结论 {report.verdict}" + (f" k={report.k}" if report.k is not None else ""))
    return report


__all__ = ['load_problem', 'run']
