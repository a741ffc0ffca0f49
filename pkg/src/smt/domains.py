# -*- coding: utf-8 -*-
"""
基于求解器的验证领域

EncodedDomain      格元素是增量编码中的迭代元 P_k / Q_k（引擎的默认领域）
ExpectationDomain  格元素是符号线性期望，Φ 与 ⊓ 在期望层面直接计算

两者都只共享不可变的 VerificationProblem；fork() 为每个工作线程启动独立的求解器进程。
"""

import itertools
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from ..config import EncodingConfig, GnfConfig, SolverConfig
from ..expectations.gnf import min_expectation
from ..expectations.linexp import LinExp, ZERO
from ..expectations.transformers import CharacteristicFunctional, Mode
from ..lattice.domain import EntailmentResult, VerificationDomain
from ..pgcl.ast import Program
from ..utils.errors import SolverCrashedError, UnsupportedQueryError
from ..utils.logger import LoggerMixin
from .encoding import EncodingState, FrameRef, Purpose, init_encoding
from .entailment import SmtContext, entails
from .solver_client import SolverSession

_session_ids = itertools.count(1)


@dataclass(frozen=True)
class VerificationProblem:
    """
    一个验证问题的不可变描述

    Attributes:
        program: 单循环程序
        post: 后期望 g（ert 模式忽略）
        bound: 候选上界 f
        mode: wp / ert
        solver_path / solver_args: 求解器命令行
        emit_dir: 非空时把每个会话的脚本写入该目录
        close_instances: 是否对函数实例做传递闭包
    """
    program: Program
    post: LinExp
    bound: LinExp
    mode: Mode = Mode.WP
    solver_path: Optional[str] = None
    solver_args: Optional[Tuple[str, ...]] = None
    emit_dir: Optional[str] = SolverConfig.EMIT_SMT2_DIR
    close_instances: bool = EncodingConfig.CLOSE_INSTANCES
    prune_instances: bool = EncodingConfig.PRUNE_INSTANCES
    prune_with_solver: bool = EncodingConfig.PRUNE_WITH_SOLVER
    prune_gnf: bool = GnfConfig.PRUNE
    tag: str = "job"


class _SessionOwner(LoggerMixin):
    """按需启动求解器会话；interrupt 可先于启动到达"""

    def __init__(self, problem: VerificationProblem, name: str):
        self.problem = problem
        self.name = name
        self._session: Optional[SolverSession] = None
        self._context: Optional[SmtContext] = None
        self._lock = threading.Lock()
        self._interrupted = False

    @property
    def context(self) -> SmtContext:
        if self._context is None:
            with self._lock:
                if self._interrupted:
                    raise SolverCrashedError(f"[{self.name}] 已中断")
                if self._context is None:
                    emit_path = None
                    if self.problem.emit_dir:
                        emit_path = Path(self.problem.emit_dir) / f"{self.problem.tag}-{self.name}.smt2"
                    session = SolverSession(
                        self.problem.solver_path, self.problem.solver_args,
                        emit_path=emit_path, name=self.name,
                    )
                    self._session = session
                    session.start()
                    self._context = SmtContext(session, self.problem.program.variables,
                                               prune=self.problem.prune_gnf)
        return self._context

    def interrupt(self) -> None:
        with self._lock:
            self._interrupted = True
            session = self._session
        if session is not None:
            session.interrupt()

    def close(self) -> None:
        if self._session is not None:
            self._session.stop()

    def session_stats(self) -> Dict[str, Any]:
        return self._session.stats() if self._session is not None else {}


# =============================================================================
# 编码领域
# =============================================================================

class EncodedDomain(_SessionOwner, VerificationDomain[FrameRef]):
    """
    以增量编码为格的验证领域

    κ-归纳在 INDUCTION 编码上走 Q_0 → P_0 → Q_1 → P_1 …；
    BMC 在 REFUTATION 编码上走 Q_0 = 0 → P_0 → P_1 …（对 P_j 施加 Φ 即推入 Q_{j+1} = P_j）。
    """

    name = "encoded"

    def __init__(self, problem: VerificationProblem, name: Optional[str] = None):
        super().__init__(problem, name or f"encoded-{next(_session_ids)}")
        self._encodings: Dict[Purpose, EncodingState] = {}

    def encoding(self, purpose: Purpose) -> EncodingState:
        if purpose not in self._encodings:
            self._encodings[purpose] = init_encoding(
                self.context, self.problem.program, self.problem.post, self.problem.bound,
                self.problem.mode, purpose,
                close_instances=self.problem.close_instances,
                prune_instances=self.problem.prune_instances,
                prune_with_solver=self.problem.prune_with_solver,
            )
        return self._encodings[purpose]

    @property
    def bottom(self) -> FrameRef:
        return FrameRef(Purpose.REFUTATION, "Q", 0)

    @property
    def candidate(self) -> FrameRef:
        return FrameRef(Purpose.INDUCTION, "Q", 0)

    def apply_phi(self, g: FrameRef) -> FrameRef:
        state = self.encoding(g.purpose)
        if g.kind == "Q":
            state.ensure_phi(g.index)
            return FrameRef(g.purpose, "P", g.index)
        if g.purpose != Purpose.REFUTATION:
            raise UnsupportedQueryError("apply_phi", f"κ-归纳编码中 Φ 只作用于 Q_k，收到 {g}")
        while state.frame <= g.index:
            state.push_frame()
        state.ensure_phi(g.index + 1)
        return FrameRef(g.purpose, "P", g.index + 1)

    def meet_with_bound(self, g: FrameRef) -> FrameRef:
        if g.purpose != Purpose.INDUCTION:
            raise UnsupportedQueryError("meet_with_bound", f"BMC 编码不做下确界，收到 {g}")
        if g.kind == "Q":
            return g
        state = self.encoding(g.purpose)
        while state.frame <= g.index:
            state.push_frame()
        return FrameRef(g.purpose, "Q", g.index + 1)

    def entails(self, g: FrameRef, h: FrameRef) -> EntailmentResult:
        state = self.encoding(g.purpose)
        if h == self.candidate:
            witness = state.check_exceeds(g)
        elif g.kind == "P" and h.kind == "Q" and g.purpose == h.purpose and g.index == h.index:
            witness = state.check_iterate(g.index)
        else:
            raise UnsupportedQueryError("entails", f"不支持的蕴含查询 {g} ⪯ {h}")
        return EntailmentResult(witness is None, witness)

    def fork(self) -> "EncodedDomain":
        return EncodedDomain(self.problem)

    def stats(self) -> Dict[str, Any]:
        data = self.session_stats()
        data['formulae_time'] = sum(e.formulae_time for e in self._encodings.values())
        data['instances'] = sum(len(e.instances) for e in self._encodings.values())
        data['frames'] = max((e.frame for e in self._encodings.values()), default=0)
        return data


# =============================================================================
# 符号期望领域
# =============================================================================

class ExpectationDomain(_SessionOwner, VerificationDomain[LinExp]):
    """元素是线性期望；Φ 为特征泛函，⊓ 为逐点最小值，⪯ 经 GNF 交给求解器"""

    name = "expectation"

    def __init__(self, problem: VerificationProblem, name: Optional[str] = None):
        super().__init__(problem, name or f"expectation-{next(_session_ids)}")
        self.phi = CharacteristicFunctional(problem.program, problem.post, problem.mode)
        self.iterations = 0

    @property
    def bottom(self) -> LinExp:
        return ZERO

    @property
    def candidate(self) -> LinExp:
        return self.problem.bound

    def apply_phi(self, g: LinExp) -> LinExp:
        self.iterations += 1
        return self.phi(g)

    def meet_with_bound(self, g: LinExp) -> LinExp:
        return min_expectation(g, self.problem.bound, self.context.pruner)

    def entails(self, g: LinExp, h: LinExp) -> EntailmentResult:
        return entails(g, h, self.context)

    def fork(self) -> "ExpectationDomain":
        return ExpectationDomain(self.problem)

    def stats(self) -> Dict[str, Any]:
        data = self.session_stats()
        data['frames'] = self.iterations
        return data


__all__ = ['VerificationProblem', 'EncodedDomain', 'ExpectationDomain']
