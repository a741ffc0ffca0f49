# -*- coding: utf-8 -*-
"""
κ-归纳与 BMC 迭代元的增量未解释函数编码

每一帧 k 引入两个未解释函数 P_k, Q_k : ℕ^v → ℝ（v 为程序变量个数）：
    P_k(x) = [¬φ(x)]·g(x) + [φ(x)]·Σ_path [guard(x)]·p·(Q_k(subst(x)) + cost)
    κ-归纳：Q_0 = f，Q_{k+1} = P_k min f（按 f 的 GNF 单元分情形）
    BMC：   Q_0 = 0，Q_{k+1} = P_k
于是 P_k 表示 Φ(Ψ_f^k(f))（κ-归纳）或 Φ^{k+1}(0)（BMC）。

定义以“实例”为单位断言：对出现在已断言公式中的每个函数应用 F(a)，都要断言
把定义中的变量代换为 a 的副本，否则 F(a) 不受约束、编码不可靠。实例按语法化的
实参元组去重，用工作表传递闭包；局部守卫 φ(a) ∧ guard(a) 不可满足的分支直接删去，
对应的子实例也就不再需要。
"""

import time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Deque, Dict, List, Optional, Sequence, Set, Tuple

from ..config import EncodingConfig
from ..expectations.gnf import Gnf, gnf
from ..expectations.linexp import Infinity, LinExp, ZERO, simplify, substitute_many
from ..expectations.transformers import Mode
from ..pgcl.ast import And, ArithExpr, FALSE, Program, State, TRUE, Var
from ..pgcl.printer import print_arith, print_program
from ..pgcl.semantics import body_paths, simplify_arith, simplify_bool, subst_arith, subst_bool
from ..utils.errors import SolverProtocolError, SolverUnknownError
from ..utils.logger import LoggerMixin
from .entailment import SmtContext
from .solver_client import SatResult
from .terms import (
    apply, bool_term, conjunction, disjunction, ext_term, int_term, linexp_term, real_const,
    real_term, state_equalities,
)


class Purpose(str, Enum):
    """编码用途：κ-归纳（Q_0 = f）或 BMC（Q_0 = 0）"""
    INDUCTION = "kind"
    REFUTATION = "bmc"


@dataclass(frozen=True)
class FrameRef:
    """编码中的一个迭代元：P_k 或 Q_k"""
    purpose: Purpose
    kind: str
    index: int


Args = Tuple[ArithExpr, ...]
_Instance = Tuple[str, int, Args]


class EncodingState(LoggerMixin):
    """
    增量编码状态

    Attributes:
        frame: 已声明的最大 Q 下标
        phi_frame: 已声明的最大 P 下标
        instances: 已断言定义的 (函数名, 实参文本) 集合
    """

    def __init__(self, context: SmtContext, program: Program, post: LinExp, bound: LinExp,
                 mode: Mode = Mode.WP, purpose: Purpose = Purpose.INDUCTION,
                 close_instances: bool = EncodingConfig.CLOSE_INSTANCES,
                 prune_instances: bool = EncodingConfig.PRUNE_INSTANCES,
                 prune_with_solver: bool = EncodingConfig.PRUNE_WITH_SOLVER):
        self.context = context
        self.session = context.session
        self.program = program
        self.variables: Tuple[str, ...] = program.variables
        self.mode = Mode.parse(mode)
        self.post = simplify(ZERO if self.mode == Mode.ERT else post)
        self.bound = bound
        self.purpose = purpose
        self.close_instances = close_instances
        self.prune_instances = prune_instances
        self.prune_with_solver = prune_with_solver

        self.paths = body_paths(program.body)
        self.bound_gnf: Gnf = gnf(bound, context.pruner)
        self.identity: Args = tuple(Var(v) for v in self.variables)
        self.prefix = "K" if purpose == Purpose.INDUCTION else "B"

        self.frame = -1
        self.phi_frame = -1
        self.instances: Set[Tuple[str, Tuple[str, ...]]] = set()
        self.pruned = 0
        self.formulae_time = 0.0

    # ===== 名称与声明 =====

    def function_name(self, kind: str, index: int) -> str:
        return f"{self.prefix}{kind}_{index}"

    def application(self, kind: str, index: int, args: Optional[Args] = None) -> str:
        args = self.identity if args is None else args
        return apply(self.function_name(kind, index), [int_term(a) for a in args])

    def _declare(self, kind: str, index: int) -> None:
        self.session.declare_fun(self.function_name(kind, index), ["Int"] * len(self.variables), "Real")

    # ===== 帧 =====

    def declare_initial(self) -> None:
        self.session.comment(f"{self.purpose.value} 编码\n{print_program(self.program)}")
        self._declare("Q", 0)
        self.frame = 0
        self._require("Q", 0, self.identity)

    def ensure_phi(self, index: int) -> None:
        """确保 P_index 已声明并在恒等实参上定义"""
        if index > self.frame:
            raise ValueError(f"P_{index} 依赖尚未推入的 Q_{index}")
        while self.phi_frame < index:
            self.phi_frame += 1
            self.session.comment(f"帧 {self.phi_frame}: {self.function_name('P', self.phi_frame)}")
            self._declare("P", self.phi_frame)
            self._require("P", self.phi_frame, self.identity)

    def push_frame(self) -> "EncodingState":
        """
        推入一帧：确保 P_k 已定义，再声明 Q_{k+1}（κ-归纳为 P_k min f，BMC 为 P_k）

        Returns:
            EncodingState: self（frame 加一）
        """
        k = self.frame
        self.ensure_phi(k)
        self._declare("Q", k + 1)
        self.frame = k + 1
        self._require("Q", k + 1, self.identity)
        self.logger.debug(
            f"[{self.purpose.value}] 推入帧 {self.frame}，实例 {len(self.instances)}，剪除 {self.pruned}"
        )
        return self

    # ===== 实例闭包 =====

    def _key(self, kind: str, index: int, args: Args) -> Tuple[str, Tuple[str, ...]]:
        return self.function_name(kind, index), tuple(print_arith(a) for a in args)

    def _require(self, kind: str, index: int, args: Args) -> None:
        if self._key(kind, index, args) in self.instances:
            return
        start = time.perf_counter()
        sat_before = self.session.sat_time
        worklist: Deque[_Instance] = deque([(kind, index, args)])
        while worklist:
            kind, index, args = worklist.popleft()
            key = self._key(kind, index, args)
            if key in self.instances:
                continue
            self.instances.add(key)
            formula, children = self._definition(kind, index, args)
            self.session.assert_formula(formula)
            for child_kind, child_index, child_args in children:
                if not self.close_instances:
                    child_args = self.identity
                worklist.append((child_kind, child_index, child_args))
        elapsed = time.perf_counter() - start
        self.formulae_time += max(0.0, elapsed - (self.session.sat_time - sat_before))

    def _mapping(self, args: Args) -> Dict[str, ArithExpr]:
        return dict(zip(self.variables, args))

    def _definition(self, kind: str, index: int, args: Args) -> Tuple[str, List[_Instance]]:
        lhs = self.application(kind, index, args)
        mapping = self._mapping(args)
        if kind == "P":
            rhs, children = self._phi_term(index, args, mapping)
        elif index == 0:
            rhs, children = self._initial_term(mapping), []
        else:
            rhs, children = self._meet_term(index - 1, args, mapping), [("P", index - 1, args)]
        return f"(= {lhs} {rhs})", children

    def _initial_term(self, mapping: Dict[str, ArithExpr]) -> str:
        if self.purpose == Purpose.REFUTATION:
            return real_const(Fraction(0))
        return self._cells_term([(guard, ext_term(self._subst_ext(value, mapping)))
                                 for guard, value in self.bound_gnf], mapping)

    def _meet_term(self, phi_index: int, args: Args, mapping: Dict[str, ArithExpr]) -> str:
        p = self.application("P", phi_index, args)
        if self.purpose == Purpose.REFUTATION:
            return p
        branches = []
        for guard, value in self.bound_gnf:
            if isinstance(value, Infinity):
                branches.append((guard, p))
            else:
                a = real_term(simplify_arith(subst_arith(value, mapping)))
                branches.append((guard, f"(ite (<= {p} {a}) {p} {a})"))
        return self._cells_term(branches, mapping)

    def _cells_term(self, branches: Sequence[Tuple], mapping: Dict[str, ArithExpr]) -> str:
        """按互斥穷尽的单元构造嵌套 ite，最后一个单元作为 else 分支"""
        live = []
        for guard, term in branches:
            guard_at = simplify_bool(subst_bool(guard, mapping))
            if guard_at == FALSE:
                continue
            if guard_at == TRUE:
                return term
            live.append((guard_at, term))
        if not live:
            raise SolverProtocolError("GNF 单元在该实参下全部不可满足")
        result = live[-1][1]
        for guard_at, term in reversed(live[:-1]):
            result = f"(ite {bool_term(guard_at)} {term} {result})"
        return result

    @staticmethod
    def _subst_ext(value, mapping: Dict[str, ArithExpr]):
        if isinstance(value, Infinity):
            return value
        return simplify_arith(subst_arith(value, mapping))

    def _phi_term(self, index: int, args: Args, mapping: Dict[str, ArithExpr]) -> Tuple[str, List[_Instance]]:
        guard_at = simplify_bool(subst_bool(self.program.guard, mapping))
        post_term = linexp_term(simplify(substitute_many(self.post, mapping)))
        if guard_at == FALSE:
            return post_term, []

        children: List[_Instance] = []
        summands: List[str] = []
        for path in self.paths:
            path_guard = simplify_bool(subst_bool(path.guard, mapping))
            local = simplify_bool(And(guard_at, path_guard))
            if self.prune_instances and (
                local == FALSE or (self.prune_with_solver and not self.context.satisfiable(local))
            ):
                self.pruned += 1
                continue
            substitution = path.mapping()
            child_args: Args = tuple(
                simplify_arith(subst_arith(substitution.get(v, Var(v)), mapping)) for v in self.variables
            )
            children.append(("Q", index, child_args))
            value = self.application("Q", index, child_args)
            if self.mode == Mode.ERT and path.cost:
                value = f"(+ {value} {real_const(Fraction(path.cost))})"
            if path.prob != 1:
                value = f"(* {real_const(path.prob)} {value})"
            if path_guard != TRUE:
                value = f"(ite {bool_term(path_guard)} {value} 0.0)"
            summands.append(value)

        if not summands:
            body_term = "0.0"
        elif len(summands) == 1:
            body_term = summands[0]
        else:
            body_term = f"(+ {' '.join(summands)})"
        if guard_at == TRUE:
            return body_term, children
        return f"(ite {bool_term(guard_at)} {body_term} {post_term})", children

    # ===== 查询 =====

    def exceed_formula(self, ref: FrameRef) -> str:
        """∃x: ⋁_{ã_j ≠ ∞} ψ_j(x) ∧ F(x) > ã_j(x)"""
        lhs = self.application(ref.kind, ref.index)
        return disjunction([
            conjunction([bool_term(guard), f"(> {lhs} {real_term(value)})"])
            for guard, value in self.bound_gnf.finite_cells()
        ])

    def check_exceeds(self, ref: FrameRef) -> Optional[State]:
        """
        F ⋠ f ?

        Returns:
            Optional[State]: 超出时返回模型给出的反例状态，否则 None

        Raises:
            SolverUnknownError: 求解器返回 unknown
        """
        if ref.kind == "P":
            self.ensure_phi(ref.index)
        formula = self.exceed_formula(ref)
        if formula == "false":
            return None
        return self.context.witness_in(formula, self.variables)

    def check_inductive(self, index: int) -> bool:
        """Φ(Ψ_f^index(f)) ⪯ f ?"""
        return self.check_exceeds(FrameRef(self.purpose, "P", index)) is None

    def check_iterate(self, index: int) -> Optional[State]:
        """在 f 有限的区域上检查 P_index ⪯ Q_index，违反时返回反例"""
        self.ensure_phi(index)
        p = self.application("P", index)
        q = self.application("Q", index)
        formula = disjunction([
            conjunction([bool_term(guard), f"(> {p} {q})"])
            for guard, _ in self.bound_gnf.finite_cells()
        ])
        if formula == "false":
            return None
        return self.context.witness_in(formula, self.variables)

    def value_at(self, ref: FrameRef, state: State) -> Tuple[Fraction, bool]:
        """
        读取 F(σ) 在当前约束下的取值

        Returns:
            (值, 是否唯一)：唯一性通过断言 F(σ) ≠ 值 后得到 unsat 确认
        """
        if ref.kind == "P":
            self.ensure_phi(ref.index)
        lhs = self.application(ref.kind, ref.index)
        fixed = state_equalities(state, self.variables)
        with self.session.scope():
            self.session.assert_formula(fixed)
            result = self.session.check_sat()
            if result != SatResult.SAT:
                raise SolverUnknownError(f"固定状态 {state} 后约束为 {result.value}")
            (value,) = self.session.get_values([lhs])
        with self.session.scope():
            self.session.assert_formula(fixed)
            self.session.assert_formula(f"(not (= {lhs} {real_const(value)}))")
            unique = self.session.check_sat() == SatResult.UNSAT
        return value, unique

    def stats(self) -> Dict[str, float]:
        return {
            'frames': self.frame,
            'instances': len(self.instances),
            'pruned': self.pruned,
            'formulae_time': self.formulae_time,
        }


def init_encoding(context: SmtContext, program: Program, post: LinExp, bound: LinExp,
                  mode: Mode = Mode.WP, purpose: Purpose = Purpose.INDUCTION,
                  **options) -> EncodingState:
    """
    建立第 0 帧：声明 Q_0 并在恒等实参上断言 Q_0 = f（κ-归纳）或 Q_0 = 0（BMC）

    Args:
        context: 求解器上下文（程序变量已声明）
        program: 循环程序
        post: 后期望 g（ert 模式忽略）
        bound: 候选上界 f
        mode: wp / ert
        purpose: 编码用途
        **options: close_instances / prune_instances / prune_with_solver

    Returns:
        EncodingState: 第 0 帧已就绪的编码
    """
    context.declare_variables(program.variables)
    state = EncodingState(context, program, post, bound, mode, purpose, **options)
    state.declare_initial()
    return state


def push_frame(state: EncodingState) -> EncodingState:
    """推入下一帧"""
    return state.push_frame()


__all__ = ['Purpose', 'FrameRef', 'EncodingState', 'init_encoding', 'push_frame']
