# -*- coding: utf-8 -*-
"""
截断 oracle：在具体状态上穷举展开循环的概率树，用精确有理数计算

    truncated_value_oracle  Φ^n(0)(σ)：n 次迭代内退出循环的运行上 g 的期望
    truncated_kind_oracle   Ψ_f^k(f)(σ) 与 Φ(Ψ_f^k(f))(σ)，与 κ-归纳编码中的 Q_k / P_k 对应

用于检验符号变换器与增量编码。相同的 (状态, 深度) 只展开一次。
"""

import math
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from ..config import OracleConfig
from ..expectations.linexp import LinExp, ZERO, evaluate
from ..expectations.transformers import Mode
from ..pgcl.ast import Program, State
from ..pgcl.semantics import eval_bool, execute
from ..utils.errors import OracleCapExceeded
from ..utils.logger import get_logger

logger = get_logger(__name__)

Value = Union[Fraction, float]


def _scale(prob: Fraction, value: Value) -> Value:
    return math.inf if value == math.inf else prob * value


def _add(left: Value, right: Value) -> Value:
    if left == math.inf or right == math.inf:
        return math.inf
    return left + right


class TruncatedOracle:
    """
    带节点上限的记忆化展开器

    Args:
        program: 循环程序
        post: 后期望 g（ert 模式忽略）
        mode: wp / ert
        bound: 候选上界 f，只在 κ 相关查询中使用
        node_cap: 允许展开的 (状态, 深度) 节点数
    """

    def __init__(self, program: Program, post: LinExp, mode: Mode = Mode.WP,
                 bound: Optional[LinExp] = None, node_cap: int = OracleConfig.NODE_CAP):
        self.program = program
        self.mode = Mode.parse(mode)
        self.post = ZERO if self.mode == Mode.ERT else post
        self.bound = bound
        self.node_cap = node_cap
        self.nodes = 0
        self._memo: Dict[Tuple[str, int, State], Value] = {}

    def _count(self, depth: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise OracleCapExceeded(self.node_cap, depth)

    def _step(self, state: State, successor_value) -> Value:
        """Φ(h)(σ)，h 由 successor_value 给出"""
        if not eval_bool(self.program.guard, state):
            return evaluate(self.post, state)
        total: Value = Fraction(0)
        for prob, final, cost in execute(self.program.body, state):
            value = successor_value(final)
            if self.mode == Mode.ERT and cost:
                value = _add(value, Fraction(cost))
            total = _add(total, _scale(prob, value))
        return total

    def kleene(self, n: int, state: State) -> Value:
        """Φ^n(0)(σ)"""
        if n <= 0:
            return Fraction(0)
        key = ("kleene", n, state)
        if key not in self._memo:
            self._count(n)
            self._memo[key] = self._step(state, lambda s: self.kleene(n - 1, s))
        return self._memo[key]

    def _bound_at(self, state: State) -> Value:
        if self.bound is None:
            raise ValueError("κ 查询需要候选上界 f")
        return evaluate(self.bound, state)

    def kind_iterate(self, k: int, state: State) -> Value:
        """Ψ_f^k(f)(σ)，Ψ_f^0(f) = f"""
        if k <= 0:
            return self._bound_at(state)
        key = ("iterate", k, state)
        if key not in self._memo:
            self._count(k)
            self._memo[key] = min(self.kind_phi(k - 1, state), self._bound_at(state))
        return self._memo[key]

    def kind_phi(self, k: int, state: State) -> Value:
        """Φ(Ψ_f^k(f))(σ)"""
        key = ("phi", k, state)
        if key not in self._memo:
            self._count(k)
            self._memo[key] = self._step(state, lambda s: self.kind_iterate(k, s))
        return self._memo[key]


def truncated_value_oracle(program: Program, post: LinExp, n: int, state: State,
                           mode: Mode = Mode.WP, node_cap: int = OracleConfig.NODE_CAP) -> Value:
    """
    Φ^n(0)(σ)：n 次迭代内退出的运行上 g 的期望（仍在循环中的概率质量记 0）

    Raises:
        OracleCapExceeded: 展开节点超过上限
    """
    oracle = TruncatedOracle(program, post, mode, node_cap=node_cap)
    value = oracle.kleene(n, State(state))
    logger.debug(f"oracle Φ^{n}(0)({dict(state)}) = {value}，节点 {oracle.nodes}")
    return value


def truncated_kind_oracle(program: Program, post: LinExp, bound: LinExp, k: int, state: State,
                          mode: Mode = Mode.WP, phi: bool = False,
                          node_cap: int = OracleConfig.NODE_CAP) -> Value:
    """
    Ψ_f^k(f)(σ)；phi=True 时返回 Φ(Ψ_f^k(f))(σ)

    Raises:
        OracleCapExceeded: 展开节点超过上限
    """
    oracle = TruncatedOracle(program, post, mode, bound=bound, node_cap=node_cap)
    state = State(state)
    return oracle.kind_phi(k, state) if phi else oracle.kind_iterate(k, state)


__all__ = ['TruncatedOracle', 'truncated_value_oracle', 'truncated_kind_oracle']
