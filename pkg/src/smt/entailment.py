# -*- coding: utf-8 -*-
"""
定量蕴含 h ⪯ h′ 的判定

把两侧化为 GNF {(φ_i, ẽ_i)}、{(ψ_j, ã_j)}，然后检查
    ⋁_i ⋁_{j: ã_j ≠ ∞} (φ_i ∧ ψ_j ∧ ⟨ẽ_i⟩ > ã_j)
是否可满足，其中 ⟨∞⟩ 是不受约束的自然数常量 infty。不可满足即蕴含成立；
可满足时从模型中读出程序变量的取值作为反例。
"""

from typing import Iterable, Optional, Sequence, Tuple

from ..expectations.gnf import Gnf, gnf
from ..expectations.linexp import LinExp, linexp_vars, simplify
from ..lattice.domain import EntailmentResult
from ..config import GnfConfig
from ..pgcl.ast import BoolExpr, FALSE, State, TRUE
from ..pgcl.printer import print_bool
from ..pgcl.semantics import bool_vars, simplify_bool
from ..utils.cache import MemoCache, memoized
from ..utils.errors import SolverUnknownError
from ..utils.logger import LoggerMixin
from .solver_client import SatResult, SolverSession
from .terms import (
    INFTY_SYMBOL, bool_term, conjunction, disjunction, exceeds_term, var_symbol,
)


class SmtContext(LoggerMixin):
    """
    求解器会话 + 程序变量声明 + 记忆化的守卫可满足性判定

    所有程序变量声明为 Int 并断言非负；∞ 对应的 infty 同样是自然数常量。
    """

    def __init__(self, session: SolverSession, variables: Sequence[str] = (),
                 prune: bool = GnfConfig.PRUNE):
        self.session = session
        self.variables: Tuple[str, ...] = tuple(variables)
        self.prune = prune
        self.guard_cache = MemoCache(name=f"{session.name}-guards")
        self._guard_sat = memoized(self.guard_cache, key_fn=print_bool)(self._query_guard)
        self.declare_variables(self.variables)
        if not session.is_declared(INFTY_SYMBOL):
            session.declare_const(INFTY_SYMBOL, "Int")
            session.assert_formula(f"(>= {INFTY_SYMBOL} 0)")

    def declare_variables(self, names: Iterable[str]) -> None:
        for name in sorted(set(names)):
            symbol = var_symbol(name)
            if not self.session.is_declared(symbol):
                self.session.declare_const(symbol, "Int")
                self.session.assert_formula(f"(>= {symbol} 0)")
            if name not in self.variables:
                self.variables = self.variables + (name,)

    def check(self, formula: str) -> SatResult:
        """在临时作用域中检查 formula，unknown 视为错误"""
        with self.session.scope():
            self.session.assert_formula(formula)
            result = self.session.check_sat()
        if result == SatResult.UNKNOWN:
            raise SolverUnknownError(f"求解器对查询返回 unknown: {formula[:200]}")
        return result

    def satisfiable(self, guard: BoolExpr) -> bool:
        """守卫在 ℕ 状态上是否可满足（先做语法折叠，再查询求解器并记忆化）"""
        guard = simplify_bool(guard)
        if guard == FALSE:
            return False
        if guard == TRUE:
            return True
        return self._guard_sat(guard)

    def _query_guard(self, guard: BoolExpr) -> bool:
        self.declare_variables(bool_vars(guard))
        return self.check(bool_term(guard)) == SatResult.SAT

    @property
    def pruner(self):
        """传给 gnf/min_expectation 的剪枝回调"""
        return self.satisfiable if self.prune else None

    def witness(self, variables: Optional[Sequence[str]] = None) -> State:
        """在最近一次 sat 的作用域内读取程序变量取值"""
        names = list(variables if variables is not None else self.variables)
        values = self.session.get_values([var_symbol(name) for name in names])
        return State({name: int(value) for name, value in zip(names, values)})

    def witness_in(self, formula: str, variables: Optional[Sequence[str]] = None) -> Optional[State]:
        """formula 可满足时返回一个模型中的程序状态，否则返回 None"""
        with self.session.scope():
            self.session.assert_formula(formula)
            result = self.session.check_sat()
            if result == SatResult.SAT:
                return self.witness(variables)
        if result == SatResult.UNKNOWN:
            raise SolverUnknownError(f"求解器对查询返回 unknown: {formula[:200]}")
        return None


def exceed_formula(left: Gnf, right: Gnf) -> str:
    """⋁_i ⋁_{j: ã_j ≠ ∞} (φ_i ∧ ψ_j ∧ ⟨ẽ_i⟩ > ã_j)"""
    disjuncts = []
    for phi, e in left:
        for psi, a in right.finite_cells():
            disjuncts.append(conjunction([bool_term(phi), bool_term(psi), exceeds_term(e, a)]))
    return disjunction(disjuncts)


def entails(h: LinExp, other: LinExp, context: SmtContext) -> EntailmentResult:
    """
    判定 h ⪯ other

    Args:
        h: 左侧期望
        other: 右侧期望
        context: 求解器上下文

    Returns:
        EntailmentResult: holds，或 violated 附带反例状态

    Raises:
        SolverError: 求解器崩溃、协议错误或返回 unknown
    """
    if simplify(h) == simplify(other):
        return EntailmentResult(True)
    context.declare_variables(linexp_vars(h) | linexp_vars(other))
    left = gnf(h, context.pruner)
    right = gnf(other, context.pruner)
    formula = exceed_formula(left, right)
    if formula == "false":
        return EntailmentResult(True)
    witness = context.witness_in(formula)
    if witness is None:
        return EntailmentResult(True)
    return EntailmentResult(False, witness)


__all__ = ['SmtContext', 'exceed_formula', 'entails']
