# -*- coding: utf-8 -*-
"""
期望变换器
- wp / ert 两种模式下无循环语句的最弱前期望
- 循环的特征泛函 Φ(h) = [¬φ]·g + [φ]·wp(body)(h)
- κ-归纳的一步 Ψ_f(h) = Φ(h) min f（不经求解器的符号参考路径）
"""

from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional

from ..pgcl.ast import (
    Assign, BoolExpr, CatAssign, Ite, Not, Num, PChoice, Program, Seq, Skip, Stmt, Tick,
)
from ..pgcl.semantics import body_paths
from .gnf import min_expectation
from .linexp import (
    ETerm, Guard, LinExp, Sum, ZERO, plus, rescale, simplify, substitute, substitute_many,
)


class Mode(str, Enum):
    """变换器模式：wp 计算期望值，ert 额外累计 tick 代价"""
    WP = "wp"
    ERT = "ert"

    @classmethod
    def parse(cls, value: "str | Mode") -> "Mode":
        if isinstance(value, Mode):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"未知模式 {value!r}，应为 wp 或 ert") from None


Satisfiable = Optional[Callable[[BoolExpr], bool]]


def wp_loopfree(stmt: Stmt, h: LinExp, mode: Mode = Mode.WP) -> LinExp:
    """
    无循环语句的最弱前期望（逐条语句的结构规则）

    Args:
        stmt: 无循环语句
        h: 后期望
        mode: wp 或 ert；ert 模式下 tick(n) 把 n 加到后期望上

    Returns:
        LinExp: 已化简的前期望
    """
    return simplify(_wp(stmt, h, mode))


def _wp(stmt: Stmt, h: LinExp, mode: Mode) -> LinExp:
    if isinstance(stmt, Skip):
        return h
    if isinstance(stmt, Assign):
        return substitute(h, stmt.var, stmt.expr)
    if isinstance(stmt, Seq):
        return _wp(stmt.first, _wp(stmt.second, h, mode), mode)
    if isinstance(stmt, PChoice):
        return Sum(
            rescale(stmt.prob, _wp(stmt.left, h, mode)),
            rescale(1 - stmt.prob, _wp(stmt.right, h, mode)),
        )
    if isinstance(stmt, Ite):
        return Sum(
            Guard(stmt.guard, _wp(stmt.then, h, mode)),
            Guard(Not(stmt.guard), _wp(stmt.orelse, h, mode)),
        )
    if isinstance(stmt, Tick):
        if mode == Mode.ERT and stmt.amount:
            return Sum(h, ETerm(Num(Fraction(stmt.amount))))
        return h
    if isinstance(stmt, CatAssign):
        return plus(*(rescale(weight, substitute(h, stmt.var, value)) for value, weight in stmt.branches))
    raise TypeError(f"未知语句节点: {stmt!r}")


def wp_by_paths(stmt: Stmt, h: LinExp, mode: Mode = Mode.WP) -> LinExp:
    """
    经符号路径分解计算的前期望：Σ_path [guard]·prob·(h[subst] + cost)

    与 wp_loopfree 逐点相等，作为两条独立实现的交叉验证，也是 SMT 编码所用的形状。
    """
    parts: List[LinExp] = []
    for path in body_paths(stmt):
        value = substitute_many(h, path.mapping())
        if mode == Mode.ERT and path.cost:
            value = Sum(value, ETerm(Num(Fraction(path.cost))))
        parts.append(Guard(path.guard, rescale(path.prob, value)))
    return simplify(plus(*parts))


class CharacteristicFunctional:
    """
    循环 while(φ){body} 关于后期望 g 的特征泛函

    Φ(h) = [¬φ]·g + [φ]·wp(body)(h)；ert 模式下 g 固定为 0。
    """

    def __init__(self, program: Program, post: LinExp, mode: Mode = Mode.WP):
        self.program = program
        self.mode = Mode.parse(mode)
        self.post = ZERO if self.mode == Mode.ERT else post

    def __call__(self, h: LinExp) -> LinExp:
        body = wp_loopfree(self.program.body, h, self.mode)
        return simplify(Sum(
            Guard(Not(self.program.guard), self.post),
            Guard(self.program.guard, body),
        ))

    def iterate(self, h: LinExp, n: int) -> LinExp:
        """Φ^n(h)"""
        for _ in range(n):
            h = self(h)
        return h


def characteristic_functional(program: Program, post: LinExp, mode: Mode = Mode.WP) -> CharacteristicFunctional:
    """构造循环的特征泛函"""
    return CharacteristicFunctional(program, post, mode)


def kind_step(bound: LinExp, phi: Callable[[LinExp], LinExp], h: LinExp,
              satisfiable: Satisfiable = None) -> LinExp:
    """
    κ-归纳算子一步：Ψ_f(h) = Φ(h) min f

    Args:
        bound: 候选上界 f
        phi: 特征泛函
        h: 当前迭代元
        satisfiable: 可选的守卫可满足性判定，用于剪除 GNF 单元
    """
    return min_expectation(phi(h), bound, satisfiable)


def kind_iterate(bound: LinExp, phi: Callable[[LinExp], LinExp], k: int,
                 satisfiable: Satisfiable = None) -> LinExp:
    """Ψ_f^k(f)"""
    h = bound
    for _ in range(k):
        h = kind_step(bound, phi, h, satisfiable)
    return h


__all__ = [
    'Mode', 'wp_loopfree', 'wp_by_paths', 'CharacteristicFunctional',
    'characteristic_functional', 'kind_step', 'kind_iterate',
]
