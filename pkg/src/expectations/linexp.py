# -*- coding: utf-8 -*-
"""
线性期望（LinExp）

    h ::= ẽ | [φ]·h | h + h
    ẽ ::= 线性算术式（非负有理系数、截断减法） | ∞

∞ 只能作为整个项出现，不能出现在算术式内部。求值使用精确有理数，∞ 用 math.inf 表示：
加法吸收 ∞，数乘遵守 0·∞ = 0。
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Tuple, Union

from ..pgcl.ast import (
    Add, And, ArithExpr, BoolExpr, FALSE, Mul, Not, Num, TRUE,
)
from ..pgcl.printer import print_arith, print_bool
from ..pgcl.semantics import (
    arith_vars, bool_vars, eval_arith, eval_bool, simplify_arith, simplify_bool,
    subst_arith, subst_bool,
)

INF = math.inf

# 求值结果：精确有理数或 math.inf
ExtValue = Union[Fraction, float]


@dataclass(frozen=True)
class Infinity:
    """原子 ∞"""

    def __repr__(self) -> str:
        return "∞"


INFTY = Infinity()

ExtLinExpr = Union[ArithExpr, Infinity]


@dataclass(frozen=True)
class ETerm:
    value: ExtLinExpr


@dataclass(frozen=True)
class Guard:
    """Iverson 括号 [guard]·body"""
    guard: BoolExpr
    body: "LinExp"


@dataclass(frozen=True)
class Sum:
    left: "LinExp"
    right: "LinExp"


LinExp = Union[ETerm, Guard, Sum]


def const(value: Union[int, str, Fraction]) -> ETerm:
    """常量期望"""
    return ETerm(Num(Fraction(value)))


ZERO = const(0)
ONE = const(1)
INFINITY = ETerm(INFTY)


def term(expr: ArithExpr) -> ETerm:
    return ETerm(expr)


def iverson(guard: BoolExpr, body: "LinExp" = ONE) -> Guard:
    return Guard(guard, body)


def plus(*parts: "LinExp") -> "LinExp":
    """左结合求和；空和为 0"""
    if not parts:
        return ZERO
    result = parts[0]
    for part in parts[1:]:
        result = Sum(result, part)
    return result


def is_infinite(value: ExtLinExpr) -> bool:
    return isinstance(value, Infinity)


# =============================================================================
# 求值
# =============================================================================

def evaluate_ext(value: ExtLinExpr, state: Mapping[str, int]) -> ExtValue:
    if isinstance(value, Infinity):
        return INF
    return eval_arith(value, state)


def evaluate(h: LinExp, state: Mapping[str, int]) -> ExtValue:
    """
    在状态上求期望的值

    Args:
        h: 线性期望
        state: 程序状态

    Returns:
        Fraction 或 math.inf
    """
    if isinstance(h, ETerm):
        return evaluate_ext(h.value, state)
    if isinstance(h, Guard):
        return evaluate(h.body, state) if eval_bool(h.guard, state) else Fraction(0)
    if isinstance(h, Sum):
        left = evaluate(h.left, state)
        right = evaluate(h.right, state)
        if left == INF or right == INF:
            return INF
        return left + right
    raise TypeError(f"未知期望节点: {h!r}")


# =============================================================================
# 代换与数乘
# =============================================================================

def substitute_many(h: LinExp, mapping: Mapping[str, ArithExpr]) -> LinExp:
    """同时代换，作用于所有算术与布尔位置"""
    if isinstance(h, ETerm):
        if isinstance(h.value, Infinity):
            return h
        return ETerm(subst_arith(h.value, mapping))
    if isinstance(h, Guard):
        return Guard(subst_bool(h.guard, mapping), substitute_many(h.body, mapping))
    if isinstance(h, Sum):
        return Sum(substitute_many(h.left, mapping), substitute_many(h.right, mapping))
    raise TypeError(f"未知期望节点: {h!r}")


def substitute(h: LinExp, var: str, expr: ArithExpr) -> LinExp:
    """h[var/expr]"""
    return substitute_many(h, {var: expr})


def rescale(c: Fraction, h: LinExp) -> LinExp:
    """
    数乘 c·h

    0·h = 0；c·∞ = ∞（c > 0）；穿过 Iverson 括号与求和分配。
    """
    c = Fraction(c)
    if c < 0:
        raise ValueError(f"数乘系数必须非负: {c}")
    if c == 0:
        return ZERO
    if c == 1:
        return h
    if isinstance(h, ETerm):
        if isinstance(h.value, Infinity):
            return h
        return ETerm(simplify_arith(Mul(c, h.value)))
    if isinstance(h, Guard):
        return Guard(h.guard, rescale(c, h.body))
    if isinstance(h, Sum):
        return Sum(rescale(c, h.left), rescale(c, h.right))
    raise TypeError(f"未知期望节点: {h!r}")


# =============================================================================
# 展平与化简
# =============================================================================

Summand = Tuple[BoolExpr, ExtLinExpr]


def summands(h: LinExp) -> List[Summand]:
    """展平为 Σ [ψ_i]·ã_i（守卫未化简）"""
    if isinstance(h, ETerm):
        return [(TRUE, h.value)]
    if isinstance(h, Guard):
        return [
            (guard if h.guard == TRUE else (h.guard if guard == TRUE else And(h.guard, guard)), value)
            for guard, value in summands(h.body)
        ]
    if isinstance(h, Sum):
        return summands(h.left) + summands(h.right)
    raise TypeError(f"未知期望节点: {h!r}")


def add_ext(left: ExtLinExpr, right: ExtLinExpr) -> ExtLinExpr:
    """扩展线性式相加，∞ 吸收"""
    if isinstance(left, Infinity) or isinstance(right, Infinity):
        return INFTY
    return simplify_arith(Add(left, right))


def from_summands(items: List[Summand]) -> LinExp:
    parts: List[LinExp] = []
    for guard, value in items:
        body = ETerm(value)
        parts.append(body if guard == TRUE else Guard(guard, body))
    return plus(*parts)


def simplify(h: LinExp) -> LinExp:
    """
    化简：展平嵌套求和、折叠常量守卫、丢弃值为 0 的项、合并相同守卫的项

    只保证逐点相等。
    """
    merged: "dict[BoolExpr, ExtLinExpr]" = {}
    for guard, value in summands(h):
        guard = simplify_bool(guard)
        if guard == FALSE:
            continue
        if not isinstance(value, Infinity):
            value = simplify_arith(value)
            if value == Num(Fraction(0)):
                continue
        if guard in merged:
            merged[guard] = add_ext(merged[guard], value)
        else:
            merged[guard] = value
    if merged.get(TRUE) == INFTY:
        return INFINITY
    return from_summands(list(merged.items()))


# =============================================================================
# 变量与打印
# =============================================================================

def linexp_vars(h: LinExp) -> set:
    if isinstance(h, ETerm):
        return set() if isinstance(h.value, Infinity) else arith_vars(h.value)
    if isinstance(h, Guard):
        return bool_vars(h.guard) | linexp_vars(h.body)
    if isinstance(h, Sum):
        return linexp_vars(h.left) | linexp_vars(h.right)
    raise TypeError(f"未知期望节点: {h!r}")


def print_ext(value: ExtLinExpr) -> str:
    return "inf" if isinstance(value, Infinity) else print_arith(value)


def print_linexp(h: LinExp) -> str:
    """打印为可被 parse_expectation 读回的文本"""
    if isinstance(h, ETerm):
        return print_ext(h.value)
    if isinstance(h, Guard):
        return f"[{print_bool(h.guard)}]*({print_linexp(h.body)})"
    if isinstance(h, Sum):
        return f"{print_linexp(h.left)} + {print_linexp(h.right)}"
    raise TypeError(f"未知期望节点: {h!r}")


def negate(guard: BoolExpr) -> BoolExpr:
    return simplify_bool(Not(guard))


__all__ = [
    'INF', 'ExtValue', 'Infinity', 'INFTY', 'ExtLinExpr', 'ETerm', 'Guard', 'Sum', 'LinExp',
    'const', 'term', 'iverson', 'plus', 'ZERO', 'ONE', 'INFINITY', 'is_infinite',
    'evaluate', 'evaluate_ext', 'substitute', 'substitute_many', 'rescale',
    'Summand', 'summands', 'add_ext', 'from_summands', 'simplify',
    'linexp_vars', 'print_ext', 'print_linexp', 'negate',
]
