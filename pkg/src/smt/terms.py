# -*- coding: utf-8 -*-
"""
表达式到 SMT-LIB2 项的翻译

程序变量 x 声明为 Int 常量 v_x（另断言 v_x >= 0），期望值为 Real，未解释函数的实参使用 Int 项。
两个算术式之间的比较乘以系数分母的最小公倍数后在 Int 上进行，不经 to_real。
截断减法翻译为 Int 上的 ite；∞ 翻译为共享的自然数常量 infty。
"""

import math
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from ..pgcl.ast import (
    Add, And, ArithExpr, BoolConst, BoolExpr, Cmp, Monus, Mul, Not, Num, Or, Var,
)
from ..expectations.linexp import ETerm, ExtLinExpr, Guard, Infinity, LinExp, Sum

INFTY_SYMBOL = "infty"

_VAR_PREFIX = "v_"


def var_symbol(name: str) -> str:
    """程序变量对应的 SMT 符号"""
    return f"{_VAR_PREFIX}{name}"


def real_const(value: Fraction) -> str:
    value = Fraction(value)
    numerator = f"{abs(value.numerator)}.0"
    text = numerator if value.denominator == 1 else f"(/ {numerator} {value.denominator}.0)"
    return f"(- {text})" if value < 0 else text


def int_const(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator != 1:
        raise ValueError(f"整数项中出现非整数常量 {value}")
    return str(value.numerator) if value >= 0 else f"(- {-value.numerator})"


def _leaf_denominators(expr: ArithExpr, scale: Fraction) -> Iterator[int]:
    if isinstance(expr, Num):
        yield (Fraction(expr.value) * scale).denominator
    elif isinstance(expr, Var):
        yield scale.denominator
    elif isinstance(expr, Mul):
        yield from _leaf_denominators(expr.expr, scale * Fraction(expr.coef))
    elif isinstance(expr, (Add, Monus)):
        yield from _leaf_denominators(expr.left, scale)
        yield from _leaf_denominators(expr.right, scale)
    else:
        raise TypeError(f"未知算术节点: {expr!r}")


def common_scale(*exprs: ArithExpr) -> int:
    """使各算术式的所有系数与常量都成为整数的最小正整数因子"""
    return math.lcm(1, *(d for expr in exprs for d in _leaf_denominators(expr, Fraction(1))))


def int_term(expr: ArithExpr, scale: Fraction = Fraction(1)) -> str:
    """
    scale·expr 对应的 Int 项

    scale > 0 时 scale·(a ∸ b) = (scale·a) ∸ (scale·b)，截断减法可以逐层下推。

    Raises:
        ValueError: scale·expr 中出现非整数系数（scale 应取 common_scale）
    """
    scale = Fraction(scale)
    if isinstance(expr, Num):
        return int_const(Fraction(expr.value) * scale)
    if isinstance(expr, Var):
        symbol = var_symbol(expr.name)
        return symbol if scale == 1 else f"(* {int_const(scale)} {symbol})"
    if isinstance(expr, Mul):
        return int_term(expr.expr, scale * Fraction(expr.coef))
    if isinstance(expr, Add):
        return f"(+ {int_term(expr.left, scale)} {int_term(expr.right, scale)})"
    if isinstance(expr, Monus):
        left, right = int_term(expr.left, scale), int_term(expr.right, scale)
        return f"(ite (>= {left} {right}) (- {left} {right}) 0)"
    raise TypeError(f"未知算术节点: {expr!r}")


def real_term(expr: ArithExpr) -> str:
    """Real 排序的算术项：(to_real D·expr) / D"""
    scale = common_scale(expr)
    body = f"(to_real {int_term(expr, Fraction(scale))})"
    return body if scale == 1 else f"(/ {body} {scale}.0)"


def cmp_term(op: str, left: ArithExpr, right: ArithExpr) -> str:
    """两个算术式的比较，同乘公共分母后在 Int 上进行"""
    scale = Fraction(common_scale(left, right))
    return f"({op} {int_term(left, scale)} {int_term(right, scale)})"


def exceeds_term(value: ExtLinExpr, bound: ArithExpr) -> str:
    """⟨value⟩ > bound；value 为 ∞ 时比较 infty"""
    if isinstance(value, Infinity):
        scale = common_scale(bound)
        lhs = INFTY_SYMBOL if scale == 1 else f"(* {scale} {INFTY_SYMBOL})"
        return f"(> {lhs} {int_term(bound, Fraction(scale))})"
    return cmp_term(">", value, bound)


def bool_term(guard: BoolExpr) -> str:
    if isinstance(guard, BoolConst):
        return "true" if guard.value else "false"
    if isinstance(guard, Cmp):
        return cmp_term(guard.op, guard.left, guard.right)
    if isinstance(guard, Not):
        return f"(not {bool_term(guard.operand)})"
    if isinstance(guard, And):
        return f"(and {bool_term(guard.left)} {bool_term(guard.right)})"
    if isinstance(guard, Or):
        return f"(or {bool_term(guard.left)} {bool_term(guard.right)})"
    raise TypeError(f"未知布尔节点: {guard!r}")


def ext_term(value: ExtLinExpr) -> str:
    """扩展线性式；∞ 用 (to_real infty) 表示"""
    if isinstance(value, Infinity):
        return f"(to_real {INFTY_SYMBOL})"
    return real_term(value)


def linexp_term(h: LinExp) -> str:
    """线性期望对应的 Real 项"""
    if isinstance(h, ETerm):
        return ext_term(h.value)
    if isinstance(h, Guard):
        return f"(ite {bool_term(h.guard)} {linexp_term(h.body)} 0.0)"
    if isinstance(h, Sum):
        return f"(+ {linexp_term(h.left)} {linexp_term(h.right)})"
    raise TypeError(f"未知期望节点: {h!r}")


def conjunction(terms: Sequence[str]) -> str:
    terms = [t for t in terms if t != "true"]
    if not terms:
        return "true"
    if len(terms) == 1:
        return terms[0]
    return f"(and {' '.join(terms)})"


def disjunction(terms: Sequence[str]) -> str:
    terms = [t for t in terms if t != "false"]
    if not terms:
        return "false"
    if len(terms) == 1:
        return terms[0]
    return f"(or {' '.join(terms)})"


def apply(function: str, args: Sequence[str]) -> str:
    """函数应用；零元函数就是符号本身"""
    if not args:
        return function
    return f"({function} {' '.join(args)})"


def state_equalities(state: Mapping[str, int], variables: Sequence[str]) -> str:
    """把程序变量固定为具体状态的合取"""
    return conjunction([f"(= {var_symbol(v)} {int(state.get(v, 0))})" for v in variables])


__all__ = [
    'INFTY_SYMBOL', 'var_symbol', 'real_const', 'int_const', 'common_scale', 'real_term', 'int_term',
    'cmp_term', 'exceeds_term',
    'bool_term', 'ext_term', 'linexp_term', 'conjunction', 'disjunction', 'apply',
    'state_equalities',
]
