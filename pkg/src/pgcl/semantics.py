# -*- coding: utf-8 -*-
"""
pGCL 语义
- 表达式求值（精确有理数，截断减法）
- 同时代换与规范化化简
- 分类赋值脱糖
- 无循环体的具体分布执行与符号路径分解
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Set, Tuple, Union

from .ast import (
    Add, And, ArithExpr, Assign, BoolConst, BoolExpr, CatAssign, Cmp, FALSE, Ite, Monus,
    Mul, Not, Num, Or, PChoice, Seq, Skip, State, Stmt, TRUE, Tick, Var,
)
from .printer import print_arith

Substitution = Mapping[str, ArithExpr]


# =============================================================================
# 求值
# =============================================================================

def eval_arith(expr: ArithExpr, state: Mapping[str, int]) -> Fraction:
    """
    在状态上求算术表达式的值

    Args:
        expr: 算术表达式
        state: 变量赋值，未出现的变量读作 0

    Returns:
        Fraction: 精确值；截断减法保证结果非负
    """
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Var):
        return Fraction(state.get(expr.name, 0))
    if isinstance(expr, Mul):
        return expr.coef * eval_arith(expr.expr, state)
    if isinstance(expr, Add):
        return eval_arith(expr.left, state) + eval_arith(expr.right, state)
    if isinstance(expr, Monus):
        return max(Fraction(0), eval_arith(expr.left, state) - eval_arith(expr.right, state))
    raise TypeError(f"未知算术节点: {expr!r}")


def eval_bool(guard: BoolExpr, state: Mapping[str, int]) -> bool:
    """在状态上求布尔表达式的值"""
    if isinstance(guard, BoolConst):
        return guard.value
    if isinstance(guard, Cmp):
        left = eval_arith(guard.left, state)
        right = eval_arith(guard.right, state)
        if guard.op == "<":
            return left < right
        if guard.op == "<=":
            return left <= right
        return left == right
    if isinstance(guard, Not):
        return not eval_bool(guard.operand, state)
    if isinstance(guard, And):
        return eval_bool(guard.left, state) and eval_bool(guard.right, state)
    if isinstance(guard, Or):
        return eval_bool(guard.left, state) or eval_bool(guard.right, state)
    raise TypeError(f"未知布尔节点: {guard!r}")


# =============================================================================
# 自由变量与代换
# =============================================================================

def arith_vars(expr: ArithExpr) -> Set[str]:
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, Mul):
        return arith_vars(expr.expr)
    if isinstance(expr, (Add, Monus)):
        return arith_vars(expr.left) | arith_vars(expr.right)
    return set()


def bool_vars(guard: BoolExpr) -> Set[str]:
    if isinstance(guard, Cmp):
        return arith_vars(guard.left) | arith_vars(guard.right)
    if isinstance(guard, Not):
        return bool_vars(guard.operand)
    if isinstance(guard, (And, Or)):
        return bool_vars(guard.left) | bool_vars(guard.right)
    return set()


def subst_arith(expr: ArithExpr, mapping: Substitution) -> ArithExpr:
    """同时代换：把 mapping 中的变量替换为对应表达式"""
    if isinstance(expr, Var):
        return mapping.get(expr.name, expr)
    if isinstance(expr, Num):
        return expr
    if isinstance(expr, Mul):
        return Mul(expr.coef, subst_arith(expr.expr, mapping))
    if isinstance(expr, Add):
        return Add(subst_arith(expr.left, mapping), subst_arith(expr.right, mapping))
    if isinstance(expr, Monus):
        return Monus(subst_arith(expr.left, mapping), subst_arith(expr.right, mapping))
    raise TypeError(f"未知算术节点: {expr!r}")


def subst_bool(guard: BoolExpr, mapping: Substitution) -> BoolExpr:
    if isinstance(guard, BoolConst):
        return guard
    if isinstance(guard, Cmp):
        return Cmp(guard.op, subst_arith(guard.left, mapping), subst_arith(guard.right, mapping))
    if isinstance(guard, Not):
        return Not(subst_bool(guard.operand, mapping))
    if isinstance(guard, And):
        return And(subst_bool(guard.left, mapping), subst_bool(guard.right, mapping))
    if isinstance(guard, Or):
        return Or(subst_bool(guard.left, mapping), subst_bool(guard.right, mapping))
    raise TypeError(f"未知布尔节点: {guard!r}")


# =============================================================================
# 规范化化简
# =============================================================================

# 线性形式：原子（Var 或不可化简的 Monus）→ 系数，外加常数项
LinearForm = Tuple[Dict[ArithExpr, Fraction], Fraction]


def linear_form(expr: ArithExpr) -> LinearForm:
    """把表达式展开为 Σ coef·atom + const（截断减法先化简，无法消去的作为原子）"""
    if isinstance(expr, Num):
        return {}, expr.value
    if isinstance(expr, Var):
        return {expr: Fraction(1)}, Fraction(0)
    if isinstance(expr, Mul):
        terms, const = linear_form(expr.expr)
        if expr.coef == 0:
            return {}, Fraction(0)
        return {atom: expr.coef * c for atom, c in terms.items()}, expr.coef * const
    if isinstance(expr, Add):
        left_terms, left_const = linear_form(expr.left)
        right_terms, right_const = linear_form(expr.right)
        merged = defaultdict(Fraction, left_terms)
        for atom, coef in right_terms.items():
            merged[atom] += coef
        return {a: c for a, c in merged.items() if c != 0}, left_const + right_const
    if isinstance(expr, Monus):
        return _monus_form(linear_form(expr.left), linear_form(expr.right))
    raise TypeError(f"未知算术节点: {expr!r}")


def _monus_form(left: LinearForm, right: LinearForm) -> LinearForm:
    left_terms, left_const = left
    right_terms, right_const = right
    diff = defaultdict(Fraction, left_terms)
    for atom, coef in right_terms.items():
        diff[atom] -= coef
    diff = {a: c for a, c in diff.items() if c != 0}
    const = left_const - right_const
    # 所有原子非负：差的系数与常数全非负时截断不起作用，全非正时结果恒为 0
    if all(c >= 0 for c in diff.values()) and const >= 0:
        return diff, const
    if all(c <= 0 for c in diff.values()) and const <= 0:
        return {}, Fraction(0)
    atom = Monus(_from_form(left), _from_form(right))
    return {atom: Fraction(1)}, Fraction(0)


def _from_form(form: LinearForm) -> ArithExpr:
    terms, const = form
    parts: List[ArithExpr] = []
    for atom, coef in sorted(terms.items(), key=lambda item: print_arith(item[0])):
        parts.append(atom if coef == 1 else Mul(coef, atom))
    if const != 0 or not parts:
        parts.append(Num(const))
    result = parts[0]
    for part in parts[1:]:
        result = Add(result, part)
    return result


def simplify_arith(expr: ArithExpr) -> ArithExpr:
    """
    规范化算术表达式：合并同类项、折叠常量、消去可判定的截断减法

    规范形式按原子的打印结果排序，因此语义相同的线性式得到同一语法树（编码去重依赖这一点）。
    """
    return _from_form(linear_form(expr))


def _compare_forms(op: str, left: ArithExpr, right: ArithExpr) -> BoolExpr:
    left_terms, left_const = linear_form(left)
    right_terms, right_const = linear_form(right)
    diff = defaultdict(Fraction, left_terms)
    for atom, coef in right_terms.items():
        diff[atom] -= coef
    diff = {a: c for a, c in diff.items() if c != 0}
    const = left_const - right_const
    if not diff:
        if op == "<":
            return BoolConst(const < 0)
        if op == "<=":
            return BoolConst(const <= 0)
        return BoolConst(const == 0)
    # 原子均非负：差式系数同号时比较结果可能与状态无关
    nonneg = all(c >= 0 for c in diff.values())
    nonpos = all(c <= 0 for c in diff.values())
    if op == "<":
        if nonpos and const < 0:
            return TRUE
        if nonneg and const >= 0:
            return FALSE
    elif op == "<=":
        if nonpos and const <= 0:
            return TRUE
        if nonneg and const > 0:
            return FALSE
    elif (nonneg and const > 0) or (nonpos and const < 0):
        return FALSE
    return Cmp(op, _from_form((left_terms, left_const)), _from_form((right_terms, right_const)))


def simplify_bool(guard: BoolExpr) -> BoolExpr:
    """折叠常量比较与布尔常量，消去双重否定"""
    if isinstance(guard, BoolConst):
        return guard
    if isinstance(guard, Cmp):
        return _compare_forms(guard.op, guard.left, guard.right)
    if isinstance(guard, Not):
        inner = simplify_bool(guard.operand)
        if isinstance(inner, BoolConst):
            return BoolConst(not inner.value)
        if isinstance(inner, Not):
            return inner.operand
        return Not(inner)
    if isinstance(guard, And):
        left = simplify_bool(guard.left)
        if left == FALSE:
            return FALSE
        right = simplify_bool(guard.right)
        if right == FALSE:
            return FALSE
        if left == TRUE:
            return right
        if right == TRUE or right == left:
            return left
        return And(left, right)
    if isinstance(guard, Or):
        left = simplify_bool(guard.left)
        if left == TRUE:
            return TRUE
        right = simplify_bool(guard.right)
        if right == TRUE:
            return TRUE
        if left == FALSE:
            return right
        if right == FALSE or right == left:
            return left
        return Or(left, right)
    raise TypeError(f"未知布尔节点: {guard!r}")


def conjoin(guards: Iterable[BoolExpr]) -> BoolExpr:
    """多个守卫的合取（已化简）"""
    result: BoolExpr = TRUE
    for guard in guards:
        result = And(result, guard) if result != TRUE else guard
    return simplify_bool(result)


# =============================================================================
# 脱糖
# =============================================================================

def desugar(stmt: Stmt) -> Stmt:
    """
    把分类赋值改写为右嵌套的概率选择，条件概率逐层重新归一化

    r := e1:p1 + e2:p2 + e3:p3  ⇒  {r := e1} [p1] { {r := e2} [p2/(1−p1)] {r := e3} }
    """
    if isinstance(stmt, CatAssign):
        (value, weight), rest = stmt.branches[0], stmt.branches[1:]
        if not rest:
            return Assign(stmt.var, value)
        remaining = 1 - weight
        tail = CatAssign(stmt.var, tuple((v, w / remaining) for v, w in rest))
        return PChoice(Assign(stmt.var, value), weight, desugar(tail))
    if isinstance(stmt, Seq):
        return Seq(desugar(stmt.first), desugar(stmt.second))
    if isinstance(stmt, PChoice):
        return PChoice(desugar(stmt.left), stmt.prob, desugar(stmt.right))
    if isinstance(stmt, Ite):
        return Ite(stmt.guard, desugar(stmt.then), desugar(stmt.orelse))
    return stmt


# =============================================================================
# 具体执行
# =============================================================================

Outcome = Tuple[Fraction, State, int]


def _assign(state: State, var: str, value: Fraction) -> State:
    if value.denominator != 1:
        raise ValueError(f"变量 {var} 被赋予非自然数 {value}")
    return state.set(var, int(value))


def execute(stmt: Stmt, state: State) -> List[Outcome]:
    """
    在具体状态上执行无循环语句

    Args:
        stmt: 无循环语句
        state: 初始状态

    Returns:
        List[Outcome]: (概率, 终态, tick 代价) 列表，相同终态与代价已合并，概率为 0 的分支已丢弃
    """
    merged: Dict[Tuple[State, int], Fraction] = defaultdict(Fraction)
    for prob, final, cost in _execute(stmt, state):
        if prob:
            merged[(final, cost)] += prob
    return [(prob, final, cost) for (final, cost), prob in merged.items()]


def _execute(stmt: Stmt, state: State) -> List[Outcome]:
    if isinstance(stmt, Skip):
        return [(Fraction(1), state, 0)]
    if isinstance(stmt, Assign):
        return [(Fraction(1), _assign(state, stmt.var, eval_arith(stmt.expr, state)), 0)]
    if isinstance(stmt, Tick):
        return [(Fraction(1), state, stmt.amount)]
    if isinstance(stmt, Seq):
        outcomes = []
        for prob, middle, cost in _execute(stmt.first, state):
            for prob2, final, cost2 in _execute(stmt.second, middle):
                outcomes.append((prob * prob2, final, cost + cost2))
        return outcomes
    if isinstance(stmt, PChoice):
        outcomes = []
        if stmt.prob:
            outcomes += [(stmt.prob * p, s, c) for p, s, c in _execute(stmt.left, state)]
        if stmt.prob != 1:
            outcomes += [((1 - stmt.prob) * p, s, c) for p, s, c in _execute(stmt.right, state)]
        return outcomes
    if isinstance(stmt, Ite):
        branch = stmt.then if eval_bool(stmt.guard, state) else stmt.orelse
        return _execute(branch, state)
    if isinstance(stmt, CatAssign):
        return [
            (weight, _assign(state, stmt.var, eval_arith(value, state)), 0)
            for value, weight in stmt.branches
        ]
    raise TypeError(f"未知语句节点: {stmt!r}")


# =============================================================================
# 符号路径分解
# =============================================================================

@dataclass(frozen=True)
class BodyPath:
    """
    无循环体的一条符号执行路径

    guard 与 substitution 都以进入循环体时的变量表示；
    wp(body)(h) = Σ_path [guard] · prob · (h[substitution] + cost)（cost 只在 ert 模式计入）
    """
    guard: BoolExpr
    prob: Fraction
    substitution: Tuple[Tuple[str, ArithExpr], ...]
    cost: int

    def mapping(self) -> Dict[str, ArithExpr]:
        return dict(self.substitution)


def body_paths(stmt: Stmt) -> List[BodyPath]:
    """
    把无循环语句展开为符号路径列表，守卫恒假或概率为 0 的路径被丢弃

    Args:
        stmt: 无循环语句

    Returns:
        List[BodyPath]: 各路径守卫两两互斥；同一守卫下的概率之和为 1
    """
    paths = _paths(stmt, [(TRUE, Fraction(1), {}, 0)])
    return [
        BodyPath(guard, prob, tuple(sorted(subst.items())), cost)
        for guard, prob, subst, cost in paths
    ]


_RawPath = Tuple[BoolExpr, Fraction, Dict[str, ArithExpr], int]


def _paths(stmt: Stmt, paths: List[_RawPath]) -> List[_RawPath]:
    if isinstance(stmt, Skip):
        return paths
    if isinstance(stmt, Assign):
        result = []
        for guard, prob, subst, cost in paths:
            updated = dict(subst)
            updated[stmt.var] = simplify_arith(subst_arith(stmt.expr, subst))
            result.append((guard, prob, updated, cost))
        return result
    if isinstance(stmt, Tick):
        return [(guard, prob, subst, cost + stmt.amount) for guard, prob, subst, cost in paths]
    if isinstance(stmt, Seq):
        return _paths(stmt.second, _paths(stmt.first, paths))
    if isinstance(stmt, PChoice):
        result = []
        if stmt.prob:
            left = [(g, p * stmt.prob, s, c) for g, p, s, c in paths]
            result += _paths(stmt.left, left)
        if stmt.prob != 1:
            right = [(g, p * (1 - stmt.prob), s, c) for g, p, s, c in paths]
            result += _paths(stmt.right, right)
        return result
    if isinstance(stmt, Ite):
        then_paths, else_paths = [], []
        for guard, prob, subst, cost in paths:
            condition = subst_bool(stmt.guard, subst)
            positive = simplify_bool(And(guard, condition))
            negative = simplify_bool(And(guard, Not(condition)))
            if positive != FALSE:
                then_paths.append((positive, prob, subst, cost))
            if negative != FALSE:
                else_paths.append((negative, prob, subst, cost))
        return _paths(stmt.then, then_paths) + _paths(stmt.orelse, else_paths)
    if isinstance(stmt, CatAssign):
        return _paths(desugar(stmt), paths)
    raise TypeError(f"未知语句节点: {stmt!r}")


__all__ = [
    'eval_arith', 'eval_bool', 'arith_vars', 'bool_vars', 'subst_arith', 'subst_bool',
    'linear_form', 'simplify_arith', 'simplify_bool', 'conjoin', 'desugar', 'execute',
    'BodyPath', 'body_paths', 'Substitution',
]
