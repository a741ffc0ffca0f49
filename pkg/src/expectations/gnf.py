# -*- coding: utf-8 -*-
"""
保护范式（GNF）与逐点最小值

GNF 把期望写成两两互斥、覆盖全部状态的 (守卫, 扩展线性式) 单元列表。
构造方式：对展平后的 m 个被加项 [ψ_i]·ã_i 做乘积 ⨉_i {(ψ_i, ã_i), (¬ψ_i, 0)}，
每个单元的值为所选分量之和（∞ 吸收）。可选的 satisfiable 回调用于剪除守卫不可满足的单元。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Mapping, Optional, Tuple

from ..pgcl.ast import And, BoolExpr, Cmp, FALSE, Not, Num, TRUE
from ..pgcl.printer import print_bool
from ..pgcl.semantics import eval_bool, simplify_bool
from ..utils.errors import EngineInvariantError
from ..utils.logger import get_logger
from .linexp import (
    ExtLinExpr, ExtValue, Infinity, INFTY, LinExp, add_ext, evaluate_ext, from_summands,
    print_ext, simplify, summands,
)

logger = get_logger(__name__)

Satisfiable = Optional[Callable[[BoolExpr], bool]]

_ZERO = Num(Fraction(0))


@dataclass(frozen=True)
class Gnf:
    """保护范式：cells 两两互斥且穷尽"""
    cells: Tuple[Tuple[BoolExpr, ExtLinExpr], ...]

    def __iter__(self):
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def to_linexp(self) -> LinExp:
        return from_summands([(guard, value) for guard, value in self.cells])

    def cell_at(self, state: Mapping[str, int]) -> Tuple[BoolExpr, ExtLinExpr]:
        """返回 state 所在的唯一单元"""
        matches = [cell for cell in self.cells if eval_bool(cell[0], state)]
        if len(matches) != 1:
            raise AssertionError(f"GNF 在状态 {dict(state)} 上命中 {len(matches)} 个单元")
        return matches[0]

    def evaluate(self, state: Mapping[str, int]) -> ExtValue:
        return evaluate_ext(self.cell_at(state)[1], state)

    def finite_cells(self) -> List[Tuple[BoolExpr, ExtLinExpr]]:
        return [(guard, value) for guard, value in self.cells if not isinstance(value, Infinity)]

    def describe(self) -> str:
        return " | ".join(f"[{print_bool(g)}] {print_ext(v)}" for g, v in self.cells)


def _keep(guard: BoolExpr, satisfiable: Satisfiable) -> bool:
    if guard == FALSE:
        return False
    if satisfiable is None or guard == TRUE:
        return True
    return satisfiable(guard)


def gnf(h: LinExp, satisfiable: Satisfiable = None) -> Gnf:
    """
    构造保护范式

    Args:
        h: 线性期望
        satisfiable: 守卫可满足性判定（通常由求解器提供并记忆化）；为 None 时只做语法折叠

    Returns:
        Gnf: 与 h 逐点相等
    """
    cells: List[Tuple[BoolExpr, ExtLinExpr]] = [(TRUE, _ZERO)]
    for psi, value in summands(simplify(h)):
        if psi == TRUE:
            cells = [(guard, add_ext(current, value)) for guard, current in cells]
            continue
        refined: List[Tuple[BoolExpr, ExtLinExpr]] = []
        for guard, current in cells:
            positive = simplify_bool(And(guard, psi)) if guard != TRUE else simplify_bool(psi)
            negative = simplify_bool(And(guard, Not(psi))) if guard != TRUE else simplify_bool(Not(psi))
            if _keep(positive, satisfiable):
                refined.append((positive, add_ext(current, value)))
            if _keep(negative, satisfiable):
                refined.append((negative, current))
        cells = refined
    if not cells:
        raise EngineInvariantError("GNF 构造后没有剩余单元（守卫剪枝结果矛盾）")
    logger.debug(f"GNF: {len(cells)} 个单元")
    return Gnf(tuple(cells))


def min_expectation(h: LinExp, other: LinExp, satisfiable: Satisfiable = None) -> LinExp:
    """
    逐点最小值 h min other

    对两侧 GNF 的单元两两组合：
        ∞ 与 ∞       → [φ∧ψ]·∞
        ∞ 与 ã       → [φ∧ψ]·ã
        ẽ 与 ∞       → [φ∧ψ]·ẽ
        ẽ 与 ã       → [φ∧ψ∧ẽ≤ã]·ẽ + [φ∧ψ∧ã<ẽ]·ã

    Args:
        h: 左侧期望
        other: 右侧期望
        satisfiable: 守卫可满足性判定，用于剪除不可能的组合

    Returns:
        LinExp: 已化简的最小值期望
    """
    left = gnf(h, satisfiable)
    right = gnf(other, satisfiable)
    result: List[Tuple[BoolExpr, ExtLinExpr]] = []
    for phi, e in left:
        for psi, a in right:
            guard = simplify_bool(And(phi, psi))
            if not _keep(guard, satisfiable):
                continue
            if isinstance(e, Infinity) and isinstance(a, Infinity):
                result.append((guard, INFTY))
            elif isinstance(e, Infinity):
                result.append((guard, a))
            elif isinstance(a, Infinity):
                result.append((guard, e))
            else:
                below = simplify_bool(And(guard, Cmp("<=", e, a)))
                above = simplify_bool(And(guard, Cmp("<", a, e)))
                if below != FALSE:
                    result.append((below, e))
                if above != FALSE:
                    result.append((above, a))
    return simplify(from_summands(result))


__all__ = ['Gnf', 'gnf', 'min_expectation', 'Satisfiable']
