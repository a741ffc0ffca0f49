# -*- coding: utf-8 -*-
"""
pGCL 抽象语法
单循环程序：ℕ 变量声明、循环守卫、无循环体（含 tick 与分类赋值）

所有节点都是不可变（frozen）数据类，可以安全地在线程间共享。
算术常量统一使用 Fraction：程序中只出现自然数，期望中可出现有理系数。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Tuple, Union


# =============================================================================
# 算术表达式
# =============================================================================

@dataclass(frozen=True)
class Num:
    """非负有理常量"""
    value: Fraction


@dataclass(frozen=True)
class Var:
    """程序变量"""
    name: str


@dataclass(frozen=True)
class Mul:
    """常量乘法 coef · expr"""
    coef: Fraction
    expr: "ArithExpr"


@dataclass(frozen=True)
class Add:
    left: "ArithExpr"
    right: "ArithExpr"


@dataclass(frozen=True)
class Monus:
    """截断减法 max{0, left − right}"""
    left: "ArithExpr"
    right: "ArithExpr"


ArithExpr = Union[Num, Var, Mul, Add, Monus]


# =============================================================================
# 布尔表达式
# =============================================================================

CMP_OPS = ("<", "<=", "=")


@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class Cmp:
    """比较 left op right，op ∈ {<, <=, =}；> 与 >= 在解析时交换操作数"""
    op: str
    left: ArithExpr
    right: ArithExpr


@dataclass(frozen=True)
class Not:
    operand: "BoolExpr"


@dataclass(frozen=True)
class And:
    left: "BoolExpr"
    right: "BoolExpr"


@dataclass(frozen=True)
class Or:
    left: "BoolExpr"
    right: "BoolExpr"


BoolExpr = Union[BoolConst, Cmp, Not, And, Or]

TRUE = BoolConst(True)
FALSE = BoolConst(False)


# =============================================================================
# 语句
# =============================================================================

@dataclass(frozen=True)
class Skip:
    pass


@dataclass(frozen=True)
class Assign:
    var: str
    expr: ArithExpr


@dataclass(frozen=True)
class Seq:
    first: "Stmt"
    second: "Stmt"


@dataclass(frozen=True)
class PChoice:
    """以概率 prob 执行 left，否则执行 right"""
    left: "Stmt"
    prob: Fraction
    right: "Stmt"


@dataclass(frozen=True)
class Ite:
    guard: BoolExpr
    then: "Stmt"
    orelse: "Stmt"


@dataclass(frozen=True)
class Tick:
    """消耗 amount 个时间单位（只在 ert 模式下计入）"""
    amount: int


@dataclass(frozen=True)
class CatAssign:
    """分类赋值 x := e1 : p1 + e2 : p2 + …"""
    var: str
    branches: Tuple[Tuple[ArithExpr, Fraction], ...]


Stmt = Union[Skip, Assign, Seq, PChoice, Ite, Tick, CatAssign]


@dataclass(frozen=True)
class Program:
    """while (guard) { body }，所有变量取值于 ℕ"""
    variables: Tuple[str, ...]
    guard: BoolExpr
    body: Stmt


# =============================================================================
# 状态
# =============================================================================

class State(Mapping[str, int]):
    """
    程序状态：变量 → ℕ 的有限映射，未映射变量读作 0

    不可变、可哈希；只保存非零条目，因此 {x: 0} 与 {} 相等。
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, values: Union[Mapping[str, int], None] = None, **kwargs: int):
        merged = dict(values or {})
        merged.update(kwargs)
        items = {}
        for name, value in merged.items():
            value = int(value)
            if value < 0:
                raise ValueError(f"状态变量 {name} 取负值 {value}")
            if value:
                items[name] = value
        self._items = dict(sorted(items.items()))
        self._hash = hash(tuple(self._items.items()))

    def __getitem__(self, name: str) -> int:
        return self._items.get(name, 0)

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, name: object) -> bool:
        return name in self._items

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, State):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == State(other)
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={v}" for k, v in self._items.items())
        return f"State({body})"

    def get(self, name: str, default: int = 0) -> int:
        return self._items.get(name, default)

    def set(self, name: str, value: int) -> "State":
        """返回更新了一个变量的新状态"""
        updated = dict(self._items)
        updated[name] = value
        return State(updated)

    def restrict(self, names: Tuple[str, ...]) -> dict:
        """按给定变量顺序导出（含 0 值），用于打印反例"""
        return {name: self[name] for name in names}


__all__ = [
    'Num', 'Var', 'Mul', 'Add', 'Monus', 'ArithExpr',
    'CMP_OPS', 'BoolConst', 'Cmp', 'Not', 'And', 'Or', 'BoolExpr', 'TRUE', 'FALSE',
    'Skip', 'Assign', 'Seq', 'PChoice', 'Ite', 'Tick', 'CatAssign', 'Stmt',
    'Program', 'State',
]
