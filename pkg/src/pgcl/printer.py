# -*- coding: utf-8 -*-
"""
pGCL 打印器
输出可被 parse_program 重新读入的源码（往返测试、日志与 SMT 脚本注释使用）
"""

from fractions import Fraction
from typing import List

from .ast import (
    Add, And, ArithExpr, Assign, BoolConst, BoolExpr, CatAssign, Cmp, Ite, Monus, Mul,
    Not, Num, Or, PChoice, Program, Seq, Skip, Stmt, Tick, Var,
)


def print_rational(value: Fraction) -> str:
    """整数打印为整数，其余打印为 p/q"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def print_arith(expr: ArithExpr) -> str:
    if isinstance(expr, Num):
        text = print_rational(expr.value)
        return f"({text})" if "/" in text else text
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Mul):
        return f"{print_arith(Num(expr.coef))}*{_atom(expr.expr)}"
    if isinstance(expr, Add):
        return f"{print_arith(expr.left)} + {_atom_right(expr.right)}"
    if isinstance(expr, Monus):
        return f"{print_arith(expr.left)} - {_atom_right(expr.right)}"
    raise TypeError(f"未知算术节点: {expr!r}")


def _atom(expr: ArithExpr) -> str:
    if isinstance(expr, (Add, Monus, Mul)):
        return f"({print_arith(expr)})"
    return print_arith(expr)


def _atom_right(expr: ArithExpr) -> str:
    # 加减左结合：右操作数若为加减式需加括号
    return _atom(expr)


def print_bool(guard: BoolExpr) -> str:
    if isinstance(guard, BoolConst):
        return "true" if guard.value else "false"
    if isinstance(guard, Cmp):
        return f"{print_arith(guard.left)} {guard.op} {print_arith(guard.right)}"
    if isinstance(guard, Not):
        return f"not ({print_bool(guard.operand)})"
    if isinstance(guard, And):
        return f"({print_bool(guard.left)}) & ({print_bool(guard.right)})"
    if isinstance(guard, Or):
        return f"({print_bool(guard.left)}) || ({print_bool(guard.right)})"
    raise TypeError(f"未知布尔节点: {guard!r}")


def _flatten(stmt: Stmt) -> List[Stmt]:
    if isinstance(stmt, Seq):
        return _flatten(stmt.first) + _flatten(stmt.second)
    return [stmt]


def print_stmt(stmt: Stmt, indent: int = 1) -> str:
    pad = "    " * indent
    lines = []
    for item in _flatten(stmt):
        if isinstance(item, Skip):
            lines.append(f"{pad}skip;")
        elif isinstance(item, Assign):
            lines.append(f"{pad}{item.var} := {print_arith(item.expr)};")
        elif isinstance(item, Tick):
            lines.append(f"{pad}tick({item.amount});")
        elif isinstance(item, CatAssign):
            branches = " + ".join(
                f"{print_arith(value)} : {print_rational(weight)}" for value, weight in item.branches
            )
            lines.append(f"{pad}{item.var} := {branches};")
        elif isinstance(item, PChoice):
            lines.append(f"{pad}{{")
            lines.append(print_stmt(item.left, indent + 1))
            lines.append(f"{pad}}} [{print_rational(item.prob)}] {{")
            lines.append(print_stmt(item.right, indent + 1))
            lines.append(f"{pad}}}")
        elif isinstance(item, Ite):
            lines.append(f"{pad}if ({print_bool(item.guard)}) {{")
            lines.append(print_stmt(item.then, indent + 1))
            lines.append(f"{pad}}} else {{")
            lines.append(print_stmt(item.orelse, indent + 1))
            lines.append(f"{pad}}}")
        else:
            raise TypeError(f"未知语句节点: {item!r}")
    return "\n".join(lines)


def print_program(program: Program) -> str:
    """打印完整程序"""
    header = "".join(f"nat {name};\n" for name in program.variables)
    return (
        f"{header}while ({print_bool(program.guard)}) {{\n"
        f"{print_stmt(program.body)}\n"
        f"}}\n"
    )


__all__ = ['print_rational', 'print_arith', 'print_bool', 'print_stmt', 'print_program']
