# -*- coding: utf-8 -*-
"""
pGCL 模块
单循环概率程序的语法、解析、打印与状态语义
"""

from .ast import (
    Add, And, ArithExpr, Assign, BoolConst, BoolExpr, CatAssign, Cmp, FALSE, Ite, Monus,
    Mul, Not, Num, Or, PChoice, Program, Seq, Skip, State, Stmt, TRUE, Tick, Var,
)
from .parser import load_program, parse_arith_expr, parse_guard, parse_program
from .printer import print_arith, print_bool, print_program, print_rational
from .semantics import (
    BodyPath, body_paths, desugar, eval_arith, eval_bool, execute, simplify_arith,
    simplify_bool, subst_arith, subst_bool,
)

__all__ = [
    'Add', 'And', 'ArithExpr', 'Assign', 'BoolConst', 'BoolExpr', 'CatAssign', 'Cmp', 'FALSE',
    'Ite', 'Monus', 'Mul', 'Not', 'Num', 'Or', 'PChoice', 'Program', 'Seq', 'Skip', 'State',
    'Stmt', 'TRUE', 'Tick', 'Var',
    'load_program', 'parse_arith_expr', 'parse_guard', 'parse_program',
    'print_arith', 'print_bool', 'print_program', 'print_rational',
    'BodyPath', 'body_paths', 'desugar', 'eval_arith', 'eval_bool', 'execute',
    'simplify_arith', 'simplify_bool', 'subst_arith', 'subst_bool',
]
