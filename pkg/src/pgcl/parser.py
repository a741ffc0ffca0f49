# -*- coding: utf-8 -*-
"""
pGCL 程序解析

文件格式：
    nat x; nat n; ...
    while (guard) { body }

语句：skip; / x := e; / {c1}[p]{c2} / if (φ) {c1} else {c2}（也接受 if(φ){c1}{c2}）/ tick(n); /
分类赋值 x := e1 : p1 + e2 : p2 + ...;  分号在 '}' 之前可省略，'#' 到行尾为注释。
源码中的 '-' 一律解释为截断减法。
"""

from fractions import Fraction
from pathlib import Path
from typing import List, Set, Tuple, Union

from ..utils.errors import ProgramSemanticError
from ..utils.logger import get_logger
from .ast import (
    Add, And, ArithExpr, Assign, BoolExpr, CatAssign, Cmp, Ite, Monus, Mul,
    Not, Num, Or, PChoice, Program, Seq, Skip, Stmt, Tick, Var,
)
from .lexer import TokenParser

logger = get_logger(__name__)


class ProgramParser(TokenParser):
    """单循环 pGCL 程序的递归下降解析器"""

    def parse(self) -> Program:
        variables = self.parse_declarations()

        if not self.at("while"):
            if self.current.kind == "EOF":
                self.error("缺少 while 循环")
            raise ProgramSemanticError(
                f"{self.current.line}:{self.current.column}: 循环之前不允许出现语句，初始值请写进候选上界的守卫"
            )
        self.advance()
        self.expect("(")
        guard = self.parse_bool()
        self.expect(")")
        body = self.parse_block()

        while self.accept(";"):
            pass
        if self.current.kind != "EOF":
            raise ProgramSemanticError(
                f"{self.current.line}:{self.current.column}: 程序只能包含一个顶层 while 循环"
            )
        return Program(tuple(variables), guard, body)

    def parse_declarations(self) -> List[str]:
        variables: List[str] = []
        while self.at("nat"):
            self.advance()
            token = self.expect_ident()
            if token.text in variables:
                raise ProgramSemanticError(f"{token.line}:{token.column}: 变量 {token.text} 重复声明")
            variables.append(token.text)
            while self.accept(","):
                token = self.expect_ident()
                if token.text in variables:
                    raise ProgramSemanticError(f"{token.line}:{token.column}: 变量 {token.text} 重复声明")
                variables.append(token.text)
            self.expect(";")
        return variables

    # ===== 语句 =====

    def parse_block(self) -> Stmt:
        self.expect("{")
        statements: List[Stmt] = []
        while not self.at("}"):
            if self.current.kind == "EOF":
                self.error("代码块缺少 '}'")
            statements.append(self.parse_statement())
            while self.accept(";"):
                pass
        self.expect("}")
        return sequence(statements)

    def parse_statement(self) -> Stmt:
        token = self.current
        if self.accept("skip"):
            return Skip()
        if self.accept("tick"):
            self.expect("(")
            amount = Fraction(self.expect_number().text)
            self.expect(")")
            if amount.denominator != 1:
                self.error("tick 的参数必须是自然数", token)
            return Tick(int(amount))
        if self.accept("while"):
            raise ProgramSemanticError(f"{token.line}:{token.column}: 不支持嵌套循环")
        if self.accept("if"):
            self.expect("(")
            guard = self.parse_bool()
            self.expect(")")
            then = self.parse_block()
            if self.accept("else"):
                orelse = self.parse_block()
            elif self.at("{"):
                orelse = self.parse_block()
            else:
                orelse = Skip()
            return Ite(guard, then, orelse)
        if self.at("{"):
            left = self.parse_block()
            if self.accept("["):
                prob = self.parse_rational_literal()
                self.expect("]")
                right = self.parse_block()
                return PChoice(left, prob, right)
            return left
        if token.kind == "IDENT":
            self.advance()
            self.expect(":=")
            return self.parse_assignment(token.text)
        self.error(f"期望语句，实际为 {self.describe(token)}")

    def parse_assignment(self, var: str) -> Stmt:
        expr = self.parse_arith()
        if not self.accept(":"):
            return Assign(var, expr)
        branches: List[Tuple[ArithExpr, Fraction]] = [(expr, self.parse_rational_literal())]
        while self.accept("+"):
            value = self.parse_arith()
            self.expect(":")
            branches.append((value, self.parse_rational_literal()))
        return CatAssign(var, tuple(branches))


def sequence(statements: List[Stmt]) -> Stmt:
    """语句列表 → 右嵌套的 Seq；空列表为 skip"""
    flat: List[Stmt] = []
    for stmt in statements:
        while isinstance(stmt, Seq):
            flat.append(stmt.first)
            stmt = stmt.second
        flat.append(stmt)
    statements = flat
    if not statements:
        return Skip()
    result = statements[-1]
    for stmt in reversed(statements[:-1]):
        result = Seq(stmt, result)
    return result


# =============================================================================
# 语义检查
# =============================================================================

def _check_arith(expr: ArithExpr, declared: Set[str], natural: bool) -> None:
    if isinstance(expr, Num):
        if natural and expr.value.denominator != 1:
            raise ProgramSemanticError(f"程序中的常量必须是自然数: {expr.value}")
    elif isinstance(expr, Var):
        if expr.name not in declared:
            raise ProgramSemanticError(f"变量 {expr.name} 未声明")
    elif isinstance(expr, Mul):
        if natural and expr.coef.denominator != 1:
            raise ProgramSemanticError(f"程序中的系数必须是自然数: {expr.coef}")
        _check_arith(expr.expr, declared, natural)
    elif isinstance(expr, (Add, Monus)):
        _check_arith(expr.left, declared, natural)
        _check_arith(expr.right, declared, natural)


def check_bool(guard: BoolExpr, declared: Set[str], natural: bool = True) -> None:
    """检查布尔表达式中的变量均已声明"""
    if isinstance(guard, Cmp):
        _check_arith(guard.left, declared, natural)
        _check_arith(guard.right, declared, natural)
    elif isinstance(guard, Not):
        check_bool(guard.operand, declared, natural)
    elif isinstance(guard, (And, Or)):
        check_bool(guard.left, declared, natural)
        check_bool(guard.right, declared, natural)


def check_arith(expr: ArithExpr, declared: Set[str], natural: bool = True) -> None:
    """检查算术表达式中的变量均已声明（natural=True 时还要求常量为自然数）"""
    _check_arith(expr, declared, natural)


def _check_stmt(stmt: Stmt, declared: Set[str]) -> None:
    if isinstance(stmt, Assign):
        if stmt.var not in declared:
            raise ProgramSemanticError(f"变量 {stmt.var} 未声明")
        _check_arith(stmt.expr, declared, True)
    elif isinstance(stmt, Seq):
        _check_stmt(stmt.first, declared)
        _check_stmt(stmt.second, declared)
    elif isinstance(stmt, PChoice):
        if not 0 <= stmt.prob <= 1:
            raise ProgramSemanticError(f"概率 {stmt.prob} 不在 [0,1] 内")
        _check_stmt(stmt.left, declared)
        _check_stmt(stmt.right, declared)
    elif isinstance(stmt, Ite):
        check_bool(stmt.guard, declared)
        _check_stmt(stmt.then, declared)
        _check_stmt(stmt.orelse, declared)
    elif isinstance(stmt, CatAssign):
        if stmt.var not in declared:
            raise ProgramSemanticError(f"变量 {stmt.var} 未声明")
        total = Fraction(0)
        for value, weight in stmt.branches:
            if weight <= 0:
                raise ProgramSemanticError(f"分类赋值的权重必须为正: {weight}")
            _check_arith(value, declared, True)
            total += weight
        if total != 1:
            raise ProgramSemanticError(f"分类赋值 {stmt.var} 的权重之和为 {total}，应为 1")


def check_program(program: Program) -> Program:
    """
    程序语义检查

    Raises:
        ProgramSemanticError: 未声明变量、概率越界、权重和不为 1、非自然数常量
    """
    declared = set(program.variables)
    check_bool(program.guard, declared)
    _check_stmt(program.body, declared)
    return program


def parse_program(text: str) -> Program:
    """
    解析并检查 pGCL 程序

    Args:
        text: 程序源码

    Returns:
        Program: 不可变的程序 AST

    Raises:
        ProgramSyntaxError: 带行列定位的语法错误
        ProgramSemanticError: 语义错误
    """
    program = ProgramParser(text).parse()
    return check_program(program)


def load_program(path: Union[str, Path]) -> Program:
    """从文件读取并解析程序"""
    path = Path(path)
    logger.debug(f"读取程序文件: {path}")
    return parse_program(path.read_text(encoding="utf-8"))


def parse_guard(text: str) -> BoolExpr:
    """解析独立的布尔表达式（测试与命令行使用）"""
    parser = TokenParser(text)
    guard = parser.parse_bool()
    parser.expect_eof()
    return guard


def parse_arith_expr(text: str) -> ArithExpr:
    """解析独立的算术表达式"""
    parser = TokenParser(text)
    expr = parser.parse_arith()
    parser.expect_eof()
    return expr


__all__ = [
    'ProgramParser', 'parse_program', 'load_program', 'check_program',
    'check_bool', 'check_arith', 'parse_guard', 'parse_arith_expr', 'sequence',
]
