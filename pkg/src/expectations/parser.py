# -*- coding: utf-8 -*-
"""
期望表达式解析

与程序共用记号与布尔文法，额外支持：
    [φ]            Iverson 括号，与其他因子相乘即为 [φ]·h
    inf / \\infty   无穷
    c * h          有理常量数乘
例：  [c = 1]*(x + 1) + [not (c = 1)]*x
      [toSend <= 4]*(totalFailed + 1) + [toSend > 4]*inf

两个算术操作数之间的 '+' 仍是算术加法，其余 '+' 为期望求和；'-' 只能作用于算术式。
"""

from typing import Optional, Union

from ..pgcl.ast import Add, ArithExpr, Monus, Num, Var
from ..pgcl.lexer import Token, TokenParser
from ..pgcl.parser import check_arith, check_bool
from .linexp import ETerm, Guard, INFINITY, Infinity, LinExp, ONE, Sum, rescale

# 解析中间值：算术式或期望
_Value = Union[ArithExpr, ETerm, Guard, Sum]

_LINEXP_TYPES = (ETerm, Guard, Sum)


def _is_linexp(value: _Value) -> bool:
    return isinstance(value, _LINEXP_TYPES)


def _lift(value: _Value) -> LinExp:
    return value if _is_linexp(value) else ETerm(value)


def _iverson_chain(value: _Value) -> Optional[list]:
    """若 value 形如 [φ1]·[φ2]·…·1，返回守卫列表"""
    guards = []
    while isinstance(value, Guard):
        guards.append(value.guard)
        value = value.body
    if guards and value == ONE:
        return guards
    return None


def _wrap(guards: list, body: LinExp) -> LinExp:
    for guard in reversed(guards):
        body = Guard(guard, body)
    return body


class ExpectationParser(TokenParser):
    """线性期望的递归下降解析器"""

    def parse_expectation(self) -> LinExp:
        value = self.parse_sum()
        self.expect_eof()
        return _lift(value)

    def parse_sum(self) -> _Value:
        left = self.parse_product()
        while True:
            token = self.current
            if self.accept("+"):
                right = self.parse_product()
                if _is_linexp(left) or _is_linexp(right):
                    left = Sum(_lift(left), _lift(right))
                else:
                    left = Add(left, right)
            elif self.accept("-"):
                right = self.parse_product()
                if _is_linexp(left) or _is_linexp(right):
                    self.error("截断减法只能作用于算术表达式", token)
                left = Monus(left, right)
            else:
                return left

    def parse_product(self) -> _Value:
        left = self.parse_factor()
        while True:
            token = self.current
            if not self.accept("*"):
                return left
            right = self.parse_factor()
            left = self.multiply(left, right, token)

    def multiply(self, left: _Value, right: _Value, token: Token) -> _Value:
        if not _is_linexp(left) and not _is_linexp(right):
            return self.make_product(left, right, token)

        guards = _iverson_chain(left)
        if guards is not None:
            return _wrap(guards, _lift(right))
        guards = _iverson_chain(right)
        if guards is not None:
            return _wrap(guards, _lift(left))

        if isinstance(left, Num):
            return rescale(left.value, _lift(right))
        if isinstance(right, Num):
            return rescale(right.value, _lift(left))
        self.error("期望之间的乘积不是线性的", token)

    def parse_factor(self) -> _Value:
        token = self.current
        if self.accept("["):
            guard = self.parse_bool()
            self.expect("]")
            return Guard(guard, ONE)
        if self.accept("inf", "infty"):
            return INFINITY
        if token.kind == "NUMBER":
            return Num(self.parse_rational_literal())
        if token.kind == "IDENT":
            self.advance()
            return Var(token.text)
        if self.accept("("):
            inner = self.parse_sum()
            self.expect(")")
            return inner
        self.error(f"期望表达式，实际为 {self.describe(token)}")


def parse_expectation(text: str) -> LinExp:
    """
    解析线性期望

    Args:
        text: 期望文本

    Returns:
        LinExp: 期望语法树（未化简）

    Raises:
        ProgramSyntaxError: 语法错误或非线性乘积
    """
    return ExpectationParser(text).parse_expectation()


def check_expectation(h: LinExp, declared: set) -> LinExp:
    """
    检查期望中出现的变量都是程序变量

    Raises:
        ProgramSemanticError: 出现未声明变量
    """
    if isinstance(h, ETerm):
        if not isinstance(h.value, Infinity):
            check_arith(h.value, declared, natural=False)
    elif isinstance(h, Guard):
        check_bool(h.guard, declared, natural=False)
        check_expectation(h.body, declared)
    elif isinstance(h, Sum):
        check_expectation(h.left, declared)
        check_expectation(h.right, declared)
    return h


__all__ = ['ExpectationParser', 'parse_expectation', 'check_expectation']
