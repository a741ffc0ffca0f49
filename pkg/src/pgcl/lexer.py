# -*- coding: utf-8 -*-
"""
词法分析与递归下降解析的公共基础
程序文件与期望表达式共用同一套记号和算术/布尔表达式文法
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from ..utils.errors import ProgramSyntaxError
from .ast import (
    Add, And, ArithExpr, BoolConst, BoolExpr, Cmp, Monus, Mul, Not, Num, Or, Var,
)

KEYWORDS = frozenset({
    "nat", "while", "if", "else", "skip", "tick", "true", "false",
    "not", "and", "or", "inf", "infty",
})

# 顺序敏感：长符号在前
_TOKEN_SPEC = [
    ("COMMENT", r"#[^\n]*"),
    ("NEWLINE", r"\n"),
    ("SPACE", r"[ \t\r]+"),
    ("NUMBER", r"\d+(?:\.\d+)?"),
    ("INFTY", r"\\infty\b"),
    ("IDENT", r"[A-Za-z_][A-Za-z_0-9]*"),
    ("OP", r":=|<=|>=|!=|==|=>|&&|\|\||[<>=+\-*/(){}\[\];:,!&|]"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str   # NUMBER / IDENT / KEYWORD / OP / EOF
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    """
    把源码切分为记号序列

    Args:
        text: 源码文本

    Returns:
        List[Token]: 以 EOF 记号结尾的记号列表

    Raises:
        ProgramSyntaxError: 出现无法识别的字符
    """
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ProgramSyntaxError(f"无法识别的字符 {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        value = match.group()
        column = pos - line_start + 1
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
        elif kind == "INFTY":
            tokens.append(Token("KEYWORD", "inf", line, column))
        elif kind == "IDENT" and value in KEYWORDS:
            tokens.append(Token("KEYWORD", value, line, column))
        elif kind not in ("SPACE", "COMMENT"):
            tokens.append(Token(kind, value, line, column))
        pos = match.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


def parse_rational(text: str) -> Fraction:
    """十进制或整数字面量 → 精确有理数"""
    return Fraction(text)


class TokenParser:
    """
    递归下降解析器基类
    提供记号游标、回溯，以及算术与布尔表达式文法：

        additive   := multiplicative (('+' | '-') multiplicative)*
        multiplicative := atom ('*' atom)*          至少一侧为常量
        atom       := NUMBER ['/' NUMBER] | IDENT | '(' additive ')'
        bool       := or ['=>' bool]
        or         := and (('||' | '|' | 'or') and)*
        and        := unary (('&' | '&&' | 'and') unary)*
        unary      := ('not' | '!') unary | 'true' | 'false' | '(' bool ')' | comparison
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    # ===== 游标 =====

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def at(self, *texts: str) -> bool:
        token = self.current
        return token.kind in ("OP", "KEYWORD") and token.text in texts

    def accept(self, *texts: str) -> Optional[Token]:
        if self.at(*texts):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"期望 {text!r}，实际为 {self.describe(self.current)}")
        return self.advance()

    def expect_ident(self) -> Token:
        if self.current.kind != "IDENT":
            self.error(f"期望标识符，实际为 {self.describe(self.current)}")
        return self.advance()

    def expect_number(self) -> Token:
        if self.current.kind != "NUMBER":
            self.error(f"期望数字，实际为 {self.describe(self.current)}")
        return self.advance()

    def expect_eof(self) -> None:
        if self.current.kind != "EOF":
            self.error(f"多余的输入 {self.describe(self.current)}")

    @staticmethod
    def describe(token: Token) -> str:
        return "文件结尾" if token.kind == "EOF" else repr(token.text)

    def error(self, message: str, token: Optional[Token] = None):
        token = token or self.current
        raise ProgramSyntaxError(message, token.line, token.column)

    # ===== 常量 =====

    def parse_rational_literal(self) -> Fraction:
        """NUMBER ['/' NUMBER]，用于概率与权重"""
        value = parse_rational(self.expect_number().text)
        if self.accept("/"):
            denominator_token = self.current
            denominator = parse_rational(self.expect_number().text)
            if denominator == 0:
                self.error("除数为 0", denominator_token)
            value = value / denominator
        return value

    # ===== 算术表达式 =====

    def parse_arith(self) -> ArithExpr:
        left = self.parse_multiplicative()
        while True:
            if self.accept("+"):
                left = Add(left, self.parse_multiplicative())
            elif self.accept("-"):
                left = Monus(left, self.parse_multiplicative())
            else:
                return left

    def parse_multiplicative(self) -> ArithExpr:
        start = self.current
        left = self.parse_arith_atom()
        while self.accept("*"):
            right = self.parse_arith_atom()
            left = self.make_product(left, right, start)
        return left

    def make_product(self, left: ArithExpr, right: ArithExpr, token: Token) -> ArithExpr:
        if isinstance(left, Num):
            return Mul(left.value, right)
        if isinstance(right, Num):
            return Mul(right.value, left)
        self.error("只支持常量与表达式的乘积（线性算术）", token)

    def parse_arith_atom(self) -> ArithExpr:
        token = self.current
        if token.kind == "NUMBER":
            return Num(self.parse_rational_literal())
        if token.kind == "IDENT":
            self.advance()
            return Var(token.text)
        if self.accept("("):
            expr = self.parse_arith()
            self.expect(")")
            return expr
        self.error(f"期望算术表达式，实际为 {self.describe(token)}")

    # ===== 布尔表达式 =====

    def parse_bool(self) -> BoolExpr:
        left = self.parse_or()
        if self.accept("=>"):
            return Or(Not(left), self.parse_bool())
        return left

    def parse_or(self) -> BoolExpr:
        left = self.parse_and()
        while self.accept("||", "|", "or"):
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> BoolExpr:
        left = self.parse_bool_unary()
        while self.accept("&", "&&", "and"):
            left = And(left, self.parse_bool_unary())
        return left

    def parse_bool_unary(self) -> BoolExpr:
        if self.accept("not", "!"):
            return Not(self.parse_bool_unary())
        if self.accept("true"):
            return BoolConst(True)
        if self.accept("false"):
            return BoolConst(False)
        if self.at("("):
            # 括号既可能包住布尔式，也可能是比较左侧的算术式：先按布尔式尝试，失败则回溯
            saved = self.pos
            try:
                self.advance()
                inner = self.parse_bool()
                self.expect(")")
                return inner
            except ProgramSyntaxError:
                self.pos = saved
        return self.parse_comparison()

    def parse_comparison(self) -> BoolExpr:
        left = self.parse_arith()
        token = self.current
        if not self.at("<", "<=", "=", "==", "!=", ">", ">="):
            self.error(f"期望比较运算符，实际为 {self.describe(token)}")
        op = self.advance().text
        right = self.parse_arith()
        if op == "<":
            return Cmp("<", left, right)
        if op == "<=":
            return Cmp("<=", left, right)
        if op in ("=", "=="):
            return Cmp("=", left, right)
        if op == "!=":
            return Not(Cmp("=", left, right))
        if op == ">":
            return Cmp("<", right, left)
        return Cmp("<=", right, left)
