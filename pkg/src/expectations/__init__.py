# -*- coding: utf-8 -*-
"""
期望模块
线性期望的代数：求值、代换、数乘、化简、GNF、逐点最小值与 wp/ert 变换器
"""

from .linexp import (
    ETerm, ExtLinExpr, ExtValue, Guard, INF, INFINITY, INFTY, Infinity, LinExp, ONE, Sum, ZERO,
    const, evaluate, iverson, linexp_vars, plus, print_linexp, rescale, simplify, substitute,
    substitute_many, summands, term,
)
from .parser import check_expectation, parse_expectation
from .gnf import Gnf, gnf, min_expectation
from .transformers import (
    CharacteristicFunctional, Mode, characteristic_functional, kind_iterate, kind_step,
    wp_by_paths, wp_loopfree,
)

__all__ = [
    'ETerm', 'ExtLinExpr', 'ExtValue', 'Guard', 'INF', 'INFINITY', 'INFTY', 'Infinity', 'LinExp',
    'ONE', 'Sum', 'ZERO', 'const', 'evaluate', 'iverson', 'linexp_vars', 'plus', 'print_linexp',
    'rescale', 'simplify', 'substitute', 'substitute_many', 'summands', 'term',
    'check_expectation', 'parse_expectation', 'Gnf', 'gnf', 'min_expectation',
    'CharacteristicFunctional', 'Mode', 'characteristic_functional', 'kind_iterate', 'kind_step',
    'wp_by_paths', 'wp_loopfree',
]
