# -*- coding: utf-8 -*-
"""
SMT 层：外部求解器会话、SMT-LIB2 项、定量蕴含与增量编码
"""

from .solver_client import SatResult, SolverSession, parse_sexp, ensure_solver, sexp_to_fraction, tokenize_sexp
from .terms import INFTY_SYMBOL, bool_term, ext_term, linexp_term, real_term, var_symbol
from .entailment import SmtContext, entails, exceed_formula
from .encoding import EncodingState, FrameRef, Purpose, init_encoding, push_frame
from .domains import EncodedDomain, ExpectationDomain, VerificationProblem

__all__ = [
    'SatResult', 'SolverSession', 'parse_sexp', 'ensure_solver', 'sexp_to_fraction', 'tokenize_sexp',
    'INFTY_SYMBOL', 'bool_term', 'ext_term', 'linexp_term', 'real_term', 'var_symbol',
    'SmtContext', 'entails', 'exceed_formula',
    'EncodingState', 'FrameRef', 'Purpose', 'init_encoding', 'push_frame',
    'EncodedDomain', 'ExpectationDomain', 'VerificationProblem',
]
