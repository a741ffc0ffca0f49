# -*- coding: utf-8 -*-
"""
工具模块
"""

from .logger import get_logger, log_banner, LoggerMixin
from .cache import MemoCache, memoized
from .validator import JobValidator
from .errors import (
    SentinelError, ProgramSyntaxError, ProgramSemanticError, SolverError,
    SolverNotFoundError, SolverProtocolError, SolverUnknownError, SolverCrashedError,
    EngineInvariantError, UnsupportedQueryError, OracleCapExceeded, TransitionSystemError, JobSpecError,
)

__all__ = [
    'get_logger', 'log_banner', 'LoggerMixin', 'MemoCache', 'memoized', 'JobValidator',
    'SentinelError', 'ProgramSyntaxError', 'ProgramSemanticError', 'SolverError',
    'SolverNotFoundError', 'SolverProtocolError', 'SolverUnknownError', 'SolverCrashedError',
    'EngineInvariantError', 'UnsupportedQueryError', 'OracleCapExceeded', 'TransitionSystemError', 'JobSpecError',
]
