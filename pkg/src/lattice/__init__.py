# -*- coding: utf-8 -*-
"""
格模块
与 pGCL 无关的 k-归纳 / BMC 引擎及有限格实例
"""

from .domain import (
    EngineError, EntailmentResult, Exhausted, Inductive, Outcome, Refuted, Stats, Timeout,
    Verdict, VerificationDomain,
)
from .engine import bmc, k_induction, verify_parallel
from .finite import FiniteLatticeDomain, chain_lattice, random_monotone_chain

__all__ = [
    'EngineError', 'EntailmentResult', 'Exhausted', 'Inductive', 'Outcome', 'Refuted', 'Stats',
    'Timeout', 'Verdict', 'VerificationDomain', 'bmc', 'k_induction', 'verify_parallel',
    'FiniteLatticeDomain', 'chain_lattice', 'random_monotone_chain',
]
