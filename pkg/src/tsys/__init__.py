# -*- coding: utf-8 -*-
"""
测试用实例与 oracle：有限迁移系统上的 k-归纳等价性，以及概率循环的截断 oracle
"""

from .transition_system import (
    PowersetDomain, TransitionSystem, chain_system, classical_kinduction,
    latticed_kinduction_ts, random_transition_system,
)
from .oracle import TruncatedOracle, truncated_kind_oracle, truncated_value_oracle

__all__ = [
    'PowersetDomain', 'TransitionSystem', 'chain_system', 'classical_kinduction',
    'latticed_kinduction_ts', 'random_transition_system',
    'TruncatedOracle', 'truncated_kind_oracle', 'truncated_value_oracle',
]
