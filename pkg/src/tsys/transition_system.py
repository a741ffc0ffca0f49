# -*- coding: utf-8 -*-
"""
有限迁移系统上的经典 k-归纳与格上 k-归纳

TS = (S, I, T)，性质 P ⊆ S。经典 k-归纳由两条件组成：
    基础：从 I 出发的每条含 k 个状态的路径都停留在 P 中
    归纳：任意 k 个连续 P 状态的后继仍在 P 中
格上版本在幂集格 (2^S, ⊆) 上运行通用引擎，Φ(F) = I ∪ Succs(F)。
T 全时二者等价；非全的 T 被拒绝。
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..lattice.domain import EntailmentResult, Inductive, VerificationDomain
from ..lattice.engine import k_induction
from ..utils.errors import TransitionSystemError
from ..utils.logger import get_logger

logger = get_logger(__name__)

StateSet = FrozenSet[Hashable]


@dataclass(frozen=True)
class TransitionSystem:
    """有限迁移系统 (S, I, T)"""
    states: StateSet
    initial: StateSet
    transitions: FrozenSet[Tuple[Hashable, Hashable]]

    @classmethod
    def from_edges(cls, states: Iterable[Hashable], initial: Iterable[Hashable],
                   edges: Iterable[Tuple[Hashable, Hashable]]) -> "TransitionSystem":
        return cls(frozenset(states), frozenset(initial), frozenset(edges))

    def successors(self, state: Hashable) -> StateSet:
        return frozenset(t for s, t in self.transitions if s == state)

    def succs(self, states: Iterable[Hashable]) -> StateSet:
        sources = set(states)
        return frozenset(t for s, t in self.transitions if s in sources)

    def sinks(self) -> List[Hashable]:
        sources = {s for s, _ in self.transitions}
        return sorted((s for s in self.states if s not in sources), key=repr)

    def is_total(self) -> bool:
        return not self.sinks()

    def validate(self) -> None:
        """
        Raises:
            TransitionSystemError: I 为空、I 或 T 越出 S，或 T 不全
        """
        if not self.initial:
            raise TransitionSystemError("初始状态集 I 为空")
        if not self.initial <= self.states:
            raise TransitionSystemError(f"初始状态不在 S 中: {sorted(self.initial - self.states, key=repr)}")
        for s, t in self.transitions:
            if s not in self.states or t not in self.states:
                raise TransitionSystemError(f"迁移 {s}→{t} 越出状态集")
        sinks = self.sinks()
        if sinks:
            raise TransitionSystemError(f"迁移关系不全，无后继的状态: {sinks}")


def _extend(paths: List[Tuple[Hashable, ...]], ts: TransitionSystem,
            within: Optional[StateSet] = None) -> List[Tuple[Hashable, ...]]:
    extended = []
    for path in paths:
        for nxt in ts.successors(path[-1]):
            if within is None or nxt in within:
                extended.append(path + (nxt,))
    return extended


def classical_kinduction(ts: TransitionSystem, prop: Iterable[Hashable], k: int) -> bool:
    """
    穷举所有长度不超过 k+1 的状态序列判定经典 k-归纳

    Args:
        ts: 迁移系统（T 必须全）
        prop: 性质 P
        k: 归纳深度，k ≥ 1

    Returns:
        bool: 基础与归纳两条件都成立

    Raises:
        TransitionSystemError: k < 1 或迁移系统不满足前置条件
    """
    if k < 1:
        raise TransitionSystemError(f"k 必须 ≥ 1，得到 {k}")
    ts.validate()
    prop = frozenset(prop)

    paths: List[Tuple[Hashable, ...]] = [(s,) for s in ts.initial]
    for _ in range(k - 1):
        paths = _extend(paths, ts)
    if any(s not in prop for path in paths for s in path):
        return False

    runs: List[Tuple[Hashable, ...]] = [(s,) for s in prop]
    for _ in range(k - 1):
        runs = _extend(runs, ts, within=prop)
    return all(nxt in prop for run in runs for nxt in ts.successors(run[-1]))


class PowersetDomain(VerificationDomain[StateSet]):
    """幂集格：⊑ = ⊆，⊓ = ∩，⊥ = ∅，Φ(F) = I ∪ Succs(F)"""

    name = "powerset"

    def __init__(self, ts: TransitionSystem, prop: Iterable[Hashable]):
        self.ts = ts
        self.prop: StateSet = frozenset(prop)
        self.applications = 0

    @property
    def bottom(self) -> StateSet:
        return frozenset()

    @property
    def candidate(self) -> StateSet:
        return self.prop

    def apply_phi(self, g: StateSet) -> StateSet:
        self.applications += 1
        return self.ts.initial | self.ts.succs(g)

    def meet_with_bound(self, g: StateSet) -> StateSet:
        return g & self.prop

    def entails(self, g: StateSet, h: StateSet) -> EntailmentResult:
        outside = g - h
        if not outside:
            return EntailmentResult(True)
        return EntailmentResult(False, sorted(outside, key=repr)[0])

    def stats(self) -> Dict[str, int]:
        return {'iterations': self.applications}


def latticed_kinduction_ts(ts: TransitionSystem, prop: Iterable[Hashable], k: int) -> bool:
    """
    在幂集格上运行 k-归纳引擎，检查 Φ(Ψ_P^{k-1}(P)) ⊆ P

    引擎在第一个成功的检查处停止；成功对 k 单调，因此 ≤ k 次内成功即 k-归纳。
    """
    outcome = k_induction(PowersetDomain(ts, prop), max_k=k)
    return isinstance(outcome.verdict, Inductive)


def random_transition_system(rng: np.random.Generator, max_states: int = 7,
                             edge_probability: float = 0.3) -> Tuple[TransitionSystem, StateSet]:
    """
    随机全化迁移系统与随机性质

    无后继的状态补上自环，使 T 全。

    Args:
        rng: numpy 随机数生成器
        max_states: 状态数上限
        edge_probability: 每条有向边出现的概率

    Returns:
        (TransitionSystem, P)
    """
    n = int(rng.integers(1, max_states + 1))
    states = list(range(n))
    edges = {(s, t) for s, t in product(states, states) if rng.random() < edge_probability}
    sources = {s for s, _ in edges}
    edges |= {(s, s) for s in states if s not in sources}

    initial = {s for s in states if rng.random() < 0.4}
    if not initial:
        initial = {int(rng.integers(0, n))}
    prop = frozenset(s for s in states if rng.random() < 0.7)
    return TransitionSystem.from_edges(states, initial, edges), prop


def chain_system(states: Sequence[Hashable], initial: Iterable[Hashable]) -> TransitionSystem:
    """s_1 → s_2 → … → s_n → s_n"""
    edges = list(zip(states, states[1:])) + [(states[-1], states[-1])]
    return TransitionSystem.from_edges(states, initial, edges)


__all__ = [
    'TransitionSystem', 'PowersetDomain', 'classical_kinduction', 'latticed_kinduction_ts',
    'random_transition_system', 'chain_system',
]
