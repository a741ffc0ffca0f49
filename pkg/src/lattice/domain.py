# -*- coding: utf-8 -*-
"""
验证领域接口与结论类型

引擎只通过 VerificationDomain 与具体格交互：
    apply_phi        单调算子 Φ
    meet_with_bound  g ⊓ f（f 为固定的候选上界）
    entails          g ⊑ h 的判定，不成立时附带反例
    bottom / candidate  ⊥ 与 f
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Generic, Optional, TypeVar, Union

E = TypeVar("E")


@dataclass(frozen=True)
class EntailmentResult:
    """蕴含判定结果：holds 为 False 时 witness 为领域相关的反例"""
    holds: bool
    witness: Any = None


class VerificationDomain(ABC, Generic[E]):
    """
    抽象验证领域

    子类保证 apply_phi 单调、meet_with_bound(g) 同时位于 g 与 f 之下。
    元素一经产生即不可变，可在线程间传递；会话类资源由 fork() 复制，每个工作线程一份。
    """

    name: str = "domain"

    @property
    @abstractmethod
    def bottom(self) -> E:
        """最小元 ⊥"""

    @property
    @abstractmethod
    def candidate(self) -> E:
        """候选上界 f"""

    @abstractmethod
    def apply_phi(self, g: E) -> E:
        """Φ(g)"""

    @abstractmethod
    def meet_with_bound(self, g: E) -> E:
        """g ⊓ f"""

    @abstractmethod
    def entails(self, g: E, h: E) -> EntailmentResult:
        """g ⊑ h ?"""

    def entails_iterate(self, phi_g: E, g: E) -> EntailmentResult:
        """
        Φ(g) ⊑ g 的判定，g 为 κ-归纳迭代元

        默认直接调用 entails；编码领域可只在 f 有限的区域上检查。
        """
        return self.entails(phi_g, g)

    def fork(self) -> "VerificationDomain[E]":
        """返回拥有独立资源的副本（并行验证的每个工作线程一份）"""
        return self

    def interrupt(self) -> None:
        """从其他线程中断正在进行的判定"""

    def close(self) -> None:
        """释放资源"""

    def stats(self) -> Dict[str, Any]:
        """领域统计（公式数、求解耗时等）"""
        return {}


# =============================================================================
# 结论
# =============================================================================

@dataclass(frozen=True)
class Inductive:
    """Φ(Ψ_f^{k-1}(f)) ⊑ f：f 是 k-归纳的"""
    k: int
    label = "ind"


@dataclass(frozen=True)
class Refuted:
    """Φ^n(⊥) ⋢ f；n 为 Kleene 幂次"""
    n: int
    witness: Any = None
    label = "ref"

    @property
    def depth(self) -> int:
        """展开深度 n−1（报告使用）"""
        return self.n - 1


@dataclass(frozen=True)
class Exhausted:
    """达到迭代上限仍无结论"""
    bound: int
    label = "exhausted"


@dataclass(frozen=True)
class Timeout:
    label = "timeout"


@dataclass(frozen=True)
class EngineError:
    """求解器或领域失败"""
    message: str
    label = "error"


Verdict = Union[Inductive, Refuted, Exhausted, Timeout, EngineError]


@dataclass
class Stats:
    """
    运行统计

    formula_count: 求解器栈上断言数的峰值
    formulae_time: 构造并断言公式的耗时（不含 check-sat）
    sat_time: check-sat 累计耗时
    total_time: 墙钟总耗时
    """
    formula_count: int = 0
    formulae_time: float = 0.0
    sat_time: float = 0.0
    total_time: float = 0.0
    iterations: int = 0
    frames: int = 0
    instances: int = 0
    worker: str = ""

    @classmethod
    def from_domain(cls, domain: VerificationDomain, **kwargs) -> "Stats":
        data = dict(domain.stats())
        data.update(kwargs)
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**known)


@dataclass(frozen=True)
class Outcome:
    verdict: Verdict
    stats: Stats = field(default_factory=Stats)

    @property
    def label(self) -> str:
        return self.verdict.label

    @property
    def is_definitive(self) -> bool:
        """Inductive 与 Refuted 为确定结论"""
        return isinstance(self.verdict, (Inductive, Refuted))

    @property
    def k(self) -> Optional[int]:
        if isinstance(self.verdict, Inductive):
            return self.verdict.k
        if isinstance(self.verdict, Refuted):
            return self.verdict.n
        return None


__all__ = [
    'E', 'EntailmentResult', 'VerificationDomain',
    'Inductive', 'Refuted', 'Exhausted', 'Timeout', 'EngineError', 'Verdict',
    'Stats', 'Outcome',
]
