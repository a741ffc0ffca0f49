# -*- coding: utf-8 -*-
"""
有限格领域

Φ 以表给出的有限格，用于引擎的单元测试与随机互斥性测试。
"""

from typing import Callable, Dict, Hashable, Iterable, Optional

from .domain import EntailmentResult, VerificationDomain


class FiniteLatticeDomain(VerificationDomain[Hashable]):
    """
    有限格上的验证领域

    Args:
        elements: 格中全部元素
        leq: 偏序
        meet: 下确界
        phi: 单调算子（字典或函数）
        bottom: 最小元
        candidate: 候选上界 f
    """

    name = "finite"

    def __init__(self, elements: Iterable[Hashable], leq: Callable[[Hashable, Hashable], bool],
                 meet: Callable[[Hashable, Hashable], Hashable],
                 phi, bottom: Hashable, candidate: Hashable):
        self.elements = tuple(elements)
        self.leq = leq
        self.meet = meet
        self.phi: Callable[[Hashable], Hashable] = phi.__getitem__ if isinstance(phi, dict) else phi
        self._bottom = bottom
        self._candidate = candidate
        self.applications = 0
        self.checks = 0

    @property
    def bottom(self) -> Hashable:
        return self._bottom

    @property
    def candidate(self) -> Hashable:
        return self._candidate

    def apply_phi(self, g: Hashable) -> Hashable:
        self.applications += 1
        return self.phi(g)

    def meet_with_bound(self, g: Hashable) -> Hashable:
        return self.meet(g, self._candidate)

    def entails(self, g: Hashable, h: Hashable) -> EntailmentResult:
        self.checks += 1
        if self.leq(g, h):
            return EntailmentResult(True)
        return EntailmentResult(False, g)

    def is_monotone(self) -> bool:
        """穷举检查 Φ 的单调性"""
        return all(
            self.leq(self.phi(a), self.phi(b))
            for a in self.elements for b in self.elements if self.leq(a, b)
        )

    def stats(self) -> Dict[str, int]:
        return {'iterations': self.applications}


def chain_lattice(phi: Dict[int, int], candidate: int, size: Optional[int] = None) -> FiniteLatticeDomain:
    """
    全序格 {0, 1, ..., size-1}

    Args:
        phi: Φ 的取值表
        candidate: 候选上界
        size: 元素个数，默认取 phi 的定义域大小
    """
    size = size if size is not None else len(phi)
    return FiniteLatticeDomain(
        elements=range(size),
        leq=lambda a, b: a <= b,
        meet=min,
        phi=phi,
        bottom=0,
        candidate=candidate,
    )


def random_monotone_chain(rng, size: int) -> Dict[int, int]:
    """随机单调（不降）映射 {0..size-1} → {0..size-1}"""
    values = sorted(int(v) for v in rng.integers(0, size, size=size))
    return dict(enumerate(values))


__all__ = ['FiniteLatticeDomain', 'chain_lattice', 'random_monotone_chain']
