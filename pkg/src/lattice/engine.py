# -*- coding: utf-8 -*-
"""
格上的 k-归纳与有界模型检查

k_induction:  g ← f；循环 { 若 Φ(g) ⊑ f 返回 Inductive(k)；g ← Φ(g) ⊓ f }
bmc:          g ← ⊥；循环 { g ← Φ(g)；若 g ⋢ f 返回 Refuted(n, 反例) }
verify_parallel 在两个线程中同时运行二者，取先得到的确定结论并中断另一方。

取消是协作式的：工作线程在两次判定之间检查共享停止标志；
deadline 或胜者出现时调用 domain.interrupt() 结束正在阻塞的求解器调用。
"""

import threading
import time
from concurrent.futures import FIRST_COMPLETED, Future, ThreadPoolExecutor, wait
from typing import Callable, Dict, Optional

from ..config import EngineConfig
from ..utils.errors import EngineInvariantError
from ..utils.logger import get_logger, log_banner
from .domain import (
    EngineError, Exhausted, Inductive, Outcome, Refuted, Stats, Timeout, VerificationDomain,
)

logger = get_logger(__name__)


class _Watchdog:
    """deadline 到达时设置停止标志并中断领域"""

    def __init__(self, domain: VerificationDomain, deadline: Optional[float], stop: threading.Event):
        self.domain = domain
        self.stop = stop
        self.expired = False
        self._timer: Optional[threading.Timer] = None
        if deadline is not None:
            self._timer = threading.Timer(max(deadline, 0.0), self._fire)
            self._timer.daemon = True

    def _fire(self) -> None:
        self.expired = True
        self.stop.set()
        self.domain.interrupt()

    def __enter__(self) -> "_Watchdog":
        if self._timer is not None:
            self._timer.start()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        if self._timer is not None:
            self._timer.cancel()


def _finish(domain: VerificationDomain, verdict, start: float, iterations: int, worker: str) -> Outcome:
    stats = Stats.from_domain(domain, total_time=time.perf_counter() - start,
                              iterations=iterations, worker=worker)
    return Outcome(verdict, stats)


def _stopped(stop: threading.Event, watchdog: _Watchdog) -> Optional[Timeout]:
    if watchdog.expired or stop.is_set():
        return Timeout()
    return None


def k_induction(domain: VerificationDomain, max_k: Optional[int] = None,
                deadline: Optional[float] = None, stop: Optional[threading.Event] = None) -> Outcome:
    """
    格上的 k-归纳

    Args:
        domain: 验证领域
        max_k: 最多执行的检查次数，None 表示不限
        deadline: 相对 deadline（秒），None 表示不限
        stop: 共享停止标志（并行验证时由主线程设置）

    Returns:
        Outcome: Inductive(k)（k 为已执行的检查次数，k=1 即 Park 归纳）、Exhausted(max_k)、
                 Timeout 或 EngineError；从不返回 Refuted
    """
    stop = stop or threading.Event()
    start = time.perf_counter()
    k = 0
    with _Watchdog(domain, deadline, stop) as watchdog:
        try:
            g = domain.candidate
            while True:
                if _stopped(stop, watchdog):
                    return _finish(domain, Timeout(), start, k, "k-induction")
                k += 1
                phi_g = domain.apply_phi(g)
                result = domain.entails(phi_g, domain.candidate)
                if result.holds:
                    if k > 1 and EngineConfig.CHECK_ITERATE_ENTAILMENT:
                        iterate = domain.entails_iterate(phi_g, g)
                        if not iterate.holds:
                            raise EngineInvariantError(
                                f"第 {k} 次检查：Φ(g) ⊑ f 成立但 Φ(g) ⊑ g 不成立，反例 {iterate.witness}"
                            )
                    logger.info(f"[k-归纳] 第 {k} 次检查通过：候选上界是 {k}-归纳的")
                    return _finish(domain, Inductive(k), start, k, "k-induction")
                logger.debug(f"[k-归纳] 第 {k} 次检查未通过，反例 {result.witness}")
                if max_k is not None and k >= max_k:
                    logger.info(f"[k-归纳] 达到上限 max_k={max_k}")
                    return _finish(domain, Exhausted(max_k), start, k, "k-induction")
                g = domain.meet_with_bound(phi_g)
        except Exception as e:
            if _stopped(stop, watchdog):
                return _finish(domain, Timeout(), start, k, "k-induction")
            logger.error(f"[k-归纳] 第 {k} 次检查失败: {e}")
            return _finish(domain, EngineError(str(e)), start, k, "k-induction")


def bmc(domain: VerificationDomain, max_n: Optional[int] = None,
        deadline: Optional[float] = None, stop: Optional[threading.Event] = None) -> Outcome:
    """
    格上的有界模型检查（Kleene 上升 Φ^n(⊥)）

    Args:
        domain: 验证领域
        max_n: 最多展开的幂次，None 表示不限
        deadline: 相对 deadline（秒）
        stop: 共享停止标志

    Returns:
        Outcome: Refuted(n, 反例)（n 为首个 Φ^n(⊥) ⋢ f 的幂次）、Exhausted(max_n)、
                 Timeout 或 EngineError；从不返回 Inductive
    """
    stop = stop or threading.Event()
    start = time.perf_counter()
    n = 0
    with _Watchdog(domain, deadline, stop) as watchdog:
        try:
            g = domain.bottom
            while True:
                if _stopped(stop, watchdog):
                    return _finish(domain, Timeout(), start, n, "bmc")
                if max_n is not None and n >= max_n:
                    logger.info(f"[BMC] 达到上限 max_n={max_n}")
                    return _finish(domain, Exhausted(max_n), start, n, "bmc")
                g = domain.apply_phi(g)
                n += 1
                result = domain.entails(g, domain.candidate)
                if not result.holds:
                    logger.info(f"[BMC] Φ^{n}(⊥) 超出候选上界，反例 {result.witness}")
                    return _finish(domain, Refuted(n, result.witness), start, n, "bmc")
                logger.debug(f"[BMC] Φ^{n}(⊥) ⊑ f")
        except Exception as e:
            if _stopped(stop, watchdog):
                return _finish(domain, Timeout(), start, n, "bmc")
            logger.error(f"[BMC] 第 {n} 次展开失败: {e}")
            return _finish(domain, EngineError(str(e)), start, n, "bmc")


def _weaker(first: Outcome, second: Outcome) -> Outcome:
    """两个非确定结论中较弱的一个：有超时取超时，其次穷尽，二者都出错才是错误"""
    for kind in (Timeout, Exhausted):
        for outcome in (first, second):
            if isinstance(outcome.verdict, kind):
                return outcome
    messages = "; ".join(o.verdict.message for o in (first, second) if isinstance(o.verdict, EngineError))
    return Outcome(EngineError(messages), first.stats)


def verify_parallel(domain: VerificationDomain, max_k: Optional[int] = None,
                    max_n: Optional[int] = None,
                    deadline: Optional[float] = EngineConfig.DEFAULT_DEADLINE) -> Outcome:
    """
    并行运行 k-归纳与 BMC

    Args:
        domain: 验证领域（每个工作线程使用 domain.fork() 得到的独立副本）
        max_k: k-归纳上限
        max_n: BMC 上限
        deadline: 相对 deadline（秒）

    Returns:
        Outcome: 先得到的确定结论；两者都无结论时返回较弱的结论；
                 一方出错时等待另一方，只有两方都出错才返回 EngineError
    """
    start = time.perf_counter()
    stop = threading.Event()
    workers: Dict[str, VerificationDomain] = {
        "k-induction": domain.fork(),
        "bmc": domain.fork(),
    }
    runners: Dict[str, Callable[[], Outcome]] = {
        "k-induction": lambda: k_induction(workers["k-induction"], max_k, deadline, stop),
        "bmc": lambda: bmc(workers["bmc"], max_n, deadline, stop),
    }
    log_banner(logger, f"并行验证开始（deadline={deadline}s）")

    outcomes: Dict[str, Outcome] = {}
    winner: Optional[Outcome] = None
    try:
        with ThreadPoolExecutor(max_workers=2, thread_name_prefix="sentinel") as executor:
            futures: Dict[Future, str] = {executor.submit(run): name for name, run in runners.items()}
            pending = set(futures)
            while pending:
                done, pending = wait(pending, timeout=EngineConfig.JOIN_POLL, return_when=FIRST_COMPLETED)
                for future in done:
                    name = futures[future]
                    try:
                        outcomes[name] = future.result()
                    except Exception as e:
                        outcomes[name] = Outcome(EngineError(str(e)), Stats(worker=name))
                    outcome = outcomes[name]
                    logger.info(f"[{name}] 结束: {outcome.label}")
                    if outcome.is_definitive and winner is None:
                        winner = outcome
                        stop.set()
                        for other, other_domain in workers.items():
                            if other != name:
                                other_domain.interrupt()
                if deadline is not None and time.perf_counter() - start > deadline + 5 * EngineConfig.JOIN_POLL:
                    # 工作线程自己的看门狗没能及时返回时，主线程兜底中断
                    stop.set()
                    for other_domain in workers.values():
                        other_domain.interrupt()
    finally:
        for worker_domain in workers.values():
            worker_domain.close()

    if winner is not None:
        result = winner
    else:
        result = _weaker(outcomes["k-induction"], outcomes["bmc"])
    result.stats.total_time = time.perf_counter() - start
    log_banner(logger, f"并行验证结束: {result.label}（{result.stats.total_time:.2f}s）")
    return result


__all__ = ['k_induction', 'bmc', 'verify_parallel']
