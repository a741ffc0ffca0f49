# -*- coding: utf-8 -*-
"""
记忆化模块
为守卫可满足性查询等重复计算提供进程内有界缓存，减少求解器往返
"""

import threading
from collections import OrderedDict
from functools import wraps
from typing import Any, Callable, Dict, Hashable, Optional

from ..config import GnfConfig
from .logger import get_logger

logger = get_logger(__name__)

_MISSING = object()


class MemoCache:
    """有界 LRU 记忆表（线程安全）"""

    def __init__(self, max_size: int = GnfConfig.MEMO_SIZE, name: str = "memo"):
        """
        初始化记忆表

        Args:
            max_size: 最多保留的条目数，超过后淘汰最久未使用的条目
            name: 名称，仅用于日志
        """
        self.max_size = max_size
        self.name = name
        self._data: "OrderedDict[Hashable, Any]" = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable, default: Any = None) -> Any:
        """
        读取条目

        Args:
            key: 键

        Returns:
            缓存值，不存在时返回 default
        """
        with self._lock:
            value = self._data.get(key, _MISSING)
            if value is _MISSING:
                self.misses += 1
                return default
            self._data.move_to_end(key)
            self.hits += 1
            return value

    def set(self, key: Hashable, value: Any) -> None:
        """写入条目"""
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.max_size:
                self._data.popitem(last=False)

    def __contains__(self, key: Hashable) -> bool:
        with self._lock:
            return key in self._data

    def __len__(self) -> int:
        return len(self._data)

    def clear(self) -> None:
        """清空记忆表"""
        with self._lock:
            self._data.clear()
        logger.debug(f"记忆表 {self.name} 已清空")

    def stats(self) -> Dict[str, int]:
        """命中统计"""
        return {'size': len(self._data), 'hits': self.hits, 'misses': self.misses}

    def is_enabled(self) -> bool:
        """检查记忆化是否启用"""
        return GnfConfig.MEMO_ENABLED


def memoized(cache: MemoCache, key_fn: Optional[Callable[..., Hashable]] = None):
    """
    记忆化装饰器

    Args:
        cache: 使用的记忆表
        key_fn: 由调用参数计算键，默认使用位置参数元组

    Usage:
        @memoized(cache, key_fn=lambda guard: print_bool(guard))
        def satisfiable(guard):
            ...
    """

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            if not cache.is_enabled():
                return func(*args, **kwargs)

            key = key_fn(*args, **kwargs) if key_fn else args
            value = cache.get(key, _MISSING)
            if value is not _MISSING:
                return value

            value = func(*args, **kwargs)
            cache.set(key, value)
            return value

        return wrapper

    return decorator
