# -*- coding: utf-8 -*-
"""
日志工具模块
为引擎、编码器、求解器会话与基准测试提供统一的日志记录接口

- 所有记录器共用一个 RotatingFileHandler（DEBUG，含每帧、每次 check-sat）和一个控制台 handler（INFO）
- 两个引擎在不同线程中运行，格式中带线程名（sentinel_0 / sentinel_1）
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Dict, Optional

from ..config import LogConfig


_loggers: Dict[str, logging.Logger] = {}
_handlers: Dict[str, logging.Handler] = {}


def _shared_handler(kind: str) -> logging.Handler:
    """按需创建共享的 file / console handler"""
    if kind in _handlers:
        return _handlers[kind]

    if kind == "file":
        log_file = Path(LogConfig.FILE)
        log_file.parent.mkdir(exist_ok=True)
        handler: logging.Handler = RotatingFileHandler(
            log_file,
            maxBytes=LogConfig.MAX_BYTES * 1024 * 1024,
            backupCount=LogConfig.BACKUP_COUNT,
            encoding='utf-8',
            delay=True,
        )
        handler.setLevel(logging.DEBUG)
    else:
        handler = logging.StreamHandler(sys.stdout)
        handler.setLevel(logging.INFO)

    handler.setFormatter(logging.Formatter(LogConfig.FORMAT))
    _handlers[kind] = handler
    return handler


def get_logger(name: str, level: Optional[str] = None) -> logging.Logger:
    """
    获取日志记录器

    Args:
        name: 日志记录器名称，通常使用 __name__
        level: 日志级别，如果不指定则使用配置文件中的设置

    Returns:
        logging.Logger: 配置好的日志记录器

    例如:
        2026-10-18 15:30:45 - sentinel_0 - src.lattice.engine - INFO - [k-归纳] 第 2 次检查通过
    """
    if name in _loggers:
        return _loggers[name]

    logger = logging.getLogger(name)
    logger.setLevel(level or LogConfig.LEVEL)

    if not logger.handlers:
        logger.addHandler(_shared_handler("file"))
        if LogConfig.CONSOLE_OUTPUT:
            logger.addHandler(_shared_handler("console"))
        # 不向根记录器传播，避免 pytest 捕获时重复输出
        logger.propagate = False

    _loggers[name] = logger
    return logger


def set_level(level: str) -> None:
    """
    调整控制台输出级别（verify.py / bench.py 的 --verbose / --quiet）

    文件 handler 始终保持 DEBUG。

    Args:
        level: 'DEBUG' / 'INFO' / 'WARNING' / 'ERROR'
    """
    log_level = getattr(logging, level.upper(), logging.INFO)
    _shared_handler("console").setLevel(log_level)
    for logger in _loggers.values():
        if log_level < logger.level:
            logger.setLevel(log_level)


def log_banner(logger: logging.Logger, title: str, width: int = 60) -> None:
    """打印阶段横幅"""
    logger.info("=" * width)
    logger.info(title)
    logger.info("=" * width)


class LoggerMixin:
    """
    为类提供 self.logger

        class SolverSession(LoggerMixin):
            def start(self):
                self.logger.info("启动求解器进程...")
    """

    @property
    def logger(self) -> logging.Logger:
        if not hasattr(self, '_logger'):
            self._logger = get_logger(f"{self.__class__.__module__}.{self.__class__.__name__}")
        return self._logger
