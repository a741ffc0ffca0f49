# -*- coding: utf-8 -*-
"""
异常定义
所有可预期的失败都以 SentinelError 子类抛出，CLI 据此映射退出码
"""

from typing import Optional


class SentinelError(Exception):
    """项目异常基类"""


# ===== 程序 / 表达式 =====

class ProgramSyntaxError(SentinelError, ValueError):
    """源码语法错误，带行列定位"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)


class ProgramSemanticError(SentinelError, ValueError):
    """语义错误：未声明变量、权重和不为 1、嵌套循环等"""


# ===== 求解器 =====

class SolverError(SentinelError, RuntimeError):
    """外部求解器失败（从不被当作“成立”）"""


class SolverNotFoundError(SolverError):
    """找不到求解器可执行文件"""


class SolverProtocolError(SolverError):
    """求解器返回 (error ...) 或无法解析的应答"""


class SolverUnknownError(SolverError):
    """check-sat 返回 unknown"""


class SolverCrashedError(SolverError):
    """求解器进程意外退出或被中断"""


# ===== 引擎 / oracle / 其他 =====

class EngineInvariantError(SentinelError, AssertionError):
    """引擎运行时复核的格论性质被违反"""


class UnsupportedQueryError(EngineInvariantError):
    """编码领域收到它不表示的格操作（如对 BMC 帧做下确界）"""

    def __init__(self, operation: str, detail: str):
        self.operation = operation
        self.detail = detail
        super().__init__(f"{operation}: {detail}")


class OracleCapExceeded(SentinelError):
    """截断 oracle 展开节点数超过上限"""

    def __init__(self, cap: int, depth: Optional[int] = None):
        self.cap = cap
        self.depth = depth
        super().__init__(f"oracle 展开节点超过上限 {cap}" + (f"（深度 {depth}）" if depth is not None else ""))


class TransitionSystemError(SentinelError, ValueError):
    """迁移系统不满足前置条件（初始集为空或迁移关系非全）"""


class JobSpecError(SentinelError, ValueError):
    """任务描述或基准清单不合法"""


__all__ = [
    'SentinelError',
    'ProgramSyntaxError',
    'ProgramSemanticError',
    'SolverError',
    'SolverNotFoundError',
    'SolverProtocolError',
    'SolverUnknownError',
    'SolverCrashedError',
    'EngineInvariantError',
    'UnsupportedQueryError',
    'OracleCapExceeded',
    'TransitionSystemError',
    'JobSpecError',
]
