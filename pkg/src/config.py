# -*- coding: utf-8 -*-
"""
Loop-Sentinel 配置文件
集中管理求解器、验证引擎、编码、oracle 与基准测试的常量和参数

配置升级 v2.0：
- 所有可调参数从环境变量读取
- 使用 python-dotenv 加载 .env 文件
- 提供默认值确保系统可运行
"""

import os
import shlex
from pathlib import Path
from typing import List, Optional

# 尝试加载 python-dotenv
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # 如果没有安装 dotenv，直接使用系统环境变量

# 项目根目录
PROJECT_ROOT = Path(__file__).parent.parent

# 目录
LOG_DIR = PROJECT_ROOT / "logs"
OUTPUT_DIR = PROJECT_ROOT / "results"
BENCHMARK_DIR = PROJECT_ROOT / "benchmarks"

# 确保目录存在
for dir_path in [LOG_DIR, OUTPUT_DIR]:
    dir_path.mkdir(exist_ok=True)


# =============================================================================
# 环境变量配置类
# =============================================================================

class EnvConfig:
    """
    环境变量配置

    优先级：环境变量 > .env 文件 > 默认值
    """

    # ========== 求解器配置 ==========
    @staticmethod
    def get_solver_path() -> str:
        """SMT 求解器可执行文件路径"""
        return os.getenv("SENTINEL_SOLVER", "z3")

    @staticmethod
    def get_solver_args() -> List[str]:
        """求解器额外参数（以 shell 语法拆分）"""
        return shlex.split(os.getenv("SENTINEL_SOLVER_ARGS", "-in"))

    # ========== 引擎配置 ==========
    @staticmethod
    def get_default_timeout() -> float:
        """单个验证任务的默认 deadline（秒）"""
        return float(os.getenv("SENTINEL_TIMEOUT", "900"))

    @staticmethod
    def get_oracle_node_cap() -> int:
        """截断 oracle 的展开节点上限"""
        return int(os.getenv("SENTINEL_ORACLE_NODE_CAP", str(10 ** 6)))

    @staticmethod
    def get_emit_smt2_dir() -> Optional[str]:
        """SMT-LIB2 脚本转储目录（为空则不转储）"""
        return os.getenv("SENTINEL_EMIT_SMT2") or None

    # ========== 其他配置 ==========
    @staticmethod
    def get_log_level() -> str:
        """日志级别"""
        return os.getenv("LOG_LEVEL", "INFO")

    @staticmethod
    def get_memo_enabled() -> bool:
        """是否启用守卫可满足性记忆化"""
        return os.getenv("SENTINEL_MEMO", "true").lower() == "true"


# =============================================================================
# 常量配置类
# =============================================================================

# 日志配置
class LogConfig:
    """日志配置"""

    # 日志级别 - 从环境变量读取
    LEVEL = EnvConfig.get_log_level()

    # 日志文件路径
    FILE = LOG_DIR / "loop_sentinel.log"

    # 日志格式
    FORMAT = "%(asctime)s - %(threadName)s - %(name)s - %(levelname)s - %(message)s"

    # 是否输出到控制台
    CONSOLE_OUTPUT = True

    # 日志文件最大大小（MB）
    MAX_BYTES = 10

    # 保留的日志文件数量
    BACKUP_COUNT = 5


# 求解器配置
class SolverConfig:
    """外部 SMT 求解器配置"""

    PATH = EnvConfig.get_solver_path()
    ARGS = EnvConfig.get_solver_args()

    # 量词自由的线性整数/实数混合算术 + 未解释函数
    LOGIC = "QF_UFLIRA"

    # 进程启动握手的重试
    START_ATTEMPTS = 3
    RETRY_DELAY = 1  # 秒

    # 转储目录
    EMIT_SMT2_DIR = EnvConfig.get_emit_smt2_dir()


# 验证引擎配置
class EngineConfig:
    """格上 k-归纳 / BMC 引擎配置"""

    # 默认 deadline（秒），对应 15 分钟
    DEFAULT_DEADLINE = EnvConfig.get_default_timeout()

    # 主线程等待工作线程的轮询间隔（秒）
    JOIN_POLL = 0.2

    # 归纳成功时是否复核 Φ(Ψ^{k-1} f) ⪯ Ψ^{k-1} f
    CHECK_ITERATE_ENTAILMENT = True


# 增量编码配置
class EncodingConfig:
    """未解释函数增量编码配置"""

    # 对每个出现的函数参数代换断言定义副本（关闭即复现不可靠编码）
    CLOSE_INSTANCES = True

    # 剪除守卫不可满足的实例
    PRUNE_INSTANCES = True

    # 剪枝时调用求解器（否则只做语法常量折叠）
    PRUNE_WITH_SOLVER = True


# 保护范式配置
class GnfConfig:
    """GNF 构造配置"""

    # 剪除守卫不可满足的单元
    PRUNE = True

    # 可满足性记忆表容量
    MEMO_SIZE = 4096

    # 是否启用记忆化 - 从环境变量读取
    MEMO_ENABLED = EnvConfig.get_memo_enabled()


# 截断 oracle 配置
class OracleConfig:
    """穷举 oracle 配置"""

    NODE_CAP = EnvConfig.get_oracle_node_cap()


# 基准测试配置
class BenchConfig:
    """基准测试配置"""

    # 单行预算（秒）
    ROW_BUDGET = 120

    # 默认并行行数
    DEFAULT_JOBS = 1

    # 结果输出目录
    RESULT_DIR = OUTPUT_DIR

    # 汇总表宽度
    TABLE_WIDTH = 114


# 导出所有配置类
__all__ = [
    'PROJECT_ROOT',
    'LOG_DIR',
    'OUTPUT_DIR',
    'BENCHMARK_DIR',
    'EnvConfig',
    'LogConfig',
    'SolverConfig',
    'EngineConfig',
    'EncodingConfig',
    'GnfConfig',
    'OracleConfig',
    'BenchConfig',
]
