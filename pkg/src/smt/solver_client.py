# -*- coding: utf-8 -*-
"""
SMT-LIB2 求解器进程客户端

通过子进程标准输入输出与外部求解器（默认 `z3 -in`）交互：
- 启用 :print-success，每条命令都读回 success 或 (error ...)，协议错误立即暴露
- 进程启动握手失败时使用 tenacity 重试（找不到可执行文件不重试）
- 记录各层 push 上的断言数与峰值（即报告中的 #formulae）以及 check-sat 累计耗时
- 可把完整脚本转储为 .smt2 文件，便于离线重放
- interrupt() 可从其他线程调用：直接结束进程，阻塞中的 check-sat 随之返回
"""

import logging
import subprocess
import threading
import time
from contextlib import contextmanager
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, TextIO, Union

# 尝试导入 tenacity，如果没有安装则使用简单重试
try:
    from tenacity import (
        retry,
        stop_after_attempt,
        wait_fixed,
        retry_if_exception_type,
        before_sleep_log
    )
    TENACITY_AVAILABLE = True
except ImportError:
    TENACITY_AVAILABLE = False

from ..config import SolverConfig
from ..utils.errors import (
    SolverCrashedError, SolverError, SolverNotFoundError, SolverProtocolError,
)
from ..utils.logger import LoggerMixin, get_logger

logger = get_logger(__name__)


class SatResult(str, Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"


# =============================================================================
# S 表达式
# =============================================================================

SExpr = Union[str, List["SExpr"]]


def tokenize_sexp(text: str) -> List[str]:
    tokens: List[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append(ch)
            i += 1
        elif ch == '"':
            j = i + 1
            while j < len(text):
                if text[j] == '"':
                    if j + 1 < len(text) and text[j + 1] == '"':
                        j += 2
                        continue
                    break
                j += 1
            tokens.append(text[i:j + 1])
            i = j + 1
        elif ch == "|":
            j = text.index("|", i + 1)
            tokens.append(text[i:j + 1])
            i = j + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in '()"':
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens


def parse_sexp(text: str) -> SExpr:
    """
    解析单个 S 表达式

    Raises:
        SolverProtocolError: 括号不配对或有多余内容
    """
    tokens = tokenize_sexp(text)
    if not tokens:
        raise SolverProtocolError("空应答")
    pos = 0

    def read() -> SExpr:
        nonlocal pos
        if pos >= len(tokens):
            raise SolverProtocolError(f"应答不完整: {text!r}")
        token = tokens[pos]
        pos += 1
        if token == "(":
            items = []
            while pos < len(tokens) and tokens[pos] != ")":
                items.append(read())
            if pos >= len(tokens):
                raise SolverProtocolError(f"应答缺少右括号: {text!r}")
            pos += 1
            return items
        if token == ")":
            raise SolverProtocolError(f"多余的右括号: {text!r}")
        return token

    result = read()
    if pos != len(tokens):
        raise SolverProtocolError(f"应答有多余内容: {text!r}")
    return result


def sexp_to_fraction(value: SExpr) -> Fraction:
    """
    把模型中的数值项转换为精确有理数

    支持 3、3.0、(- 3)、(/ 1 2)、(/ 13.0 8.0)、(- (/ 1 2))。
    """
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            raise SolverProtocolError(f"无法解析的数值 {value!r}") from None
    if len(value) == 2 and value[0] == "-":
        return -sexp_to_fraction(value[1])
    if len(value) == 3 and value[0] == "/":
        return sexp_to_fraction(value[1]) / sexp_to_fraction(value[2])
    raise SolverProtocolError(f"无法解析的数值 {value!r}")


def _balanced(text: str) -> bool:
    depth = 0
    in_string = False
    for ch in text:
        if ch == '"':
            in_string = not in_string
        elif not in_string:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
    return depth <= 0 and not in_string


# =============================================================================
# 启动重试
# =============================================================================

if TENACITY_AVAILABLE:
    # 只对握手失败重试；可执行文件不存在属于配置错误
    @retry(
        stop=stop_after_attempt(SolverConfig.START_ATTEMPTS),
        wait=wait_fixed(SolverConfig.RETRY_DELAY),
        retry=retry_if_exception_type((SolverProtocolError, SolverCrashedError)),
        before_sleep=before_sleep_log(logger, logging.WARNING),
        reraise=True
    )
    def _start_with_retry(func):
        """
        带重试的进程启动（使用 tenacity）

        Args:
            func: 启动并完成握手的函数

        Raises:
            SolverError: 重试耗尽后抛出最后一次异常
        """
        return func()
else:
    # 降级方案：使用简单的重试逻辑
    def _start_with_retry(func, max_retries: int = SolverConfig.START_ATTEMPTS,
                          delay: float = SolverConfig.RETRY_DELAY):
        last_error = None
        for attempt in range(max_retries):
            try:
                return func()
            except (SolverProtocolError, SolverCrashedError) as e:
                last_error = e
                if attempt < max_retries - 1:
                    logger.warning(f"求解器启动失败，{delay}秒后重试 ({attempt + 1}/{max_retries}): {e}")
                    time.sleep(delay)
        raise last_error


# =============================================================================
# 会话
# =============================================================================

class SolverSession(LoggerMixin):
    """
    一个外部求解器进程及其断言栈

    使用示例：
        with SolverSession() as session:
            session.declare_const("x", "Int")
            session.assert_formula("(= x 3)")
            assert session.check_sat() == SatResult.SAT
            session.get_values(["x"])   # [Fraction(3)]
    """

    def __init__(self, path: Optional[str] = None, args: Optional[Sequence[str]] = None,
                 logic: Optional[str] = SolverConfig.LOGIC, emit_path: Optional[Union[str, Path]] = None,
                 name: str = "session"):
        """
        Args:
            path: 求解器可执行文件，默认取配置 SENTINEL_SOLVER
            args: 额外参数，默认取配置 SENTINEL_SOLVER_ARGS
            logic: set-logic 使用的逻辑，None 表示不设置
            emit_path: 脚本转储文件路径
            name: 会话名，用于日志
        """
        self.path = path or SolverConfig.PATH
        self.args = list(SolverConfig.ARGS if args is None else args)
        self.logic = logic
        self.emit_path = Path(emit_path) if emit_path else None
        self.name = name

        self.process: Optional[subprocess.Popen] = None
        self._transcript: Optional[TextIO] = None
        self._lock = threading.Lock()
        self._interrupted = False

        # 每层 push 上的断言数与声明
        self._assertions: List[int] = [0]
        self._declared: List[set] = [set()]
        self.max_assertions = 0
        self.sat_time = 0.0
        self.check_count = 0

    # ===== 生命周期 =====

    def start(self) -> "SolverSession":
        """
        启动求解器进程并完成握手

        Raises:
            SolverNotFoundError: 可执行文件不存在或不可执行
            SolverError: 握手多次失败
        """
        if self.process is not None:
            return self
        if self.emit_path:
            self.emit_path.parent.mkdir(parents=True, exist_ok=True)
            self._transcript = open(self.emit_path, "w", encoding="utf-8")
        _start_with_retry(self._launch)
        self.logger.debug(f"[{self.name}] 求解器已启动: {self.path} {' '.join(self.args)}")
        return self

    def _launch(self) -> None:
        try:
            self.process = subprocess.Popen(
                [self.path, *self.args],
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                bufsize=1,
            )
        except (FileNotFoundError, PermissionError) as e:
            raise SolverNotFoundError(f"无法启动求解器 {self.path!r}: {e}") from e

        try:
            self.command("(set-option :print-success true)")
            self.command("(set-option :produce-models true)")
        except SolverError:
            self._kill()
            raise
        if self.logic:
            try:
                self.command(f"(set-logic {self.logic})")
            except SolverProtocolError as e:
                self.logger.warning(f"[{self.name}] 求解器不接受逻辑 {self.logic}，使用默认逻辑: {e}")

    def stop(self) -> None:
        """发送 (exit) 并回收进程"""
        process = self.process
        if process is not None:
            try:
                if process.poll() is None:
                    process.stdin.write("(exit)\n")
                    process.stdin.flush()
                    process.wait(timeout=2)
            except (OSError, ValueError, subprocess.TimeoutExpired):
                pass
            self._kill()
        if self._transcript is not None:
            self._transcript.close()
            self._transcript = None

    def interrupt(self) -> None:
        """从其他线程中断：结束进程，后续调用抛出 SolverCrashedError"""
        self._interrupted = True
        self._kill()

    def _kill(self) -> None:
        with self._lock:
            process = self.process
            if process is not None and process.poll() is None:
                process.kill()
            if process is not None:
                try:
                    process.wait(timeout=2)
                except subprocess.TimeoutExpired:
                    pass
            self.process = None

    @property
    def interrupted(self) -> bool:
        return self._interrupted

    def __enter__(self) -> "SolverSession":
        return self.start()

    def __exit__(self, exc_type, exc, tb) -> None:
        self.stop()

    # ===== 传输 =====

    def _write(self, text: str) -> None:
        if self._transcript is not None:
            self._transcript.write(text + "\n")
        process = self.process
        if process is None:
            raise SolverCrashedError(f"[{self.name}] 求解器进程已结束" + ("（已中断）" if self._interrupted else ""))
        try:
            process.stdin.write(text + "\n")
            process.stdin.flush()
        except (BrokenPipeError, OSError, ValueError) as e:
            raise SolverCrashedError(f"[{self.name}] 写入求解器失败: {e}") from e

    def _read_response(self) -> str:
        process = self.process
        if process is None:
            raise SolverCrashedError(f"[{self.name}] 求解器进程已结束")
        lines: List[str] = []
        while True:
            try:
                line = process.stdout.readline()
            except (OSError, ValueError) as e:
                raise SolverCrashedError(f"[{self.name}] 读取求解器应答失败: {e}") from e
            if not line:
                raise SolverCrashedError(
                    f"[{self.name}] 求解器意外退出" + ("（已中断）" if self._interrupted else "")
                )
            if not line.strip() and not lines:
                continue
            lines.append(line)
            text = "".join(lines).strip()
            if _balanced(text):
                return text

    def command(self, text: str) -> None:
        """发送一条期望应答 success 的命令"""
        self._write(text)
        response = self._read_response()
        if response != "success":
            raise SolverProtocolError(f"[{self.name}] 命令 {text[:200]} 失败: {response}")

    def comment(self, text: str) -> None:
        """只写入转储脚本的注释"""
        if self._transcript is not None:
            for line in text.splitlines():
                self._transcript.write(f"; {line}\n")

    # ===== 声明与断言 =====

    def is_declared(self, name: str) -> bool:
        return any(name in level for level in self._declared)

    def declare_const(self, name: str, sort: str) -> None:
        self.command(f"(declare-const {name} {sort})")
        self._declared[-1].add(name)

    def declare_fun(self, name: str, arg_sorts: Sequence[str], sort: str) -> None:
        self.command(f"(declare-fun {name} ({' '.join(arg_sorts)}) {sort})")
        self._declared[-1].add(name)

    def assert_formula(self, formula: str) -> None:
        self.command(f"(assert {formula})")
        self._assertions[-1] += 1
        self.max_assertions = max(self.max_assertions, self.assertion_count)

    @property
    def assertion_count(self) -> int:
        """当前栈上的断言总数"""
        return sum(self._assertions)

    @property
    def depth(self) -> int:
        return len(self._assertions) - 1

    def push(self) -> None:
        self.command("(push 1)")
        self._assertions.append(0)
        self._declared.append(set())

    def pop(self) -> None:
        if self.depth == 0:
            raise SolverProtocolError(f"[{self.name}] pop 多于 push")
        self.command("(pop 1)")
        self._assertions.pop()
        self._declared.pop()

    @contextmanager
    def scope(self) -> Iterator["SolverSession"]:
        """push/pop 配对的作用域；进程已中断时不再发送 pop"""
        self.push()
        try:
            yield self
        finally:
            if self.process is not None:
                self.pop()

    # ===== 查询 =====

    def check_sat(self) -> SatResult:
        """
        (check-sat)

        Returns:
            SatResult: sat / unsat / unknown
        """
        start = time.perf_counter()
        self._write("(check-sat)")
        response = self._read_response()
        self.sat_time += time.perf_counter() - start
        self.check_count += 1
        try:
            return SatResult(response)
        except ValueError:
            raise SolverProtocolError(f"[{self.name}] check-sat 应答无法识别: {response}") from None

    def get_values(self, terms: Sequence[str]) -> List[Fraction]:
        """
        (get-value (t1 t2 ...))，按请求顺序返回精确数值

        Raises:
            SolverProtocolError: 应答不是 ((t v) ...) 形状
        """
        if not terms:
            return []
        self._write(f"(get-value ({' '.join(terms)}))")
        response = self._read_response()
        if response.startswith("(error"):
            raise SolverProtocolError(f"[{self.name}] get-value 失败: {response}")
        parsed = parse_sexp(response)
        if not isinstance(parsed, list) or len(parsed) != len(terms):
            raise SolverProtocolError(f"[{self.name}] get-value 应答形状不符: {response}")
        values = []
        for pair in parsed:
            if not isinstance(pair, list) or len(pair) != 2:
                raise SolverProtocolError(f"[{self.name}] get-value 应答形状不符: {response}")
            values.append(sexp_to_fraction(pair[1]))
        return values

    def stats(self) -> dict:
        return {
            'formula_count': self.max_assertions,
            'sat_time': self.sat_time,
            'checks': self.check_count,
        }


def ensure_solver(path: Optional[str] = None, args: Optional[Sequence[str]] = None) -> None:
    """
    启动并立即关闭一个会话，确认求解器可用

    Raises:
        SolverNotFoundError: 可执行文件不存在
        SolverError: 握手失败
    """
    with SolverSession(path, args, name="startup-check"):
        pass


__all__ = [
    'SatResult', 'SExpr', 'parse_sexp', 'sexp_to_fraction', 'SolverSession', 'ensure_solver',
    'TENACITY_AVAILABLE',
]
