# -*- coding: utf-8 -*-
"""
pytest 公共夹具

- solver: 每个测试一个求解器会话，测试结束后关闭
- requires_solver 标记：找不到求解器可执行文件时跳过
- slow 标记：默认跳过，--runslow 时运行
- 随机性质测试统一使用固定种子的 numpy Generator
"""

import shutil
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

# 添加项目根目录到路径
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.cli.bench import load_manifest
from src.config import BENCHMARK_DIR, SolverConfig
from src.expectations.linexp import ETerm, Guard, INFINITY, Sum
from src.pgcl.ast import Add, And, Cmp, Monus, Mul, Not, Num, State, Var
from src.pgcl.parser import load_program
from src.smt.entailment import SmtContext
from src.smt.solver_client import SolverSession

SEED = 20261018

SOLVER_AVAILABLE = shutil.which(SolverConfig.PATH) is not None


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="运行标记为 slow 的测试")


def pytest_collection_modifyitems(config, items):
    skip_solver = pytest.mark.skip(reason=f"找不到求解器 {SolverConfig.PATH}")
    skip_slow = pytest.mark.skip(reason="需要 --runslow")
    for item in items:
        if "requires_solver" in item.keywords and not SOLVER_AVAILABLE:
            item.add_marker(skip_solver)
        if "slow" in item.keywords and not config.getoption("--runslow"):
            item.add_marker(skip_slow)


# =============================================================================
# 求解器
# =============================================================================

@pytest.fixture
def solver():
    session = SolverSession(name="test")
    session.start()
    yield session
    session.stop()


@pytest.fixture
def smt(solver):
    """已声明 x, y 的求解器上下文"""
    return SmtContext(solver, ("x", "y"))


# =============================================================================
# 基准程序
# =============================================================================

@pytest.fixture
def programs_dir() -> Path:
    return BENCHMARK_DIR / "programs"


@pytest.fixture
def geo(programs_dir):
    return load_program(programs_dir / "geo.pgcl")


@pytest.fixture
def chain(programs_dir):
    return load_program(programs_dir / "chain.pgcl")


@pytest.fixture
def brp(programs_dir):
    return load_program(programs_dir / "brp.pgcl")


@pytest.fixture
def ber(programs_dir):
    return load_program(programs_dir / "ert" / "ber.pgcl")


# 几秒内可完成的清单行；其余行在需要求解器的测试中标记为 slow
FAST_ROWS = {
    "geo_v1", "geo_v2", "chain", "rabin_v1", "rabin_exact",
    "ber", "condand", "fcall", "hyper", "linear01", "rdwalk", "sprdwalk",
}


def benchmark_params(include_timeouts: bool = False, solver: bool = True):
    """wp.toml 与 ert.toml 的行，作为 (row, budget) 参数"""
    params = []
    for manifest in ("wp.toml", "ert.toml"):
        suite, df = load_manifest(BENCHMARK_DIR / manifest)
        budget = float(suite["budget"])
        if not include_timeouts:
            df = df[~df["expected_timeout"]]
        for _, row in df.iterrows():
            marks = []
            if solver:
                marks.append(pytest.mark.requires_solver)
                if row["name"] not in FAST_ROWS:
                    marks.append(pytest.mark.slow)
            params.append(pytest.param(row, budget, id=str(row["name"]), marks=marks))
    return params


# =============================================================================
# 随机实例
# =============================================================================

@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


class RandomExpressions:
    """随机算术式、守卫、线性期望与状态"""

    def __init__(self, rng: np.random.Generator, variables=("x", "y")):
        self.rng = rng
        self.variables = tuple(variables)

    def _pick(self, options):
        return options[int(self.rng.integers(0, len(options)))]

    def arith(self, depth: int = 2, natural: bool = False):
        roll = int(self.rng.integers(0, 6 if depth > 0 else 2))
        if roll == 0:
            return Var(self._pick(self.variables))
        if roll == 1:
            return Num(Fraction(int(self.rng.integers(0, 4))))
        if roll == 2:
            if natural:
                coef = Fraction(int(self.rng.integers(1, 4)))
            else:
                coef = Fraction(int(self.rng.integers(1, 5)), int(self.rng.integers(1, 4)))
            return Mul(coef, self.arith(depth - 1, natural))
        if roll in (3, 4):
            return Add(self.arith(depth - 1, natural), self.arith(depth - 1, natural))
        return Monus(self.arith(depth - 1, natural), self.arith(depth - 1, natural))

    def guard(self, depth: int = 1):
        roll = int(self.rng.integers(0, 5 if depth > 0 else 1))
        if roll in (0, 1, 2):
            op = self._pick(("<", "<=", "="))
            return Cmp(op, self.arith(1, natural=True), self.arith(1, natural=True))
        if roll == 3:
            return Not(self.guard(depth - 1))
        return And(self.guard(depth - 1), self.guard(depth - 1))

    def linexp(self, summands: int = 3, allow_infinity: bool = True):
        parts = []
        for _ in range(int(self.rng.integers(1, summands + 1))):
            if allow_infinity and self.rng.random() < 0.15:
                body = INFINITY
            else:
                body = ETerm(self.arith())
            parts.append(Guard(self.guard(), body) if self.rng.random() < 0.7 else body)
        result = parts[0]
        for part in parts[1:]:
            result = Sum(result, part)
        return result

    def state(self, high: int = 6, variables=None) -> State:
        names = self.variables if variables is None else variables
        return State({name: int(self.rng.integers(0, high)) for name in names})


@pytest.fixture
def random_exprs(rng):
    return RandomExpressions(rng)
