# -*- coding: utf-8 -*-
"""
截断 oracle 测试
"""

from fractions import Fraction

import pytest

from src.cli.bench import row_job
from src.cli.runner import load_problem
from src.expectations.linexp import evaluate
from src.expectations.parser import parse_expectation
from src.expectations.transformers import Mode
from src.pgcl.ast import State
from src.tsys.oracle import TruncatedOracle, truncated_kind_oracle, truncated_value_oracle
from src.utils.errors import OracleCapExceeded

from conftest import RandomExpressions, benchmark_params


def test_chain_values(chain):
    post = parse_expectation("[f = 1]")
    values = [truncated_value_oracle(chain, post, n, State()) for n in range(4)]
    assert values == [0, 0, Fraction(1, 5), Fraction(9, 25)]


@pytest.mark.parametrize("n", range(1, 8))
def test_geo_values(geo, n):
    value = truncated_value_oracle(geo, parse_expectation("c"), n, State(f=1))
    assert value == 1 - Fraction(n, 2 ** (n - 1))


def test_loop_exit_returns_post(geo):
    assert truncated_value_oracle(geo, parse_expectation("c"), 1, State(c=7)) == 7


def test_ert_values(ber):
    values = [truncated_value_oracle(ber, parse_expectation("x"), n, State(n=1), Mode.ERT) for n in range(1, 4)]
    assert values == [1, Fraction(3, 2), Fraction(7, 4)]


def test_kind_queries(geo):
    post, bound = parse_expectation("c"), parse_expectation("c + 1")
    oracle = TruncatedOracle(geo, post, bound=bound)
    assert oracle.kind_iterate(0, State(c=2, f=1)) == 3
    assert oracle.kind_phi(0, State(f=1)) == Fraction(3, 2)
    assert oracle.kind_iterate(1, State(f=1)) == 1
    assert oracle.kind_phi(1, State(f=1)) == 1
    assert truncated_kind_oracle(geo, post, bound, 1, State(f=1), phi=True) == 1


def test_infinite_bound_propagates(geo):
    bound = parse_expectation("[f = 1] * inf + [not (f = 1)] * c")
    oracle = TruncatedOracle(geo, parse_expectation("c"), bound=bound)
    assert oracle.kind_iterate(0, State(f=1)) == float("inf")
    assert oracle.kind_phi(0, State(f=1)) == float("inf")
    assert oracle.kind_iterate(3, State(c=2)) == 2


def test_kind_query_needs_bound(geo):
    with pytest.raises(ValueError):
        TruncatedOracle(geo, parse_expectation("c")).kind_iterate(1, State(f=1))


def test_node_cap(geo):
    with pytest.raises(OracleCapExceeded) as info:
        truncated_value_oracle(geo, parse_expectation("c"), 50, State(f=1), node_cap=5)
    assert info.value.cap == 5


# =============================================================================
# 清单中的真实问题
# =============================================================================

@pytest.mark.parametrize("row, budget", benchmark_params(include_timeouts=True, solver=False))
def test_kind_iterates_descend_below_bound(rng, row, budget):
    """Ψ^k(f) ⪯ f、Ψ^{k+1}(f) ⪯ Ψ^k(f) 且 Ψ^{k+1}(f) ⪯ Φ(Ψ^k(f))"""
    program, problem = load_problem(row_job(row, budget))
    oracle = TruncatedOracle(program, problem.post, problem.mode, bound=problem.bound)
    states = RandomExpressions(rng, program.variables)
    for _ in range(20):
        state = states.state(high=5)
        bound = evaluate(problem.bound, state)
        values = [oracle.kind_iterate(k, state) for k in range(6)]
        assert all(value <= bound for value in values)
        assert all(later <= earlier for earlier, later in zip(values, values[1:]))
        for k in range(5):
            assert values[k + 1] <= oracle.kind_phi(k, state)


@pytest.mark.parametrize("row, budget", benchmark_params(include_timeouts=True, solver=False))
def test_kleene_iterates_ascend(rng, row, budget):
    program, problem = load_problem(row_job(row, budget))
    oracle = TruncatedOracle(program, problem.post, problem.mode)
    states = RandomExpressions(rng, program.variables)
    for _ in range(20):
        state = states.state(high=5)
        values = [oracle.kleene(n, state) for n in range(6)]
        assert all(earlier <= later for earlier, later in zip(values, values[1:]))
        if row.get("expected") == "ind":
            assert values[-1] <= evaluate(problem.bound, state)
