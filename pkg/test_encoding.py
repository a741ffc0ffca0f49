# -*- coding: utf-8 -*-
"""
增量未解释函数编码与基于求解器的验证领域测试（需要求解器）

编码中的取值与截断 oracle 逐点比较；这里使用的候选上界都不含 ∞，
因为 infty 不受约束时 F(σ) 的取值不唯一。
"""

import time
from fractions import Fraction

import pytest

from src.cli.bench import row_job
from src.cli.runner import load_problem
from src.expectations.linexp import evaluate, is_infinite, summands
from src.expectations.parser import parse_expectation
from src.expectations.transformers import Mode, characteristic_functional, kind_step
from src.lattice.domain import Exhausted, Inductive, Refuted
from src.lattice.engine import bmc, k_induction, verify_parallel
from src.pgcl.ast import State
from src.smt.domains import EncodedDomain, ExpectationDomain, VerificationProblem
from src.smt.encoding import FrameRef, Purpose, init_encoding
from src.smt.entailment import SmtContext, entails
from src.smt.solver_client import SatResult, SolverSession
from src.smt.terms import real_const, state_equalities
from src.tsys.oracle import TruncatedOracle
from src.utils.errors import EngineInvariantError, UnsupportedQueryError

from conftest import RandomExpressions, benchmark_params

pytestmark = pytest.mark.requires_solver


def _encoding(solver, program, post, bound, mode=Mode.WP, purpose=Purpose.INDUCTION, **options):
    context = SmtContext(solver, program.variables)
    return init_encoding(context, program, parse_expectation(post), parse_expectation(bound),
                         mode, purpose, **options)


def _problem(program, post, bound, mode=Mode.WP, **kwargs):
    return VerificationProblem(program, parse_expectation(post), parse_expectation(bound), mode, **kwargs)


def _states(names, high):
    first, second = names
    return [State({first: a, second: b}) for a in range(high) for b in range(high)]


# =============================================================================
# 编码取值
# =============================================================================

def test_chain_refutation_values(solver, chain):
    encoding = _encoding(solver, chain, "[f = 1]", "1", purpose=Purpose.REFUTATION)
    encoding.push_frame()
    encoding.push_frame()
    start = State()
    expected = [Fraction(0), Fraction(1, 5), Fraction(9, 25)]
    for index, value in enumerate(expected):
        assert encoding.value_at(FrameRef(Purpose.REFUTATION, "P", index), start) == (value, True)


def test_phi_requires_pushed_frame(solver, chain):
    encoding = _encoding(solver, chain, "[f = 1]", "1", purpose=Purpose.REFUTATION)
    with pytest.raises(ValueError):
        encoding.ensure_phi(1)


def _exceeds_at_start(encoding, threshold):
    fixed = state_equalities(State(), encoding.variables)
    formula = f"(and {fixed} (> {encoding.application('P', 1)} {real_const(threshold)}))"
    return encoding.context.check(formula)


def test_instance_closure_is_required(solver, chain):
    """只在恒等实参上定义函数时，P_1(σ0) 不受约束"""
    with solver.scope():
        open_encoding = _encoding(solver, chain, "[f = 1]", "1",
                                  purpose=Purpose.REFUTATION, close_instances=False)
        open_encoding.push_frame()
        open_encoding.ensure_phi(1)
        assert _exceeds_at_start(open_encoding, Fraction(3, 10)) == SatResult.SAT
    with solver.scope():
        closed = _encoding(solver, chain, "[f = 1]", "1", purpose=Purpose.REFUTATION)
        closed.push_frame()
        closed.ensure_phi(1)
        assert _exceeds_at_start(closed, Fraction(3, 10)) == SatResult.UNSAT


def test_induction_frames_match_oracle(solver, geo):
    encoding = _encoding(solver, geo, "c", "c + 1")
    for _ in range(3):
        encoding.push_frame()
    oracle = TruncatedOracle(geo, parse_expectation("c"), bound=parse_expectation("c + 1"))
    for state in _states(("c", "f"), 3):
        for k in range(4):
            q_value, q_unique = encoding.value_at(FrameRef(Purpose.INDUCTION, "Q", k), state)
            p_value, p_unique = encoding.value_at(FrameRef(Purpose.INDUCTION, "P", k), state)
            assert q_unique and p_unique
            assert q_value == oracle.kind_iterate(k, state)
            assert p_value == oracle.kind_phi(k, state)


def test_refutation_frames_match_oracle(solver, brp):
    encoding = _encoding(solver, brp, "totalFail", "totalFail + 1", purpose=Purpose.REFUTATION)
    for _ in range(3):
        encoding.push_frame()
    oracle = TruncatedOracle(brp, parse_expectation("totalFail"))
    states = [
        State(toSend=2, maxFail=2),
        State(sent=1, toSend=2, fail=1, maxFail=2, totalFail=3),
        State(toSend=1, maxFail=1),
        State(sent=4, toSend=2, maxFail=3, totalFail=1),
    ]
    for state in states:
        for k in range(4):
            value, unique = encoding.value_at(FrameRef(Purpose.REFUTATION, "P", k), state)
            assert unique
            assert value == oracle.kleene(k + 1, state)


def test_ert_frames_match_oracle(solver, ber):
    encoding = _encoding(solver, ber, "0", "2 * (n - x)", mode=Mode.ERT)
    for _ in range(2):
        encoding.push_frame()
    oracle = TruncatedOracle(ber, parse_expectation("0"), Mode.ERT, bound=parse_expectation("2 * (n - x)"))
    for state in _states(("x", "n"), 4):
        for k in range(3):
            value, unique = encoding.value_at(FrameRef(Purpose.INDUCTION, "P", k), state)
            assert unique
            assert value == oracle.kind_phi(k, state)


# =============================================================================
# 编码上的检查
# =============================================================================

def test_geo_checks(solver, geo):
    encoding = _encoding(solver, geo, "c", "c + 1")
    witness = encoding.check_exceeds(FrameRef(Purpose.INDUCTION, "P", 0))
    assert witness is not None and witness["f"] == 1
    assert not encoding.check_inductive(0)

    encoding.push_frame()
    assert encoding.check_inductive(1)
    assert encoding.check_iterate(1) is None
    assert encoding.check_exceeds(FrameRef(Purpose.INDUCTION, "Q", 1)) is None

    witness = encoding.check_iterate(0)
    assert witness is not None and witness["f"] == 1
    assert encoding.stats()["frames"] == 1
    assert encoding.stats()["instances"] > 0


# =============================================================================
# 领域 + 引擎
# =============================================================================

def test_encoded_k_induction_proves_geo(geo):
    domain = EncodedDomain(_problem(geo, "c", "c + 1"))
    try:
        outcome = k_induction(domain, max_k=5)
    finally:
        domain.close()
    assert outcome.verdict == Inductive(2)
    assert outcome.stats.formula_count > 0


def test_encoded_bmc_refutes_geo(geo):
    problem = _problem(geo, "c", "c + 0.99")
    domain = EncodedDomain(problem)
    try:
        outcome = bmc(domain, max_n=15)
    finally:
        domain.close()
    verdict = outcome.verdict
    assert isinstance(verdict, Refuted)
    assert verdict.n == 12
    assert verdict.depth == 11
    witness = verdict.witness
    assert witness["f"] == 1
    oracle = TruncatedOracle(geo, problem.post)
    assert oracle.kleene(12, witness) > evaluate(problem.bound, witness)


def test_valid_but_not_k_inductive_bound(geo):
    """2c + 1 是上界但对任何 k 都不是 k-归纳的"""
    problem = _problem(geo, "c", "2 * c + 1")
    domain = EncodedDomain(problem)
    try:
        assert k_induction(domain, max_k=6).verdict == Exhausted(6)
    finally:
        domain.close()
    domain = EncodedDomain(problem)
    try:
        assert bmc(domain, max_n=6).verdict == Exhausted(6)
    finally:
        domain.close()


@pytest.mark.parametrize("domain_cls", [EncodedDomain, ExpectationDomain])
def test_ert_bound_is_park_inductive(ber, domain_cls):
    """x < n 与 n - x 混用：比较在整数上收紧后求解器应在时限内给出结论"""
    domain = domain_cls(_problem(ber, "0", "2 * (n - x)", Mode.ERT))
    start = time.perf_counter()
    try:
        assert k_induction(domain, max_k=3, deadline=20).verdict == Inductive(1)
    finally:
        domain.close()
    assert time.perf_counter() - start < 30


def test_symbolic_domain_agrees(geo, chain):
    domain = ExpectationDomain(_problem(geo, "c", "c + 1"))
    try:
        assert k_induction(domain, max_k=4).verdict == Inductive(2)
    finally:
        domain.close()

    bound = "[f = 1] + [not (f = 1)] * 0.3"
    domain = ExpectationDomain(_problem(chain, "[f = 1]", bound))
    try:
        verdict = bmc(domain, max_n=6).verdict
    finally:
        domain.close()
    assert isinstance(verdict, Refuted) and verdict.n == 3
    assert verdict.witness["f"] == 0
    assert verdict.witness["count"] <= 3


def test_parallel_run_writes_transcripts(tmp_path, geo):
    problem = _problem(geo, "c", "c + 1", emit_dir=str(tmp_path), tag="geo")
    outcome = verify_parallel(EncodedDomain(problem), max_k=5, max_n=50, deadline=60)
    assert outcome.verdict == Inductive(2)
    dumps = list(tmp_path.glob("geo-encoded-*.smt2"))
    assert dumps
    assert any("(declare-fun KP_1" in path.read_text(encoding="utf-8") for path in dumps)


def test_unsupported_lattice_operations_raise_project_error(geo):
    domain = EncodedDomain(_problem(geo, "c", "c + 1"))
    try:
        with pytest.raises(UnsupportedQueryError, match="meet_with_bound"):
            domain.meet_with_bound(domain.bottom)
        with pytest.raises(UnsupportedQueryError, match="apply_phi"):
            domain.apply_phi(FrameRef(Purpose.INDUCTION, "P", 0))
        with pytest.raises(EngineInvariantError, match="entails"):
            domain.entails(FrameRef(Purpose.INDUCTION, "P", 0), FrameRef(Purpose.INDUCTION, "Q", 1))
    finally:
        domain.close()


# =============================================================================
# 清单中的真实问题
# =============================================================================

@pytest.mark.parametrize("row, budget", benchmark_params())
def test_inductivity_checks_agree_with_symbolic_entailment(solver, row, budget):
    program, problem = load_problem(row_job(row, budget))
    encoding = init_encoding(SmtContext(solver, program.variables), program, problem.post, problem.bound,
                             problem.mode, Purpose.INDUCTION)
    phi = characteristic_functional(program, problem.post, problem.mode)
    session = SolverSession(name="symbolic")
    session.start()
    try:
        smt = SmtContext(session, program.variables)
        iterate = problem.bound
        for k in range(5):
            if k > 0:
                encoding.push_frame()
                iterate = kind_step(problem.bound, phi, iterate, smt.satisfiable)
            expected = entails(phi(iterate), problem.bound, smt).holds
            assert encoding.check_inductive(k) == expected, f"{row['name']}: k = {k}"
    finally:
        session.stop()


@pytest.mark.parametrize("row, budget", benchmark_params())
def test_frame_values_match_oracle_on_random_states(solver, rng, row, budget):
    program, problem = load_problem(row_job(row, budget))
    if any(is_infinite(value) for _, value in summands(problem.bound)):
        pytest.skip("infty 不受约束时帧的取值不唯一")
    oracle = TruncatedOracle(program, problem.post, problem.mode, bound=problem.bound)
    states = [RandomExpressions(rng, program.variables).state(high=5) for _ in range(20)]

    with solver.scope():
        encoding = init_encoding(SmtContext(solver, program.variables), program, problem.post, problem.bound,
                                 problem.mode, Purpose.INDUCTION)
        for _ in range(3):
            encoding.push_frame()
        for state in states:
            for k in range(4):
                assert encoding.value_at(FrameRef(Purpose.INDUCTION, "Q", k), state) == \
                    (oracle.kind_iterate(k, state), True)
                assert encoding.value_at(FrameRef(Purpose.INDUCTION, "P", k), state) == \
                    (oracle.kind_phi(k, state), True)

    with solver.scope():
        encoding = init_encoding(SmtContext(solver, program.variables), program, problem.post, problem.bound,
                                 problem.mode, Purpose.REFUTATION)
        for _ in range(3):
            encoding.push_frame()
        for state in states:
            for k in range(4):
                assert encoding.value_at(FrameRef(Purpose.REFUTATION, "P", k), state) == \
                    (oracle.kleene(k + 1, state), True)
