# -*- coding: utf-8 -*-
"""
pGCL 解析、打印与语义测试
"""

from fractions import Fraction

import pytest

from src.config import BENCHMARK_DIR
from src.pgcl.ast import (
    Add, And, Assign, CatAssign, Cmp, FALSE, Ite, Monus, Mul, Not, Num, Or, PChoice, Seq,
    Skip, State, TRUE, Tick, Var,
)
from src.pgcl.parser import load_program, parse_arith_expr, parse_guard, parse_program
from src.pgcl.printer import print_program
from src.pgcl.semantics import (
    body_paths, desugar, eval_arith, eval_bool, execute, linear_form, simplify_arith, simplify_bool,
)
from src.utils.errors import ProgramSemanticError, ProgramSyntaxError

ALL_PROGRAMS = sorted((BENCHMARK_DIR / "programs").rglob("*.pgcl"))


# =============================================================================
# 解析
# =============================================================================

def test_parse_geo(geo):
    assert geo.variables == ("c", "f")
    assert geo.guard == Cmp("=", Var("f"), Num(Fraction(1)))
    assert geo.body == PChoice(
        Assign("f", Num(Fraction(0))),
        Fraction(1, 2),
        Assign("c", Add(Var("c"), Num(Fraction(1)))),
    )


def test_parse_comparison_operators_are_normalized():
    assert parse_guard("x > 2") == Cmp("<", Num(Fraction(2)), Var("x"))
    assert parse_guard("x >= 2") == Cmp("<=", Num(Fraction(2)), Var("x"))
    assert parse_guard("x != 2") == Not(Cmp("=", Var("x"), Num(Fraction(2))))
    assert parse_guard("x == 2") == Cmp("=", Var("x"), Num(Fraction(2)))


def test_parse_disjunction_spellings():
    expected = Or(Cmp("<", Num(Fraction(1)), Var("i")), Cmp("=", Var("phase"), Num(Fraction(1))))
    for text in ("1 < i | phase = 1", "1 < i || phase = 1", "1 < i or phase = 1"):
        assert parse_guard(text) == expected


def test_parse_implication_and_parenthesized_arith():
    guard = parse_guard("x = 1 => (x + 1) * 2 <= y")
    assert guard == Or(
        Not(Cmp("=", Var("x"), Num(Fraction(1)))),
        Cmp("<=", Mul(Fraction(2), Add(Var("x"), Num(Fraction(1)))), Var("y")),
    )


def test_parse_decimal_probability_is_exact():
    program = parse_program("nat x; while (x < 1) { {x := 1} [0.1] {skip} }")
    assert program.body.prob == Fraction(1, 10)


def test_parse_categorical_assignment():
    program = parse_program("nat x; while (x < 3) { x := x : 1/4 + x + 1 : 3/4; tick(2) }")
    assert program.body == Seq(
        CatAssign("x", ((Var("x"), Fraction(1, 4)), (Add(Var("x"), Num(Fraction(1))), Fraction(3, 4)))),
        Tick(2),
    )


def test_parse_if_without_else():
    program = parse_program("nat x; while (x < 3) { if (x = 1) { x := 2 }; x := x + 1 }")
    assert isinstance(program.body.first, Ite)
    assert program.body.first.orelse == Skip()


@pytest.mark.parametrize("path", ALL_PROGRAMS, ids=lambda p: p.stem)
def test_print_parse_roundtrip(path):
    program = load_program(path)
    assert parse_program(print_program(program)) == program


# =============================================================================
# 错误
# =============================================================================

def test_syntax_error_has_location():
    with pytest.raises(ProgramSyntaxError) as info:
        parse_program("nat x;\nwhile (x < ) { skip }")
    assert info.value.line == 2
    assert info.value.column > 0


def test_nonlinear_product_rejected():
    with pytest.raises(ProgramSyntaxError):
        parse_arith_expr("x * y")


@pytest.mark.parametrize("source", [
    "nat x; while (y < 1) { skip }",
    "nat x; while (x < 1) { y := 1 }",
    "nat x; while (x < 1) { x := x : 1/2 + x + 1 : 1/3 }",
    "nat x; while (x < 1) { while (x < 2) { skip } }",
    "nat x; x := 1; while (x < 1) { skip }",
    "nat x; while (x < 1) { skip } while (x < 2) { skip }",
    "nat x; while (x < 1) { x := x + 1/2 }",
    "nat x; nat x; while (x < 1) { skip }",
])
def test_semantic_errors(source):
    with pytest.raises(ProgramSemanticError):
        parse_program(source)


def test_missing_loop_is_syntax_error():
    with pytest.raises(ProgramSyntaxError):
        parse_program("nat x;")


# =============================================================================
# 状态与求值
# =============================================================================

def test_state_ignores_zero_entries():
    assert State(x=0) == State()
    assert hash(State(x=0, y=2)) == hash(State(y=2))
    assert State(y=2).restrict(("x", "y")) == {"x": 0, "y": 2}


def test_state_rejects_negative_values():
    with pytest.raises(ValueError):
        State(x=-1)


def test_state_set_returns_new_state():
    state = State(x=1)
    updated = state.set("x", 4)
    assert state["x"] == 1
    assert updated["x"] == 4


def test_monus_truncates_at_zero():
    expr = parse_arith_expr("x - 3")
    assert eval_arith(expr, State(x=1)) == 0
    assert eval_arith(expr, State(x=5)) == 2


def test_eval_bool():
    guard = parse_guard("1 < i | phase = 1")
    assert eval_bool(guard, State(i=2))
    assert eval_bool(guard, State(i=1, phase=1))
    assert not eval_bool(guard, State(i=1))


# =============================================================================
# 化简
# =============================================================================

def test_simplify_arith_cancels_monus():
    assert simplify_arith(parse_arith_expr("(x + 1) - 1")) == Var("x")
    assert simplify_arith(parse_arith_expr("x - (x + 1)")) == Num(Fraction(0))
    assert simplify_arith(parse_arith_expr("x - y")) == Monus(Var("x"), Var("y"))


def test_simplify_arith_merges_terms():
    assert simplify_arith(parse_arith_expr("x + 2 * x + 1 + 2")) == Add(Mul(Fraction(3), Var("x")), Num(Fraction(3)))


def test_simplify_bool_folds_constants():
    assert simplify_bool(parse_guard("0 = 1")) == FALSE
    assert simplify_bool(parse_guard("x < x + 1")) == TRUE
    assert simplify_bool(parse_guard("x + 1 <= x")) == FALSE
    assert simplify_bool(parse_guard("not (not (x = 1))")) == parse_guard("x = 1")
    assert simplify_bool(And(TRUE, parse_guard("x = 1"))) == parse_guard("x = 1")


def _naive_arith(expr, state):
    """逐节点直译的参考求值器"""
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Var):
        return Fraction(state[expr.name])
    if isinstance(expr, Mul):
        return expr.coef * _naive_arith(expr.expr, state)
    if isinstance(expr, Add):
        return _naive_arith(expr.left, state) + _naive_arith(expr.right, state)
    difference = _naive_arith(expr.left, state) - _naive_arith(expr.right, state)
    return difference if difference > 0 else Fraction(0)


def _naive_bool(guard, state):
    if guard in (TRUE, FALSE):
        return guard == TRUE
    if isinstance(guard, Cmp):
        left, right = _naive_arith(guard.left, state), _naive_arith(guard.right, state)
        return {"<": left < right, "<=": left <= right, "=": left == right}[guard.op]
    if isinstance(guard, Not):
        return not _naive_bool(guard.operand, state)
    if isinstance(guard, And):
        return _naive_bool(guard.left, state) and _naive_bool(guard.right, state)
    return _naive_bool(guard.left, state) or _naive_bool(guard.right, state)


def test_arith_evaluation_and_normal_forms_agree_with_naive_evaluator(random_exprs):
    for _ in range(200):
        expr = random_exprs.arith(depth=3)
        terms, const = linear_form(expr)
        normal = simplify_arith(expr)
        for _ in range(5):
            state = random_exprs.state(high=6)
            expected = _naive_arith(expr, state)
            assert eval_arith(expr, state) == expected
            assert eval_arith(normal, state) == expected
            assert const + sum(coef * _naive_arith(atom, state) for atom, coef in terms.items()) == expected


def test_simplify_bool_agrees_with_naive_evaluator(random_exprs):
    for _ in range(200):
        guard = random_exprs.guard(depth=2)
        simplified = simplify_bool(guard)
        for _ in range(5):
            state = random_exprs.state(high=6)
            expected = _naive_bool(guard, state)
            assert eval_bool(guard, state) == expected
            assert _naive_bool(simplified, state) == expected


# =============================================================================
# 脱糖与执行
# =============================================================================

def test_desugar_renormalizes_weights():
    stmt = CatAssign("r", tuple((Num(Fraction(v)), Fraction(1, 3)) for v in range(3)))
    assert desugar(stmt) == PChoice(
        Assign("r", Num(Fraction(0))),
        Fraction(1, 3),
        PChoice(Assign("r", Num(Fraction(1))), Fraction(1, 2), Assign("r", Num(Fraction(2)))),
    )


def test_execute_geo_body(geo):
    outcomes = execute(geo.body, State(f=1))
    assert sorted(outcomes, key=repr) == sorted([
        (Fraction(1, 2), State(), 0),
        (Fraction(1, 2), State(c=1, f=1), 0),
    ], key=repr)


def test_execute_merges_equal_outcomes_and_counts_ticks(programs_dir):
    program = load_program(programs_dir / "ert" / "sprdwalk.pgcl")
    outcomes = execute(program.body, State(x=0, n=3))
    assert sorted(outcomes, key=repr) == sorted([
        (Fraction(1, 2), State(n=3), 1),
        (Fraction(1, 2), State(x=1, n=3), 1),
    ], key=repr)

    stmt = PChoice(Assign("x", Num(Fraction(1))), Fraction(1, 3), Assign("x", Num(Fraction(1))))
    assert execute(stmt, State()) == [(Fraction(1), State(x=1), 0)]


def test_execute_probabilities_sum_to_one():
    for path in ALL_PROGRAMS:
        program = load_program(path)
        state = State({v: 2 for v in program.variables})
        total = sum(prob for prob, _, _ in execute(program.body, state))
        assert total == 1, path.stem


def test_body_paths_match_execution(rng):
    """每条符号路径在具体状态上的结果与具体执行一致"""
    for path in ALL_PROGRAMS:
        program = load_program(path)
        paths = body_paths(program.body)
        for _ in range(20):
            state = State({v: int(rng.integers(0, 6)) for v in program.variables})
            symbolic = {}
            for item in paths:
                if not eval_bool(item.guard, state):
                    continue
                mapping = item.mapping()
                final = State({v: int(eval_arith(mapping.get(v, Var(v)), state)) for v in program.variables})
                key = (final, item.cost)
                symbolic[key] = symbolic.get(key, Fraction(0)) + item.prob
            concrete = {(final, cost): prob for prob, final, cost in execute(program.body, state)}
            assert symbolic == concrete, path.stem


def test_body_paths_drop_infeasible_branches():
    # 守卫折叠为常量假的分支直接丢弃
    program = parse_program("nat x; while (x < 2) { if (0 = 1) { x := 5 } else { x := x + 1 } }")
    paths = body_paths(program.body)
    assert len(paths) == 1
    assert paths[0].mapping() == {"x": Add(Var("x"), Num(Fraction(1)))}
