# -*- coding: utf-8 -*-
"""
迁移系统：经典 k-归纳与幂集格上 k-归纳的一致性
"""

import pytest

from src.lattice.domain import Exhausted, Inductive, Refuted
from src.lattice.engine import bmc, k_induction
from src.tsys.transition_system import (
    PowersetDomain, TransitionSystem, chain_system, classical_kinduction, latticed_kinduction_ts,
    random_transition_system,
)
from src.utils.errors import TransitionSystemError


def test_two_inductive_example():
    ts = TransitionSystem.from_edges(range(4), {0}, [(0, 1), (1, 1), (2, 3), (3, 3)])
    prop = {0, 1, 2}
    assert not classical_kinduction(ts, prop, 1)
    assert classical_kinduction(ts, prop, 2)
    assert not latticed_kinduction_ts(ts, prop, 1)
    assert latticed_kinduction_ts(ts, prop, 2)

    domain = PowersetDomain(ts, prop)
    assert domain.meet_with_bound(domain.apply_phi(domain.candidate)) == frozenset({0, 1})


def test_chain_system_is_refuted_not_inductive():
    ts = chain_system([0, 1, 2, 3, 4], {0})
    prop = {0, 1, 2, 3}
    for k in range(1, 7):
        assert not classical_kinduction(ts, prop, k)
    assert isinstance(k_induction(PowersetDomain(ts, prop), max_k=6).verdict, Exhausted)
    assert bmc(PowersetDomain(ts, prop)).verdict == Refuted(5, 4)


def test_safe_chain_is_park_inductive():
    ts = chain_system(["a", "b", "c"], {"a"})
    assert k_induction(PowersetDomain(ts, {"a", "b", "c"})).verdict == Inductive(1)
    assert classical_kinduction(ts, {"a", "b", "c"}, 1)


def test_random_systems_agree(rng):
    for _ in range(500):
        ts, prop = random_transition_system(rng)
        assert ts.is_total()
        for k in range(1, 6):
            assert classical_kinduction(ts, prop, k) == latticed_kinduction_ts(ts, prop, k), (ts, prop, k)


@pytest.mark.parametrize("states, initial, edges", [
    ([0, 1], [], [(0, 0), (1, 1)]),
    ([0, 1], [2], [(0, 0), (1, 1)]),
    ([0, 1], [0], [(0, 5), (1, 1)]),
    ([0, 1], [0], [(0, 1)]),
])
def test_invalid_systems_are_rejected(states, initial, edges):
    ts = TransitionSystem.from_edges(states, initial, edges)
    with pytest.raises(TransitionSystemError):
        classical_kinduction(ts, states, 1)


def test_k_must_be_positive():
    with pytest.raises(TransitionSystemError):
        classical_kinduction(chain_system([0], {0}), {0}, 0)


def test_sinks():
    ts = TransitionSystem.from_edges([0, 1, 2], [0], [(0, 1)])
    assert ts.sinks() == [1, 2]
    assert not ts.is_total()
    assert ts.succs({0, 1}) == frozenset({1})
