from __future__ import annotations

import numpy as np
import pytest

import oracles as orc
from dividing_lines import (
    ChainWitness,
    Epsilon,
    EvalTable,
    half_graph,
    preorder_psi,
    random_table,
    sop_to_alternation,
    sop_witness,
    strict_chain,
)
from dividing_lines.errors import SearchBudgetExceeded

E1 = Epsilon(1.0)


def test_psi_values(tbl):
    t = tbl([[0.0, 1.0], [0.5, 0.25]], bound=1.0)
    m = preorder_psi(t)
    assert m.psi[0, 1] == 0.25  # row 1: 0.5 - 0.25
    assert m.psi[1, 0] == 1.0  # row 0: 1.0 - 0.0
    assert not m.dominates(0, 1)
    assert m.psi[0, 0] == 0.0 and m.psi[1, 1] == 0.0


def test_psi_pointwise_domination(tbl):
    t = tbl([[0.0, 1.0], [0.0, 0.5]], bound=1.0)
    m = preorder_psi(t)
    assert m.dominates(0, 1)
    assert not m.dominates(1, 0)


def test_strict_chain_half_graph():
    # hg columns are pointwise nondecreasing left to right with unit gaps
    for n in (2, 4, 6):
        res = strict_chain(half_graph(n), E1)
        assert res.m == n
        assert res.cols == tuple(range(n))


def test_strict_chain_floor_one(tbl):
    t = tbl([[0.0, 1.0], [1.0, 0.0]])
    assert strict_chain(t, E1).m == 1


def test_strict_chain_matches_oracle():
    rng = np.random.default_rng(5)
    for _ in range(40):
        t = EvalTable(rng.integers(0, 2, size=(5, 5)).astype(float), bound=1.0)
        assert strict_chain(t, E1).m == orc.brute_strict_chain(t, 1.0)


def test_strict_chain_eps_scaling(tbl):
    t = tbl([[0.0, 0.4, 0.8]], bound=1.0)
    assert strict_chain(t, Epsilon(0.3)).m == 3
    assert strict_chain(t, Epsilon(0.5)).m == 2
    assert strict_chain(t, Epsilon(0.9)).m == 1


def test_chain_witness_validity():
    # the cross condition is strict, so eps must sit below the 0/1 gap
    t = half_graph(4)
    w = sop_witness(t, Epsilon(0.5), 3)
    assert w is not None
    assert w.is_valid(t)
    assert w.length >= 3


def test_chain_witness_rejects_broken(tbl):
    t = half_graph(4)
    w = ChainWitness((1, 0), (0, 1), E1)  # columns not pointwise nondecreasing
    loc, msg = w.first_violation(t)
    assert loc is not None and loc[0] == "pointwise"
    dup = ChainWitness((0, 0), (1, 2), E1)
    assert dup.first_violation(t) == (None, "duplicate col index")


def test_chain_witness_cross_condition(tbl):
    t = tbl([[0.0, 0.5], [0.0, 1.0]], bound=1.0)
    w = ChainWitness((0, 1), (1, 0), Epsilon(0.75))
    # cross pair: T[w1][c0] + eps < T[w0][c1] is 0.0 + 0.75 < 1.0
    assert w.is_valid(t)
    assert not ChainWitness((0, 1), (0, 1), Epsilon(0.75)).is_valid(t)


def test_sop_witness_none_when_absent(tbl):
    t = tbl([[0.0, 1.0], [1.0, 0.0]])
    assert sop_witness(t, E1, 2) is None


def test_sop_witness_budget():
    t = random_table(10, 10, seed=1)
    with pytest.raises(SearchBudgetExceeded):
        sop_witness(t, Epsilon(0.9), 9, exact_limit=5)


def test_sop_witness_target_validation():
    with pytest.raises(ValueError):
        sop_witness(half_graph(3), E1, 1)


def test_sop_to_alternation():
    t = half_graph(5)
    w = sop_witness(t, Epsilon(0.5), 4)
    a = sop_to_alternation(w, t)
    assert a.variant == "ii"
    assert a.length == w.length
    assert a.is_valid(t)


def test_witness_dict_round_trip():
    w = ChainWitness((0, 2, 3), (4, 1, 0), E1)
    assert ChainWitness.from_dict(w.to_dict()) == w
