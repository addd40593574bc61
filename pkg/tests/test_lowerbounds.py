"""Tests for the lower-bound instance generators and the residue verifier."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from balrep.core import InstanceError, Matching
from balrep.lowerbounds import (
    ConstructionSpec,
    gen_kn,
    gen_knn_modular,
    gen_knn_sqrt,
    verify_mod_invariant,
)
from balrep.oracle import has_balanced_pm, min_imbalance_pm


def class_counts(inst):
    counts = [0] * inst.k
    for c in inst.colours:
        counts[c - 1] += 1
    return counts


def random_complete_pm(n, rng):
    vs = list(range(n))
    rng.shuffle(vs)
    return Matching(sorted(tuple(sorted((vs[2 * i], vs[2 * i + 1]))) for i in range(n // 2)))


def random_bipartite_pm(n, rng):
    rs = list(range(n, 2 * n))
    rng.shuffle(rs)
    return Matching(sorted((i, rs[i]) for i in range(n)))


# ---------------------------------------------------------------------------
# generation and balance


def test_knn_sqrt_m1_t1_structure():
    inst, spec = gen_knn_sqrt(1, 1)
    assert inst.n == 2 and inst.k == 2
    assert class_counts(inst) == [2, 2]
    f, _ = min_imbalance_pm(inst)
    assert f == 2
    assert spec.family == "knn_sqrt" and spec.recolourings == ()


def test_knn_sqrt_balance_grid():
    for m, t in [(1, 1), (1, 3), (2, 1), (2, 3), (3, 1)]:
        inst, spec = gen_knn_sqrt(m, t)
        k = 2 * m * m
        assert inst.k == k and inst.n == k * t
        counts = class_counts(inst)
        assert counts == [k * t * t] * k


def test_knn_sqrt_oracle_floor():
    inst, _ = gen_knn_sqrt(1, 3)
    f, _ = min_imbalance_pm(inst)
    assert f >= 1
    inst, _ = gen_knn_sqrt(2, 1)
    f, _ = min_imbalance_pm(inst)
    assert f >= 2  # sqrt(k/2) with k = 8


def test_knn_sqrt_rejects_even_t():
    with pytest.raises(InstanceError):
        gen_knn_sqrt(1, 2)
    with pytest.raises(InstanceError):
        gen_knn_sqrt(0, 1)


def test_knn_modular_balance_and_infeasibility():
    for k, t in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (5, 1)]:
        inst, spec = gen_knn_modular(k, t)
        assert len(set(class_counts(inst))) == 1
        assert sum(spec.deltas) == 0
    inst, _ = gen_knn_modular(3, 1)
    assert not has_balanced_pm(inst)
    f, _ = min_imbalance_pm(inst)
    assert f >= 2
    inst, _ = gen_knn_modular(2, 1)
    f, _ = min_imbalance_pm(inst)
    assert f == 2


def test_kn_balance_all_three_recipes():
    # odd k; even k with odd t; even k with even t
    for k, t in [(3, 1), (3, 2), (5, 1), (4, 1), (6, 1), (4, 2)]:
        inst, spec = gen_kn(k, t)
        assert inst.n_vertices == 2 * k * t
        assert len(set(class_counts(inst))) == 1
        assert sum(spec.deltas) == 0
        assert spec.recolourings


def test_kn_small_cases_have_no_balanced_pm():
    for k, t in [(3, 1), (4, 1), (5, 1)]:
        inst, _ = gen_kn(k, t)
        assert not has_balanced_pm(inst)
        f, _ = min_imbalance_pm(inst)
        assert f == 2


def test_kn_rejects_small_k():
    with pytest.raises(InstanceError):
        gen_kn(2, 1)
    with pytest.raises(InstanceError):
        gen_kn(3, 0)


def test_generators_are_pure():
    a1, s1 = gen_kn(4, 2)
    a2, s2 = gen_kn(4, 2)
    assert a1.colours == a2.colours and s1 == s2


# ---------------------------------------------------------------------------
# the residue invariant


@settings(max_examples=40, deadline=None)
@given(
    params=st.sampled_from([(3, 1), (4, 1), (5, 1), (3, 2), (4, 2), (6, 1)]),
    seed=st.integers(0, 10_000),
)
def test_mod_invariant_two_computations_agree(params, seed):
    k, t = params
    inst, spec = gen_kn(k, t)
    m = random_complete_pm(inst.n_vertices, random.Random(seed))
    report = verify_mod_invariant(spec, m)
    assert report.residue_direct == report.residue_formula
    assert not report.feasible


@settings(max_examples=30, deadline=None)
@given(
    params=st.sampled_from([(2, 1), (2, 2), (3, 1), (4, 1), (5, 2)]),
    seed=st.integers(0, 10_000),
)
def test_mod_invariant_bipartite(params, seed):
    k, t = params
    inst, spec = gen_knn_modular(k, t)
    m = random_bipartite_pm(inst.n, random.Random(seed))
    report = verify_mod_invariant(spec, m)
    assert report.residue_direct == report.residue_formula
    assert not report.feasible


def test_mod_invariant_rejects_bad_input():
    _, spec = gen_knn_sqrt(1, 1)
    with pytest.raises(InstanceError):
        verify_mod_invariant(spec, Matching([(0, 2), (1, 3)]))
    _, spec = gen_kn(3, 1)
    with pytest.raises(InstanceError):
        verify_mod_invariant(spec, Matching([(0, 1), (2, 3)]))


def test_solver_respects_oracle_floor_on_kn():
    # the end-to-end solver on a no-balanced-PM instance still meets its bound
    from balrep.reduce import solve_complete

    inst, _ = gen_kn(3, 1)
    matching, report = solve_complete(inst, seed=0)
    assert matching.is_perfect(inst)
    floor, _ = min_imbalance_pm(inst)
    assert report.total_l1 >= floor == 2
    assert report.total_l1 <= 10 * 9
