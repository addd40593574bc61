"""Tests for the complete-graph and hypergraph reductions."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from balrep.core import (
    BudgetError,
    CompleteInstance,
    HypergraphInstance,
    InstanceError,
    derive_seed,
    normalize,
)
from balrep.oracle import min_imbalance_pm
from balrep.reduce import (
    MAX_PARTITION_SAMPLES,
    crossing_deviation,
    _sample_split,
    solve_complete,
    solve_hypergraph,
    split_complete,
    split_hypergraph,
)


def balanced_colours(m, k, seed):
    cols = []
    for c in range(1, k + 1):
        cols += [c] * (m // k)
    cols += list(range(1, (m - len(cols)) + 1))
    rng = random.Random(derive_seed(seed, "colours"))
    rng.shuffle(cols)
    return cols


# ---------------------------------------------------------------------------
# splitting


def test_split_complete_rejects_odd_hosts():
    inst = CompleteInstance(5, 2, colours=[1, 2] * 5)
    with pytest.raises(InstanceError):
        split_complete(inst)


def test_split_complete_two_vertices():
    inst = CompleteInstance(2, 2, colours=[1])
    s = split_complete(inst)
    assert sorted(s.assignment) == [0, 1]
    assert s.deviation_l1 == 0 and s.deviation_l2 == 0.0


def test_split_complete_equal_labels_zero_deviation():
    inst = CompleteInstance(12, 3, colours=[2] * 66)
    s = split_complete(inst, seed=5)
    assert s.deviation_l1 == 0


def test_split_complete_threshold_and_recount():
    n = 20
    inst = CompleteInstance(2 * n, 3, colours=balanced_colours(780, 3, 7))
    s = split_complete(inst, seed=7)
    parts = s.parts()
    assert [len(p) for p in parts] == [n, n]
    norm_inst, _, _ = normalize(inst)
    _, dl1, sq = crossing_deviation(norm_inst, parts)
    assert dl1 == s.deviation_l1
    assert sq <= 2 * n * n


def test_split_determinism():
    inst = CompleteInstance(16, 2, colours=balanced_colours(120, 2, 3))
    a = split_complete(inst, seed=9)
    b = split_complete(inst, seed=9)
    assert a.assignment == b.assignment and a.deviation_l1 == b.deviation_l1


def test_sample_split_budget_error_carries_best():
    inst = CompleteInstance(8, 2, colours=balanced_colours(28, 2, 0))
    with pytest.raises(BudgetError) as exc:
        _sample_split(inst, 2, 4, -1, 0, "forced-failure")
    best = exc.value.best_sample
    assert sorted(best.assignment) == list(range(8))
    assert MAX_PARTITION_SAMPLES == 64


def test_split_hypergraph_threshold_and_recount():
    r, n = 3, 4
    inst = HypergraphInstance(r, n, 2, colours=balanced_colours(220, 2, 11))
    s = split_hypergraph(inst, seed=11)
    parts = s.parts()
    assert [len(p) for p in parts] == [n, n, n]
    norm_inst, _, _ = normalize(inst)
    _, dl1, sq = crossing_deviation(norm_inst, parts)
    assert dl1 == s.deviation_l1
    assert sq <= 2 * (r * n) ** (2 * (r - 1))


def test_split_hypergraph_rejects_partite():
    inst = HypergraphInstance(3, 2, 2, colours=[1, 2] * 4, partite=True)
    with pytest.raises(InstanceError):
        split_hypergraph(inst)


# ---------------------------------------------------------------------------
# complete-graph solver


def test_solve_complete_equal_labels():
    inst = CompleteInstance(10, 1, colours=[1] * 45)
    matching, report = solve_complete(inst)
    assert matching.is_perfect(inst)
    assert report.total_l1 == 0


def test_solve_complete_small_vs_oracle():
    for seed in range(6):
        inst = CompleteInstance(6, 3, colours=balanced_colours(15, 3, seed))
        matching, report = solve_complete(inst, seed=seed)
        assert matching.is_perfect(inst)
        floor, _ = min_imbalance_pm(inst)
        assert floor <= report.total_l1 <= 10 * 9


def test_solve_complete_medium_sweep():
    for seed in range(3):
        inst = CompleteInstance(40, 3, colours=balanced_colours(780, 3, seed))
        matching, report = solve_complete(inst, seed=seed)
        assert matching.is_perfect(inst)
        assert report.total_l1 <= 10 * 9
        led = report.ledger
        assert report.total_l1 <= led["bipartite_f"] + led["partition"]


@settings(max_examples=25, deadline=None)
@given(
    n2=st.sampled_from([4, 6, 8, 10]),
    k=st.sampled_from([2, 3]),
    data=st.data(),
)
def test_solve_complete_properties(n2, k, data):
    m = n2 * (n2 - 1) // 2
    cols = data.draw(st.lists(st.integers(1, k), min_size=m, max_size=m))
    inst = CompleteInstance(n2, k, colours=cols)
    matching, report = solve_complete(inst, seed=1)
    assert matching.is_perfect(inst)
    assert isinstance(report.total_l1, (int, Fraction))
    led = report.ledger
    assert report.total_l1 <= led["bipartite_f"] + led["partition"]


# ---------------------------------------------------------------------------
# hypergraph solver


def test_solve_hypergraph_r3_vs_oracle():
    for seed in range(4):
        inst = HypergraphInstance(3, 2, 2, colours=balanced_colours(20, 2, seed))
        matching, report = solve_hypergraph(inst, seed=seed)
        assert matching.is_perfect(inst)
        floor, _ = min_imbalance_pm(inst)
        assert floor <= report.total_l1
        assert report.total_l1 <= floor + 2 * 10 * 3 * 4


def test_solve_hypergraph_partite_levels_bound_measured_f():
    inst = HypergraphInstance(
        3, 4, 2, colours=balanced_colours(64, 2, 5), partite=True
    )
    matching, report = solve_hypergraph(inst, seed=5)
    assert matching.is_perfect(inst)
    led = report.ledger
    bound = sum(level["bipartite_f"] for level in led["levels"]) + led["partition"]
    assert report.total_l1 <= bound
    assert led["partition"] == 0


def test_solve_hypergraph_r2_matches_bipartite_contract():
    inst = HypergraphInstance(2, 5, 2, colours=balanced_colours(25, 2, 2), partite=True)
    matching, report = solve_hypergraph(inst, seed=2)
    assert matching.is_perfect(inst)
    assert report.total_l1 <= 10 * 2 * 4


def test_solve_hypergraph_r4():
    inst = HypergraphInstance(4, 2, 2, colours=balanced_colours(70, 2, 6))
    matching, report = solve_hypergraph(inst, seed=6)
    assert matching.is_perfect(inst)
    assert report.total_l1 <= 10 * 4 * 4


def test_solve_hypergraph_determinism():
    inst = HypergraphInstance(3, 4, 3, colours=balanced_colours(220, 3, 8))
    a = solve_hypergraph(inst, seed=8)
    b = solve_hypergraph(inst, seed=8)
    assert a[0].edges == b[0].edges
    assert a[1].total_l1 == b[1].total_l1


@settings(max_examples=15, deadline=None)
@given(k=st.sampled_from([2, 3]), seed=st.integers(0, 50))
def test_solve_hypergraph_random_colour_properties(k, seed):
    inst = HypergraphInstance(3, 2, k, colours=balanced_colours(20, k, seed))
    matching, report = solve_hypergraph(inst, seed=seed)
    assert matching.is_perfect(inst)
    led = report.ledger
    bound = sum(level["bipartite_f"] for level in led["levels"]) + led["partition"]
    assert report.total_l1 <= bound
