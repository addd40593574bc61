import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from balrep.bipartite import (
    BIPARTITE_CONSTANT,
    PathDecomposition,
    decompose,
    solve_bipartite,
)
from balrep.core import BipartiteInstance, Matching, derive_seed, imbalance, normalize
from balrep.oracle import min_imbalance_pm
from balrep.relax import FractionalMatching, init_uniform, relax


def balanced_colours(n, k, seed):
    m = n * n
    cols = []
    for c in range(1, k + 1):
        cols += [c] * (m // k)
    cols += list(range(1, (m - len(cols)) + 1))
    rng = random.Random(derive_seed(seed, "colours"))
    rng.shuffle(cols)
    return cols


def test_decompose_trivial_integral():
    fm = relax(BipartiteInstance(1, 1, colours=[1]))
    dec = decompose(fm)
    assert dec.integral_matching == [(0, 1)]
    assert dec.paths == [] and dec.deleted_edges == []


def test_decompose_single_square_cycle():
    # half-weight 4-cycle: one deletion, one 3-edge path, weights 1/2 each
    inst = BipartiteInstance(2, 1, colours=[1] * 4)
    fm = init_uniform(inst)
    dec = decompose(fm)
    assert len(dec.deleted_edges) == 1
    assert dec.deleted_edges[0][1] == Fraction(1, 2)
    assert len(dec.paths) == 1
    piece = dec.paths[0]
    assert len(piece.vertices) == 4
    assert piece.path.n_edges == 3
    assert piece.path.alpha == Fraction(1, 2)


def test_decompose_random_instance_bounds():
    inst = BipartiteInstance(50, 3, colours=balanced_colours(50, 3, 0))
    norm, _, _ = normalize(inst)
    fm = relax(norm)
    dec = decompose(fm)
    assert len(dec.deleted_edges) <= 15
    # pieces must be vertex-disjoint from each other and the integral edges
    seen = set()
    for e in dec.integral_matching:
        seen.update(e)
    for piece in dec.paths:
        assert seen.isdisjoint(piece.vertices)
        seen.update(piece.vertices)


def test_forced_two_colour_square():
    # both PMs of this K_{2,2} are monochromatic; imbalance 2 is unavoidable
    inst = BipartiteInstance(2, 2, colours=[1, 2, 2, 1])
    matching, report = solve_bipartite(inst)
    assert matching.is_perfect(inst)
    assert report.total_l1 == 2
    f, _ = min_imbalance_pm(inst)
    assert f == 2


def test_equal_labels_give_zero():
    inst = BipartiteInstance(6, 1, colours=[1] * 36)
    matching, report = solve_bipartite(inst)
    assert matching.is_perfect(inst)
    assert report.total_l1 == 0


def test_solver_beats_budget_small_sweep():
    for n, k in [(6, 2), (10, 2), (10, 3), (12, 4)]:
        inst = BipartiteInstance(n, k, colours=balanced_colours(n, k, n + k))
        matching, report = solve_bipartite(inst)
        assert matching.is_perfect(inst)
        assert report.total_l1 <= BIPARTITE_CONSTANT * k * k
        led = report.ledger
        assert report.total_l1 <= led["necklace"] + led["deleted"] + led["completion"]


@given(n=st.integers(2, 12), k=st.integers(1, 4), seed=st.integers(0, 99))
@settings(max_examples=25, deadline=None)
def test_solver_properties_random(n, k, seed):
    inst = BipartiteInstance(n, k, colours=balanced_colours(n, k, seed))
    matching, report = solve_bipartite(inst)
    assert matching.is_perfect(inst)
    assert len(matching.edges) == n
    assert report.exact
    assert report.total_l1 <= BIPARTITE_CONSTANT * k * k
    again = imbalance(inst, matching.edges)
    assert again.total_l1 == report.total_l1


@given(m=st.integers(1, 4), k=st.integers(1, 3), seed=st.integers(0, 99))
@settings(max_examples=20, deadline=None)
def test_imbalance_even_when_k_divides_n(m, k, seed):
    n = k * m
    inst = BipartiteInstance(n, k, colours=balanced_colours(n, k, seed))
    _, report = solve_bipartite(inst)
    assert report.total_l1 % 2 == 0


def test_solver_matches_oracle_reachability():
    # solver imbalance is never below the exhaustive minimum
    for seed in range(4):
        inst = BipartiteInstance(5, 2, colours=balanced_colours(5, 2, seed))
        _, report = solve_bipartite(inst)
        f, _ = min_imbalance_pm(inst)
        assert report.total_l1 >= f


def test_solver_determinism():
    inst = BipartiteInstance(9, 3, colours=balanced_colours(9, 3, 5))
    m1, r1 = solve_bipartite(inst)
    m2, r2 = solve_bipartite(inst)
    assert m1.edges == m2.edges
    assert r1.total_l1 == r2.total_l1


def test_float_mode_pipeline():
    rng = random.Random(2)
    n, k = 8, 2
    labels = [(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)) for _ in range(n * n)]
    inst = BipartiteInstance(n, k, labels=labels)
    matching, report = solve_bipartite(inst)
    assert matching.is_perfect(inst)
    assert not report.exact
    assert report.total_l1 <= BIPARTITE_CONSTANT * k * k + 1e-6
