import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from balrep.core import BipartiteInstance, InvariantError, derive_seed
from balrep.relax import (
    CycleBasis,
    FractionalMatching,
    fundamental_cycle_basis,
    init_uniform,
    pivot_step,
    relax,
)


def balanced_colours(n, k, seed):
    """A colour multiset as equal as n*n allows, in random order."""
    m = n * n
    cols = []
    for c in range(1, k + 1):
        cols += [c] * (m // k)
    cols += list(range(1, (m - len(cols)) + 1))
    rng = random.Random(derive_seed(seed, "colours"))
    rng.shuffle(cols)
    return cols


def test_init_uniform_trivial_and_square():
    one = init_uniform(BipartiteInstance(1, 1, colours=[1]))
    assert one.weights == {(0, 1): Fraction(1, 1)}
    assert one.fractional_edges() == []
    two = init_uniform(BipartiteInstance(2, 1, colours=[1] * 4))
    assert all(w == Fraction(1, 2) for w in two.weights.values())
    assert len(two.fractional_edges()) == 4
    assert two.cyclomatic_number() == 1
    two.verify(k=1)


def test_init_uniform_target_and_sums():
    rng = random.Random(3)
    inst = BipartiteInstance(5, 2, colours=[rng.randint(1, 2) for _ in range(25)])
    fm = init_uniform(inst)
    assert all(s == 1 for s in fm.vertex_sums().values())
    assert fm.label_sum() == tuple(Fraction(x, 5) for x in inst.label_total())


def test_cycle_basis_tree_is_empty():
    basis = fundamental_cycle_basis([(0, 4), (1, 4), (1, 5), (2, 5)])
    assert basis.cycles == []
    assert len(basis.forest) == 4


def test_cycle_basis_single_square():
    basis = fundamental_cycle_basis([(0, 2), (0, 3), (1, 2), (1, 3)])
    assert len(basis.cycles) == 1
    cyc = basis.cycles[0]
    assert len(cyc) == 4
    assert cyc[0] not in basis.forest
    assert all(e in basis.forest for e in cyc[1:])


def test_cycle_basis_complete_bipartite_count():
    edges = [(i, 3 + j) for i in range(3) for j in range(3)]
    basis = fundamental_cycle_basis(edges)
    assert len(basis.cycles) == 9 - 6 + 1
    for cyc in basis.cycles:
        assert len(cyc) % 2 == 0
        assert sum(1 for e in cyc if e not in basis.forest) == 1


def test_cycle_basis_counts_components():
    edges = [(0, 2), (0, 3), (1, 2), (1, 3), (4, 6), (5, 6)]
    basis = fundamental_cycle_basis(edges)
    assert len(basis.cycles) == 6 - 7 + 2


def test_pivot_step_noop_below_budget():
    inst = BipartiteInstance(2, 1, colours=[1] * 4)
    fm = init_uniform(inst)
    basis = fundamental_cycle_basis(fm.fractional_edges())
    assert len(basis.cycles) == 1
    assert pivot_step(fm, basis, 1) is None


def test_pivot_step_two_squares_constant_labels():
    # two disjoint half-weight squares; k=1 forces a dependency pivot
    inst = BipartiteInstance(4, 1, colours=[1] * 16)
    weights = {e: Fraction(0) for e in inst.edge_list()}
    for e in [(0, 4), (0, 5), (1, 4), (1, 5)]:
        weights[e] = Fraction(1, 2)
    for e in [(2, 6), (2, 7), (3, 6), (3, 7)]:
        weights[e] = Fraction(1, 2)
    fm = FractionalMatching(inst, weights, init_uniform(inst).target, True)
    fm.verify(k=2)
    basis = fundamental_cycle_basis(fm.fractional_edges())
    assert len(basis.cycles) == 2
    fm2 = pivot_step(fm, basis, 1)
    fm2.verify(k=2)
    assert len(fm2.fractional_edges()) < len(fm.fractional_edges())


def test_pivot_loop_reaches_fixpoint():
    # constant labels, k=1: repeated explicit pivots end with <= 1 cycle
    inst = BipartiteInstance(3, 1, colours=[1] * 9)
    fm = init_uniform(inst)
    for _ in range(100):
        basis = fundamental_cycle_basis(fm.fractional_edges())
        nxt = pivot_step(fm, basis, 1)
        if nxt is None:
            break
        assert len(nxt.fractional_edges()) < len(fm.fractional_edges())
        fm = nxt
    else:
        pytest.fail("pivot loop did not terminate")
    fm.verify(k=1)
    assert fm.cyclomatic_number() <= 1


@given(n=st.integers(2, 7), k=st.integers(1, 3), seed=st.integers(0, 999))
@settings(max_examples=30, deadline=None)
def test_pivot_loop_invariants_random(n, k, seed):
    inst = BipartiteInstance(n, k, colours=balanced_colours(n, k, seed))
    fm = init_uniform(inst)
    for _ in range(n * n + 1):
        basis = fundamental_cycle_basis(fm.fractional_edges())
        nxt = pivot_step(fm, basis, k)
        if nxt is None:
            break
        assert len(nxt.fractional_edges()) < len(fm.fractional_edges())
        fm = nxt
    fm.verify(k)


def test_relax_trivial_sizes():
    fm = relax(BipartiteInstance(1, 1, colours=[1]))
    assert fm.weights[(0, 1)] == 1
    assert fm.fractional_edges() == []
    fm2 = relax(BipartiteInstance(2, 2, colours=[1, 2, 2, 1]))
    fm2.verify(2)


def test_relax_small_balanced():
    inst = BipartiteInstance(4, 2, colours=balanced_colours(4, 2, 7))
    fm = relax(inst)
    fm.verify(2)
    assert fm.cyclomatic_number() <= 2


@given(n=st.integers(2, 10), k=st.integers(1, 4), seed=st.integers(0, 999))
@settings(max_examples=30, deadline=None)
def test_relax_invariants_random(n, k, seed):
    inst = BipartiteInstance(n, k, colours=balanced_colours(n, k, seed))
    fm = relax(inst)
    fm.verify(k)
    # independent recount of the cyclomatic number from scratch
    basis = fundamental_cycle_basis(fm.fractional_edges())
    assert len(basis.cycles) <= k


def test_relax_is_deterministic():
    inst = BipartiteInstance(8, 3, colours=balanced_colours(8, 3, 11))
    a = relax(inst)
    b = relax(inst)
    assert a.weights == b.weights


def test_relax_float_mode():
    rng = random.Random(5)
    n, k = 8, 2
    labels = [
        (rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n * n)
    ]
    inst = BipartiteInstance(n, k, labels=labels)
    fm = relax(inst)
    assert not fm.exact
    fm.verify(k, tol=1e-7)
    assert fm.cyclomatic_number(tol=1e-7) <= k


def test_relax_float_matches_exact_shape():
    # the same colour data run through the float path obeys the same bounds
    n, k = 6, 2
    cols = balanced_colours(n, k, 3)
    labels = [((1.0, 0.0) if c == 1 else (0.0, 1.0)) for c in cols]
    fm = relax(BipartiteInstance(n, k, labels=labels))
    fm.verify(k, tol=1e-7)


def test_relax_medium_is_quick():
    import time

    inst = BipartiteInstance(50, 3, colours=balanced_colours(50, 3, 1))
    t0 = time.perf_counter()
    fm = relax(inst)
    dt = time.perf_counter() - t0
    fm.verify(3)
    assert dt < 5.0


def test_relax_rejects_non_bipartite():
    from balrep.core import CompleteInstance, InstanceError

    with pytest.raises(InstanceError):
        relax(CompleteInstance(4, 2, colours=[1] * 6))
