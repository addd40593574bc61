"""Exhaustive ground-truth minimizers for small instances.

Everything here enumerates honestly within a fixed size budget and refuses
larger inputs rather than truncating.  Branch-and-bound pruning is used only
where the bound is provably safe (partial colour-count deviation).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import (
    BipartiteInstance,
    BudgetError,
    CompleteInstance,
    HypergraphInstance,
    InstanceError,
    InvariantError,
    Matching,
    l1norm,
    vsub,
    vadd,
)


@dataclass(frozen=True)
class OracleBudget:
    """Hard size limits per problem class; beyond them we refuse, never guess."""

    complete_pm_vertices: int = 14
    bipartite_pm_colours: int = 20   # bitmask DP over colour counts
    bipartite_pm_labels: int = 10    # permutation scan for general labels
    tree_vertices: int = 8           # all n^(n-2) labelled trees
    hypergraph_vertices: int = 9     # r = 3
    path_split_edges: int = 24


DEFAULT_BUDGET = OracleBudget()


def _colour_targets(instance, matching_size):
    """Per-colour representative counts for a matching of the given size."""
    counts = [0] * instance.k
    for c in instance.colours:
        counts[c - 1] += 1
    ratio = Fraction(matching_size, instance.edge_count)
    return [ratio * c for c in counts]


def _count_deviation(counts, targets):
    return sum(abs(c - t) for c, t in zip(counts, targets))


def _deviation_lower_bound(counts, targets, remaining):
    """Least achievable deviation after adding `remaining` more edges.

    Counts only grow, so overshoot is permanent; undershoot can absorb at most
    `remaining` new edges and any surplus spills into fresh overshoot.
    """
    over = sum(max(0, c - t) for c, t in zip(counts, targets))
    deficit = sum(max(0, t - c) for c, t in zip(counts, targets))
    if remaining <= deficit:
        return over + (deficit - remaining)
    return over + (remaining - deficit)


# ---------------------------------------------------------------------------
# perfect matchings


def min_imbalance_pm(instance, budget=DEFAULT_BUDGET, stop_at=None):
    """Exact minimum imbalance over all perfect matchings, with an argmin.

    ``stop_at``: optional early-exit threshold — return the first matching
    whose deviation is <= stop_at (used by has_balanced_pm with 0).
    """
    if isinstance(instance, CompleteInstance):
        if instance.n_vertices > budget.complete_pm_vertices:
            raise BudgetError(
                f"complete PM oracle limited to {budget.complete_pm_vertices} vertices"
            )
        if instance.n_vertices % 2:
            raise InstanceError("odd vertex count has no perfect matching")
        return _min_pm_complete(instance, stop_at)
    if isinstance(instance, BipartiteInstance):
        if instance.colours is not None:
            if instance.n_vertices > budget.bipartite_pm_colours:
                raise BudgetError(
                    f"bipartite colour oracle limited to {budget.bipartite_pm_colours} vertices"
                )
            return _min_pm_bipartite_colours(instance, stop_at)
        if instance.n_vertices > budget.bipartite_pm_labels:
            raise BudgetError(
                f"bipartite label oracle limited to {budget.bipartite_pm_labels} vertices"
            )
        return _min_pm_bipartite_labels(instance, stop_at)
    if isinstance(instance, HypergraphInstance):
        if instance.n_vertices > budget.hypergraph_vertices:
            raise BudgetError(
                f"hypergraph PM oracle limited to {budget.hypergraph_vertices} vertices"
            )
        return _min_pm_hypergraph(instance, stop_at)
    raise InstanceError(f"no PM oracle for {type(instance).__name__}")


def has_balanced_pm(instance, budget=DEFAULT_BUDGET) -> bool:
    """True iff some perfect matching has imbalance exactly 0."""
    if instance.colours is None:
        raise InstanceError("balance check expects a colour-encoded instance")
    f, _ = min_imbalance_pm(instance, budget, stop_at=0)
    return f == 0


def _min_pm_complete(instance, stop_at):
    N = instance.n_vertices
    size = N // 2
    colourful = instance.colours is not None
    if colourful:
        targets = _colour_targets(instance, size)
        colour_at = instance.colours
    else:
        # general labels: track the vector sum, no pruning bound
        ratio = Fraction(size, instance.edge_count) if instance.exact \
            else size / instance.edge_count
        target_vec = tuple(ratio * x for x in instance.label_total())
    eidx = instance.edge_index

    best = [None, None]  # deviation, matching edges

    def consider(dev, chosen):
        if best[0] is None or dev < best[0]:
            best[0] = dev
            best[1] = list(chosen)

    unmatched = list(range(N))
    chosen = []

    if colourful:
        counts = [0] * instance.k

        def rec(avail):
            if not avail:
                consider(_count_deviation(counts, targets), chosen)
                return stop_at is not None and best[0] <= stop_at
            u = avail[0]
            rest = avail[1:]
            remaining = len(avail) // 2
            if best[0] is not None and \
                    _deviation_lower_bound(counts, targets, remaining) >= best[0]:
                return False
            for i, v in enumerate(rest):
                ci = colour_at[eidx((u, v))] - 1
                counts[ci] += 1
                chosen.append((u, v))
                done = rec(rest[:i] + rest[i + 1:])
                chosen.pop()
                counts[ci] -= 1
                if done:
                    return True
            return False

        rec(unmatched)
    else:
        acc = [tuple(0 for _ in range(instance.k))]

        def rec2(avail):
            if not avail:
                consider(l1norm(vsub(acc[0], target_vec)), chosen)
                return stop_at is not None and best[0] is not None and best[0] <= stop_at
            u = avail[0]
            rest = avail[1:]
            for i, v in enumerate(rest):
                lab = instance.labels[eidx((u, v))]
                old = acc[0]
                acc[0] = vadd(old, lab)
                chosen.append((u, v))
                done = rec2(rest[:i] + rest[i + 1:])
                chosen.pop()
                acc[0] = old
                if done:
                    return True
            return False

        rec2(unmatched)
    return best[0], Matching(sorted(best[1]))


def _min_pm_bipartite_colours(instance, stop_at):
    """Bitmask DP over right-side masks keeping achievable colour-count tuples."""
    n, k = instance.n, instance.k
    targets = _colour_targets(instance, n)
    colour = instance.colours  # index i*n + j
    full = (1 << n) - 1
    dp = [None] * (1 << n)
    dp[0] = {(0,) * k}
    for mask in range(1 << n):
        states = dp[mask]
        if not states:
            continue
        row = bin(mask).count("1")
        if row == n:
            continue
        base = row * n
        for j in range(n):
            bit = 1 << j
            if mask & bit:
                continue
            ci = colour[base + j] - 1
            nxt = dp[mask | bit]
            if nxt is None:
                nxt = dp[mask | bit] = set()
            for st in states:
                moved = st[:ci] + (st[ci] + 1,) + st[ci + 1:]
                nxt.add(moved)
    best_counts = None
    best_dev = None
    for st in sorted(dp[full]):
        dev = _count_deviation(st, targets)
        if best_dev is None or dev < best_dev:
            best_dev, best_counts = dev, st
            if stop_at is not None and dev <= stop_at:
                break
    # backtrace one argmin assignment
    edges = []
    mask, st = full, best_counts
    for row in range(n - 1, -1, -1):
        base = row * n
        found = False
        for j in range(n):
            bit = 1 << j
            if not mask & bit:
                continue
            ci = colour[base + j] - 1
            if st[ci] == 0:
                continue
            prev = st[:ci] + (st[ci] - 1,) + st[ci + 1:]
            pstates = dp[mask ^ bit]
            if pstates and prev in pstates:
                edges.append((row, n + j))
                mask ^= bit
                st = prev
                found = True
                break
        if not found:  # pragma: no cover - DP bookkeeping violated
            raise InvariantError("bitmask DP backtrace failed")
    return best_dev, Matching(sorted(edges))


def _min_pm_bipartite_labels(instance, stop_at):
    n = instance.n
    labels = instance.labels
    ratio = Fraction(n, instance.edge_count) if instance.exact \
        else n / instance.edge_count
    target = tuple(ratio * x for x in instance.label_total())
    best = [None, None]
    chosen = []

    def rec(row, used_mask, acc):
        if row == n:
            dev = l1norm(vsub(acc, target))
            if best[0] is None or dev < best[0]:
                best[0], best[1] = dev, list(chosen)
            return stop_at is not None and best[0] <= stop_at
        for j in range(n):
            bit = 1 << j
            if used_mask & bit:
                continue
            chosen.append((row, n + j))
            if rec(row + 1, used_mask | bit, vadd(acc, labels[row * n + j])):
                return True
            chosen.pop()
        return False

    rec(0, 0, (0,) * instance.k)
    return best[0], Matching(sorted(best[1]))


def _min_pm_hypergraph(instance, stop_at):
    r = instance.r
    N = instance.n_vertices
    colourful = instance.colours is not None
    size = N // r
    if colourful:
        targets = _colour_targets(instance, size)
    else:
        ratio = Fraction(size, instance.edge_count) if instance.exact \
            else size / instance.edge_count
        target_vec = tuple(ratio * x for x in instance.label_total())
    eidx = instance.edge_index
    part_of = (lambda v: v // instance.n) if instance.partite else None

    best = [None, None]
    chosen = []

    def edge_choices(avail):
        u = avail[0]
        rest = [v for v in avail[1:]]
        if instance.partite:
            # a transversal edge pairs u with one vertex from each other part
            pu = part_of(u)
            groups = {}
            for v in rest:
                p = part_of(v)
                if p != pu:
                    groups.setdefault(p, []).append(v)
            parts = sorted(groups)
            if len(parts) != r - 1:
                return
            def build(i, acc):
                if i == len(parts):
                    yield tuple(acc)
                    return
                for v in groups[parts[i]]:
                    acc.append(v)
                    yield from build(i + 1, acc)
                    acc.pop()
            yield from ((u,) + tail for tail in build(0, []))
        else:
            for tail in combinations(rest, r - 1):
                yield (u,) + tail

    if colourful:
        counts = [0] * instance.k
        colour_at = instance.colours

        def rec(avail):
            if not avail:
                dev = _count_deviation(counts, targets)
                if best[0] is None or dev < best[0]:
                    best[0], best[1] = dev, list(chosen)
                return stop_at is not None and best[0] <= stop_at
            remaining = len(avail) // r
            if best[0] is not None and \
                    _deviation_lower_bound(counts, targets, remaining) >= best[0]:
                return False
            for edge in edge_choices(avail):
                ci = colour_at[eidx(edge)] - 1
                counts[ci] += 1
                chosen.append(edge)
                left = [v for v in avail if v not in edge]
                done = rec(left)
                chosen.pop()
                counts[ci] -= 1
                if done:
                    return True
            return False

        rec(list(range(N)))
    else:
        def rec2(avail, acc):
            if not avail:
                dev = l1norm(vsub(acc, target_vec))
                if best[0] is None or dev < best[0]:
                    best[0], best[1] = dev, list(chosen)
                return stop_at is not None and best[0] <= stop_at
            for edge in edge_choices(avail):
                chosen.append(edge)
                left = [v for v in avail if v not in edge]
                if rec2(left, vadd(acc, instance.labels[eidx(edge)])):
                    return True
                chosen.pop()
            return False

        rec2(list(range(N)), (0,) * instance.k)
    return best[0], Matching(sorted(best[1]))


# ---------------------------------------------------------------------------
# spanning trees


def _prufer_to_tree(seq, n):
    deg = [1] * n
    for v in seq:
        deg[v] += 1
    edges = []
    heap = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(heap)
    for v in seq:
        u = heapq.heappop(heap)
        edges.append((min(u, v), max(u, v)))
        deg[v] -= 1
        if deg[v] == 1:
            heapq.heappush(heap, v)
    u = heapq.heappop(heap)
    v = heapq.heappop(heap)
    edges.append((min(u, v), max(u, v)))
    return edges


def spanning_trees(n):
    """All labelled spanning trees of K_n as edge lists (Prüfer order)."""
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    seq = [0] * (n - 2)
    while True:
        yield _prufer_to_tree(seq, n)
        i = n - 3
        while i >= 0 and seq[i] == n - 1:
            seq[i] = 0
            i -= 1
        if i < 0:
            return
        seq[i] += 1


def min_imbalance_spanning_tree(instance, budget=DEFAULT_BUDGET):
    """Exact minimum imbalance over all spanning trees of a complete host."""
    if not isinstance(instance, CompleteInstance):
        raise InstanceError("spanning-tree oracle expects a complete instance")
    N = instance.n_vertices
    if N > budget.tree_vertices:
        raise BudgetError(f"tree oracle limited to {budget.tree_vertices} vertices")
    size = N - 1
    colourful = instance.colours is not None
    eidx = instance.edge_index
    if colourful:
        targets = _colour_targets(instance, size)
    else:
        ratio = Fraction(size, instance.edge_count) if instance.exact \
            else size / instance.edge_count
        target_vec = tuple(ratio * x for x in instance.label_total())
    best = None
    best_tree = None
    for tree in spanning_trees(N):
        if colourful:
            counts = [0] * instance.k
            for e in tree:
                counts[instance.colours[eidx(e)] - 1] += 1
            dev = _count_deviation(counts, targets)
        else:
            acc = (0,) * instance.k
            for e in tree:
                acc = vadd(acc, instance.labels[eidx(e)])
            dev = l1norm(vsub(acc, target_vec))
        if best is None or dev < best:
            best, best_tree = dev, tree
    return best, sorted(best_tree)
