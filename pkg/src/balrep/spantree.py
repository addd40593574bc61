"""Colour-balanced spanning trees via graphic x partition matroid intersection.

A spanning tree of K_{2kt+1} with exactly 2t edges of every colour is a
maximum common independent set of the graphic matroid and the partition
matroid capping every colour class at 2t.  The classical exchange-graph
augmentation finds it in polynomial time, and when it stalls the unreachable
side of the final breadth-first search yields an edge set U whose two ranks
certify optimality: |I| = r_graphic(U) + r_partition(E - U).  That equality is
recomputed from scratch on every run.

``condition_check`` evaluates, for every nonempty colour subset S, whether
the edges coloured within S outnumber C(2|S|t, 2); all subsets passing is a
sufficient condition for a balanced spanning tree to exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .core import (
    BudgetError,
    CompleteInstance,
    InstanceError,
    InvariantError,
)


@dataclass
class PartitionMatroid:
    """Independence = at most ``capacity`` ground elements of each colour."""

    colour_of: list
    capacity: int

    def independent(self, elements) -> bool:
        counts: dict = {}
        for e in elements:
            c = self.colour_of[e]
            counts[c] = counts.get(c, 0) + 1
            if counts[c] > self.capacity:
                return False
        return True

    def rank(self, elements) -> int:
        counts: dict = {}
        for e in elements:
            c = self.colour_of[e]
            counts[c] = counts.get(c, 0) + 1
        return sum(min(self.capacity, n) for n in counts.values())


def _graphic_rank(edges, subset) -> int:
    """Rank of an edge subset in the graphic matroid: |V(U)| - #components."""
    parent: dict = {}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    rank = 0
    for e in subset:
        u, v = edges[e]
        for w in (u, v):
            if w not in parent:
                parent[w] = w
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            rank += 1
    return rank


@dataclass
class IntersectionResult:
    """Maximum common independent set with its Edmonds min-max witness.

    ``witness`` is an edge subset U with
    ``len(common_independent) == rank_graphic + rank_partition`` where the two
    ranks are the graphic rank of U and the partition rank of its complement,
    both recomputed independently of the search.
    """

    common_independent: list = field(default_factory=list)
    witness: list = field(default_factory=list)
    rank_graphic: int = 0
    rank_partition: int = 0


def matroid_intersection(edges, colouring, capacity) -> IntersectionResult:
    """Maximum forest with at most ``capacity`` edges per colour.

    Standard shortest-augmenting-path scheme on the exchange graph, breadth
    first with ties broken by edge index.  When no augmenting path exists the
    elements unreachable from the free-to-add-to-the-forest sources form the
    witness U of the min-max equality, which is verified before returning.
    """
    m = len(edges)
    if len(colouring) != m:
        raise InstanceError("one colour per edge required")
    if capacity < 0:
        raise InstanceError("capacity must be nonnegative")
    part = PartitionMatroid(list(colouring), capacity)
    in_set = [False] * m
    chosen: set = set()

    while True:
        # forest components of the current common independent set
        parent: dict = {}

        def find(v):
            while parent.setdefault(v, v) != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        adj: dict = {}
        for e in chosen:
            u, v = edges[e]
            parent[find(u)] = find(v)
            adj.setdefault(u, []).append((v, e))
            adj.setdefault(v, []).append((u, e))
        counts: dict = {}
        for e in chosen:
            counts[part.colour_of[e]] = counts.get(part.colour_of[e], 0) + 1

        def tree_path(u, v):
            # edges of the unique u-v path in the chosen forest (BFS)
            prev = {u: (None, None)}
            queue = [u]
            while queue:
                nxt = []
                for x in queue:
                    for y, e in adj.get(x, ()):
                        if y not in prev:
                            prev[y] = (x, e)
                            nxt.append(y)
                queue = nxt
            out = []
            while v != u:
                v, e = prev[v]
                out.append(e)
            return out

        sources = []
        sinks = set()
        for y in range(m):
            if in_set[y]:
                continue
            u, v = edges[y]
            if find(u) != find(v):
                sources.append(y)
            if counts.get(part.colour_of[y], 0) < capacity:
                sinks.add(y)

        # breadth-first search over exchange arcs, edge-index order
        prev_elem = {y: None for y in sources}
        frontier = sorted(sources)
        goal = None
        for y in frontier:
            if y in sinks:
                goal = y
                break
        while goal is None and frontier:
            nxt = []
            for z in sorted(frontier):
                if in_set[z]:
                    # arcs z -> y for y outside with z on the cycle of I + y
                    for y in range(m):
                        if in_set[y] or y in prev_elem:
                            continue
                        u, v = edges[y]
                        if find(u) == find(v) and z in tree_path(u, v):
                            prev_elem[y] = z
                            nxt.append(y)
                            if y in sinks:
                                goal = y
                                break
                else:
                    # arcs y -> x for x inside of the same saturated colour
                    cy = part.colour_of[z]
                    if counts.get(cy, 0) >= capacity:
                        for x in range(m):
                            if in_set[x] and x not in prev_elem and (
                                part.colour_of[x] == cy
                            ):
                                prev_elem[x] = z
                                nxt.append(x)
                if goal is not None:
                    break
            frontier = nxt

        if goal is None:
            reached = set(prev_elem)
            witness = sorted(set(range(m)) - reached)
            result = IntersectionResult(
                sorted(chosen),
                witness,
                _graphic_rank(edges, witness),
                part.rank(set(range(m)) - set(witness)),
            )
            if result.rank_graphic + result.rank_partition != len(chosen):
                raise InvariantError("min-max witness fails the rank identity")
            return result

        path = []
        e = goal
        while e is not None:
            path.append(e)
            e = prev_elem[e]
        for e in path:
            in_set[e] = not in_set[e]
        chosen = {e for e in range(m) if in_set[e]}


def balanced_spanning_tree(instance: CompleteInstance, t: int):
    """Spanning tree of K_{2kt+1} with exactly 2t edges per colour, if any.

    Returns ``(tree_edges, result)``; ``tree_edges`` is None when no balanced
    tree exists, in which case ``result.witness`` certifies infeasibility via
    the rank identity (its value is then strictly below 2kt).
    """
    if not isinstance(instance, CompleteInstance) or instance.colours is None:
        raise InstanceError("balanced_spanning_tree needs a coloured complete host")
    k = instance.k
    n = instance.n_vertices
    if t < 1 or n != 2 * k * t + 1:
        raise InstanceError(f"host must be a complete graph on 2kt+1 = {2 * k * t + 1} vertices")
    edges = instance.edge_list()
    result = matroid_intersection(edges, instance.colours, 2 * t)
    if len(result.common_independent) < 2 * k * t:
        return None, result
    tree = [edges[e] for e in result.common_independent]
    seen: set = set()
    for u, v in tree:
        seen.update((u, v))
    if len(tree) != n - 1 or len(seen) != n:
        raise InvariantError("intersection result is not a spanning tree")
    if _graphic_rank(edges, result.common_independent) != n - 1:
        raise InvariantError("intersection result contains a cycle")
    per_colour: dict = {}
    for e in result.common_independent:
        c = instance.colours[e]
        per_colour[c] = per_colour.get(c, 0) + 1
    if any(per_colour.get(c, 0) != 2 * t for c in range(1, k + 1)):
        raise InvariantError("tree does not use every colour exactly 2t times")
    return sorted(tree), result


@dataclass
class ConditionReport:
    """Per-colour-subset edge-count condition for balanced-tree existence.

    A subset S of colours passes when the host has strictly more than
    C(2|S|t, 2) edges coloured within S.  ``failing`` lists every nonempty
    subset that does not pass, as sorted colour tuples; when it is empty a
    balanced spanning tree is guaranteed to exist.
    """

    k: int
    t: int
    counts: tuple
    all_ok: bool
    failing: list

    def ok(self, colours) -> bool:
        subset = sorted(set(colours))
        if not subset or any(not 1 <= c <= self.k for c in subset):
            raise InstanceError("subset must be nonempty colours from 1..k")
        total = sum(self.counts[c - 1] for c in subset)
        return total > comb(2 * len(subset) * self.t, 2)


def condition_check(instance: CompleteInstance, k: int, t: int) -> ConditionReport:
    """Evaluate the subset edge-count condition for every colour subset.

    Budgeted at k <= 20 (2^k subsets); subset sums are built bottom-up so the
    whole table costs O(2^k) integer additions.
    """
    if not isinstance(instance, CompleteInstance) or instance.colours is None:
        raise InstanceError("condition_check needs a coloured complete host")
    if k != instance.k:
        raise InstanceError("k disagrees with the instance palette")
    if k > 20:
        raise BudgetError("condition_check is budgeted at k <= 20")
    if t < 1:
        raise InstanceError("t must be positive")
    counts = [0] * k
    for c in instance.colours:
        counts[c - 1] += 1
    sums = [0] * (1 << k)
    failing = []
    all_ok = True
    for mask in range(1, 1 << k):
        low = mask & (-mask)
        sums[mask] = sums[mask ^ low] + counts[low.bit_length() - 1]
        j = mask.bit_count()
        if sums[mask] <= comb(2 * j * t, 2):
            all_ok = False
            failing.append(
                tuple(c + 1 for c in range(k) if mask >> c & 1)
            )
    return ConditionReport(k, t, tuple(counts), all_ok, failing)
