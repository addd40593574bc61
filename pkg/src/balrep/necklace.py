"""Rounding an alternating-weight path into a near-representative matching.

A path on n vertices has edges e_1..e_{n-1}; odd-indexed edges carry weight
alpha, even-indexed edges 1-alpha.  We pick a set K of at most 2k+1 intervals
with integer endpoints and take the odd edges inside K plus the even edges
outside; at every interval endpoint with clashing parities the two adjacent
selected edges would share a vertex, so one of them is dropped.  The target
is the weighted label sum of the whole path; a split within budget deviates
from it by at most 4k+2 and misses at most 2k+1 matching edges below n/2.

Finding the cuts is a seeded multi-start local search over integer cut
vectors.  Scoring is exact: with rational labels and alpha, deviations are
compared as scaled integers, so feasibility decisions never round.
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import (
    BudgetError,
    FLOAT_TOL,
    InstanceError,
    InvariantError,
    Matching,
    derive_seed,
)
from .oracle import DEFAULT_BUDGET


@dataclass(frozen=True)
class PathInstance:
    """Labelled path: labels[j] is h(e_{j+1}); odd edges weigh alpha."""

    labels: tuple
    alpha: object

    def __post_init__(self):
        labels = tuple(tuple(v) for v in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise InstanceError("a path needs at least one edge")
        widths = {len(v) for v in labels}
        if len(widths) != 1:
            raise InstanceError("labels must share one dimension")
        exact = all(
            isinstance(x, (int, Fraction)) and not isinstance(x, bool)
            for v in labels
            for x in v
        ) and isinstance(self.alpha, (int, Fraction)) and not isinstance(self.alpha, bool)
        object.__setattr__(self, "exact", exact)
        tol = 0 if exact else FLOAT_TOL
        for v in labels:
            if sum(abs(x) for x in v) > 1 + tol:
                raise InstanceError(f"label {v} has l1 norm above 1")
        if not 0 <= self.alpha <= 1:
            raise InstanceError("alpha must lie in [0, 1]")

    @property
    def n_edges(self):
        return len(self.labels)

    @property
    def n_vertices(self):
        return len(self.labels) + 1

    @property
    def dim(self):
        return len(self.labels[0])

    def weighted_total(self):
        """Sum of w(e_j) h(e_j): the deviation target."""
        a = self.alpha
        total = [0] * self.dim
        for j, v in enumerate(self.labels, start=1):
            w = a if j % 2 else 1 - a
            for i, x in enumerate(v):
                total[i] += w * x
        return tuple(total)


@dataclass
class IntervalSplit:
    """Integer cut positions plus which side of the first cut is inside."""

    cut_points: list
    inside_first: bool
    bound_met: bool = True


def size_floor(n_edges, k):
    """Minimum matching size n/2 - (2k+1), as the least admissible integer."""
    return max(0, math.ceil(Fraction(n_edges + 1, 2) - (2 * k + 1)))


def deviation_budget(k):
    return 4 * k + 2


class _Splitter:
    """Exact scaled-integer (or float) evaluation of interval splits.

    The walk G[x] = sum of +h over odd edges <= x minus sum of h over even
    edges <= x reduces every interval selection to a handful of differences:
    the label sum of the candidate set is H_E + sum over inside intervals of
    G[b]-G[a], and the candidate count is floor(L/2) + sum of (b%2 - a%2).
    """

    def __init__(self, path: PathInstance):
        self.path = path
        L = path.n_edges
        self.L = L
        self.k = path.dim
        self.exact = path.exact
        if path.exact:
            dl = 1
            for v in path.labels:
                for x in v:
                    if isinstance(x, Fraction):
                        dl = dl * x.denominator // math.gcd(dl, x.denominator)
            a = Fraction(path.alpha)
            self.p, self.q = a.numerator, a.denominator
            self.dl = dl
            scaled = [tuple(int(x * dl) for x in v) for v in path.labels]
        else:
            self.p, self.q, self.dl = float(path.alpha), 1, 1
            scaled = [tuple(float(x) for x in v) for v in path.labels]
        self.hs = scaled
        G = [tuple([0] * self.k)]
        for j, v in enumerate(scaled, start=1):
            s = 1 if j % 2 else -1
            G.append(tuple(g + s * x for g, x in zip(G[-1], v)))
        self.G = G
        # target piece p*G[L] (exact) or alpha*G[L] (float), in scaled units
        self.tgt = tuple(self.p * x for x in G[L])
        self.denom = self.q * self.dl  # scaled units per deviation unit

    def evaluate(self, cuts, inside_first, collect=False):
        """(scaled deviation, matching size[, selected edges]) of a split."""
        L, k, q = self.L, self.k, self.q
        G = self.G
        bounds = [0] + list(cuts) + [L]
        S = [0] * k
        size = L // 2
        flags = []
        for i in range(len(bounds) - 1):
            inside = (i % 2 == 0) == inside_first
            flags.append(inside)
            if inside:
                a, b = bounds[i], bounds[i + 1]
                Ga, Gb = G[a], G[b]
                for t in range(k):
                    S[t] += Gb[t] - Ga[t]
                size += (b % 2) - (a % 2)
        D = [q * S[t] - self.tgt[t] for t in range(k)]
        dropped = set()
        hs = self.hs
        for i, c in enumerate(cuts):
            left_in, right_in = flags[i], flags[i + 1]
            bad = (left_in and not right_in and c % 2 == 1) or \
                  (not left_in and right_in and c % 2 == 0)
            if not bad or c in dropped:
                continue
            la, lb = hs[c - 1], hs[c]
            da = sum(abs(D[t] - q * la[t]) for t in range(k))
            db = sum(abs(D[t] - q * lb[t]) for t in range(k))
            drop, lab = (c, la) if da < db else (c + 1, lb)
            dropped.add(drop)
            for t in range(k):
                D[t] -= q * lab[t]
            size -= 1
        dev = sum(abs(x) for x in D)
        if not collect:
            return dev, size
        edges = []
        cuts_list = list(cuts)
        for j in range(1, L + 1):
            idx = bisect.bisect_right(cuts_list, j - 1)
            inside = (idx % 2 == 0) == inside_first
            wanted = (j % 2 == 1) == inside
            if wanted and j not in dropped:
                edges.append((j - 1, j))
        if len(edges) != size:
            raise InvariantError("split size bookkeeping diverged")
        return dev, size, edges

    def unscale(self, dev):
        if self.exact:
            return Fraction(dev, self.denom)
        return dev


def _seed_starts(L, k, alpha):
    m = round(float(alpha) * L)
    starts = []
    for inf in (True, False):
        starts.append(((), inf))
        for c in (m - 1, m, m + 1):
            if 0 < c < L:
                starts.append(((c,), inf))
        qs = sorted({round(j * L / (2 * k + 1)) for j in range(1, 2 * k + 1)})
        qs = tuple(c for c in qs if 0 < c < L)
        if qs:
            starts.append((qs, inf))
    return starts


def split_path(path: PathInstance, k: int, seed: int = 0):
    """Search for a split within the deviation and size budgets.

    Returns (Matching, IntervalSplit, deviation).  The split's ``bound_met``
    flag reports whether deviation <= 4k+2 and |M| >= n/2 - (2k+1) both hold;
    the search never silently weakens either bound.
    """
    ev = _Splitter(path)
    L = ev.L
    smin = size_floor(L, k)
    max_cuts = min(deviation_budget(k), max(0, L - 1))
    budget_scaled = deviation_budget(k) * ev.denom
    rng = random.Random(derive_seed(seed, "split-path"))
    thorough = L <= 64  # small paths: keep optimizing, do not stop at budget

    def key(dev, size, cuts, inf):
        return (dev, -size, tuple(cuts), 0 if inf else 1)

    best = None

    def note(dev, size, cuts, inf):
        nonlocal best
        kk = key(dev, size, cuts, inf)
        if best is None or kk < best:
            best = kk

    def feasible(dev, size):
        return dev <= budget_scaled and size >= smin

    starts = _seed_starts(L, k, path.alpha)
    for cuts, inf in starts:
        dev, size = ev.evaluate(cuts, inf)
        note(dev, size, cuts, inf)
    if not thorough and best is not None and feasible(best[0], -best[1]):
        return _finish(ev, best, smin, budget_scaled)

    max_restarts = 200 * max(1, k)
    max_steps = 50 * (L + 1)
    if thorough:
        max_restarts = min(max_restarts, 40)
        max_steps = min(max_steps, 1500)
    for restart in range(max_restarts):
        if restart < len(starts):
            cuts, inf = list(starts[restart][0]), starts[restart][1]
        else:
            ncut = rng.randrange(0, max_cuts + 1)
            cuts = sorted(rng.sample(range(1, L), min(ncut, L - 1))) if L > 1 else []
            inf = rng.random() < 0.5
        dev, size = ev.evaluate(cuts, inf)
        obj = (max(0, smin - size), dev)
        note(dev, size, cuts, inf)
        if not thorough and feasible(dev, size):
            return _finish(ev, best, smin, budget_scaled)
        stall = 0
        for _ in range(max_steps):
            move = rng.random()
            nc, ninf = list(cuts), inf
            if move < 0.55 and nc:
                i = rng.randrange(len(nc))
                step = rng.choice((1, -1, 2, -2, 3, -3, 5, -5, 8, -8,
                                   16, -16, 32, -32, 64, -64))
                c2 = nc[i] + step
                if not 0 < c2 < L:
                    continue
                nc[i] = c2
                nc.sort()
                if len(set(nc)) != len(nc):
                    continue
            elif move < 0.8 and len(nc) < max_cuts and L > 1:
                c2 = rng.randrange(1, L)
                if c2 in nc:
                    continue
                nc.append(c2)
                nc.sort()
            elif move < 0.95 and nc:
                nc.pop(rng.randrange(len(nc)))
            else:
                ninf = not inf
            ndev, nsize = ev.evaluate(nc, ninf)
            nobj = (max(0, smin - nsize), ndev)
            if nobj < obj or (nobj == obj and rng.random() < 0.5):
                stall = 0 if nobj < obj else stall + 1
                cuts, inf, obj, dev, size = nc, ninf, nobj, ndev, nsize
                note(dev, size, cuts, inf)
                if not thorough and feasible(dev, size):
                    return _finish(ev, best, smin, budget_scaled)
            else:
                stall += 1
            if stall > 400:
                break
        if thorough and best is not None and best[0] == 0 and -best[1] >= smin:
            break  # nothing can beat a deviation-0, size-feasible split
    return _finish(ev, best, smin, budget_scaled)


def _finish(ev, best, smin, budget_scaled):
    dev, negsize, cuts, inf_flag = best
    inside_first = inf_flag == 0
    dev2, size, edges = ev.evaluate(cuts, inside_first, collect=True)
    if dev2 != dev or size != -negsize:
        raise InvariantError("final split re-evaluation disagreed with search")
    matching = Matching(edges)
    if not matching.is_disjoint():
        raise InvariantError("split produced overlapping edges")
    met = dev <= budget_scaled and size >= smin
    split = IntervalSplit(list(cuts), inside_first, bound_met=met)
    return matching, split, ev.unscale(dev)


def exhaustive_split_oracle(path: PathInstance, k: int):
    """True minimum deviation over all splits with at most 4k+2 cuts.

    Ties prefer larger matchings, then lexicographically smaller cut vectors,
    then inside_first=True.  Exact arithmetic whenever the path is exact.
    """
    L = path.n_edges
    if L > DEFAULT_BUDGET.path_split_edges:
        raise BudgetError(
            f"split oracle limited to {DEFAULT_BUDGET.path_split_edges} edges"
        )
    ev = _Splitter(path)
    max_cuts = min(deviation_budget(k), max(0, L - 1))
    best = None
    for ncuts in range(max_cuts + 1):
        for cuts in combinations(range(1, L), ncuts):
            for inf in (True, False):
                dev, size = ev.evaluate(cuts, inf)
                kk = (dev, -size, cuts, 0 if inf else 1)
                if best is None or kk < best:
                    best = kk
    dev, negsize, cuts, inf_flag = best
    _, size, edges = ev.evaluate(cuts, inf_flag == 0, collect=True)
    matching = Matching(edges)
    if not matching.is_disjoint():
        raise InvariantError("oracle split produced overlapping edges")
    return matching, ev.unscale(dev)
