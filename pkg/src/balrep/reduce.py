"""Reductions to the bipartite solver: complete graphs and uniform hypergraphs.

A uniformly random equipartition of a complete host concentrates the label sum
of its crossing edges near the proportional share, so a sample passes a
second-moment threshold with probability at least one half and a handful of
resamples finds a good split.  The crossing edges of an accepted split form a
complete bipartite (or complete multipartite) host: complete graphs hand them
straight to the bipartite solver, and r-uniform hypergraphs recurse by
averaging labels over the last part until two parts remain.

The recursion's bookkeeping rests on one identity: the auxiliary bipartite
host that matches sub-matching edges to the last part has proportional target
exactly the averaged-label sum of the sub-matching.  Per-level errors
therefore telescope, and every report's ledger lists them next to the single
partition gap incurred at the top split.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .bipartite import solve_bipartite
from .core import (
    BipartiteInstance,
    BudgetError,
    CompleteInstance,
    HypergraphInstance,
    InstanceError,
    InvariantError,
    Matching,
    derive_seed,
    imbalance,
    l1norm,
    normalize,
    vscale,
    vsub,
    vsum,
)

MAX_PARTITION_SAMPLES = 64


@dataclass
class PartitionSample:
    """An accepted equipartition with its crossing-edge deviation.

    ``assignment`` maps every host vertex to its part index.  The deviations
    measure, in normalized label units (zero-mean, scaled), how far the label
    sum over crossing edges (pairs or transversals with one vertex per part)
    sits from its proportional share.  ``deviation_l2`` is the float root of
    an exactly computed square; ``deviation_l1`` stays exact on exact hosts.
    """

    assignment: dict
    deviation_l2: float
    deviation_l1: object

    def parts(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for v, p in self.assignment.items():
            out.setdefault(p, []).append(v)
        return [sorted(out[p]) for p in sorted(out)]


def crossing_deviation(instance, parts):
    """(vector, l1, squared l2) deviation of the crossing-edge label sum.

    Crossing edges are all tuples with exactly one vertex in each part.  The
    deviation is against the proportional share of the instance's label
    total, so on a zero-mean normalized instance it is just the crossing sum.
    """
    cross = 0
    total = None
    for combo in product(*parts):
        lab = instance.labels[instance.edge_index(tuple(sorted(combo)))]
        total = lab if total is None else tuple(a + b for a, b in zip(total, lab))
        cross += 1
    if total is None:
        raise InstanceError("empty part in partition")
    m = instance.edge_count
    ratio = Fraction(cross, m) if instance.exact else cross / m
    dev = vsub(total, vscale(ratio, instance.label_total()))
    sq = sum(x * x for x in dev)
    return dev, l1norm(dev), sq


def _sample_split(instance, n_parts, part_size, threshold_sq, seed, tag):
    """Resample uniform equipartitions until the l2 threshold holds."""
    norm_inst, _shift, _scale = normalize(instance)
    rng = random.Random(derive_seed(seed, tag))
    vertices = list(range(instance.n_vertices))
    best = None
    for _ in range(MAX_PARTITION_SAMPLES):
        perm = rng.sample(vertices, len(vertices))
        parts = [
            sorted(perm[i * part_size : (i + 1) * part_size]) for i in range(n_parts)
        ]
        _dev, dl1, sq = crossing_deviation(norm_inst, parts)
        sample = PartitionSample(
            {v: i for i, part in enumerate(parts) for v in part},
            math.sqrt(float(sq)),
            dl1,
        )
        if sq <= threshold_sq:
            return sample
        if best is None or sq < best[0]:
            best = (sq, sample)
    err = BudgetError(
        f"no equipartition met the deviation threshold in "
        f"{MAX_PARTITION_SAMPLES} samples"
    )
    err.best_sample = best[1]
    raise err


def split_complete(instance: CompleteInstance, seed: int = 0) -> PartitionSample:
    """Equipartition of K_{2n} whose crossing label sum deviates by <= sqrt(2)*n.

    The deviation is measured in l2 norm on the normalized labels; the
    second moment of the crossing sum over uniform equipartitions is below
    n^2, so each sample passes with probability at least 1/2 and 64 draws
    fail with probability at most 2^-64.
    """
    if not isinstance(instance, CompleteInstance):
        raise InstanceError("split_complete expects a complete-graph instance")
    if instance.n_vertices % 2:
        raise InstanceError("split_complete needs an even vertex count")
    n = instance.n_vertices // 2
    return _sample_split(instance, 2, n, 2 * n * n, seed, "split-complete")


def split_hypergraph(instance: HypergraphInstance, seed: int = 0) -> PartitionSample:
    """r equal parts of K_{rn}^{(r)} with transversal label-sum deviation
    at most sqrt(2)*(rn)^(r-1) in normalized l2 norm."""
    if not isinstance(instance, HypergraphInstance):
        raise InstanceError("split_hypergraph expects a hypergraph instance")
    if instance.partite:
        raise InstanceError("instance is already partitioned")
    r, n = instance.r, instance.n
    threshold_sq = 2 * (r * n) ** (2 * (r - 1))
    return _sample_split(instance, r, n, threshold_sq, seed, "split-hypergraph")


def solve_complete(instance: CompleteInstance, seed: int = 0):
    """Perfect matching of K_{2n} with imbalance O(k^2), plus its report.

    Splits the host into an accepted equipartition, solves the crossing
    K_{n,n} with the bipartite pipeline, and maps the matching back.  The
    report's ledger extends the bipartite one with the partition gap (the l1
    distance between the crossing-edge proportional target and the full
    host's), and the ledger sum still bounds the measured imbalance.
    """
    if not isinstance(instance, CompleteInstance):
        raise InstanceError("solve_complete expects a complete-graph instance")
    sample = split_complete(instance, seed=seed)
    side_a, side_b = sample.parts()
    n, k = len(side_a), instance.k
    if instance.colours is not None:
        cols = [
            instance.colours[instance.edge_index((a, b))]
            for a in side_a
            for b in side_b
        ]
        bip = BipartiteInstance(n, k, colours=cols)
    else:
        labs = [
            instance.labels[instance.edge_index((a, b))]
            for a in side_a
            for b in side_b
        ]
        bip = BipartiteInstance(n, k, labels=labs)
    sub_matching, sub_report = solve_bipartite(bip, seed=seed)
    edges = [
        tuple(sorted((side_a[u], side_b[v - n]))) for u, v in sub_matching.edges
    ]
    matching = Matching(sorted(edges))
    if not matching.is_perfect(instance):
        raise InvariantError("lifted edge set is not a perfect matching")
    report = imbalance(instance, matching.edges)
    cross_total = vsum(
        (instance.labels[instance.edge_index((a, b))] for a in side_a for b in side_b),
        k,
    )
    if instance.exact:
        target_cross = vscale(Fraction(1, n), cross_total)
        target_full = vscale(
            Fraction(n, instance.edge_count), instance.label_total()
        )
    else:
        target_cross = vscale(1.0 / n, cross_total)
        target_full = vscale(n / instance.edge_count, instance.label_total())
    gap = l1norm(vsub(target_cross, target_full))
    ledger = dict(sub_report.ledger or {})
    ledger["partition"] = gap
    ledger["partition_l2_normalized"] = sample.deviation_l2
    ledger["bipartite_f"] = sub_report.total_l1
    if instance.exact and report.total_l1 > sub_report.total_l1 + gap:
        raise InvariantError("partition gap fails to bound the lifted imbalance")
    report.ledger = ledger
    return matching, report


def _solve_parts(parts, label_of, k, exact, seed):
    """Recursive partite solver returning (edges on host vertices, level log).

    ``label_of`` maps a sorted transversal tuple of the current parts to its
    label.  With two parts the crossing pairs feed the bipartite solver
    directly; otherwise labels are averaged over the last part, the smaller
    problem is solved, and an auxiliary bipartite host matches its edges to
    the last part.  That auxiliary host's proportional target is exactly the
    averaged-label sum of the sub-matching, so each level's bipartite
    imbalance is the whole error the level adds.
    """
    r = len(parts)
    n = len(parts[0])
    if r == 2:
        side_a, side_b = parts
        labs = [label_of(tuple(sorted((a, b)))) for a in side_a for b in side_b]
        bip = BipartiteInstance(n, k, labels=labs)
        sub_matching, sub_report = solve_bipartite(
            bip, seed=derive_seed(seed, "level-2")
        )
        edges = [
            tuple(sorted((side_a[u], side_b[v - n]))) for u, v in sub_matching.edges
        ]
        return edges, [{"r": 2, "bipartite_f": sub_report.total_l1}]
    last = parts[-1]
    inv_n = Fraction(1, n) if exact else 1.0 / n
    cache: dict[tuple, tuple] = {}

    def averaged(short: tuple) -> tuple:
        got = cache.get(short)
        if got is None:
            got = vscale(
                inv_n, vsum((label_of(tuple(sorted(short + (u,)))) for u in last), k)
            )
            cache[short] = got
        return got

    sub_edges, levels = _solve_parts(parts[:-1], averaged, k, exact, seed)
    sub_edges = sorted(tuple(sorted(e)) for e in sub_edges)
    labs = [
        label_of(tuple(sorted(e + (u,)))) for e in sub_edges for u in last
    ]
    aux = BipartiteInstance(n, k, labels=labs)
    aux_matching, aux_report = solve_bipartite(
        aux, seed=derive_seed(seed, f"level-{r}")
    )
    edges = [
        tuple(sorted(sub_edges[u] + (last[v - n],))) for u, v in aux_matching.edges
    ]
    lifted = vsum((label_of(e) for e in edges), k)
    averaged_sub = vsum((averaged(e) for e in sub_edges), k)
    drift = l1norm(vsub(lifted, averaged_sub))
    if exact and drift != aux_report.total_l1:
        raise InvariantError("lift drift disagrees with the auxiliary imbalance")
    levels.append({"r": r, "bipartite_f": aux_report.total_l1})
    return edges, levels


def solve_hypergraph(instance: HypergraphInstance, seed: int = 0):
    """Perfect matching of an r-uniform host with imbalance O(r*k^2).

    Complete hosts are first split into r parts (``split_hypergraph``);
    partite hosts use their given parts.  The report's ledger lists one
    bipartite imbalance per recursion level plus the top partition gap, and
    their sum bounds the measured imbalance.
    """
    if not isinstance(instance, HypergraphInstance):
        raise InstanceError("solve_hypergraph expects a hypergraph instance")
    r, n, k = instance.r, instance.n, instance.k
    if instance.partite:
        parts = [sorted(p) for p in instance.parts]
        sample = None
    else:
        sample = split_hypergraph(instance, seed=seed)
        parts = sample.parts()

    def label_of(edge: tuple) -> tuple:
        return instance.labels[instance.edge_index(edge)]

    edges, levels = _solve_parts(parts, label_of, k, instance.exact, seed)
    matching = Matching(sorted(tuple(sorted(e)) for e in edges))
    if not matching.is_perfect(instance):
        raise InvariantError("assembled edge set is not a perfect matching")
    report = imbalance(instance, matching.edges)
    cross_total = vsum((label_of(tuple(sorted(c))) for c in product(*parts)), k)
    cross_count = n ** r
    if instance.exact:
        target_cross = vscale(Fraction(n, cross_count), cross_total)
        target_full = vscale(
            Fraction(n, instance.edge_count), instance.label_total()
        )
    else:
        target_cross = vscale(n / cross_count, cross_total)
        target_full = vscale(n / instance.edge_count, instance.label_total())
    gap = l1norm(vsub(target_cross, target_full))
    ledger = {
        "levels": levels,
        "partition": gap,
        "partition_l2_normalized": sample.deviation_l2 if sample else 0.0,
    }
    bound = sum(lv["bipartite_f"] for lv in levels) + gap
    if instance.exact and report.total_l1 > bound:
        raise InvariantError("level ledger fails to bound the lifted imbalance")
    report.ledger = ledger
    return matching, report
