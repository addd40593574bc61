"""Near-representative copies of bounded-degree spanning subgraphs.

A spanning pattern graph H embeds into a labelled complete host in three
moves.  First the pattern's vertices are split into independent classes whose
average degrees all sit close to the overall average degree; a certificate
``(r, C)`` with ``sum_i (n_i/n)(d_i - d)^2 <= C^2`` quantifies the spread.
Second the host's vertices are partitioned at random into classes of matching
sizes, resampled until a second-moment test certifies that the average over
part-respecting embeddings is close to the average over all embeddings.
Third the copy itself is built one class at a time: embedding class i is a
perfect-matching problem on an auxiliary complete bipartite graph whose edge
labels are the conditional expectations of the final label sum, so each level
moves that expectation by exactly the auxiliary matching's deviation.  The
drifts telescope, giving a per-level ledger whose sum bounds the final error.

Class constructions are provided for three pattern families: disjoint copies
of a fixed small graph (cyclic shifts), arbitrary bounded-degree graphs
(sampled proper colourings with deterministically checked concentration
bounds), and forests (a centroid-guided deletion of a few vertices followed
by a near-balanced proper 2-colouring, refined degree-by-degree into four
classes).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from math import isqrt

from .bipartite import solve_bipartite
from .core import (
    BipartiteInstance,
    BudgetError,
    CompleteInstance,
    ImbalanceReport,
    InstanceError,
    InvariantError,
    MultipartiteInstance,
    derive_seed,
    imbalance,
    l1norm,
    normalize,
    vadd,
    vscale,
    vsub,
    vsum,
    vzero,
)

MAX_HOST_SAMPLES = 64
MAX_COLOURING_SAMPLES = 1000
GLAUBER_BURN_FACTOR = 50
MAX_FACTOR_COMPONENT = 16


# ---------------------------------------------------------------------------
# domain types


class PatternGraph:
    """Simple undirected graph on vertices 0..n-1: the subgraph to embed."""

    def __init__(self, n, edges):
        if n < 1:
            raise InstanceError("pattern needs at least one vertex")
        adj = [[] for _ in range(n)]
        seen = set()
        canon = []
        for e in edges:
            u, v = e
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise InstanceError(f"bad pattern edge {tuple(e)}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise InstanceError(f"duplicate pattern edge {(u, v)}")
            seen.add((u, v))
            canon.append((u, v))
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges = sorted(canon)
        self.adj = [sorted(a) for a in adj]
        self.adj_sets = [set(a) for a in adj]
        self.degrees = [len(a) for a in adj]
        self.max_degree = max(self.degrees, default=0)

    @property
    def edge_count(self):
        return len(self.edges)

    @property
    def average_degree(self) -> Fraction:
        return Fraction(2 * len(self.edges), self.n)

    def degree(self, v):
        return self.degrees[v]

    def components(self):
        """Vertex sets of connected components, each sorted, ordered by minimum."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_forest(self) -> bool:
        return len(self.edges) + len(self.components()) == self.n


class UniformPartition:
    """Independent-set partition of a pattern with a degree-spread certificate.

    ``certificate = (r, C)`` asserts ``sum_i (n_i/n)(d_i - d)^2 <= C^2`` where
    ``d_i`` is the average degree of class i and ``d`` the overall average.
    The left-hand side is recomputed exactly on construction and the claim
    rejected if it fails, so every instance that exists is self-validating.
    Empty classes are permitted and contribute nothing to the spread.
    """

    def __init__(self, pattern, parts, c_squared=None):
        n = pattern.n
        cover = sorted(v for part in parts for v in part)
        if cover != list(range(n)):
            raise InstanceError("classes do not partition the vertex set")
        part_of = [0] * n
        for i, part in enumerate(parts):
            for v in part:
                part_of[v] = i
        for u, v in pattern.edges:
            if part_of[u] == part_of[v]:
                raise InstanceError(
                    f"class {part_of[u]} is not independent: contains edge {(u, v)}"
                )
        self.pattern = pattern
        self.parts = [sorted(p) for p in parts]
        self.part_of = part_of
        self.r = len(parts)
        self.sizes = [len(p) for p in self.parts]
        self.degree_sums = [
            sum(pattern.degrees[v] for v in p) for p in self.parts
        ]
        self.class_degrees = [
            Fraction(s, max(sz, 1))
            for s, sz in zip(self.degree_sums, self.sizes)
        ]
        d = pattern.average_degree
        spread = sum(
            (Fraction(sz, n) * (di - d) ** 2 for sz, di in
             zip(self.sizes, self.class_degrees)),
            start=Fraction(0),
        )
        self.spread_squared = spread
        if c_squared is None:
            c_squared = spread
        c_squared = Fraction(c_squared)
        if spread > c_squared:
            raise InvariantError(
                f"degree spread {spread} exceeds certified bound {c_squared}"
            )
        self.c_squared = c_squared
        self.certificate = (self.r, math.sqrt(c_squared))
        counts = [[0] * self.r for _ in range(self.r)]
        for u, v in pattern.edges:
            i, j = part_of[u], part_of[v]
            counts[i][j] += 1
            counts[j][i] += 1
        self.cross_counts = counts

    def rho(self, i, j) -> Fraction:
        """Edge density of the pattern between classes i and j."""
        if i == j or self.sizes[i] == 0 or self.sizes[j] == 0:
            return Fraction(0)
        return Fraction(self.cross_counts[i][j], self.sizes[i] * self.sizes[j])

    def second_moments(self):
        """(Q, R): the density and degree second moments of the partition.

        ``Q = sum_{i,j} n_i n_j rho_ij^2`` over ordered class pairs and
        ``R = sum_i (n_i/n) d_i^2 - d^2 >= 0``; both are exact and feed the
        acceptance threshold of :func:`host_partition`.
        """
        n = self.pattern.n
        q = sum(
            (self.sizes[i] * self.sizes[j] * self.rho(i, j) ** 2
             for i in range(self.r) for j in range(self.r)),
            start=Fraction(0),
        )
        m2 = sum(
            (Fraction(sz, n) * di ** 2
             for sz, di in zip(self.sizes, self.class_degrees)),
            start=Fraction(0),
        )
        return q, m2 - self.pattern.average_degree ** 2


class PartwiseEmbedding:
    """Injective map of a pattern into a host, class i landing in host part i.

    Checked on construction: the map is a bijection onto the host's vertex
    set, the image of pattern class i is exactly host part i, and every
    pattern edge maps to a pair straddling two different host parts.
    """

    def __init__(self, pattern, partition, host_parts, mapping):
        if len(mapping) != pattern.n:
            raise InstanceError("mapping must cover every pattern vertex")
        if len(set(mapping)) != pattern.n:
            raise InvariantError("embedding is not injective")
        if len(host_parts) != partition.r:
            raise InstanceError("host part count differs from class count")
        for i, part in enumerate(partition.parts):
            if sorted(mapping[v] for v in part) != sorted(host_parts[i]):
                raise InvariantError(f"image of class {i} is not host part {i}")
        owner = {}
        for i, hp in enumerate(host_parts):
            for b in hp:
                owner[b] = i
        for u, v in pattern.edges:
            if owner[mapping[u]] == owner[mapping[v]]:
                raise InvariantError(
                    f"pattern edge {(u, v)} maps inside host part {owner[mapping[u]]}"
                )
        self.pattern = pattern
        self.partition = partition
        self.host_parts = [list(p) for p in host_parts]
        self.mapping = list(mapping)

    def edge_images(self):
        return sorted(
            tuple(sorted((self.mapping[u], self.mapping[v])))
            for u, v in self.pattern.edges
        )


# ---------------------------------------------------------------------------
# pattern serialization (no labels: patterns carry structure only)


def pattern_to_dict(pattern: PatternGraph) -> dict:
    return {
        "type": "pattern",
        "n": pattern.n,
        "edges": [list(e) for e in pattern.edges],
    }


def pattern_from_dict(doc: dict) -> PatternGraph:
    try:
        if doc["type"] != "pattern":
            raise InstanceError(f"not a pattern document: {doc['type']!r}")
        return PatternGraph(int(doc["n"]), [tuple(e) for e in doc["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"bad pattern document: {exc}")


# ---------------------------------------------------------------------------
# level-by-level embedding


def partwise_embed(host, pattern, partition, seed: int = 0):
    """Embed the pattern class by class, each level a bipartite matching.

    Returns ``(PartwiseEmbedding, ImbalanceReport)`` where the report
    measures the copy's label sum against the average over all
    class-respecting embeddings of the pattern into the host.  Level i
    assigns class i: the auxiliary complete bipartite graph on (class i,
    host part i) carries labels ``h_i(a, b) = sum_v p(a, bv) h(bv)`` where
    ``p(a, e)`` is the probability that host edge e lies in the image of a
    uniform completion that sends a to b — 0 or 1 for edges into already
    embedded parts, a degree fraction for future parts.  Labels are scaled
    by the maximum degree so their l1 norms stay at most 1.

    The report's ledger lists each level's movement of the conditional
    expectation; on exact hosts the movement is asserted to equal the
    auxiliary matching's deviation, and the sum bounds the final error.
    """
    if not isinstance(host, MultipartiteInstance):
        raise InstanceError("partwise_embed expects a multipartite host")
    if pattern.n != host.n_vertices:
        raise InstanceError("pattern order differs from host order")
    if partition.pattern is not pattern and partition.pattern.edges != pattern.edges:
        raise InstanceError("partition was built for a different pattern")
    r = partition.r
    if len(host.parts) != r:
        raise InstanceError("host part count differs from class count")
    sizes = [len(p) for p in host.parts]
    if sizes != partition.sizes:
        raise InstanceError(f"class sizes {partition.sizes} != host part sizes {sizes}")
    n, k, exact = host.n_vertices, host.k, host.exact
    delta = max(pattern.max_degree, 1)
    labels = host.labels
    vparts = [list(p) for p in host.parts]
    part_of = host.part_of

    if exact:
        frac = Fraction
    else:
        frac = lambda a, b: a / b  # noqa: E731

    # row sums towards each part: row[b][j] = sum of h(b, w) over w in part j
    row = [[vzero(k) for _ in range(r)] for _ in range(n)]
    for idx, (u, v) in enumerate(host.edge_list()):
        lab = labels[idx]
        row[u][part_of(v)] = vadd(row[u][part_of(v)], lab)
        row[v][part_of(u)] = vadd(row[v][part_of(u)], lab)
    cross = [[vsum((row[b][j] for b in vparts[i]), k) for j in range(r)]
             for i in range(r)]

    phi = [None] * pattern.n
    upart = partition.part_of

    def expectation():
        """Mean of the copy's label sum over completions of the current map."""
        tot = vzero(k)
        for x, y in pattern.edges:
            p, q = upart[x], upart[y]
            bx, by = phi[x], phi[y]
            if bx is not None and by is not None:
                tot = vadd(tot, labels[host.edge_index((bx, by))])
            elif bx is not None:
                tot = vadd(tot, vscale(frac(1, sizes[q]), row[bx][q]))
            elif by is not None:
                tot = vadd(tot, vscale(frac(1, sizes[p]), row[by][p]))
            else:
                tot = vadd(tot, vscale(frac(1, sizes[p] * sizes[q]), cross[p][q]))
        return tot

    mu_pw = expectation()
    prev = mu_pw
    drifts = []
    for i in range(r):
        big_u, big_v = partition.parts[i], vparts[i]
        ni = sizes[i]
        if ni == 0:
            drifts.append(Fraction(0) if exact else 0.0)
            continue
        aux_labels = []
        for a in big_u:
            done = []
            future = [0] * r
            for y in pattern.adj[a]:
                if phi[y] is None:
                    if upart[y] <= i:
                        raise InvariantError(
                            f"vertex {y} of class {upart[y]} missed embed level"
                        )
                    future[upart[y]] += 1
                else:
                    done.append(phi[y])
            # the edge probabilities at a sum to deg(a) exactly: each
            # embedded neighbour contributes 1, each future class j the
            # fraction future[j]/|part j| once per part-j vertex
            p_total = len(done) + sum(
                Fraction(cnt, sizes[j]) * sizes[j]
                for j, cnt in enumerate(future) if cnt
            )
            if p_total != pattern.degrees[a]:
                raise InvariantError(f"edge probabilities at {a} sum to {p_total}")
            for b in big_v:
                hv = vsum((labels[host.edge_index((b, w))] for w in done), k)
                for j in range(i + 1, r):
                    if future[j]:
                        hv = vadd(hv, vscale(frac(future[j], sizes[j]), row[b][j]))
                aux_labels.append(vscale(frac(1, delta), hv))
        aux = BipartiteInstance(ni, k, labels=aux_labels)
        matching, rep = solve_bipartite(
            aux, seed=derive_seed(seed, f"embed-level-{i + 1}")
        )
        for le, ri in matching.edges:
            phi[big_u[le]] = big_v[ri - ni]
        cur = expectation()
        drift = vsub(cur, prev)
        if exact and drift != vscale(delta, rep.per_coordinate):
            raise InvariantError(
                f"level {i + 1} drift differs from its matching deviation"
            )
        drifts.append(l1norm(drift))
        prev = cur

    per = vsub(prev, mu_pw)
    report = ImbalanceReport(per, l1norm(per), exact, {"levels": drifts})
    if exact and report.total_l1 > sum(drifts):
        raise InvariantError("deviation exceeds the sum of level drifts")
    embedding = PartwiseEmbedding(pattern, partition, vparts, phi)
    return embedding, report


# ---------------------------------------------------------------------------
# class constructions


def factor_partition(factor: PatternGraph, n: int) -> UniformPartition:
    """Classes for n/r disjoint copies of an r-vertex graph, by cyclic shifts.

    Copy c sends its template vertex l to class (l + c) mod r, so every class
    holds one vertex per copy and each template position is represented
    either floor or ceiling of (n/r)/r times.  Class degree sums then sit
    within r^2 of the equal share n*d/r, which yields the certificate
    (r, r^3/n).
    """
    r = factor.n
    if n % r:
        raise InstanceError(f"{r}-vertex copies cannot tile {n} vertices")
    copies = n // r
    edges = [
        (c * r + u, c * r + v) for c in range(copies) for u, v in factor.edges
    ]
    big = PatternGraph(n, edges)
    parts = [[] for _ in range(r)]
    for c in range(copies):
        for l in range(r):
            parts[(l + c) % r].append(c * r + l)
    share = Fraction(2 * big.edge_count, r)
    for i, part in enumerate(parts):
        s = sum(big.degrees[v] for v in part)
        if abs(s - share) > r * r:
            raise InvariantError(
                f"class {i} degree sum {s} strays more than {r * r} from {share}"
            )
    return UniformPartition(big, parts, Fraction(r**3, n) ** 2)


def bounded_degree_partition(pattern: PatternGraph, seed: int = 0) -> UniformPartition:
    """Classes for an arbitrary pattern: sampled proper 3Δ-colourings.

    Single-site dynamics (recolour a uniform vertex with a uniform legal
    colour) runs for 50 n log n steps between checks; a sample is accepted
    when every colour class i satisfies both ``|n_i - n/3Δ| <= √(2n log 14Δ)``
    and ``|m_i - dn/3Δ| <= Δ √(2n log 14Δ)`` with m_i the class degree sum.
    The checks are deterministic, so sampler bias can only cost retries,
    never correctness; 1000 failed samples raise a budget error.  The
    certificate is recomputed from the accepted class statistics.
    """
    n = pattern.n
    delta = max(pattern.max_degree, 1)
    q = 3 * delta
    if n < q:
        raise InstanceError(f"need at least 3*max_degree = {q} vertices, have {n}")
    rng = random.Random(derive_seed(seed, "pattern-colouring"))
    col = [0] * n
    for v in range(n):
        used = {col[u] for u in pattern.adj[v] if u < v}
        col[v] = next(c for c in range(q) if c not in used)
    steps = int(GLAUBER_BURN_FACTOR * n * math.log(n)) if n > 1 else 1
    size_slack = math.sqrt(2 * n * math.log(14 * delta))
    deg_slack = delta * size_slack
    size_share = Fraction(n, q)
    deg_share = Fraction(2 * pattern.edge_count, q)
    for _ in range(MAX_COLOURING_SAMPLES):
        for _ in range(steps):
            v = rng.randrange(n)
            banned = {col[u] for u in pattern.adj[v]}
            legal = [c for c in range(q) if c not in banned]
            col[v] = legal[rng.randrange(len(legal))]
        counts = [0] * q
        degsums = [0] * q
        for v in range(n):
            counts[col[v]] += 1
            degsums[col[v]] += pattern.degrees[v]
        if all(abs(c - size_share) <= size_slack for c in counts) and all(
            abs(s - deg_share) <= deg_slack for s in degsums
        ):
            parts = [[v for v in range(n) if col[v] == i] for i in range(q)]
            return UniformPartition(pattern, parts)
    raise BudgetError(
        f"no proper {q}-colouring met the concentration bounds in "
        f"{MAX_COLOURING_SAMPLES} samples"
    )


def _tree_centroid(adj, alive, comp):
    """Vertex of the tree on ``comp`` whose removal leaves pieces <= |comp|/2."""
    root = comp[0]
    parent = {root: None}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if alive[w] and w not in parent:
                parent[w] = v
                order.append(w)
                stack.append(w)
    size = {v: 1 for v in order}
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    total = len(order)
    best = None
    for v in order:
        below = [size[w] for w in adj[v] if alive[w] and parent.get(w) == v]
        worst = max([total - size[v]] + below)
        if best is None or (worst, v) < best:
            best = (worst, v)
    return best[1]


def _alive_components(adj, alive, within=None):
    """Components of the surviving forest, ordered by smallest vertex."""
    universe = within if within is not None else range(len(adj))
    seen = set()
    out = []
    for s in sorted(universe):
        if not alive[s] or s in seen:
            continue
        seen.add(s)
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if alive[w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def forest_balanced_deletion(pattern: PatternGraph, budget: int):
    """Delete at most ``budget`` vertices so the rest 2-colours near-evenly.

    Returns ``(deleted, colouring)`` where ``colouring`` maps every surviving
    vertex to 1 or 2, the colouring is proper, and each colour class has size
    within ``n / 2**budget`` of ``(n - |deleted|)/2``.

    Each round deletes a centroid of the current too-large component and
    flips whole subcomponents (largest imbalance first) while the dominant
    class stays dominant; the first flip that would overshoot identifies a
    component at most half the size of the previous one, so the class gap
    halves per round.  The loop runs min(budget, floor(log2 n)) rounds and,
    when the budget exceeds that, one extra deletion settles a gap of one.
    """
    if budget < 1:
        raise InstanceError("deletion budget must be at least 1")
    if not pattern.is_forest():
        raise InstanceError("pattern contains a cycle")
    n = pattern.n
    adj = pattern.adj
    alive = [True] * n
    colour = {}
    deleted = []

    def delta_of(comp):
        return sum(1 if colour[v] == 2 else -1 for v in comp)

    def flip(comp):
        for v in comp:
            colour[v] = 3 - colour[v]

    rounds = min(budget, n.bit_length() - 1)
    if rounds == 0:
        for v in range(n):
            colour[v] = 1
        return [], colour

    gap = 0
    current = None  # component the next round recurses into; None = whole forest
    for _ in range(rounds):
        if current is None:
            comps = _alive_components(adj, alive)
            big = max(comps, key=len)
            v = _tree_centroid(adj, alive, big)
            alive[v] = False
            deleted.append(v)
            pieces = _alive_components(adj, alive)
            for piece in pieces:
                dist = {piece[0]: 0}
                stack = [piece[0]]
                while stack:
                    x = stack.pop()
                    for w in adj[x]:
                        if alive[w] and w not in dist:
                            dist[w] = dist[x] + 1
                            stack.append(w)
                for x in piece:
                    colour[x] = 1 + dist[x] % 2
            gap = sum(1 if colour[x] == 2 else -1 for x in colour)
            if gap < 0:
                for x in colour:
                    colour[x] = 3 - colour[x]
                gap = -gap
        else:
            v = _tree_centroid(adj, alive, current)
            gap -= 1 if colour[v] == 2 else -1
            alive[v] = False
            del colour[v]
            deleted.append(v)
            pieces = _alive_components(adj, alive, within=current)
        if gap == 0:
            return sorted(deleted), colour
        flippable = sorted(
            ((delta_of(p), p) for p in pieces if delta_of(p) > 0),
            key=lambda t: (-t[0], t[1][0]),
        )
        current = None
        for d, piece in flippable:
            if gap - 2 * d > 0:
                flip(piece)
                gap -= 2 * d
            elif gap - 2 * d == 0:
                flip(piece)
                return sorted(deleted), colour
            else:
                current = piece
                break
        if current is None:
            raise InvariantError("no piece can cross the class gap")
    if budget > n.bit_length() - 1 and gap == 1 and len(deleted) < budget:
        # the crossing piece is a lone dominant-class vertex; remove it
        v = current[0]
        alive[v] = False
        del colour[v]
        deleted.append(v)
    return sorted(deleted), colour


def forest_partition(pattern: PatternGraph) -> UniformPartition:
    """Four classes for a forest, average degrees within O(Δ/√n) of the mean.

    Large-degree forests (16 Δ^2 >= n) delete two vertices, keep the
    resulting two near-balanced proper classes, and park the deletions in
    singleton classes.  Small-degree forests delete up to floor(√n/Δ)
    vertices, fold them evenly back into the two classes, then split each
    class in two: its few non-isolated vertices get a fresh proper
    2-colouring and its isolated vertices are halved bucket by degree
    bucket, alternating which side takes the odd element.  The certificate
    is recomputed from the actual class statistics either way.
    """
    if not pattern.is_forest():
        raise InstanceError("pattern contains a cycle")
    n = pattern.n
    delta = pattern.max_degree
    if delta == 0:
        parts = [[v for v in range(n) if v % 4 == i] for i in range(4)]
        return UniformPartition(pattern, parts)
    if 16 * delta * delta >= n:
        removed, colour = forest_balanced_deletion(pattern, 2)
        classes = [
            sorted(v for v, c in colour.items() if c == 1),
            sorted(v for v, c in colour.items() if c == 2),
        ]
        removed = list(removed)
        while len(removed) < 2 and (classes[0] or classes[1]):
            donor = classes[0] if classes[0] else classes[1]
            removed.append(donor.pop(0))
        parts = classes + [[x] for x in sorted(removed)]
        while len(parts) < 4:
            parts.append([])
        return UniformPartition(pattern, parts)

    budget = isqrt(n) // delta
    removed, colour = forest_balanced_deletion(pattern, budget)
    classes = ([], [])
    for v in sorted(colour):
        classes[colour[v] - 1].append(v)
    for i, x in enumerate(sorted(removed)):
        classes[i % 2].append(x)

    parts = []
    for side in classes:
        members = set(side)
        inside = [(u, v) for u, v in pattern.edges if u in members and v in members]
        touched = sorted({v for e in inside for v in e})
        sub_adj = {v: [] for v in touched}
        for u, v in inside:
            sub_adj[u].append(v)
            sub_adj[v].append(u)
        half = {}
        for s in touched:
            if s in half:
                continue
            half[s] = 0
            stack = [s]
            while stack:
                x = stack.pop()
                for w in sub_adj[x]:
                    if w not in half:
                        half[w] = 1 - half[x]
                        stack.append(w)
        sides = ([v for v in touched if half[v] == 0],
                 [v for v in touched if half[v] == 1])
        isolated = sorted(v for v in side if v not in sub_adj)
        take_first = 0
        for x in range(delta + 1):
            bucket = [v for v in isolated if pattern.degrees[v] == x]
            share = len(bucket) // 2
            if len(bucket) % 2:
                share += 1 - take_first
                take_first ^= 1
            sides[0].extend(bucket[:share])
            sides[1].extend(bucket[share:])
        parts.extend([sorted(sides[0]), sorted(sides[1])])
    return UniformPartition(pattern, parts)


# ---------------------------------------------------------------------------
# host-side partition


def host_partition(host, partition: UniformPartition, seed: int = 0):
    """Partition the host's vertices to match the pattern's class sizes.

    Uniformly random size-matched partitions are drawn until the gap between
    the class-respecting average and the representative target passes a
    second-moment test: on zero-mean unit labels the expected squared l2 gap
    is at most ``2(Q + R n)`` with Q and R the partition's density and degree
    second moments, so the threshold ``sqrt(2) * sqrt(2 (Q + R n))`` fails
    with probability below one half and 64 tries are ample.  The gap is
    evaluated exactly as ``sum_e h(e) rho(e) - mu`` on normalized labels.

    The returned multipartite instance relabels host vertices part by part;
    ``vertex_map`` translates back, ``host_parts`` lists the original-label
    parts, and ``samples_used``/``deviation_sq_normalized`` record the search.
    """
    if not isinstance(host, CompleteInstance):
        raise InstanceError("host_partition expects a complete host")
    n = host.n_vertices
    if sum(partition.sizes) != n:
        raise InstanceError(
            f"class sizes sum to {sum(partition.sizes)}, host has {n} vertices"
        )
    norm_inst, _shift, _scale = normalize(host)
    labels = norm_inst.labels
    q2, r2 = partition.second_moments()
    threshold_sq = 4 * (q2 + r2 * n)
    rng = random.Random(derive_seed(seed, "host-partition"))
    edge_list = host.edge_list()
    k = host.k
    rho = [[partition.rho(i, j) if host.exact else float(partition.rho(i, j))
            for j in range(partition.r)] for i in range(partition.r)]
    best = None
    for attempt in range(MAX_HOST_SAMPLES):
        perm = rng.sample(range(n), n)
        parts, pos = [], 0
        for s in partition.sizes:
            parts.append(sorted(perm[pos:pos + s]))
            pos += s
        where = [0] * n
        for i, part in enumerate(parts):
            for v in part:
                where[v] = i
        gap = vzero(k)
        for idx, (u, v) in enumerate(edge_list):
            i, j = where[u], where[v]
            if i != j and rho[i][j]:
                gap = vadd(gap, vscale(rho[i][j], labels[idx]))
        dev_sq = sum(x * x for x in gap)
        if best is None or dev_sq < best:
            best = dev_sq
        if dev_sq <= threshold_sq:
            vertex_map = [v for part in parts for v in part]
            new_part = []
            for i, s in enumerate(partition.sizes):
                new_part.extend([i] * s)
            pairs = [
                (x, y)
                for x in range(n) for y in range(x + 1, n)
                if new_part[x] != new_part[y]
            ]
            hosted = [host.edge_index((vertex_map[x], vertex_map[y]))
                      for x, y in pairs]
            if host.colours is not None:
                multi = MultipartiteInstance(
                    partition.sizes, k,
                    colours=[host.colours[e] for e in hosted],
                )
            else:
                multi = MultipartiteInstance(
                    partition.sizes, k,
                    labels=[host.labels[e] for e in hosted],
                )
            multi.vertex_map = vertex_map
            multi.host_parts = parts
            multi.samples_used = attempt + 1
            multi.deviation_sq_normalized = dev_sq
            return multi
    err = BudgetError(
        f"no host partition met the second-moment threshold in "
        f"{MAX_HOST_SAMPLES} tries"
    )
    err.best_deviation_sq = best
    err.threshold_sq = threshold_sq
    raise err


# ---------------------------------------------------------------------------
# end-to-end pipeline


def _induced(pattern, verts):
    index = {v: i for i, v in enumerate(verts)}
    edges = [
        (index[u], index[v])
        for u, v in pattern.edges
        if u in index and v in index
    ]
    return PatternGraph(len(verts), edges)


def _isomorphism(g: PatternGraph, h: PatternGraph):
    """A vertex bijection g -> h preserving adjacency both ways, or None."""
    n = g.n
    if h.n != n or g.edge_count != h.edge_count:
        return None
    if sorted(g.degrees) != sorted(h.degrees):
        return None
    order = sorted(range(n), key=lambda v: (-g.degrees[v], v))
    mapping = [None] * n
    used = [False] * n

    def place(idx):
        if idx == n:
            return True
        a = order[idx]
        for b in range(n):
            if used[b] or h.degrees[b] != g.degrees[a]:
                continue
            ok = True
            for j in range(idx):
                x = order[j]
                if (x in g.adj_sets[a]) != (mapping[x] in h.adj_sets[b]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[a] = b
            used[b] = True
            if place(idx + 1):
                return True
            mapping[a] = None
            used[b] = False
        return False

    return list(mapping) if place(0) else None


def _choose_partition(pattern: PatternGraph, seed: int):
    """Pick the class construction suited to the pattern's shape."""
    if pattern.is_forest():
        return forest_partition(pattern), "forest"
    comps = pattern.components()
    size = len(comps[0])
    if size <= MAX_FACTOR_COMPONENT and all(len(c) == size for c in comps):
        template = _induced(pattern, comps[0])
        placements = []
        for comp in comps:
            iso = _isomorphism(template, _induced(pattern, comp))
            if iso is None:
                placements = None
                break
            placements.append([comp[b] for b in iso])
        if placements is not None:
            parts = [[] for _ in range(size)]
            for c, verts in enumerate(placements):
                for l, v in enumerate(verts):
                    parts[(l + c) % size].append(v)
            cert = Fraction(size**3, pattern.n) ** 2
            return UniformPartition(pattern, parts, cert), "factor"
    return bounded_degree_partition(pattern, seed=seed), "bounded-degree"


def embed_spanning(host, pattern: PatternGraph, seed: int = 0):
    """Near-representative copy of a spanning pattern in a complete host.

    Chooses the class construction (forests, disjoint copies of one small
    graph, or generic bounded degree), partitions the host to match, embeds
    class by class, and reports the copy's deviation from the representative
    target ``(e(H)/e(K_n)) h(K_n)``.  The ledger splits the deviation into
    the per-level drifts and the class-average gap, whose sum bounds it.
    """
    if not isinstance(host, CompleteInstance):
        raise InstanceError("embed_spanning expects a complete host")
    if pattern.n != host.n_vertices:
        raise InstanceError(
            f"pattern has {pattern.n} vertices, host has {host.n_vertices}"
        )
    partition, strategy = _choose_partition(pattern, seed)
    multi = host_partition(host, partition, seed=seed)
    inner, rep_pw = partwise_embed(multi, pattern, partition, seed=seed)
    mapping = [multi.vertex_map[b] for b in inner.mapping]
    embedding = PartwiseEmbedding(pattern, partition, multi.host_parts, mapping)
    copy_edges = embedding.edge_images()
    report = imbalance(host, copy_edges)
    copy_sum = vsum((host.labels[host.edge_index(e)] for e in copy_edges), host.k)
    mu_pw = vsub(copy_sum, rep_pw.per_coordinate)
    target = vsub(copy_sum, report.per_coordinate)
    gap = l1norm(vsub(mu_pw, target))
    report.ledger = {
        "levels": rep_pw.ledger["levels"],
        "partition": gap,
        "strategy": strategy,
        "samples": multi.samples_used,
    }
    if host.exact and report.total_l1 > sum(rep_pw.ledger["levels"]) + gap:
        raise InvariantError("deviation exceeds the ledger bound")
    return embedding, report
