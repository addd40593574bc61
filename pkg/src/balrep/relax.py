"""Fractional perfect matchings with few independent fractional cycles.

``relax`` turns the uniform fractional matching of K_{n,n} (every edge 1/n)
into one whose fractional edges form a subgraph of cyclomatic number <= k,
while preserving every vertex sum and the overall label sum exactly.  Each
pivot finds an integer dependency among the label vectors of k+1 fundamental
cycles and walks along it until some edge weight hits 0 or 1.

The streaming engine keeps a persistent spanning forest of the fractional
subgraph (small-to-large re-rooting, lockstep cut search) so a pivot costs
O(k * cycle length) instead of rebuilding anything from scratch.  Exact mode
stores every weight as an integer numerator over one global denominator Q;
float mode runs the same walk with snapping.  ``pivot_step`` is the explicit
one-step version of the same rule for inspection and testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    BipartiteInstance,
    FLOAT_TOL,
    InstanceError,
    InvariantError,
    Label,
    l1norm,
    vsub,
)

PIVOT_EPS = 1e-12  # float-mode threshold below which a matrix entry is zero


# ---------------------------------------------------------------------------
# public containers


@dataclass
class FractionalMatching:
    """Edge weights in [0,1] with unit vertex sums and a fixed label target.

    ``weights`` maps the host's edge pairs to weights; ``target`` is the label
    sum every valid weighting attains, h(G)/n.  ``exact`` distinguishes
    rational bookkeeping from float bookkeeping.
    """

    instance: BipartiteInstance
    weights: dict
    target: Label
    exact: bool = True

    def fractional_edges(self, tol=FLOAT_TOL):
        out = []
        for e, w in self.weights.items():
            if self.exact:
                if 0 < w < 1:
                    out.append(e)
            elif tol < w < 1 - tol:
                out.append(e)
        return out

    def vertex_sums(self):
        sums = {v: 0 for v in range(2 * self.instance.n)}
        for (u, v), w in self.weights.items():
            sums[u] += w
            sums[v] += w
        return sums

    def label_sum(self):
        inst = self.instance
        total = [0] * inst.k
        for e, w in self.weights.items():
            if not w:
                continue
            lab = inst.labels[inst.edge_index(e)]
            for i, x in enumerate(lab):
                total[i] += w * x
        return tuple(total)

    def cyclomatic_number(self, tol=FLOAT_TOL):
        edges = self.fractional_edges(tol)
        verts = set()
        for u, v in edges:
            verts.add(u)
            verts.add(v)
        parent = {v: v for v in verts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        extra = 0
        for u, v in edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                extra += 1
            else:
                parent[ru] = rv
        return extra

    def verify(self, k=None, tol=FLOAT_TOL):
        """Raise InvariantError unless all three structural invariants hold."""
        if k is None:
            k = self.instance.k
        for e, w in self.weights.items():
            ok = (0 <= w <= 1) if self.exact else (-tol <= w <= 1 + tol)
            if not ok:
                raise InvariantError(f"weight {w} of {e} outside [0,1]")
        for v, s in self.vertex_sums().items():
            if self.exact:
                if s != 1:
                    raise InvariantError(f"vertex {v} sum {s} != 1")
            elif abs(s - 1) > tol:
                raise InvariantError(f"vertex {v} sum {s} != 1 (tol {tol})")
        got = self.label_sum()
        want = self.target.coords
        drift = l1norm(vsub(got, want))
        if self.exact:
            if drift != 0:
                raise InvariantError(f"label sum off target by {drift}")
        elif drift > tol * max(1, self.instance.n):
            raise InvariantError(f"label sum off target by {drift}")
        cyc = self.cyclomatic_number(tol)
        if cyc > k:
            raise InvariantError(f"cyclomatic number {cyc} > k={k}")
        return self


@dataclass
class CycleBasis:
    """Spanning forest + one fundamental cycle per non-forest edge.

    Each cycle is a list of edge pairs starting at its non-forest edge; signs
    alternate +, -, +, ... along the list.
    """

    forest: set
    cycles: list = field(default_factory=list)


def cycle_sign(position):
    return 1 if position % 2 == 0 else -1


# ---------------------------------------------------------------------------
# construction and the explicit (slow-path) pivot


def init_uniform(instance) -> FractionalMatching:
    """The uniform fractional matching: every edge at weight 1/n."""
    if not isinstance(instance, BipartiteInstance):
        raise InstanceError("relaxation expects a bipartite instance")
    n = instance.n
    w = Fraction(1, n) if instance.exact else 1.0 / n
    weights = {e: w for e in instance.edge_list()}
    if instance.exact:
        target = tuple(Fraction(x, n) for x in instance.label_total())
    else:
        target = tuple(x / n for x in instance.label_total())
    return FractionalMatching(instance, weights, Label(target, instance.exact),
                              instance.exact)


def fundamental_cycle_basis(edges) -> CycleBasis:
    """Deterministic BFS forest of the given edge set plus all fundamental cycles.

    ``edges`` is any iterable of vertex pairs.  Components are rooted at their
    lowest vertex and neighbours are scanned in ascending order, so the basis
    is a pure function of the edge set.  Cycles are listed in ascending order
    of their non-forest edge.
    """
    edges = [tuple(sorted(e)) for e in edges]
    adj = {}
    for e in sorted(set(edges)):
        u, v = e
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    for lst in adj.values():
        lst.sort()
    parent_v, parent_e, depth = {}, {}, {}
    forest = set()
    for start in sorted(adj):
        if start in depth:
            continue
        depth[start] = 0
        parent_v[start] = None
        queue = [start]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for v, e in adj[u]:
                if v in depth:
                    continue
                depth[v] = depth[u] + 1
                parent_v[v] = u
                parent_e[v] = e
                forest.add(e)
                queue.append(v)
    cycles = []
    for e in sorted(set(edges)):
        if e in forest:
            continue
        u, v = e
        pu, pv = [], []
        du, dv = depth[u], depth[v]
        while du > dv:
            pu.append(parent_e[u])
            u = parent_v[u]
            du -= 1
        while dv > du:
            pv.append(parent_e[v])
            v = parent_v[v]
            dv -= 1
        while u != v:
            pu.append(parent_e[u])
            u = parent_v[u]
            pv.append(parent_e[v])
            v = parent_v[v]
        cycle = [e] + pv + pu[::-1]
        if len(cycle) % 2:
            raise InvariantError("odd cycle in a bipartite host")
        cycles.append(cycle)
    return CycleBasis(forest, cycles)


def _nullspace_exact(rows, m):
    """Basis of the rational null space of a k x m matrix (Fraction entries)."""
    k = len(rows)
    A = [[Fraction(x) for x in r] for r in rows]
    piv = []  # (row, col)
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, k) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(k):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv.append((r, c))
        r += 1
        if r == k:
            break
    piv_cols = {c for _, c in piv}
    basis = []
    for free in range(m):
        if free in piv_cols:
            continue
        x = [Fraction(0)] * m
        x[free] = Fraction(1)
        for i, c in piv:
            x[c] = -A[i][free]
        basis.append(x)
    return basis


def _nullspace_float(rows, m, eps=PIVOT_EPS):
    k = len(rows)
    A = [[float(x) for x in r] for r in rows]
    piv = []
    r = 0
    for c in range(m):
        pr = max(range(r, k), key=lambda i: abs(A[i][c]), default=None)
        if pr is None or abs(A[pr][c]) <= eps:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1.0 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(k):
            if i != r and abs(A[i][c]) > eps:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv.append((r, c))
        r += 1
        if r == k:
            break
    piv_cols = {c for _, c in piv}
    basis = []
    for free in range(m):
        if free in piv_cols:
            continue
        x = [0.0] * m
        x[free] = 1.0
        for i, c in piv:
            x[c] = -A[i][free]
        basis.append(x)
    return basis


def pivot_step(fm: FractionalMatching, basis: CycleBasis, k: int):
    """One explicit pivot over the first k+1 cycles of ``basis``.

    Returns a new FractionalMatching, or None when the basis has at most k
    cycles (nothing to do: the cyclomatic bound already holds).
    """
    if len(basis.cycles) <= k:
        return None
    picks = basis.cycles[: k + 1]
    inst = fm.instance
    m = len(picks)
    rows = [[0] * m for _ in range(inst.k)]
    for j, cyc in enumerate(picks):
        for pos, e in enumerate(cyc):
            s = cycle_sign(pos)
            lab = inst.labels[inst.edge_index(e)]
            for i, x in enumerate(lab):
                if x:
                    rows[i][j] += s * x
    vectors = _nullspace_exact(rows, m) if fm.exact else _nullspace_float(rows, m)
    if not vectors:
        raise InvariantError("k+1 fundamental cycles with full-rank label matrix")
    for a in vectors:
        delta = {}
        for j, cyc in enumerate(picks):
            if not a[j]:
                continue
            for pos, e in enumerate(cyc):
                delta[e] = delta.get(e, 0) + cycle_sign(pos) * a[j]
        delta = {e: d for e, d in delta.items() if d}
        if not fm.exact:
            delta = {e: d for e, d in delta.items() if abs(d) > PIVOT_EPS}
        if delta:
            break
    else:
        raise InvariantError("every null vector cancels on all edges")
    eps = None
    argmin = None
    for e, d in sorted(delta.items()):
        w = fm.weights[e]
        dist = (1 - w) if d > 0 else w
        step = dist / abs(d)
        if eps is None or step < eps:
            eps, argmin = step, e
    new_weights = dict(fm.weights)
    for e, d in delta.items():
        w = new_weights[e] + eps * d
        if fm.exact:
            if not 0 <= w <= 1:
                raise InvariantError(f"pivot pushed {e} to {w}")
        else:
            if e == argmin:
                w = 1.0 if d > 0 else 0.0
            elif w < FLOAT_TOL:
                w = 0.0
            elif w > 1 - FLOAT_TOL:
                w = 1.0
            if not -FLOAT_TOL <= w <= 1 + FLOAT_TOL:
                raise InvariantError(f"pivot pushed {e} to {w}")
        new_weights[e] = w
    return FractionalMatching(inst, new_weights, fm.target, fm.exact)


# ---------------------------------------------------------------------------
# streaming engine: persistent spanning forest of the fractional subgraph


class _Forest:
    """Spanning forest under edge insertions/deletions, tuned for this walk.

    Vertices are 0..2n-1; edges are dense ints e = u*n + (v-n).  The non-tree
    edge set is exactly the fundamental-cycle index, so its size equals the
    cyclomatic number of the tracked subgraph at all times.
    """

    def __init__(self, n):
        self.n = n
        self.adj = {}      # vertex -> {neighbour: edge}
        self.nontree = {}  # edge -> (u, v)
        self.parent_v = {}
        self.parent_e = {}
        self.depth = {}
        self.root = {}
        self.csize = {}    # root -> component size

    def _reattach(self, x, under, via_edge):
        """Re-root the tree containing x at x and hang it below ``under``."""
        newroot = self.root[under]
        self.parent_v[x] = under
        self.parent_e[x] = via_edge
        self.depth[x] = self.depth[under] + 1
        self.root[x] = newroot
        stack = [x]
        seen = {x, under}
        count = 1
        while stack:
            u = stack.pop()
            du = self.depth[u]
            for v, e in self.adj[u].items():
                if e in self.nontree or v in seen:
                    continue
                seen.add(v)
                count += 1
                self.parent_v[v] = u
                self.parent_e[v] = e
                self.depth[v] = du + 1
                self.root[v] = newroot
                stack.append(v)
        return count

    def add_edge(self, e, u, v):
        adj = self.adj
        new_u = u not in adj
        new_v = v not in adj
        adj.setdefault(u, {})[v] = e
        adj.setdefault(v, {})[u] = e
        if new_u and new_v:
            self.parent_v[u] = None
            self.depth[u] = 0
            self.root[u] = u
            self.csize[u] = 2
            self.parent_v[v] = u
            self.parent_e[v] = e
            self.depth[v] = 1
            self.root[v] = u
            return
        if new_u or new_v:
            x, y = (u, v) if new_u else (v, u)
            ry = self.root[y]
            self.parent_v[x] = y
            self.parent_e[x] = e
            self.depth[x] = self.depth[y] + 1
            self.root[x] = ry
            self.csize[ry] += 1
            return
        ru, rv = self.root[u], self.root[v]
        if ru == rv:
            self.nontree[e] = (u, v)
            return
        su, sv = self.csize[ru], self.csize[rv]
        if su <= sv:
            self._reattach(u, v, e)
            self.csize[rv] = su + sv
            del self.csize[ru]
        else:
            self._reattach(v, u, e)
            self.csize[ru] = su + sv
            del self.csize[rv]

    def remove_edge(self, e, u, v):
        del self.adj[u][v]
        del self.adj[v][u]
        if e in self.nontree:
            del self.nontree[e]
            return
        # tree edge: identify the child endpoint, cut, then try to re-join
        if self.parent_v.get(u) == v and self.parent_e.get(u) == e:
            child, par = u, v
        else:
            child, par = v, u
        S = self._collect_smaller_side(child, par)
        old_root = self.root[par]
        best = None
        for ne, (x, y) in self.nontree.items():
            if (x in S) != (y in S):
                if best is None or ne < best[0]:
                    best = (ne, x, y)
        if best is not None:
            ne, x, y = best
            del self.nontree[ne]
            inside, outside = (x, y) if x in S else (y, x)
            if old_root in S:
                # the S side held the root: rebuild the other side first
                self._rebuild_component(par if par not in S else child)
                self.csize.pop(old_root, None)
                moved = self._reattach(inside, outside, ne)
                self.csize[self.root[outside]] += moved
            else:
                self._reattach(inside, outside, ne)
            return
        self.csize.pop(old_root, None)
        self._rebuild_component(next(iter(S)))
        self._rebuild_component(par if par not in S else child)

    def _collect_smaller_side(self, a, b):
        """Vertex set of whichever side of the cut tree edge (a,b) is smaller.

        Lockstep BFS from both endpoints over tree edges only; the removed
        edge is already out of the adjacency when this runs.
        """
        seen_a, seen_b = {a}, {b}
        qa, qb = [a], [b]
        ia = ib = 0
        while True:
            if ia < len(qa):
                u = qa[ia]
                ia += 1
                for w, e in self.adj[u].items():
                    if e not in self.nontree and w not in seen_a:
                        seen_a.add(w)
                        qa.append(w)
            else:
                return seen_a
            if ib < len(qb):
                u = qb[ib]
                ib += 1
                for w, e in self.adj[u].items():
                    if e not in self.nontree and w not in seen_b:
                        seen_b.add(w)
                        qb.append(w)
            else:
                return seen_b

    def _rebuild_component(self, start):
        self.parent_v[start] = None
        self.parent_e.pop(start, None)
        self.depth[start] = 0
        self.root[start] = start
        stack = [start]
        seen = {start}
        while stack:
            u = stack.pop()
            du = self.depth[u]
            for v, e in self.adj[u].items():
                if e in self.nontree or v in seen:
                    continue
                seen.add(v)
                self.parent_v[v] = u
                self.parent_e[v] = e
                self.depth[v] = du + 1
                self.root[v] = start
                stack.append(v)
        self.csize[start] = len(seen)

    def cycle_edges(self, e):
        """Fundamental cycle of non-tree edge e; signs alternate from slot 0."""
        u, v = self.nontree[e]
        pu, pv = [], []
        du, dv = self.depth[u], self.depth[v]
        while du > dv:
            pu.append(self.parent_e[u])
            u = self.parent_v[u]
            du -= 1
        while dv > du:
            pv.append(self.parent_e[v])
            v = self.parent_v[v]
            dv -= 1
        while u != v:
            pu.append(self.parent_e[u])
            u = self.parent_v[u]
            pv.append(self.parent_e[v])
            v = self.parent_v[v]
        return [e] + pv + pu[::-1]


def _int_nullvector(rows, m):
    """One nonzero integer null vector of an integer k x m matrix, k < m.

    Fraction-free forward elimination (cross-multiplication with per-row gcd
    reduction), then back substitution carried out on (numerator, denominator)
    pairs and cleared to a primitive integer vector.  The returned vector has
    coefficient 1 on the first free column, so it is never the zero vector.
    """
    k = len(rows)
    A = [list(r) for r in rows]
    piv_rows = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, k) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        arc = A[r][c]
        for i in range(r + 1, k):
            aic = A[i][c]
            if aic:
                Ai, Ar = A[i], A[r]
                for j in range(c, m):
                    Ai[j] = Ai[j] * arc - Ar[j] * aic
                g = 0
                for x in Ai:
                    g = math.gcd(g, x)
                    if g == 1:
                        break
                if g > 1:
                    A[i] = [x // g for x in Ai]
        piv_rows.append((r, c))
        r += 1
        if r == k:
            break
    piv_cols = [c for _, c in piv_rows]
    free = next(c for c in range(m) if c not in piv_cols)
    num = [0] * m
    den = [1] * m
    num[free] = 1
    for i, c in reversed(piv_rows):
        Ai = A[i]
        sn, sd = 0, 1
        for j in range(c + 1, m):
            if Ai[j] and num[j]:
                sn = sn * den[j] + Ai[j] * num[j] * sd
                sd *= den[j]
        if sn:
            nn, nd = -sn, sd * Ai[c]
            g = math.gcd(nn, nd)
            num[c], den[c] = nn // g, nd // g
    D = 1
    for d in den:
        D = D * d // math.gcd(D, d)
    xi = [num[j] * (D // den[j]) for j in range(m)]
    g = 0
    for v in xi:
        g = math.gcd(g, v)
    if g > 1:
        xi = [v // g for v in xi]
    return xi


def _float_nullvector(rows, m):
    basis = _nullspace_float(rows, m)
    return basis[0]


class _ExactEngine(_Forest):
    """All-integer streaming relaxation: weights are numerators over global Q."""

    def __init__(self, n, k, hrows):
        super().__init__(n)
        self.k = k
        self.hrows = hrows  # per-edge integer label rows (see _integer_labels)
        self.Q = n
        self.W = {}      # edge -> [numerator, denominator-at-last-touch]
        self.fixed = {}  # edge -> 0 or 1
        self.pivots = 0

    def weight_num(self, e):
        rec = self.W.get(e)
        if rec is None:
            return self.Q // self.n
        num, qe = rec
        if qe != self.Q:
            num *= self.Q // qe
            rec[0] = num
            rec[1] = self.Q
        return num

    def pivot(self):
        k, n = self.k, self.n
        picks = sorted(self.nontree)[: k + 1]
        m = len(picks)
        rows = [[0] * m for _ in range(k)]
        cycles = []
        hrows = self.hrows
        for j, e in enumerate(picks):
            cyc = self.cycle_edges(e)
            cycles.append(cyc)
            sign = 1
            for ce in cyc:
                for i, x in hrows[ce]:
                    rows[i][j] += sign * x
                sign = -sign
        a = _int_nullvector(rows, m)
        delta = {}
        dget = delta.get
        for j, cyc in enumerate(cycles):
            aj = a[j]
            if not aj:
                continue
            s = aj
            for ce in cyc:
                delta[ce] = dget(ce, 0) + s
                s = -s
        Q = self.Q
        moves = []
        best_p = best_q = None
        for e, d in delta.items():
            if not d:
                continue
            w = self.weight_num(e)
            moves.append((e, d, w))
            dist = Q - w if d > 0 else w
            q = -d if d < 0 else d
            if best_p is None or dist * best_q < best_p * q:
                best_p, best_q = dist, q
        if best_p is None:
            raise InvariantError("pivot direction vanished on all edges")
        g = math.gcd(best_p, best_q)
        p, q = best_p // g, best_q // g
        if q > 1:
            self.Q = Q = Q * q
        W = self.W
        for e, d, w in moves:
            if q > 1:
                w *= q
            w2 = w + p * d
            if w2 == 0 or w2 == Q:
                self.fixed[e] = 0 if w2 == 0 else 1
                W.pop(e, None)
                u, v = divmod(e, n)
                self.remove_edge(e, u, n + v)
            else:
                rec = W.get(e)
                if rec is None:
                    W[e] = [w2, Q]
                else:
                    rec[0] = w2
                    rec[1] = Q
        self.pivots += 1
        if self.Q > 1 << 64:
            self._reduce_q()

    def _reduce_q(self):
        f = self.Q // self.n
        for e in list(self.W):
            f = math.gcd(f, self.weight_num(e))
            if f == 1:
                return
        self.Q //= f
        for rec in self.W.values():
            rec[0] //= f
            rec[1] = self.Q

    def run(self):
        n, k = self.n, self.k
        add_edge = self.add_edge
        for e in range(n * n):
            u, c = divmod(e, n)
            add_edge(e, u, n + c)
            while len(self.nontree) > k:
                self.pivot()
        return self


class _FloatEngine(_Forest):
    """Same walk with float weights, wall snapping, and drift accounting."""

    def __init__(self, n, k, labels):
        super().__init__(n)
        self.k = k
        self.labels = labels
        self.W = {}
        self.fixed = {}
        self.pivots = 0

    def weight(self, e):
        return self.W.get(e, 1.0 / self.n)

    def pivot(self):
        k, n = self.k, self.n
        picks = sorted(self.nontree)[: k + 1]
        m = len(picks)
        rows = [[0.0] * m for _ in range(k)]
        cycles = []
        labels = self.labels
        for j, e in enumerate(picks):
            cyc = self.cycle_edges(e)
            cycles.append(cyc)
            sign = 1
            for ce in cyc:
                lab = labels[ce]
                for i in range(k):
                    if lab[i]:
                        rows[i][j] += sign * lab[i]
                sign = -sign
        a = _float_nullvector(rows, m)
        delta = {}
        for j, cyc in enumerate(cycles):
            aj = a[j]
            if abs(aj) <= PIVOT_EPS:
                continue
            s = aj
            for ce in cyc:
                delta[ce] = delta.get(ce, 0.0) + s
                s = -s
        eps = None
        argmin = None
        moves = []
        for e, d in delta.items():
            if abs(d) <= PIVOT_EPS:
                continue
            w = self.weight(e)
            moves.append((e, d, w))
            dist = (1.0 - w) if d > 0 else w
            step = dist / abs(d)
            if eps is None or step < eps:
                eps, argmin = step, e
        if eps is None:
            raise InvariantError("pivot direction vanished on all edges")
        for e, d, w in moves:
            if e == argmin:
                w2 = 1.0 if d > 0 else 0.0
            else:
                w2 = w + eps * d
                if w2 < FLOAT_TOL:
                    w2 = 0.0
                elif w2 > 1.0 - FLOAT_TOL:
                    w2 = 1.0
            if not -FLOAT_TOL <= w2 <= 1.0 + FLOAT_TOL:
                raise InvariantError(
                    f"float pivot pushed edge {e} to {w2}; aborting"
                )
            if w2 == 0.0 or w2 == 1.0:
                self.fixed[e] = int(w2)
                self.W.pop(e, None)
                u, v = divmod(e, n)
                self.remove_edge(e, u, n + v)
            else:
                self.W[e] = w2
        self.pivots += 1

    def run(self):
        n, k = self.n, self.k
        add_edge = self.add_edge
        for e in range(n * n):
            u, c = divmod(e, n)
            add_edge(e, u, n + c)
            while len(self.nontree) > k:
                self.pivot()
        return self


def _integer_labels(instance):
    """Per-edge sparse integer label rows with one scale factor per coordinate.

    Scaling coordinate i of every label by a common positive integer leaves
    the null space of the cycle-label matrix unchanged, so pivots are
    unaffected; it lets the engine stay in integer arithmetic.
    """
    k = instance.k
    dens = [1] * k
    for lab in instance.labels:
        for i, x in enumerate(lab):
            if isinstance(x, Fraction):
                dens[i] = dens[i] * x.denominator // math.gcd(dens[i], x.denominator)
    out = []
    for lab in instance.labels:
        row = []
        for i, x in enumerate(lab):
            if x:
                v = x * dens[i]
                row.append((i, int(v)))
        out.append(tuple(row))
    return out


def relax(instance) -> FractionalMatching:
    """Representative fractional PM whose fractional part has <= k cycles.

    Exact instances run the integer engine; float instances the float engine.
    Every vertex sum and the overall label target are preserved by every
    pivot, and the result is verified before being returned.
    """
    if not isinstance(instance, BipartiteInstance):
        raise InstanceError("relaxation expects a bipartite instance")
    n, k = instance.n, instance.k
    if instance.exact:
        eng = _ExactEngine(n, k, _integer_labels(instance)).run()
        Q = eng.Q
        weights = {}
        for e in range(n * n):
            u, c = divmod(e, n)
            pair = (u, n + c)
            if e in eng.fixed:
                weights[pair] = Fraction(eng.fixed[e])
            else:
                weights[pair] = Fraction(eng.weight_num(e), Q)
        target = tuple(Fraction(x, n) for x in instance.label_total())
        fm = FractionalMatching(instance, weights, Label(target, True), True)
    else:
        eng = _FloatEngine(n, k, instance.labels).run()
        weights = {}
        for e in range(n * n):
            u, c = divmod(e, n)
            pair = (u, n + c)
            if e in eng.fixed:
                weights[pair] = float(eng.fixed[e])
            else:
                weights[pair] = eng.weight(e)
        target = tuple(x / n for x in instance.label_total())
        fm = FractionalMatching(instance, weights, Label(target, False), False)
    fm.pivots = eng.pivots
    return fm.verify(k)
