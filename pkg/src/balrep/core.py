"""Vector-labelled host graphs and the imbalance functional.

Hosts are complete graphs, complete bipartite graphs, complete multipartite
graphs, or complete r-partite r-uniform hypergraphs.  Every edge carries a
length-k label vector h(e); a colouring with palette 1..k is the special case
where h(e) is a standard basis vector.  A subgraph G' is *representative* when
h(G')/e(G') equals h(G)/e(G); ``imbalance`` reports the l1 distance from that
target.  For a colour-balanced host and a perfect matching this distance is
exactly the total colour deviation (each colour off by |count - t|).

Arithmetic is exact (ints / fractions.Fraction) whenever the labels were built
from a colouring, and plain floats otherwise.  Vertices are dense 0-based
integers; parts are contiguous ranges; unordered pairs are stored (min, max).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


class InstanceError(ValueError):
    """Raised for malformed instances or out-of-contract arguments."""


class BudgetError(RuntimeError):
    """Raised when an exhaustive routine is asked to exceed its size budget."""


class InvariantError(RuntimeError):
    """Raised when a verified invariant fails at runtime."""


# ---------------------------------------------------------------------------
# labels and small vector helpers

FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class Label:
    """A length-k edge label; ``exact`` marks int/Fraction coordinates."""

    coords: tuple
    exact: bool = True

    def l1(self):
        return sum(abs(x) for x in self.coords)


def vzero(k):
    return (0,) * k


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def l1norm(a):
    return sum(abs(x) for x in a)


def vsum(vectors, k):
    total = [0] * k
    for v in vectors:
        for i, x in enumerate(v):
            total[i] += x
    return tuple(total)


def colour_to_vector(colours: Sequence[int], k: int) -> list[tuple]:
    """Encode a palette-[1..k] colouring as standard basis label vectors.

    Edge i of the result carries the basis vector of colours[i].  Downstream,
    imbalance of a matching under these labels equals the colour deviation
    f_c computed from raw counts.
    """
    out = []
    for c in colours:
        if not 1 <= c <= k:
            raise InstanceError(f"colour {c} outside palette 1..{k}")
        v = [0] * k
        v[c - 1] = 1
        out.append(tuple(v))
    return out


def derive_seed(seed: int, tag: str) -> int:
    """Stable 64-bit sub-seed for a named sub-task of a seeded run."""
    digest = hashlib.sha256(f"{seed}/{tag}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# ---------------------------------------------------------------------------
# instances


def _check_annotations(n_edges, colours, labels, k):
    if (colours is None) == (labels is None):
        raise InstanceError("exactly one of colours/labels must be given")
    if colours is not None:
        if len(colours) != n_edges:
            raise InstanceError(f"expected {n_edges} colours, got {len(colours)}")
        return colour_to_vector(colours, k), True
    if len(labels) != n_edges:
        raise InstanceError(f"expected {n_edges} labels, got {len(labels)}")
    labels = [tuple(v) for v in labels]
    for v in labels:
        if len(v) != k:
            raise InstanceError(f"label length {len(v)} != k={k}")
    exact = all(
        isinstance(x, (int, Fraction)) and not isinstance(x, bool)
        for v in labels
        for x in v
    )
    return labels, exact


class _Instance:
    """Common behaviour: aligned edge list + label list, cached totals."""

    kind = "?"

    def __init__(self):
        self._edge_index = None
        self._label_total = None

    # subclasses set: k, labels (list of tuples), colours (list | None), exact

    def edge_list(self) -> list[tuple]:
        raise NotImplementedError

    @property
    def edge_count(self):
        return len(self.labels)

    def edge_index(self, edge) -> int:
        if self._edge_index is None:
            self._edge_index = {e: i for i, e in enumerate(self.edge_list())}
        key = tuple(sorted(edge))
        try:
            return self._edge_index[key]
        except KeyError:
            raise InstanceError(f"{edge} is not an edge of this {self.kind} instance")

    def label(self, edge) -> tuple:
        return self.labels[self.edge_index(edge)]

    def label_total(self) -> tuple:
        """h(G) = sum of all edge labels."""
        if self._label_total is None:
            self._label_total = vsum(self.labels, self.k)
        return self._label_total


class CompleteInstance(_Instance):
    """K_N with a label on every unordered pair, pairs in lexicographic order."""

    kind = "complete"

    def __init__(self, n_vertices, k, colours=None, labels=None):
        super().__init__()
        if n_vertices < 2:
            raise InstanceError("need at least 2 vertices")
        self.n_vertices = n_vertices
        self.k = k
        m = n_vertices * (n_vertices - 1) // 2
        self.labels, self.exact = _check_annotations(m, colours, labels, k)
        self.colours = list(colours) if colours is not None else None

    def edge_list(self):
        return [tuple(e) for e in combinations(range(self.n_vertices), 2)]

    def edge_index(self, edge):
        u, v = edge
        if u > v:
            u, v = v, u
        N = self.n_vertices
        if not (0 <= u < v < N):
            raise InstanceError(f"{edge} is not an edge of K_{N}")
        return u * (2 * N - u - 1) // 2 + (v - u - 1)


class BipartiteInstance(_Instance):
    """K_{n,n}: left vertices 0..n-1, right vertices n..2n-1, all cross pairs.

    Edge (i, n+j) sits at index i*n + j.
    """

    kind = "bipartite"

    def __init__(self, n, k, colours=None, labels=None):
        super().__init__()
        if n < 1:
            raise InstanceError("need n >= 1")
        self.n = n
        self.n_vertices = 2 * n
        self.k = k
        self.labels, self.exact = _check_annotations(n * n, colours, labels, k)
        self.colours = list(colours) if colours is not None else None

    def edge_list(self):
        n = self.n
        return [(i, n + j) for i in range(n) for j in range(n)]

    def edge_index(self, edge):
        u, v = edge
        if u > v:
            u, v = v, u
        n = self.n
        if not (0 <= u < n <= v < 2 * n):
            raise InstanceError(f"{edge} is not an edge of K_{{{n},{n}}}")
        return u * n + (v - n)


class MultipartiteInstance(_Instance):
    """Complete r-partite graph; parts are contiguous vertex ranges."""

    kind = "multipartite"

    def __init__(self, part_sizes, k, colours=None, labels=None):
        super().__init__()
        if any(s < 0 for s in part_sizes):
            raise InstanceError("negative part size")
        self.part_sizes = list(part_sizes)
        self.n_vertices = sum(part_sizes)
        self.k = k
        starts = [0]
        for s in part_sizes:
            starts.append(starts[-1] + s)
        self.parts = [range(starts[i], starts[i + 1]) for i in range(len(part_sizes))]
        self._part_of = []
        for i, s in enumerate(part_sizes):
            self._part_of.extend([i] * s)
        edges = self.edge_list()
        self.labels, self.exact = _check_annotations(len(edges), colours, labels, k)
        self.colours = list(colours) if colours is not None else None

    def part_of(self, v):
        return self._part_of[v]

    def edge_list(self):
        po = self._part_of
        return [
            (u, v)
            for u, v in combinations(range(self.n_vertices), 2)
            if po[u] != po[v]
        ]


class HypergraphInstance(_Instance):
    """r-uniform hypergraph host on r*n vertices.

    ``partite=True``: complete r-partite (edges = transversals of the r
    contiguous parts of size n).  ``partite=False``: complete r-uniform
    (edges = all r-subsets).  Edges are sorted tuples in lexicographic order.
    """

    kind = "hypergraph"

    def __init__(self, r, n, k, colours=None, labels=None, partite=False):
        super().__init__()
        if r < 2 or n < 1:
            raise InstanceError("need r >= 2 and n >= 1")
        self.r = r
        self.n = n
        self.n_vertices = r * n
        self.k = k
        self.partite = partite
        if partite:
            self.parts = [range(i * n, (i + 1) * n) for i in range(r)]
        else:
            self.parts = None
        edges = self.edge_list()
        self.labels, self.exact = _check_annotations(len(edges), colours, labels, k)
        self.colours = list(colours) if colours is not None else None

    def edge_list(self):
        if self.partite:
            ranges = self.parts
            edges = [()]
            for rg in ranges:
                edges = [e + (v,) for e in edges for v in rg]
            return edges
        return [tuple(e) for e in combinations(range(self.n_vertices), self.r)]


# ---------------------------------------------------------------------------
# matchings and imbalance


@dataclass
class Matching:
    """A set of pairwise vertex-disjoint edges (pairs or r-tuples)."""

    edges: list = field(default_factory=list)

    def vertices(self):
        seen = set()
        for e in self.edges:
            seen.update(e)
        return seen

    def is_disjoint(self):
        seen = set()
        for e in self.edges:
            for v in e:
                if v in seen:
                    return False
                seen.add(v)
        return True

    def is_perfect(self, instance) -> bool:
        return self.is_disjoint() and len(self.vertices()) == instance.n_vertices

    def sorted_edges(self):
        return sorted(tuple(sorted(e)) for e in self.edges)


@dataclass
class ImbalanceReport:
    """Deviation of a subgraph from the representative label target.

    ``ledger``, when present, itemizes upper bounds on the deviation
    contributed by each pipeline stage; their sum bounds ``total_l1``.
    """

    per_coordinate: tuple
    total_l1: object
    exact: bool = True
    ledger: dict | None = None

    def __post_init__(self):
        expected = sum(abs(x) for x in self.per_coordinate)
        if self.exact:
            assert self.total_l1 == expected
        # float mode: trust caller within tolerance


def imbalance(instance, subgraph_edges: Iterable) -> ImbalanceReport:
    """f_h of a subgraph: ``h(G') - (e(G')/e(G)) h(G)`` coordinatewise, plus l1.

    Works for any edge subset, which generalizes the colour deviation f_c of
    perfect matchings (they coincide on colour-balanced colour-encoded hosts).
    """
    edges = list(subgraph_edges)
    m = instance.edge_count
    if m == 0:
        raise InstanceError("host has no edges")
    k = instance.k
    sub = vsum((instance.labels[instance.edge_index(e)] for e in edges), k)
    total = instance.label_total()
    if instance.exact:
        ratio = Fraction(len(edges), m)
    else:
        ratio = len(edges) / m
    per = vsub(sub, vscale(ratio, total))
    return ImbalanceReport(per, l1norm(per), instance.exact)


def normalize(instance):
    """Shift labels to zero mean and scale so every ``l1`` norm is <= 1.

    Returns ``(instance', shift, scale)`` with h' = scale*(h - shift); f_h on
    the original equals f_h on the result divided by scale (shift-invariance).
    The scale is 1/2 unless some centred label is longer than 2.
    """
    if instance.edge_count == 0:
        raise InstanceError("host has no edges")
    k = instance.k
    total = instance.label_total()
    m = instance.edge_count
    if instance.exact:
        shift = tuple(Fraction(x, m) for x in total)
    else:
        shift = tuple(x / m for x in total)
    if instance.colours is not None:
        # every edge of one colour carries the same basis label, so centre
        # and scale one representative per colour and share the tuples
        reps = {}
        for c in set(instance.colours):
            v = [0] * k
            v[c - 1] = 1
            reps[c] = vsub(tuple(v), shift)
        worst = max(l1norm(v) for v in reps.values())
        centred = None
    else:
        centred = [vsub(v, shift) for v in instance.labels]
        worst = max((l1norm(v) for v in centred), default=0)
    if instance.exact:
        scale = Fraction(1, 2) if worst <= 2 else Fraction(1, 1) / worst
    else:
        scale = 0.5 if worst <= 2.0 + FLOAT_TOL else 1.0 / worst
    if centred is None:
        scaled = {c: vscale(scale, v) for c, v in reps.items()}
        new_labels = [scaled[c] for c in instance.colours]
    else:
        new_labels = [vscale(scale, v) for v in centred]
    inst2 = _with_labels(instance, new_labels)
    inst2._label_total = vscale(scale, vsub(total, vscale(m, shift)))
    return inst2, Label(shift, instance.exact), scale


def _with_labels(instance, labels):
    """Copy an instance with replaced labels (colours dropped)."""
    if isinstance(instance, CompleteInstance):
        return CompleteInstance(instance.n_vertices, instance.k, labels=labels)
    if isinstance(instance, BipartiteInstance):
        return BipartiteInstance(instance.n, instance.k, labels=labels)
    if isinstance(instance, MultipartiteInstance):
        return MultipartiteInstance(instance.part_sizes, instance.k, labels=labels)
    if isinstance(instance, HypergraphInstance):
        return HypergraphInstance(
            instance.r, instance.n, instance.k, labels=labels, partite=instance.partite
        )
    raise TypeError(type(instance))


# ---------------------------------------------------------------------------
# JSON round trip (shared with the CLI)


def instance_to_dict(instance) -> dict:
    doc = {"type": instance.kind, "k": instance.k}
    if isinstance(instance, CompleteInstance):
        doc["n"] = instance.n_vertices
    elif isinstance(instance, BipartiteInstance):
        doc["n"] = instance.n
    elif isinstance(instance, MultipartiteInstance):
        doc["n"] = instance.n_vertices
        doc["parts"] = [list(p) for p in instance.parts]
    elif isinstance(instance, HypergraphInstance):
        doc["n"] = instance.n
        doc["r"] = instance.r
        if instance.partite:
            doc["parts"] = [list(p) for p in instance.parts]
    doc["edges"] = [list(e) for e in instance.edge_list()]
    if instance.colours is not None:
        doc["colours"] = list(instance.colours)
    else:
        doc["labels"] = [[float(x) for x in v] for v in instance.labels]
    return doc


def instance_from_dict(doc: dict):
    try:
        kind = doc["type"]
        k = int(doc["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"bad instance document: {exc}")
    colours = doc.get("colours")
    labels = doc.get("labels")
    if labels is not None:
        labels = [tuple(float(x) for x in v) for v in labels]
    if kind == "complete":
        inst = CompleteInstance(int(doc["n"]), k, colours=colours, labels=labels)
    elif kind == "bipartite":
        inst = BipartiteInstance(int(doc["n"]), k, colours=colours, labels=labels)
    elif kind == "multipartite":
        parts = doc.get("parts")
        if parts is None:
            raise InstanceError("multipartite instance needs parts")
        sizes = [len(p) for p in parts]
        expect = 0
        for p in parts:
            for v in p:
                if v != expect:
                    raise InstanceError("parts must be contiguous ranges in order")
                expect += 1
        inst = MultipartiteInstance(sizes, k, colours=colours, labels=labels)
    elif kind == "hypergraph":
        r = int(doc.get("r", 0))
        inst = HypergraphInstance(
            r, int(doc["n"]), k, colours=colours, labels=labels,
            partite=doc.get("parts") is not None,
        )
    else:
        raise InstanceError(f"unknown instance type {kind!r}")
    edges = doc.get("edges")
    if edges is not None:
        declared = [tuple(e) for e in edges]
        if declared != inst.edge_list():
            raise InstanceError("edge list does not match canonical enumeration")
    return inst


def dumps_canonical(doc: dict) -> str:
    """Deterministic JSON used for every artefact the package writes."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def load_instance(path):
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_dict(json.load(fh))


def save_instance(instance, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(instance_to_dict(instance)))
