"""Generators for colour-balanced hosts with no balanced perfect matching.

Three families. On K_{kt,kt}, a block colouring over 2m side-parts forces
every perfect matching to miss some colour badly, giving min f_c >= sqrt(k/2)
for k = 2m^2.  A second bipartite family and the complete-graph family colour
each block pair E(V_i, V_j) by i + j mod k, so every perfect matching's colour
sum is frozen mod k at a value readable off the part sizes alone; perturbing
part sizes (and recolouring a handful of edges to restore exact balance)
locks that residue away from every value a colour-balanced matching could
take.  ``verify_mod_invariant`` recomputes the residue both ways and reports
the attainable balanced residues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    BipartiteInstance,
    CompleteInstance,
    InstanceError,
    InvariantError,
)


@dataclass(frozen=True)
class ConstructionSpec:
    """Recipe behind a generated instance, enough to replay its invariant.

    ``part_sizes`` lists block sizes; bipartite families store the pair
    (left sizes, right sizes).  ``deltas`` are the size offsets from the
    uniform block size (their sum is zero), and ``recolourings`` lists
    (edge, old colour, new colour) fixes applied to restore exact balance.
    """

    family: str
    k: int
    t: int
    m: int | None
    part_sizes: tuple
    deltas: tuple
    recolourings: tuple


def _assert_balanced(colours, k, where):
    counts = [0] * k
    for c in colours:
        counts[c - 1] += 1
    if len(set(counts)) != 1:
        raise InvariantError(f"{where}: colour classes {counts} are not balanced")


def _contiguous_parts(sizes):
    """vertex -> 1-based part index, for contiguous blocks of given sizes."""
    out = []
    for i, s in enumerate(sizes, start=1):
        out.extend([i] * s)
    return out


def gen_knn_sqrt(m: int, t: int):
    """K_{kt,kt} with k = 2m^2 whose matchings all have f_c >= sqrt(k/2).

    Each side splits into 2m blocks of size mt.  For i < j one colour covers
    E(A_i,B_j) u E(A_j,B_i); the 2m diagonals E(A_i,B_i) are merged in
    consecutive pairs into m more colours, for 2m^2 equal classes.  Requires
    odd t.
    """
    if m < 1:
        raise InstanceError("m must be positive")
    if t < 1 or t % 2 == 0:
        raise InstanceError("t must be a positive odd number")
    k = 2 * m * m
    side = k * t
    block = m * t
    pair_colour = {}
    nxt = 1
    for i in range(1, 2 * m + 1):
        for j in range(i + 1, 2 * m + 1):
            pair_colour[(i, j)] = nxt
            nxt += 1
    diag_colour = {}
    for ell in range(1, m + 1):
        diag_colour[2 * ell - 1] = nxt
        diag_colour[2 * ell] = nxt
        nxt += 1
    part = _contiguous_parts([block] * (2 * m))
    colours = []
    for u in range(side):
        for v in range(side):
            a, b = part[u], part[v]
            if a == b:
                colours.append(diag_colour[a])
            else:
                colours.append(pair_colour[(min(a, b), max(a, b))])
    _assert_balanced(colours, k, "gen_knn_sqrt")
    spec = ConstructionSpec(
        "knn_sqrt",
        k,
        t,
        m,
        ((block,) * (2 * m), (block,) * (2 * m)),
        (0,) * (2 * m),
        (),
    )
    return BipartiteInstance(side, k, colours=colours), spec


def gen_knn_modular(k: int, t: int):
    """Colour-balanced K_{kt,kt} whose matchings' colour sum is stuck mod k.

    Left blocks A_1..A_k have size t; edge colours are i + j mod k.  Right
    block sizes are t except |B_1| = t-1 and |B_k| = t+1, which locks the
    residue one step away from every balanced value; for k = 2 with odd t the
    equal-size variant is already locked, so no perturbation is applied.
    """
    if k < 2 or t < 1:
        raise InstanceError("need k >= 2 and t >= 1")
    if k == 2 and t % 2 == 1:
        deltas = (0, 0)
    else:
        deltas = (-1,) + (0,) * (k - 2) + (1,)
    a_sizes = (t,) * k
    b_sizes = tuple(t + d for d in deltas)
    side = k * t
    a_part = _contiguous_parts(a_sizes)
    b_part = _contiguous_parts(b_sizes)
    colours = []
    for u in range(side):
        for v in range(side):
            c = (a_part[u] + b_part[v]) % k
            colours.append(c if c else k)
    _assert_balanced(colours, k, "gen_knn_modular")
    spec = ConstructionSpec(
        "knn_modular", k, t, None, (a_sizes, b_sizes), deltas, ()
    )
    return BipartiteInstance(side, k, colours=colours), spec


def gen_kn(k: int, t: int):
    """Colour-balanced K_{2kt} admitting no colour-balanced perfect matching.

    Blocks V_1..V_k of size 2t + delta_i are coloured i + j mod k (within and
    across blocks); every perfect matching's colour sum is then congruent to
    sum(i*delta_i) mod k.  Three recipes keep that residue unattainable while
    restoring exact balance: odd k shifts the first/last block sizes and
    recolours one edge; even k recolours t edges per odd colour at a single
    vertex (plus, for even t, a shifted pair of blocks and one extra edge).
    """
    if k < 3:
        raise InstanceError("need k >= 3")
    if t < 1:
        raise InstanceError("t must be positive")
    if k % 2 == 1:
        deltas = (-1,) + (0,) * (k - 2) + (1,)
    elif t % 2 == 1:
        deltas = (0,) * k
    else:
        deltas = (0, 1) + (0,) * (k - 3) + (-1,)
    sizes = [2 * t + d for d in deltas]
    part = _contiguous_parts(sizes)
    n = 2 * k * t
    inst_edges = [
        (u, v) for u in range(n) for v in range(u + 1, n)
    ]
    colours = []
    for u, v in inst_edges:
        c = (part[u] + part[v]) % k
        colours.append(c if c else k)

    def block(i):
        lo = sum(sizes[: i - 1])
        return list(range(lo, lo + sizes[i - 1]))

    def edge_pos(u, v):
        if u > v:
            u, v = v, u
        return u * (2 * n - u - 1) // 2 + (v - u - 1)

    recolourings = []

    def recolour(u, v, new):
        pos = edge_pos(u, v)
        old = colours[pos]
        colours[pos] = new
        recolourings.append(((min(u, v), max(u, v)), old, new))

    if k % 2 == 1:
        u, v = block(2)[0], block(k)[0]
        recolour(u, v, 1)
    else:
        v0 = block(k)[0]
        if t % 2 == 1:
            for i in range(1, k, 2):
                for u in block(i)[:t]:
                    recolour(v0, u, i + 1)
        else:
            for i in range(1, k - 2, 2):
                for u in block(i)[:t]:
                    recolour(v0, u, i + 1)
            tail = block(k - 1)
            for u in tail[: t - 1]:
                recolour(v0, u, k)
            recolour(v0, tail[t - 1], 2)
    _assert_balanced(colours, k, "gen_kn")
    spec = ConstructionSpec(
        "kn_modular", k, t, None, tuple(sizes), deltas, tuple(recolourings)
    )
    return CompleteInstance(n, k, colours=colours), spec


@dataclass(frozen=True)
class ModInvariantReport:
    """Colour-sum residue of a perfect matching, computed two ways.

    ``residue_direct`` sums the auxiliary block colours over the matching;
    ``residue_formula`` reads the same value off the part sizes (they must
    agree for every perfect matching).  ``balanced_residues`` collects the
    residues a colour-balanced matching could take given the recolourings;
    ``feasible`` is whether the frozen residue lies in that set.
    """

    residue_direct: int
    residue_formula: int
    balanced_residues: frozenset
    feasible: bool


def verify_mod_invariant(spec: ConstructionSpec, matching) -> ModInvariantReport:
    """Check the matching colour-sum residue identity for a modular family."""
    if spec.family == "knn_modular":
        a_sizes, b_sizes = spec.part_sizes
        left = _contiguous_parts(a_sizes)
        right = _contiguous_parts(b_sizes)
        n_left = sum(a_sizes)
        total = n_left + sum(b_sizes)

        def aux(u, v):
            return left[u] + right[v - n_left]

        size_term = sum(i * s for i, s in enumerate(a_sizes, start=1)) + sum(
            j * s for j, s in enumerate(b_sizes, start=1)
        )
    elif spec.family == "kn_modular":
        part = _contiguous_parts(spec.part_sizes)
        total = sum(spec.part_sizes)

        def aux(u, v):
            return part[u] + part[v]

        size_term = sum(i * s for i, s in enumerate(spec.part_sizes, start=1))
    else:
        raise InstanceError(f"{spec.family} has no modular invariant")
    k, t = spec.k, spec.t
    edges = list(matching.edges)
    seen = sorted(v for e in edges for v in e)
    if seen != list(range(total)):
        raise InstanceError("matching is not perfect on the block structure")
    residue_direct = sum(aux(u, v) for u, v in edges) % k
    residue_formula = size_term % k
    if residue_direct != residue_formula:
        raise InvariantError("direct and size-formula residues disagree")
    base = t * k * (k + 1) // 2
    attain = {base % k}
    for _edge, old, new in spec.recolourings:
        attain.add((base + old - new) % k)
    return ModInvariantReport(
        residue_direct,
        residue_formula,
        frozenset(attain),
        residue_formula in attain,
    )
