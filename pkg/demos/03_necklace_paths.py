#!/usr/bin/env python3
"""
Interval splitting on labelled paths
====================================

The rounding engine's core move: given a path whose edges carry vectors
and whose odd edges weigh alpha, choose at most 4k+2 cut points and keep
alternate runs so that the kept edges' label sum lands close to the
weighted total.  Few cuts also force the kept set to stay large, which is
what lets rounded matchings stay near-perfect.
"""

import random
from fractions import Fraction

from balrep.core import derive_seed
from balrep.necklace import (
    PathInstance,
    deviation_budget,
    exhaustive_split_oracle,
    size_floor,
    split_path,
)


def basis(i, k):
    v = [0] * k
    v[i] = 1
    return tuple(v)


rng = random.Random(derive_seed(0, "demo-necklace"))

# a long 3-colour path with a random odd-edge weight
L, k = 400, 3
labels = tuple(basis(rng.randrange(k), k) for _ in range(L))
alpha = Fraction(rng.randrange(0, 101), 100)
path = PathInstance(labels, alpha)

matching, split, deviation = split_path(path, k, seed=0)
print(f"path with {L} edges, alpha = {alpha}")
print(f"split: {len(split.cut_points)} cuts (budget {deviation_budget(k)}), "
      f"deviation {float(deviation):.4f}")
print(f"kept matching size {len(matching.edges)} "
      f">= floor {size_floor(L, k)}: {len(matching.edges) >= size_floor(L, k)}")

# on short paths the exhaustive oracle pins the true optimum
short = PathInstance(tuple(basis(rng.randrange(2), 2) for _ in range(14)),
                     Fraction(2, 5))
_, _, dev = split_path(short, 2, seed=1)
_, best = exhaustive_split_oracle(short, 2)
print(f"\n14-edge path: search {float(dev):.4f} vs oracle optimum "
      f"{float(best):.4f} (gap within budget {deviation_budget(2)})")
