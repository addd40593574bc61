#!/usr/bin/env python3
"""
Command-line front end, end to end
==================================

Drives every subcommand in-process inside a temporary directory:
generate an extremal instance and a random host, solve, verify the
solution from scratch, query the exhaustive oracle, and sweep a small
benchmark grid to CSV.  Identical seeds give byte-identical files.
"""

import json
import tempfile
from pathlib import Path

from balrep import cli


def run(*args):
    code = cli.main(list(args))
    assert code == 0, f"balrep {' '.join(args)} exited {code}"


with tempfile.TemporaryDirectory() as tmp:
    root = Path(tmp)
    inst = root / "k6.json"
    sol = root / "k6.sol.json"
    csv = root / "bench.csv"

    run("generate", "--family", "kn", "--k", "3", "--t", "1", "--out", str(inst))
    doc = json.loads(inst.read_text())
    print(f"generated: {doc['type']} host on {doc['n']} vertices, "
          f"k = {doc['k']}")

    run("solve", "--problem", "complete-matching", "--instance", str(inst),
        "--out", str(sol))
    result = json.loads(sol.read_text())
    print(f"solved: f = {result['f']}, matching {result['matching']}")

    run("verify", "--problem", "complete-matching", "--instance", str(inst),
        "--solution", str(sol), "--out", str(root / "verify.json"))
    print("verified: recomputation agrees with the solution file")

    run("oracle", "--problem", "pm", "--instance", str(inst),
        "--out", str(root / "oracle.json"))
    oracle = json.loads((root / "oracle.json").read_text())
    print(f"oracle: min f = {oracle['min_f']}, "
          f"balanced PM exists: {oracle['balanced']}")

    run("bench", "--n", "8,12", "--k", "2", "--seeds", "3",
        "--seed", "1", "--out", str(csv))
    lines = csv.read_text().splitlines()
    print(f"bench: {len(lines) - 1} CSV rows; header:\n  {lines[0]}")
    for line in lines[-2:]:
        print(f"  {line}")
