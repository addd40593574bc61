"""Batch front-end: generate instances, solve, verify, query oracles, bench.

Subcommands
-----------
generate   write an instance file (lower-bound families or random balanced)
solve      run a solver on an instance file and emit a solution document
verify     recheck a solution document from scratch against its instance
oracle     exact brute-force minima on small instances
bench      sweep a parameter grid and write one CSV row per run

All documents are JSON in the canonical serialization (sorted keys, compact
separators, trailing newline), so identical inputs and seeds give
byte-identical outputs.  The environment variable ``BALREP_SEED`` overrides
``--seed`` everywhere.  Exit codes: 0 success, 2 usage or parse error,
3 search budget exceeded, 4 invariant violation or failed verification.

Benchmark CSV columns are fixed::

    problem,n,k,t,seed,f,runtime_ms,ledger_relax,ledger_necklace,ledger_partition,ledger_completion

Floats are rendered with 9 significant digits; fields that do not apply to a
row are left empty.  After the per-run rows, two summary rows per colour
count k report the maximum f (``summary-max``) and the least-squares slope
of f against n (``summary-slope``).
"""

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bipartite import solve_bipartite
from .core import (
    BipartiteInstance,
    BudgetError,
    CompleteInstance,
    HypergraphInstance,
    InstanceError,
    InvariantError,
    colour_to_vector,
    derive_seed,
    dumps_canonical,
    imbalance,
    instance_from_dict,
    instance_to_dict,
)
from .embed import embed_spanning, pattern_from_dict
from .lowerbounds import gen_kn, gen_knn_modular, gen_knn_sqrt
from .necklace import PathInstance, exhaustive_split_oracle
from .oracle import min_imbalance_pm, min_imbalance_spanning_tree
from .reduce import solve_complete, solve_hypergraph
from .relax import relax
from .spantree import balanced_spanning_tree

CSV_HEADER = (
    "problem,n,k,t,seed,f,runtime_ms,"
    "ledger_relax,ledger_necklace,ledger_partition,ledger_completion"
)

SOLVE_PROBLEMS = (
    "bipartite-matching",
    "complete-matching",
    "hypergraph-matching",
    "balanced-tree",
    "embed",
)


@dataclass
class RunConfig:
    """Everything a subcommand needs, normalized from argparse output."""

    subcommand: str
    instance: str | None = None
    solution: str | None = None
    pattern: str | None = None
    out: str | None = None
    seed: int = 0
    c_bip: float = 10.0
    c_comp: float = 10.0
    c_hyp: float = 10.0
    c_for: float = 10.0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("c_bip", "c_comp", "c_hyp", "c_for"):
            if getattr(self, name) <= 0:
                raise InstanceError(f"calibration constant {name} must be positive")


def _sig9(x) -> str:
    """Locale-independent float rendering with 9 significant digits."""
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".9g")


def _emit(doc: dict, out: str | None) -> None:
    text = dumps_canonical(doc)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _load_doc(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InstanceError(f"cannot read {path}: {exc}")
    if not isinstance(doc, dict):
        raise InstanceError(f"{path}: expected a JSON object")
    return doc


def _load_instance(path: str):
    return instance_from_dict(_load_doc(path))


def _ledger_json(ledger):
    """Fractions become floats so the ledger serializes deterministically."""
    if ledger is None:
        return {}
    if isinstance(ledger, dict):
        return {key: _ledger_json(value) for key, value in ledger.items()}
    if isinstance(ledger, (list, tuple)):
        return [_ledger_json(value) for value in ledger]
    if isinstance(ledger, bool) or isinstance(ledger, (int, str)):
        return ledger
    return float(ledger)


def _report_fields(report) -> dict:
    return {
        "f": float(report.total_l1),
        "per_coordinate": [float(x) for x in report.per_coordinate],
        "exact": bool(report.exact),
        "ledger": _ledger_json(report.ledger),
    }


def _near_balanced_colours(m: int, k: int, rng: random.Random) -> list:
    """Colour multiset with class counts as equal as m allows, shuffled."""
    counts = [m // k] * k
    for i in range(m - k * (m // k)):
        counts[i] += 1
    cols = [c + 1 for c in range(k) for _ in range(counts[c])]
    rng.shuffle(cols)
    return cols


# ---------------------------------------------------------------------------
# generate


def cmd_generate(config: RunConfig) -> int:
    args = config.extra
    family = args["family"]
    meta = {"family": family, "seed": config.seed}
    if family == "kn":
        inst, spec = gen_kn(args["k"], args["t"])
        meta.update(k=spec.k, t=spec.t)
    elif family == "knn-mod":
        inst, spec = gen_knn_modular(args["k"], args["t"])
        meta.update(k=spec.k, t=spec.t)
    elif family == "knn-sqrt":
        if args["m"] is None:
            raise InstanceError("--m is required for knn-sqrt")
        inst, spec = gen_knn_sqrt(args["m"], args["t"])
        meta.update(k=spec.k, t=spec.t, m=spec.m)
    elif family == "random-balanced":
        kind = args["type"]
        n, k = args["n"], args["k"]
        if n is None or n < 1:
            raise InstanceError("--n must be a positive integer")
        rng = random.Random(derive_seed(config.seed, f"random-balanced:{kind}"))
        if kind == "bipartite":
            cols = _near_balanced_colours(n * n, k, rng)
            inst = BipartiteInstance(n, k, colours=cols)
        elif kind == "complete":
            cols = _near_balanced_colours(n * (n - 1) // 2, k, rng)
            inst = CompleteInstance(n, k, colours=cols)
        else:  # hypergraph: complete r-partite, so n**r transversal edges
            r = args["r"]
            cols = _near_balanced_colours(n**r, k, rng)
            inst = HypergraphInstance(r, n, k, colours=cols, partite=True)
        meta.update(n=n, k=k)
    else:  # pragma: no cover - argparse restricts choices
        raise InstanceError(f"unknown family {family}")
    doc = instance_to_dict(inst)
    doc["meta"] = meta
    _emit(doc, config.out)
    return 0


# ---------------------------------------------------------------------------
# solve


def _derived_t(instance) -> int:
    """t with n = 2kt + 1 for balanced spanning trees on complete hosts."""
    n, k = instance.n_vertices, instance.k
    if k < 1 or (n - 1) % (2 * k) != 0:
        raise InstanceError(f"no integer t satisfies n = 2kt + 1 for n={n}, k={k}")
    return (n - 1) // (2 * k)


def _solve_doc(problem: str, seed: int) -> dict:
    return {"type": "solution", "problem": problem, "seed": seed}


def cmd_solve(config: RunConfig) -> int:
    problem = config.extra["problem"]
    inst = _load_instance(config.instance)
    doc = _solve_doc(problem, config.seed)

    if problem == "bipartite-matching":
        if not isinstance(inst, BipartiteInstance):
            raise InstanceError("bipartite-matching needs a bipartite instance")
        dump = config.extra.get("dump_fractional")
        if dump is not None:
            fm = relax(inst)
            _emit(
                {
                    "type": "fractional",
                    "target": [float(x) for x in fm.target.coords],
                    "weights": [
                        {"edge": [u, v], "weight": float(w)}
                        for (u, v), w in sorted(fm.weights.items())
                    ],
                },
                dump,
            )
        matching, report = solve_bipartite(inst, seed=config.seed)
        doc["matching"] = [list(e) for e in matching.edges]
        doc.update(_report_fields(report))
    elif problem == "complete-matching":
        if not isinstance(inst, CompleteInstance):
            raise InstanceError("complete-matching needs a complete instance")
        matching, report = solve_complete(inst, seed=config.seed)
        doc["matching"] = [list(e) for e in matching.edges]
        doc.update(_report_fields(report))
    elif problem == "hypergraph-matching":
        if not isinstance(inst, HypergraphInstance):
            raise InstanceError("hypergraph-matching needs a hypergraph instance")
        matching, report = solve_hypergraph(inst, seed=config.seed)
        doc["matching"] = [list(e) for e in matching.edges]
        doc.update(_report_fields(report))
    elif problem == "balanced-tree":
        if not isinstance(inst, CompleteInstance):
            raise InstanceError("balanced-tree needs a complete instance")
        t = _derived_t(inst)
        tree, result = balanced_spanning_tree(inst, t)
        host_edges = inst.edge_list()
        doc["t"] = t
        doc["certificate"] = {
            "witness": [list(host_edges[i]) for i in sorted(result.witness)],
            "rank_graphic": result.rank_graphic,
            "rank_partition": result.rank_partition,
        }
        if tree is None:
            doc["tree"] = None
            doc["f"] = None
        else:
            doc["tree"] = [list(e) for e in sorted(tree)]
            doc.update(_report_fields(imbalance(inst, tree)))
    else:  # embed
        if config.pattern is None:
            raise InstanceError("--pattern is required for embed")
        if not isinstance(inst, CompleteInstance):
            raise InstanceError("embed needs a complete instance")
        pattern = pattern_from_dict(_load_doc(config.pattern))
        embedding, report = embed_spanning(inst, pattern, seed=config.seed)
        doc["mapping"] = list(embedding.mapping)
        doc["edges"] = [list(e) for e in embedding.edge_images()]
        doc.update(_report_fields(report))

    _emit(doc, config.out)
    return 0


# ---------------------------------------------------------------------------
# verify


def _fail(reason: str) -> int:
    sys.stderr.write(f"verify: {reason}\n")
    return 4


def _check_report(inst, edges, doc) -> int | None:
    """Recompute the imbalance of ``edges`` and compare against ``doc``."""
    try:
        report = imbalance(inst, edges)
    except (InstanceError, InvariantError, KeyError, ValueError) as exc:
        return _fail(f"edges are not a subgraph of the instance: {exc}")
    if abs(float(report.total_l1) - float(doc.get("f", -1))) > 1e-9:
        return _fail(
            f"imbalance mismatch: recomputed {float(report.total_l1)!r}, "
            f"file says {doc.get('f')!r}"
        )
    per = doc.get("per_coordinate")
    if per is not None:
        if len(per) != len(report.per_coordinate) or any(
            abs(float(a) - float(b)) > 1e-9
            for a, b in zip(report.per_coordinate, per)
        ):
            return _fail("per-coordinate deviation mismatch")
    return None


def _verify_perfect(edges, vertex_count) -> str | None:
    seen = set()
    for e in edges:
        for v in e:
            if v in seen:
                return f"vertex {v} is covered twice"
            seen.add(v)
    if seen != set(range(vertex_count)):
        return "edges do not cover every vertex exactly once"
    return None


def _graphic_rank(n: int, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = 0
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            rank += 1
    return rank


def cmd_verify(config: RunConfig) -> int:
    problem = config.extra["problem"]
    inst = _load_instance(config.instance)
    doc = _load_doc(config.solution)

    if problem in ("bipartite-matching", "complete-matching", "hypergraph-matching"):
        edges = [tuple(e) for e in doc.get("matching", [])]
        total = 2 * inst.n if isinstance(inst, BipartiteInstance) else inst.n_vertices
        bad = _verify_perfect(edges, total)
        if bad:
            return _fail(bad)
        failure = _check_report(inst, edges, doc)
        if failure is not None:
            return failure
        recomputed = float(imbalance(inst, edges).total_l1)
    elif problem == "balanced-tree":
        t = _derived_t(inst)
        n = inst.n_vertices
        cert = doc.get("certificate") or {}
        witness = [tuple(e) for e in cert.get("witness", [])]
        if doc.get("tree") is None:
            # infeasibility: the witness must pin the two-matroid optimum
            # strictly below n - 1 = 2kt edges
            try:
                rest = [
                    e for e in inst.edge_list() if tuple(e) not in set(witness)
                ]
                by_colour = {}
                for e in rest:
                    col = inst.colours[inst.edge_index(e)]
                    by_colour[col] = by_colour.get(col, 0) + 1
                rank_g = _graphic_rank(n, witness)
                rank_p = sum(min(c, 2 * t) for c in by_colour.values())
            except (InstanceError, KeyError, TypeError) as exc:
                return _fail(f"bad witness: {exc}")
            if rank_g != cert.get("rank_graphic"):
                return _fail("graphic rank of witness does not match certificate")
            if rank_p != cert.get("rank_partition"):
                return _fail("partition rank of complement does not match")
            if rank_g + rank_p >= n - 1:
                return _fail("certificate does not rule out a balanced tree")
            _emit({"ok": True, "problem": problem, "tree": None}, config.out)
            return 0
        tree = [tuple(e) for e in doc["tree"]]
        if len(tree) != n - 1 or _graphic_rank(n, tree) != n - 1:
            return _fail("edge set is not a spanning tree")
        counts = {}
        for e in tree:
            col = inst.colours[inst.edge_index(e)]
            counts[col] = counts.get(col, 0) + 1
        if any(counts.get(c, 0) != 2 * t for c in range(1, inst.k + 1)):
            return _fail(f"colour counts {counts} are not all 2t = {2 * t}")
        failure = _check_report(inst, tree, doc)
        if failure is not None:
            return failure
        recomputed = float(imbalance(inst, tree).total_l1)
    else:  # embed
        if config.pattern is None:
            raise InstanceError("--pattern is required to verify an embedding")
        pattern = pattern_from_dict(_load_doc(config.pattern))
        mapping = doc.get("mapping")
        if (
            not isinstance(mapping, list)
            or sorted(mapping) != list(range(inst.n_vertices))
            or pattern.n != inst.n_vertices
        ):
            return _fail("mapping is not a bijection onto the host vertices")
        images = sorted(
            tuple(sorted((mapping[u], mapping[v]))) for u, v in pattern.edges
        )
        if [list(e) for e in images] != doc.get("edges"):
            return _fail("edge images do not match the recorded mapping")
        failure = _check_report(inst, images, doc)
        if failure is not None:
            return failure
        recomputed = float(imbalance(inst, images).total_l1)

    _emit({"ok": True, "problem": problem, "f": recomputed}, config.out)
    return 0


# ---------------------------------------------------------------------------
# oracle


def _path_from_doc(doc: dict) -> tuple:
    if doc.get("type") != "path":
        raise InstanceError("split oracle expects a document with type 'path'")
    try:
        k = int(doc["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"bad path document: {exc}")
    if "labels" in doc:
        labels = [tuple(float(x) for x in v) for v in doc["labels"]]
    elif "colours" in doc:
        labels = colour_to_vector(doc["colours"], k)
    else:
        raise InstanceError("path document needs labels or colours")
    alpha = doc.get("alpha", 1)
    return PathInstance(labels, alpha), k


def cmd_oracle(config: RunConfig) -> int:
    problem = config.extra["problem"]
    doc = {"type": "oracle", "problem": problem, "seed": config.seed}
    if problem == "pm":
        inst = _load_instance(config.instance)
        value, matching = min_imbalance_pm(inst)
        doc["min_f"] = float(value)
        doc["matching"] = [list(e) for e in matching.edges]
        doc["balanced"] = value == 0
    elif problem == "tree":
        inst = _load_instance(config.instance)
        value, tree = min_imbalance_spanning_tree(inst)
        doc["min_f"] = float(value)
        doc["tree"] = [list(e) for e in tree]
    else:  # split
        path, k = _path_from_doc(_load_doc(config.instance))
        matching, deviation = exhaustive_split_oracle(path, k)
        doc["min_deviation"] = float(deviation)
        doc["matching"] = [list(e) for e in matching.edges]
    _emit(doc, config.out)
    return 0


# ---------------------------------------------------------------------------
# bench


def _bench_cell(problem: str, n: int, k: int, run_seed: int, base_seed: int) -> dict:
    rng = random.Random(derive_seed(base_seed, f"bench:{problem}:{n}:{k}:{run_seed}"))
    if problem == "bipartite-matching":
        inst = BipartiteInstance(n, k, colours=_near_balanced_colours(n * n, k, rng))
        solver = solve_bipartite
    else:
        cols = _near_balanced_colours(n * (n - 1) // 2, k, rng)
        inst = CompleteInstance(n, k, colours=cols)
        solver = solve_complete
    start = time.perf_counter()
    _, report = solver(inst, seed=run_seed)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    ledger = report.ledger or {}
    return {
        "problem": problem,
        "n": n,
        "k": k,
        "seed": run_seed,
        "f": float(report.total_l1),
        "runtime_ms": elapsed_ms,
        "ledger_relax": float(ledger["relax"]) if "relax" in ledger else "",
        "ledger_necklace": float(ledger["necklace"]) if "necklace" in ledger else "",
        "ledger_partition": float(ledger["partition"]) if "partition" in ledger else "",
        "ledger_completion": (
            float(ledger["completion"]) if "completion" in ledger else ""
        ),
    }


def _slope(points) -> float | None:
    """Least-squares slope of f against n; None when n never varies."""
    xs = [float(n) for n, _ in points]
    ys = [float(f) for _, f in points]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    denom = sum((x - mean_x) ** 2 for x in xs)
    if denom == 0:
        return None
    return sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / denom


def cmd_bench(config: RunConfig) -> int:
    args = config.extra
    problem = args["problem"]
    ns = args["n"]
    ks = args["k"]
    seeds = args["seeds"]
    if problem == "complete-matching" and any(n % 2 for n in ns):
        raise InstanceError("complete-matching needs even n")
    cells = [(n, k, s) for k in ks for n in ns for s in range(seeds)]
    if args["jobs"] > 1:
        with ProcessPoolExecutor(max_workers=args["jobs"]) as pool:
            rows = list(
                pool.map(
                    _bench_cell,
                    [problem] * len(cells),
                    [c[0] for c in cells],
                    [c[1] for c in cells],
                    [c[2] for c in cells],
                    [config.seed] * len(cells),
                )
            )
    else:
        rows = [_bench_cell(problem, n, k, s, config.seed) for n, k, s in cells]

    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                [
                    row["problem"],
                    str(row["n"]),
                    str(row["k"]),
                    "",
                    str(row["seed"]),
                    _sig9(row["f"]),
                    _sig9(row["runtime_ms"]),
                    _sig9(row["ledger_relax"]),
                    _sig9(row["ledger_necklace"]),
                    _sig9(row["ledger_partition"]),
                    _sig9(row["ledger_completion"]),
                ]
            )
        )
    bound_constant = config.c_bip if problem == "bipartite-matching" else config.c_comp
    for k in ks:
        sample = [r for r in rows if r["k"] == k]
        top = max(r["f"] for r in sample)
        lines.append(f"summary-max,,{k},,,{_sig9(top)},,,,,")
        slope = _slope([(r["n"], r["f"]) for r in sample])
        slope_text = "" if slope is None else _sig9(slope)
        lines.append(f"summary-slope,,{k},,,{slope_text},,,,,")
        if top > bound_constant * k * k:
            sys.stderr.write(
                f"bench: max f {top} for k={k} exceeds the calibrated "
                f"bound {bound_constant * k * k}\n"
            )
    text = "\n".join(lines) + "\n"
    if config.out is None:
        sys.stdout.write(text)
    else:
        with open(config.out, "w", newline="") as fh:
            fh.write(text)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _int_list(text: str) -> list:
    try:
        values = [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balrep",
        description="Near-balanced matchings, trees and embeddings "
        "of vector-labelled graphs.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="64-bit run seed")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    gen = sub.add_parser("generate", help="write an instance file")
    gen.add_argument(
        "--family",
        required=True,
        choices=["kn", "knn-mod", "knn-sqrt", "random-balanced"],
    )
    gen.add_argument("--k", type=int, default=2, help="number of colours")
    gen.add_argument("--t", type=int, default=1, help="family scale parameter")
    gen.add_argument("--m", type=int, default=None, help="knn-sqrt size parameter")
    gen.add_argument("--n", type=int, default=None, help="random-balanced order")
    gen.add_argument("--r", type=int, default=3, help="hypergraph edge size")
    gen.add_argument(
        "--type",
        default="bipartite",
        choices=["bipartite", "complete", "hypergraph"],
        help="random-balanced host shape",
    )
    common(gen)

    slv = sub.add_parser("solve", help="run a solver on an instance file")
    slv.add_argument("--problem", required=True, choices=SOLVE_PROBLEMS)
    slv.add_argument("--instance", required=True)
    slv.add_argument("--pattern", default=None, help="pattern file for embed")
    slv.add_argument(
        "--dump-fractional",
        default=None,
        metavar="FILE",
        help="also write the fractional relaxation weight map (bipartite only)",
    )
    common(slv)

    ver = sub.add_parser("verify", help="recheck a solution from scratch")
    ver.add_argument("--problem", required=True, choices=SOLVE_PROBLEMS)
    ver.add_argument("--instance", required=True)
    ver.add_argument("--solution", required=True)
    ver.add_argument("--pattern", default=None)
    common(ver)

    orc = sub.add_parser("oracle", help="exact minima on small instances")
    orc.add_argument("--problem", required=True, choices=["pm", "tree", "split"])
    orc.add_argument("--instance", required=True)
    common(orc)

    ben = sub.add_parser("bench", help="sweep a grid and write CSV")
    ben.add_argument(
        "--problem",
        default="bipartite-matching",
        choices=["bipartite-matching", "complete-matching"],
    )
    ben.add_argument("--n", type=_int_list, required=True, help="e.g. 20,40,80")
    ben.add_argument("--k", type=_int_list, required=True, help="e.g. 2,3")
    ben.add_argument("--seeds", type=int, default=10, help="runs per (n, k) cell")
    ben.add_argument("--jobs", type=int, default=1, help="parallel workers")
    ben.add_argument("--c-bip", type=float, default=10.0)
    ben.add_argument("--c-comp", type=float, default=10.0)
    ben.add_argument("--c-hyp", type=float, default=10.0)
    ben.add_argument("--c-for", type=float, default=10.0)
    common(ben)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    seed = getattr(args, "seed", 0)
    env = os.environ.get("BALREP_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise InstanceError(f"BALREP_SEED must be an integer, got {env!r}")
    extra = {
        key: value
        for key, value in vars(args).items()
        if key
        not in {
            "subcommand",
            "instance",
            "solution",
            "pattern",
            "out",
            "seed",
            "c_bip",
            "c_comp",
            "c_hyp",
            "c_for",
        }
    }
    return RunConfig(
        subcommand=args.subcommand,
        instance=getattr(args, "instance", None),
        solution=getattr(args, "solution", None),
        pattern=getattr(args, "pattern", None),
        out=getattr(args, "out", None),
        seed=seed,
        c_bip=getattr(args, "c_bip", 10.0),
        c_comp=getattr(args, "c_comp", 10.0),
        c_hyp=getattr(args, "c_hyp", 10.0),
        c_for=getattr(args, "c_for", 10.0),
        extra=extra,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        handler = {
            "generate": cmd_generate,
            "solve": cmd_solve,
            "verify": cmd_verify,
            "oracle": cmd_oracle,
            "bench": cmd_bench,
        }[config.subcommand]
        return handler(config)
    except InstanceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BudgetError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 3
    except InvariantError as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
