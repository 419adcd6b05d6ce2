"""Command line: ``antimagic label|verify|gen|oracle|demo``.

Exit codes: 0 success (or antimagic), 1 verified not antimagic, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import generators
from .errors import ConstructionError, ContractError
from .formats import format_labeling, labeling_json, parse_labeling
from .graph import format_edge_list, read_edge_list
from .oracle import MAX_EDGES, find_antimagic_labeling
from .pipeline import label_graph
from .verifier import structural_report, verify

SEED_ENV = "ANTIMAGIC_SEED"


def _default_seed() -> int:
    try:
        return int(os.environ.get(SEED_ENV, "0"))
    except ValueError:
        return 0


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _label_one(path: str, seed: int, retries: int, fmt: str, out: str | None, dump_plan: str | None):
    g = read_edge_list(path)
    res = label_graph(g, seed=seed, max_retries=retries)
    text = labeling_json(g, res.labeling.labels, res.verdict) if fmt == "json" else format_labeling(g, res.labeling.labels)
    _write(text, out)
    if dump_plan:
        doc = json.loads(res.plan.to_json())
        doc["partition"] = res.partition.to_dict()
        Path(dump_plan).write_text(json.dumps(doc, indent=1) + "\n")
    return res


def _label_job(args):
    path, seed, retries, fmt, out = args
    try:
        res = _label_one(path, seed, retries, fmt, out, None)
        return path, 0, f"antimagic: {str(res.verdict.antimagic).lower()} ({res.attempts} attempt(s))"
    except ContractError as ex:
        return path, 2, f"error: {ex}"
    except ConstructionError as ex:
        return path, 1, f"failed: {ex}"


def cmd_label(a) -> int:
    src = Path(a.input)
    if src.is_dir():
        files = sorted(src.glob("*.bip"))
        outdir = Path(a.out) if a.out else src
        outdir.mkdir(parents=True, exist_ok=True)
        ext = ".json" if a.format == "json" else ".lab"
        jobs = [(str(f), a.seed, a.max_retries, a.format, str(outdir / (f.stem + ext))) for f in files]
        if a.jobs > 1:
            with ProcessPoolExecutor(a.jobs) as ex:
                results = list(ex.map(_label_job, jobs))
        else:
            results = [_label_job(j) for j in jobs]
        for path, _, msg in results:
            print(f"{path}: {msg}")
        return max((code for _, code, _ in results), default=0)
    try:
        res = _label_one(a.input, a.seed, a.max_retries, a.format, a.out, a.dump_plan)
    except ContractError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except ConstructionError as ex:
        print(f"construction failed: {ex}", file=sys.stderr)
        return 1
    print(f"antimagic: {str(res.verdict.antimagic).lower()}", file=sys.stderr if not a.out else sys.stdout)
    return 0


def cmd_verify(a) -> int:
    try:
        g = read_edge_list(a.graph)
        labels = parse_labeling(g, Path(a.labeling).read_text(), a.labeling)
    except ContractError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    v = verify(g, labels)
    if a.json:
        print(json.dumps(v.to_dict(), indent=1))
    if not v.is_bijection:
        print("not a bijection: " + "; ".join(v.problems), file=sys.stderr)
        return 2
    if not a.json:
        print(f"antimagic: {str(v.antimagic).lower()}")
        for u, w, s in v.collisions[:10]:
            print(f"  vertices {u} and {w} share sum {s}")
    return 0 if v.antimagic else 1


def cmd_gen(a) -> int:
    try:
        if a.kind == "complete":
            gs = [generators.complete_bipartite(a.a, a.b)]
        elif a.kind == "random":
            gs = [generators.random_min_degree(a.a, a.b, a.delta, a.extra, a.seed)]
        elif a.kind == "split":
            gs = [generators.split_cover(a.a, a.b, seed=a.seed)]
        else:
            gs = list(generators.tiny_enumerate(a.a))
    except ContractError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    _write("\n".join(format_edge_list(g) for g in gs), a.out)
    return 0


def cmd_oracle(a) -> int:
    try:
        g = read_edge_list(a.input)
        w = find_antimagic_labeling(g, a.cap)
    except ContractError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    if w is None:
        print("antimagic: false")
        return 1
    print("antimagic: true")
    sys.stdout.write(format_labeling(g, w))
    return 0


def cmd_demo(a) -> int:
    g = generators.complete_bipartite(15, 15)
    res = label_graph(g, seed=a.seed)
    rep = structural_report(g, res.labeling.labels, res.plan, res.partition)
    sums = res.verdict.residue_report
    print(f"K15,15: {g.m} edges, antimagic: {str(res.verdict.antimagic).lower()}")
    print(f"cover side X: {len(res.plan.X)} vertices, residues {sorted(set(sums[v] for v in res.plan.X))}")
    print(f"independent side Y: {len(res.plan.Y)} vertices, residues {sorted(set(sums[v] for v in res.plan.Y))}")
    print(f"X sums with residue 0: {rep['x_zero_residue']}; Y sums with nonzero residue: {rep['y_nonzero_residue']}")
    print("label blocks used as planned: " + ", ".join(f"{k}={v}" for k, v in rep["pool_audit"].items()))
    return 0 if res.verdict.antimagic else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="antimagic", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)
    seed = _default_seed()

    s = sub.add_parser("label", help="label a graph file (or every *.bip in a directory)")
    s.add_argument("input")
    s.add_argument("--seed", type=int, default=seed, help=f"default from ${SEED_ENV} or 0")
    s.add_argument("--max-retries", type=int, default=5)
    s.add_argument("--out")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.add_argument("--dump-plan", metavar="FILE")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_label)

    s = sub.add_parser("verify", help="check a labeling against a graph")
    s.add_argument("graph")
    s.add_argument("labeling")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="write generated graphs in edge-list format")
    s.add_argument("kind", choices=["complete", "random", "split", "tiny"])
    s.add_argument("a", type=int, help="side A size (core size for split, max edges for tiny)")
    s.add_argument("b", type=int, nargs="?", default=15)
    s.add_argument("--delta", type=int, default=15)
    s.add_argument("--extra", type=float, default=0.0)
    s.add_argument("--seed", type=int, default=seed)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("oracle", help="exhaustive search on a tiny graph")
    s.add_argument("input")
    s.add_argument("--cap", type=int, default=MAX_EDGES)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("demo", help="label K15,15 and print the residue report")
    s.add_argument("--seed", type=int, default=seed)
    s.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return a.func(a)
    except (ContractError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
