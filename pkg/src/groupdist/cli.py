"""Command-line front end: gen, validate, distance, overlap, correct, scan.

Exit codes: 0 success, 1 bound or correction failure, 2 input/usage
error, 3 size mismatch.  Reports are machine-readable (JSON or CSV) and
byte-identical across reruns with the same arguments and seeds; timing
is printed to stderr only, never into a report.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import blr, catalog, metric
from .groups import (
    GroupTable,
    InvalidTableError,
    TableFormatError,
    find_isomorphism,
    find_subgroup_embedding,
    parse_table,
    serialize,
    validate,
)

EXIT_OK = 0
EXIT_BOUND_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_SIZE_MISMATCH = 3

SCAN_OVERLAP_MAX_ORDER = 12  # cross-order overlap pairs are exact up to here
DEFAULT_EXACT_LIMIT = 10     # same-order pairs run exact up to this order


class InputError(Exception):
    """User-facing input problem; maps to exit code 2."""


def load_group(source: str) -> GroupTable:
    """Resolve a catalog name or a table file path."""
    try:
        return catalog.by_name(source).group
    except catalog.UnknownGroupError:
        pass
    path = Path(source)
    if not path.exists():
        raise InputError(
            f"{source!r} is neither a catalog name nor an existing file"
        )
    try:
        return parse_table(path.read_text())
    except (TableFormatError, InvalidTableError) as e:
        raise InputError(f"{source}: {e}")


# ---------------------------------------------------------------------------
# records

def distance_record(
    name_a: str,
    name_b: str,
    a: GroupTable,
    b: GroupTable,
    result: metric.DistanceResult,
    mode: str,
) -> dict:
    n = a.n
    isomorphic = find_isomorphism(a, b) is not None
    rec = {
        "kind": "distance",
        "mode": mode,
        "pair": [name_a, name_b],
        "order": n,
        "value": result.value,
        "exact": result.exact,
        "isomorphic": isomorphic,
        "bound_num": None,
        "bound_den": None,
        "weak_bound_num": None,
        "pass": True,
        "weak_pass": None,
        "margin": None,
        "nodes": result.nodes,
        "witness": [int(v) for v in result.witness.images],
    }
    if not isomorphic:
        rec["bound_num"] = 2 * n * n
        rec["bound_den"] = 9
        rec["weak_bound_num"] = n * n
        rec["pass"] = 9 * result.value >= 2 * n * n
        rec["weak_pass"] = 9 * result.value > n * n
        rec["margin"] = 9 * result.value - 2 * n * n
    return rec


def overlap_record(
    name_g: str,
    name_k: str,
    g: GroupTable,
    k: GroupTable,
    result: metric.OverlapResult,
) -> dict:
    ng = g.n
    embeddable = find_subgroup_embedding(g, k) is not None
    rec = {
        "kind": "overlap",
        "mode": "exact",
        "pair": [name_g, name_k],
        "order": [g.n, k.n],
        "value": result.value,
        "exact": result.exact,
        "embeddable": embeddable,
        "bound_num": None,
        "bound_den": None,
        "pass": True,
        "margin": None,
        "nodes": result.nodes,
        "witness": [int(v) for v in result.witness.images],
    }
    if not embeddable:
        rec["bound_num"] = 7 * ng * ng
        rec["bound_den"] = 9
        rec["pass"] = 9 * result.value <= 7 * ng * ng
        rec["margin"] = 7 * ng * ng - 9 * result.value
    return rec


_CSV_FIELDS = [
    "kind", "mode", "name_a", "name_b", "order_a", "order_b", "value",
    "exact", "isomorphic", "embeddable", "bound_num", "bound_den",
    "weak_bound_num", "pass", "weak_pass", "margin", "nodes", "witness",
]


def _flatten(rec: dict) -> dict:
    order = rec.get("order")
    if isinstance(order, list):
        order_a, order_b = order
    else:
        order_a = order_b = order
    return {
        "kind": rec.get("kind", ""),
        "mode": rec.get("mode", ""),
        "name_a": rec["pair"][0],
        "name_b": rec["pair"][1],
        "order_a": order_a,
        "order_b": order_b,
        "value": rec.get("value"),
        "exact": rec.get("exact"),
        "isomorphic": rec.get("isomorphic", ""),
        "embeddable": rec.get("embeddable", ""),
        "bound_num": rec.get("bound_num"),
        "bound_den": rec.get("bound_den"),
        "weak_bound_num": rec.get("weak_bound_num", ""),
        "pass": rec.get("pass"),
        "weak_pass": rec.get("weak_pass", ""),
        "margin": rec.get("margin"),
        "nodes": rec.get("nodes"),
        "witness": " ".join(str(v) for v in rec.get("witness", [])),
    }


def render_records(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=_CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    records = payload.get("records", [payload])
    for rec in records:
        writer.writerow(_flatten(rec))
    return out.getvalue()


def emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# scan

@dataclass(frozen=True)
class ScanConfig:
    max_order: int = 10
    include_27: bool = False
    budget: int = metric.DEFAULT_NODE_BUDGET
    seed: int = 0
    restarts: int = metric.DEFAULT_RESTARTS
    exact_limit: int = DEFAULT_EXACT_LIMIT
    jobs: int = 1


def _scan_orders(cfg: ScanConfig) -> list[int]:
    orders = [o for o in catalog.SUPPORTED_ORDERS if o <= cfg.max_order]
    if cfg.include_27 and 27 not in orders:
        orders.append(27)
    return orders


def scan_jobs(cfg: ScanConfig) -> list[tuple]:
    """Deterministic job list: same-order pairs then eligible cross-order
    pairs, sorted by (orders, names)."""
    orders = _scan_orders(cfg)
    jobs: list[tuple] = []
    for o in orders:
        ents = catalog.all_of_order(o)
        for i in range(len(ents)):
            for j in range(i + 1, len(ents)):
                a, b = ents[i], ents[j]
                if find_isomorphism(a.group, b.group) is not None:
                    continue
                if o <= cfg.exact_limit:
                    jobs.append(("distance", a.name, b.name, cfg.budget, 0, 0))
                else:
                    jobs.append(("heuristic", a.name, b.name, 0, cfg.seed, cfg.restarts))
    for og in orders:
        for ok in orders:
            if not og < ok <= SCAN_OVERLAP_MAX_ORDER:
                continue
            for ga in catalog.all_of_order(og):
                for kb in catalog.all_of_order(ok):
                    if find_subgroup_embedding(ga.group, kb.group) is not None:
                        continue
                    jobs.append(("overlap", ga.name, kb.name, cfg.budget, 0, 0))
    return jobs


def run_scan_job(job: tuple) -> dict:
    kind, name_a, name_b, budget, seed, restarts = job
    a = catalog.by_name(name_a).group
    b = catalog.by_name(name_b).group
    if kind == "distance":
        res = metric.min_distance_exact(a, b, budget=budget)
        return distance_record(name_a, name_b, a, b, res, mode="exact")
    if kind == "heuristic":
        res = metric.min_distance_heuristic(a, b, seed=seed, restarts=restarts)
        return distance_record(name_a, name_b, a, b, res, mode="heuristic")
    res = metric.overlap_exact(a, b, budget=budget)
    return overlap_record(name_a, name_b, a, b, res)


def run_scan(cfg: ScanConfig, log=None) -> dict:
    """Execute all scan jobs and assemble the deterministic report."""
    jobs = scan_jobs(cfg)
    # decorrelate heuristic restart streams across pairs, deterministically
    jobs = [
        job if job[0] != "heuristic" else job[:4] + (cfg.seed + i, job[5])
        for i, job in enumerate(jobs)
    ]
    t0 = time.perf_counter()
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(run_scan_job, jobs))
    else:
        records = []
        for job in jobs:
            t1 = time.perf_counter()
            records.append(run_scan_job(job))
            if log:
                log(f"{job[0]} {job[1]} vs {job[2]}: {time.perf_counter() - t1:.2f}s")
    records.sort(key=_record_sort_key)
    failures = sum(1 for r in records if not r["pass"])
    margins = [r["margin"] for r in records if r["margin"] is not None]
    if log:
        log(f"scan: {len(records)} pairs in {time.perf_counter() - t0:.1f}s")
    return {
        "config": {
            "max_order": cfg.max_order,
            "include_27": cfg.include_27,
            "budget": cfg.budget,
            "seed": cfg.seed,
            "restarts": cfg.restarts,
            "exact_limit": cfg.exact_limit,
        },
        "records": records,
        "summary": {
            "pairs_checked": len(records),
            "failures": failures,
            "min_margin": min(margins) if margins else None,
        },
    }


def _record_sort_key(rec: dict):
    order = rec["order"]
    if isinstance(order, list):
        oa, ob = order
    else:
        oa = ob = order
    return (oa, ob, rec["pair"][0], rec["pair"][1])


# ---------------------------------------------------------------------------
# subcommands

def cmd_gen(args) -> int:
    try:
        entry = catalog.by_name(args.name)
    except catalog.UnknownGroupError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    emit(serialize(entry.group), args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    path = Path(args.file)
    if not path.exists():
        print(f"error: no such file: {args.file}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        g = parse_table(path.read_text())
    except TableFormatError as e:
        print(f"invalid: format error: {e}")
        return EXIT_INPUT_ERROR
    except InvalidTableError as e:
        v = e.violation
        print(f"invalid: {v.kind} violation, witness {v.witness}: {v.message}")
        return EXIT_INPUT_ERROR
    violations = validate(g)
    if violations:  # unreachable after a clean parse, kept for safety
        for v in violations:
            print(f"invalid: {v.kind} violation, witness {v.witness}: {v.message}")
        return EXIT_INPUT_ERROR
    print(f"ok: group of order {g.n}, identity at index {g.identity}")
    return EXIT_OK


def cmd_distance(args) -> int:
    try:
        a = load_group(args.group_a)
        b = load_group(args.group_b)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if a.n != b.n:
        print(f"error: order mismatch: {a.n} vs {b.n}", file=sys.stderr)
        return EXIT_SIZE_MISMATCH
    if args.heuristic:
        res = metric.min_distance_heuristic(a, b, seed=args.seed, restarts=args.restarts)
        mode = "heuristic"
    else:
        res = metric.min_distance_exact(a, b, budget=args.budget)
        mode = "exact"
    print(f"solved in {res.elapsed:.2f}s, {res.nodes} nodes", file=sys.stderr)
    rec = distance_record(args.group_a, args.group_b, a, b, res, mode)
    emit(render_records(rec, args.format), args.output)
    return EXIT_OK


def cmd_overlap(args) -> int:
    try:
        g = load_group(args.group_g)
        k = load_group(args.group_k)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if g.n > k.n:
        print(f"error: source order {g.n} exceeds target order {k.n}", file=sys.stderr)
        return EXIT_SIZE_MISMATCH
    res = metric.overlap_exact(g, k, budget=args.budget)
    print(f"solved in {res.elapsed:.2f}s, {res.nodes} nodes", file=sys.stderr)
    rec = overlap_record(args.group_g, args.group_k, g, k, res)
    emit(render_records(rec, args.format), args.output)
    return EXIT_OK


def cmd_correct(args) -> int:
    try:
        g = load_group(args.group_g)
        k = load_group(args.group_k)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    emb = find_subgroup_embedding(g, k)
    if emb is not None:
        base = blr.NoisyMap(g, k, tuple(int(v) for v in emb.images))
        base_kind = "embedding"
    else:
        base = blr.NoisyMap.trivial(g, k)
        base_kind = "trivial"
    if args.points > g.n:
        print(f"error: points {args.points} exceeds group order {g.n}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    trials = []
    n_applicable = 0
    n_passed = 0
    n_failed = 0
    for i in range(args.trials):
        trial_seed = args.seed + i
        f = blr.corrupt(base, args.points, seed=trial_seed)
        verdict = blr.fact1_check(f)
        rep = verdict.report
        row = {
            "trial": i,
            "seed": trial_seed,
            "verdict": verdict.verdict,
            "pair_agreement": {"num": rep.pair_agreement_num, "den": rep.pair_agreement_den},
            "point_agreement": {"num": rep.point_agreement_num, "den": rep.point_agreement_den},
            "min_plurality": min(rep.plurality_counts),
            "is_hom": rep.is_hom,
            "ties": sum(1 for t in rep.tie_flags if t),
        }
        if args.samples:
            hits, total = blr.sampled_agreement(f, args.samples, seed=trial_seed)
            row["sampled_agreement"] = {"num": hits, "den": total}
        trials.append(row)
        if verdict.applicable:
            n_applicable += 1
            if verdict.passed:
                n_passed += 1
            else:
                n_failed += 1
    payload = {
        "pair": [args.group_g, args.group_k],
        "base_map": base_kind,
        "points": args.points,
        "trials": trials,
        "summary": {
            "trials": args.trials,
            "applicable": n_applicable,
            "passed": n_passed,
            "failed": n_failed,
        },
    }
    if args.format == "csv":
        out = io.StringIO()
        fields = ["trial", "seed", "verdict", "pair_agreement_num", "pair_agreement_den",
                  "point_agreement_num", "point_agreement_den", "min_plurality", "is_hom", "ties"]
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in trials:
            writer.writerow({
                "trial": row["trial"], "seed": row["seed"], "verdict": row["verdict"],
                "pair_agreement_num": row["pair_agreement"]["num"],
                "pair_agreement_den": row["pair_agreement"]["den"],
                "point_agreement_num": row["point_agreement"]["num"],
                "point_agreement_den": row["point_agreement"]["den"],
                "min_plurality": row["min_plurality"],
                "is_hom": row["is_hom"], "ties": row["ties"],
            })
        emit(out.getvalue(), args.output)
    else:
        emit(json.dumps(payload, indent=2) + "\n", args.output)
    return EXIT_BOUND_FAILURE if n_failed else EXIT_OK


def cmd_scan(args) -> int:
    if args.max_order not in catalog.SUPPORTED_ORDERS:
        print(
            f"error: unsupported max order {args.max_order}; "
            "catalog covers orders 1..15 and 27",
            file=sys.stderr,
        )
        return EXIT_INPUT_ERROR
    if not 1 <= args.exact_limit <= 12:
        print("error: exact limit must be between 1 and 12", file=sys.stderr)
        return EXIT_INPUT_ERROR
    cfg = ScanConfig(
        max_order=args.max_order,
        include_27=args.include_27 or args.max_order == 27,
        budget=args.budget,
        seed=args.seed,
        restarts=args.restarts,
        exact_limit=args.exact_limit,
        jobs=args.jobs,
    )
    report = run_scan(cfg, log=lambda msg: print(msg, file=sys.stderr))
    emit(render_records(report, args.format), args.output)
    failures = report["summary"]["failures"]
    if failures:
        print(f"BOUND FAILURES: {failures}", file=sys.stderr)
        return EXIT_BOUND_FAILURE
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupdist",
        description="Distance, overlap, and self-correction tools for finite-group tables",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a catalog group as a table file")
    p.add_argument("name", help="catalog group name, e.g. Q8")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="check a table file against the group axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("distance", help="minimum table distance over relabelings")
    p.add_argument("group_a", help="catalog name or table file")
    p.add_argument("group_b")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--heuristic", action="store_true", default=False)
    p.add_argument("--budget", type=int, default=metric.DEFAULT_NODE_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=metric.DEFAULT_RESTARTS)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("overlap", help="maximum pair agreement over injections")
    p.add_argument("group_g", help="smaller group: catalog name or file")
    p.add_argument("group_k", help="larger group: catalog name or file")
    p.add_argument("--budget", type=int, default=metric.DEFAULT_NODE_BUDGET)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("correct", help="seeded corruption + plurality decoding trials")
    p.add_argument("group_g")
    p.add_argument("group_k")
    p.add_argument("--points", type=int, default=0, help="images to corrupt per trial")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--samples", type=int, default=0,
                   help="also report a Monte Carlo agreement estimate")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("scan", help="verify the distance/overlap bounds over the catalog")
    p.add_argument("--max-order", type=int, default=10, dest="max_order")
    p.add_argument("--include-27", action="store_true", dest="include_27")
    p.add_argument("--budget", type=int, default=metric.DEFAULT_NODE_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=metric.DEFAULT_RESTARTS)
    p.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT,
                   dest="exact_limit", help="largest order solved exactly (<= 12)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
