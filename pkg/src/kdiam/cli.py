"""Batch driver: instance generation, algorithm runs, cross-verification and
benchmark emission.

Instances are either edge-list graph files or point CSVs (optionally with a
polygon CSV for non-square shapes).  Reports are JSON; benchmarks are CSV.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

log = logging.getLogger("kdiam")

from . import bench as bench_mod
from . import gen as gen_mod
from .geometry import (axis_square, format_points, format_polygon,
                       intersection_graph_naive, load_points, load_polygon)
from .graph import (Graph, diameter_naive, format_edge_list, k_diameter_naive,
                    load_edge_list)
from .explicit import k_diameter_explicit
from .implicit import k_diameter_implicit
from .nsds import NaiveNeighbourSets
from .plane import geometric_nsds


@dataclass
class RunReport:
    instance: str
    algorithm: str
    k: int
    d: int
    seed: int
    answer: bool
    wall_seconds: float
    counters: dict = field(default_factory=dict)


class UsageError(SystemExit):
    def __init__(self, message):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


def _load_instance(args):
    """Returns (kind, payload): ('graph', Graph) or ('points', (pts, shape))."""
    path = Path(args.input)
    kind = getattr(args, "kind", None) or _sniff_kind(path)
    if kind == "graph":
        return "graph", load_edge_list(path)
    pts = load_points(path)
    shape = load_polygon(args.polygon) if getattr(args, "polygon", None) \
        else axis_square(1.0)
    return "points", (pts, shape)


def _sniff_kind(path: Path) -> str:
    first = path.read_text().splitlines()[0]
    return "points" if "," in first else "graph"


def cmd_gen(args):
    rng = np.random.default_rng(args.seed)
    out = Path(args.output)
    if args.generator == "sparse-graph":
        g = gen_mod.random_connected_graph(args.n, args.m, rng)
        out.write_text(format_edge_list(g))
    elif args.generator == "unit-squares":
        # with an explicit box the density is the caller's choice, so the
        # connectivity retry is skipped; the default box targets connectivity
        box = args.box if args.box is not None else gen_mod.default_box(args.n)
        pts = gen_mod.random_unit_square_points(
            args.n, box, rng, require_connected=args.box is None)
        out.write_text(format_points(pts))
    elif args.generator == "polygon-points":
        shape = gen_mod.random_symmetric_polygon(args.sides // 2, rng,
                                                 radius=args.radius)
        box = args.box if args.box is not None else gen_mod.default_box(args.n)
        pts = gen_mod.random_points_for_shape(args.n, shape, box, rng)
        out.write_text(format_points(pts))
        poly_out = Path(args.polygon_output or out.with_suffix(".poly.csv"))
        poly_out.write_text(format_polygon(shape))
        print(f"wrote {out} and {poly_out}")
        return 0
    print(f"wrote {out}")
    return 0


def _materialize(kind, payload) -> Graph:
    if kind == "graph":
        return payload
    pts, shape = payload
    return intersection_graph_naive(pts, shape)


def run_algorithm(algorithm, kind, payload, k, d, seed,
                  freeze_order=False) -> RunReport:
    rng = np.random.default_rng(seed)
    counters = {}
    start = time.perf_counter()
    if algorithm == "naive":
        g = _materialize(kind, payload)
        answer = k_diameter_naive(g, k)
        counters["n"] = g.n
        counters["m"] = g.m
    elif algorithm == "explicit":
        if k < 1:
            raise UsageError("explicit algorithm needs k >= 1")
        g = _materialize(kind, payload)
        answer = k_diameter_explicit(g, k, d, rng,
                                     reorder=not freeze_order)
        counters["n"] = g.n
        counters["m"] = g.m
    elif algorithm == "implicit":
        if k < 1:
            raise UsageError("implicit algorithm needs k >= 1")
        if kind == "points":
            pts, shape = payload
            n = len(pts)
            made = []

            def factory():
                nsds = geometric_nsds(pts, shape, seed + len(made))
                made.append(nsds)
                return nsds

            answer = k_diameter_implicit(factory, n, k, d, rng)
            counters["n"] = n
            counters["add_neighbours"] = sum(s.add_count for s in made)
            counters["list_differences"] = sum(s.list_count for s in made)
        else:
            g = payload
            made = []

            def factory():
                nsds = NaiveNeighbourSets(g, seed + len(made))
                made.append(nsds)
                return nsds

            answer = k_diameter_implicit(factory, g.n, k, d, rng)
            counters["n"] = g.n
            counters["add_neighbours"] = sum(s.add_count for s in made)
            counters["list_differences"] = sum(s.list_count for s in made)
    else:
        raise UsageError(f"unknown algorithm {algorithm!r}")
    wall = time.perf_counter() - start
    return RunReport("", algorithm, k, d, seed, bool(answer), wall, counters)


def _format_report(report: RunReport, fmt: str) -> str:
    payload = asdict(report)
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    counters = payload.pop("counters")
    payload.update(counters)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(payload.keys()))
    writer.writeheader()
    writer.writerow(payload)
    return buf.getvalue()


def cmd_diam(args):
    kind, payload = _load_instance(args)
    report = run_algorithm(args.algo, kind, payload, args.k, args.d,
                           args.seed, freeze_order=args.freeze_order)
    report.instance = str(args.input)
    log.info("diam %s on %s: %s in %.3fs", args.algo, args.input,
             report.answer, report.wall_seconds)
    text = _format_report(report, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return 0


def cmd_verify(args):
    rng = np.random.default_rng(args.seed)
    failures = []
    checked = 0
    for trial in range(args.trials):
        seed = int(rng.integers(0, 2 ** 31))
        if args.generator == "sparse-graph":
            n = int(rng.integers(3, args.n_max + 1))
            m_max = min(n * (n - 1) // 2, 3 * n)
            m = int(rng.integers(n - 1, m_max + 1))
            kind, payload = "graph", gen_mod.random_connected_graph(
                n, m, np.random.default_rng(seed))
        else:
            n = int(rng.integers(3, args.n_max + 1))
            pts = gen_mod.random_unit_square_points(
                n, gen_mod.default_box(n), np.random.default_rng(seed))
            kind, payload = "points", (pts, axis_square(1.0))
        g = _materialize(kind, payload)
        diam = diameter_naive(g)
        for k in range(args.k_min, args.k_max + 1):
            want = diam <= k
            for algo in args.algos:
                report = run_algorithm(algo, kind, payload, k, args.d, seed)
                checked += 1
                if report.answer != want:
                    failures.append({"trial": trial, "seed": seed, "k": k,
                                     "algorithm": algo, "expected": want,
                                     "got": report.answer})
    summary = {"instances": args.trials, "checks": checked,
               "failures": failures}
    print(json.dumps(summary, indent=2))
    if failures:
        return 1
    return 0


def cmd_bench(args):
    sizes = [int(s) for s in args.sizes.split(",")]
    if args.kind == "kernels":
        rows = bench_mod.kernel_rows(sizes, args.seed)
    else:
        backends = {"active": ("active",), "numba": ("numba",),
                    "numpy": ("numpy",),
                    "both": ("numba", "numpy")}[args.backend]
        rows = [r.as_dict() for r in bench_mod.scaling_rows(
            args.kind, sizes, args.k, args.d, args.seed, backends=backends)]
        if len(sizes) >= 2:
            by_backend = {}
            for r in rows:
                by_backend.setdefault(r["backend"], []).append(r)
            for name, rs in by_backend.items():
                slope = bench_mod.loglog_slope([r["n"] for r in rs],
                                               [r["diff_sum"] for r in rs])
                print(f"# diff_sum log-log slope [{name}]: {slope:.3f}",
                      file=sys.stderr)
    out = Path(args.output).open("w", newline="") if args.output else sys.stdout
    writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)
    if args.output:
        out.close()
        print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kdiam",
        description="Bounded-VC-dimension k-diameter toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a deterministic instance file")
    g.add_argument("generator",
                   choices=["sparse-graph", "unit-squares", "polygon-points"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, help="edge count (sparse-graph)")
    g.add_argument("--box", type=float, help="bounding box side (geometric)")
    g.add_argument("--sides", type=int, default=6,
                   help="polygon side count (even)")
    g.add_argument("--radius", type=float, default=1.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", required=True)
    g.add_argument("--polygon-output")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("diam", help="decide whether diameter <= k")
    d.add_argument("--algo", choices=["naive", "explicit", "implicit"],
                   required=True)
    d.add_argument("--input", required=True)
    d.add_argument("--kind", choices=["graph", "points"])
    d.add_argument("--polygon", help="polygon CSV for point instances")
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--d", type=int, default=4)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--output")
    d.add_argument("--format", choices=["json", "csv"], default="json")
    d.add_argument("--freeze-order", action="store_true",
                   help="keep the initial vertex order across radii "
                        "(explicit algorithm; measures the reorder benefit)")
    d.set_defaults(func=cmd_diam)

    v = sub.add_parser("verify", help="cross-check all algorithms")
    v.add_argument("--generator", default="unit-squares",
                   choices=["sparse-graph", "unit-squares"])
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--n-max", type=int, default=40)
    v.add_argument("--k-min", type=int, default=1)
    v.add_argument("--k-max", type=int, default=4)
    v.add_argument("--d", type=int, default=4)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--algos", nargs="+",
                   default=["naive", "explicit", "implicit"])
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="scaling and kernel benchmarks (CSV)")
    b.add_argument("--kind", default="unit-squares",
                   choices=["unit-squares", "sparse-graph", "kernels"])
    b.add_argument("--sizes", default="200,400,800,1600")
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--d", type=int, default=4)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--backend", default="active",
                   choices=["active", "numba", "numpy", "both"])
    b.add_argument("--output")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("KDIAM_LOG", "WARNING").upper())
    args = build_parser().parse_args(argv)
    if args.command == "gen" and args.generator == "sparse-graph" \
            and args.m is None:
        raise UsageError("sparse-graph needs --m")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
