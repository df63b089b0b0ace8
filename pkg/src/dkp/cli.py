"""``dkp`` command line: generate instances, solve one, benchmark a directory."""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from .dp import MemoryBudgetError
from .generator import (FAMILY_ALIASES, SHORT_NAMES, DkpParseError, GenSpec, generate,
                        instance_seed, load, read_optimum, save, write_optimum)
from .pipeline import CSV_FIELDS, EXACT_METHODS, METHODS, SolveReport, solve

CSV_VERSION = "# dkp-bench-csv v1"
GENERATOR_NOTE = ("generator parameters are this package's defaults, "
                  "not those of the literature generators")
_LITERATURE_PREFIX = {"udkp": "unc", "wdkp": "weak", "sdkp": "strong", "idkp": "inv"}


def family_of(path: Path) -> str:
    """Family tag from a file name such as ``strong_100_3.dkp`` or ``udkp1_1.dkp``."""
    head = path.stem.split("_")[0]
    if head in FAMILY_ALIASES:
        return SHORT_NAMES[FAMILY_ALIASES[head]]
    return _LITERATURE_PREFIX.get(head[:4], "unknown")


def cmd_generate(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    family = FAMILY_ALIASES[args.family]
    short = SHORT_NAMES[family]
    for index in range(args.count):
        seed = instance_seed(args.seed, index)
        spec = GenSpec(family, args.groups, seed, (args.weight_lo, args.weight_hi),
                       Fraction(args.capacity_ratio))
        instance = generate(spec)
        path = out / f"{short}_{args.groups}_{index}.dkp"
        save(instance, path, [
            f"family={family} m={args.groups} seed={seed} (batch seed {args.seed}, index {index})",
            f"weight_range=[{args.weight_lo},{args.weight_hi}] "
            f"capacity_ratio={spec.capacity_ratio}",
            GENERATOR_NOTE,
        ])
        print(path)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    instance = load(args.file)
    optimum = read_optimum(args.file)
    report = solve(instance, args.method, with_solution=not args.no_solution,
                   mem_limit=args.mem_limit, optimum=optimum)
    if args.json:
        print(report.to_json())
    else:
        print(f"instance  {args.file} (m={instance.m}, b={instance.capacity})")
        print(report.table())
        if report.selection is not None and args.show_solution:
            print("selection " + " ".join(map(str, report.selection)))
    return 0


def _bench_one(path: Path, methods: list[str], repeat: int, with_solution: bool,
               mem_limit: int | None) -> tuple[Path, object, list[SolveReport]]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        instance = load(path)
    reports = []
    for method in methods:
        runs = [solve(instance, method, with_solution, mem_limit) for _ in range(repeat)]
        first = runs[0]
        if any(r.timing_free() != first.timing_free() for r in runs[1:]):
            raise RuntimeError(f"{path.name}/{method}: repeated runs disagree")
        reports.append(_median_times(runs))
    return path, instance, reports


def _median_times(runs: list[SolveReport]) -> SolveReport:
    return replace(runs[0],
                   pre_ms=round(statistics.median(r.pre_ms for r in runs), 3),
                   dp_ms=round(statistics.median(r.dp_ms for r in runs), 3),
                   total_ms=round(statistics.median(r.total_ms for r in runs), 3))


def _row(name: str, family: str, instance, report: SolveReport) -> dict:
    d = report.to_dict()
    row = {"instance": name, "family": family, "m": instance.m, "b": instance.capacity}
    row.update({k: d[k] for k in CSV_FIELDS if k in d})
    return row


def _aggregate(label: str, family: str, method: str, rows: list[dict]) -> dict:
    agg = {"instance": label, "family": family, "method": method}
    for key in CSV_FIELDS:
        if key in agg:
            continue
        vals = [r[key] for r in rows if isinstance(r.get(key), (int, float))]
        agg[key] = round(statistics.fmean(vals), 4) if vals else None
    return agg


def run_bench(directory: Path, methods: list[str], repeat: int = 1, with_solution: bool = True,
              mem_limit: int | None = None, write_opt: bool = False, jobs: int = 1) -> list[dict]:
    """Benchmark every ``*.dkp`` file; returns data rows followed by mean rows."""
    paths = sorted(directory.glob("*.dkp"))
    if not paths:
        raise FileNotFoundError(f"no .dkp files in {directory}")
    task = [(p, methods, repeat, with_solution, mem_limit) for p in paths]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_bench_one, *zip(*task)))
    else:
        results = [_bench_one(*t) for t in task]

    rows: list[dict] = []
    for path, instance, reports in results:
        optimum = read_optimum(path)
        exact = [r for r in reports if r.method in EXACT_METHODS]
        if optimum is None and exact and write_opt:
            optimum = exact[0].value
            write_optimum(path, optimum)
        family = family_of(path)
        for r in reports:
            if optimum is not None:
                r = r.with_optimum(optimum)
                if r.optimal and r.value != optimum:
                    print(f"warning: {path.name}/{r.method} returned {r.value}, "
                          f"sidecar optimum is {optimum}", file=sys.stderr)
            rows.append(_row(path.stem, family, instance, r))

    data = list(rows)
    for method in methods:
        mine = [r for r in data if r["method"] == method]
        for family in sorted({r["family"] for r in mine}):
            rows.append(_aggregate(f"mean:{family}", family, method,
                                   [r for r in mine if r["family"] == family]))
        rows.append(_aggregate("mean:overall", "all", method, mine))
    return rows


def write_csv(rows: list[dict], out) -> None:
    out.write(CSV_VERSION + "\n")
    out.write(f"# {GENERATOR_NOTE} (for generated instances)\n")
    writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row[k]) for k in CSV_FIELDS})


def cmd_bench(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if unknown or not methods:
        parser.error(f"unknown methods: {', '.join(unknown) or '(none given)'}")
    if args.repeat < 1:
        parser.error("--repeat must be at least 1")
    directory = Path(args.dir)
    if not directory.is_dir() or not any(directory.glob("*.dkp")):
        parser.error(f"{directory} contains no .dkp instances")
    rows = run_bench(directory, methods, args.repeat, not args.no_solution, args.mem_limit,
                     args.write_opt, args.jobs)
    if args.csv == "-":
        write_csv(rows, sys.stdout)
    else:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            write_csv(rows, fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dkp", description="Discounted 0-1 knapsack solver.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write random instances")
    gen.add_argument("--family", required=True, choices=sorted(FAMILY_ALIASES))
    gen.add_argument("--groups", type=int, required=True, help="number of groups m")
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--weight-lo", type=int, default=1)
    gen.add_argument("--weight-hi", type=int, default=1000)
    gen.add_argument("--capacity-ratio", default="1/2", help="e.g. 1/2 or 0.5")

    sol = sub.add_parser("solve", help="solve one instance file")
    sol.add_argument("file")
    sol.add_argument("--method", choices=METHODS, default="red")
    sol.add_argument("--no-solution", action="store_true", help="value-only DP")
    sol.add_argument("--json", action="store_true")
    sol.add_argument("--show-solution", action="store_true")
    sol.add_argument("--mem-limit", type=int, default=None, metavar="BYTES")

    bench = sub.add_parser("bench", help="benchmark a directory of instances")
    bench.add_argument("dir")
    bench.add_argument("--methods", default="full,red")
    bench.add_argument("--csv", default="-", help="output file, '-' for stdout")
    bench.add_argument("--repeat", type=int, default=1)
    bench.add_argument("--no-solution", action="store_true")
    bench.add_argument("--write-opt", action="store_true",
                       help="write .opt sidecars from exact methods when missing")
    bench.add_argument("--mem-limit", type=int, default=None, metavar="BYTES")
    bench.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            try:
                Fraction(args.capacity_ratio)
            except ValueError:
                parser.error(f"invalid capacity ratio {args.capacity_ratio!r}")
            return cmd_generate(args)
        if args.command == "solve":
            return cmd_solve(args)
        return cmd_bench(args, parser)
    except (DkpParseError, MemoryBudgetError, ValueError, OSError) as exc:
        print(f"dkp: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
