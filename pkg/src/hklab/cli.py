"""Command-line front end: run verification suites, write CSV reports and a
markdown summary, and signal the overall verdict through the exit code.

Exit codes: 0 all checks passed, 1 at least one check failed or a numerical
invariant broke, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from .config import SUITE_NAMES, ConfigError, load_config
from .operators import KernelMultiplicityError
from .suites import SUITES, CheckRow, Workspace, run_suites

CSV_HEADER = ("suite", "check", "paper_anchor", "parameter", "value", "threshold", "verdict")


def _format_value(v) -> str:
    if v is None:
        return ""
    return f"{float(v):.17g}"


def write_csv(path: Path, rows: list[CheckRow]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow((row.suite, row.check, row.anchor, row.parameter,
                             _format_value(row.value), _format_value(row.threshold),
                             row.verdict))


def write_summary(path: Path, results: dict, config) -> None:
    lines = ["# Verification summary", ""]
    lines.append(f"Grid: N={config.grid_n}, L={config.grid_l:g}; "
                 f"Hermite size M={config.hermite_m}; seed={config.seed}.")
    lines.append("")
    total_fail = 0
    for name, rows in results.items():
        checks = [r for r in rows if r.passed is not None]
        failed = [r for r in checks if not r.passed]
        total_fail += len(failed)
        lines.append(f"## {name}: {len(checks) - len(failed)}/{len(checks)} checks passed")
        lines.append("")
        lines.append("| check | identity verified | parameter | value | threshold | verdict |")
        lines.append("|---|---|---|---|---|---|")
        for r in rows:
            lines.append(f"| {r.check} | {r.anchor} | {r.parameter} | "
                         f"{_format_value(r.value)} | {_format_value(r.threshold)} | {r.verdict} |")
        lines.append("")
    lines.insert(2, f"Overall: {'PASS' if total_fail == 0 else f'{total_fail} FAILED CHECKS'}")
    lines.insert(3, "")
    path.write_text("\n".join(lines))


def write_sweep_data(out_dir: Path, sweeps: dict) -> None:
    """Gnuplot-compatible two-column (t, value) tables for defect sweeps."""
    for name, pairs in sweeps.items():
        lines = ["# t  defect"]
        lines += [f"{_format_value(t)}  {_format_value(v)}" for t, v in pairs]
        (out_dir / f"{name}.dat").write_text("\n".join(lines) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hklab",
        description="Numerical verification suites for the Dirac / dual-Dirac "
                    "construction over the infinite dihedral group.")
    parser.add_argument("suite", choices=SUITE_NAMES,
                        help="which verification suite to run ('all' runs every suite)")
    parser.add_argument("--config", metavar="PATH", help="INI-style configuration file")
    parser.add_argument("--grid-n", type=int, dest="grid_n", help="grid size N (even)")
    parser.add_argument("--grid-l", type=float, dest="grid_l", help="grid half-width L")
    parser.add_argument("--hermite", type=int, dest="hermite_m", help="Hermite basis size M")
    parser.add_argument("--seed", type=int, dest="seed", help="random seed")
    parser.add_argument("--out", dest="out_dir", help="output directory for reports")
    parser.add_argument("--parallel", type=int, dest="parallel",
                        help="worker threads for sweep evaluation")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, {
            "grid_n": args.grid_n, "grid_l": args.grid_l, "hermite_m": args.hermite_m,
            "seed": args.seed, "out_dir": args.out_dir, "parallel": args.parallel,
        })
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    names = list(SUITES) if args.suite == "all" else [args.suite]
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    started = time.perf_counter()
    workspace = Workspace(config)
    try:
        results = run_suites(names, config, workspace)
    except KernelMultiplicityError as exc:
        print(f"numerical invariant failed: {exc}", file=sys.stderr)
        return 1

    failures = 0
    for name, rows in results.items():
        write_csv(out_dir / f"{name.replace('-', '_')}.csv", rows)
        failures += sum(1 for r in rows if r.passed is False)
    write_summary(out_dir / "summary.md", results, config)
    write_sweep_data(out_dir, workspace.sweeps)

    elapsed = time.perf_counter() - started
    n_checks = sum(sum(1 for r in rows if r.passed is not None) for rows in results.values())
    status = "PASS" if failures == 0 else "FAIL"
    print(f"{status}: {n_checks - failures}/{n_checks} checks passed "
          f"in {elapsed:.1f}s; reports in {out_dir}/")
    if failures:
        for name, rows in results.items():
            for r in rows:
                if r.passed is False:
                    print(f"  FAIL {name}/{r.check} [{r.parameter}] "
                          f"value={_format_value(r.value)} threshold={_format_value(r.threshold)}",
                          file=sys.stderr)
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
