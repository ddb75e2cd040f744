#!/usr/bin/env python3
"""Reproduce the six error-ratio tables and print the comparison summary.

Runs the table sweep in the segment-sampling convention with analytic end
derivatives, writes the CSVs through the CLI writer (so the run is captured
in a manifest), and prints per-table agreement statistics against the
embedded reference values.
"""

import argparse
import csv
import os
import sys

from phantomfourier.cli import main as cli_main


def summarize(out_dir: str) -> None:
    path = os.path.join(out_dir, "comparison.csv")
    with open(path) as fh:
        rows = [r for r in csv.DictReader(line for line in fh if not line.startswith("#"))]
    by_table: dict[tuple[str, str], list[dict]] = {}
    for row in rows:
        by_table.setdefault((row["function"], row["k"]), []).append(row)
    for (fname, k), cells in sorted(by_table.items()):
        blend = [c for c in cells if c["strategy"] in ("C0", "C1", "C2") and c["computed"] != "NA"]
        close = [c for c in blend if abs(float(c["relative_deviation"])) <= 0.35]
        print(f"{fname} k={k}: {len(close)}/{len(blend)} blend cells within 35% of the reference")
        for c in blend:
            dev = float(c["relative_deviation"])
            flag = "" if abs(dev) <= 0.35 else "   <-- off"
            note = f"  ({c['note']})" if c["note"] else ""
            print(f"    N={c['N']:>2} {c['strategy']}: {float(c['computed']):9.2f} "
                  f"vs {float(c['reference_value']):8.2f}  ({dev:+.0%}){flag}{note}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="out/tables")
    parser.add_argument("--budget", type=int, default=20000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rc = cli_main([
        "table", "--out", args.out, "--budget", str(args.budget), "--seed", str(args.seed),
    ])
    if rc != 0:
        sys.exit(rc)
    summarize(args.out)
