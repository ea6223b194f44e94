#!/usr/bin/env python3
"""Reproduce the full classification tables for right-angled tiling links.

Writes classification_<bound>.csv / .json next to this script (or to --outdir)
and prints the arithmeticity sweep summary and trace-field table.
"""

import argparse
import pathlib

from tilinglinks.arithmeticity import arithmetic_sweep
from tilinglinks.classify import (classification_rows, rows_to_csv,
                                  rows_to_json)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=12)
    ap.add_argument("--sweep-bound", type=int, default=50)
    ap.add_argument("--outdir", type=pathlib.Path,
                    default=pathlib.Path(__file__).parent)
    args = ap.parse_args()

    rows = classification_rows(args.bound)
    csv_path = args.outdir / f"classification_{args.bound}.csv"
    json_path = args.outdir / f"classification_{args.bound}.json"
    csv_path.write_text(rows_to_csv(rows))
    json_path.write_text(rows_to_json(rows) + "\n")
    print(f"wrote {csv_path} and {json_path} ({len(rows)} types)")

    arithmetic = [(r.m, r.n) for r in rows if r.arithmetic]
    print(f"arithmetic types up to {args.bound}: {arithmetic}")
    print("trace fields of the arithmetic types:")
    for r in rows:
        if r.arithmetic:
            print(f"  ({r.m},{r.n}): {r.trace_field}")

    sweep = arithmetic_sweep(args.sweep_bound, args.sweep_bound)
    marked = sorted({(max(r.m, r.n), min(r.m, r.n))
                     for r in sweep if r.arithmetic})
    print(f"hyperbolic sweep to {args.sweep_bound}: "
          f"{len(sweep)} pairs, arithmetic (unordered): {marked}")


if __name__ == "__main__":
    main()
