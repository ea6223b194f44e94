#!/usr/bin/env python3
"""Run the numerical geometry battery: realizations round-trip through their
Gram matrices, drums and Platonic cells verify their dihedral and horoball
structure, and the basin sampler reports violations of the nearest-horoball
decomposition."""

import argparse
import json

from tilinglinks.lorentz import (build_drum, build_platonic_cell,
                                 drum_symmetries_ok, verify_basins,
                                 verify_gluing_angles)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=str, default="6,6;6,4;7,3",
                    help="semicolon-separated m,n pairs")
    args = ap.parse_args()

    failures = 0
    for kind in ("tetrahedron", "octahedron"):
        rep = verify_basins(build_platonic_cell(kind),
                            samples=args.samples, seed=args.seed)
        print(json.dumps(rep.json_dict(), sort_keys=True))
        failures += rep.violations

    for token in args.pairs.split(";"):
        m, n = (int(x) for x in token.split(","))
        ok = verify_gluing_angles(m, n)
        print(f"({m},{n}) gluing angle sums == 2*pi: {ok}")
        failures += 0 if ok else 1
        for side in sorted({m, n}):
            d = build_drum(m, n, side=side)
            sym = drum_symmetries_ok(d)
            rep = verify_basins(d.cell, samples=args.samples, seed=args.seed)
            print(json.dumps(rep.json_dict()
                             | {"pair": [m, n], "symmetries_ok": sym},
                             sort_keys=True))
            failures += rep.violations + (0 if sym else 1)

    print(f"total failures: {failures}")
    raise SystemExit(0 if failures == 0 else 3)


if __name__ == "__main__":
    main()
