"""Command-line front end.

Subcommands: gram, arithmetic, tracefield, classify, commensurable,
geometry-verify, sweep, report.  Output is human-readable text or canonical
JSON (sorted keys, lowest-terms rationals); the default format comes from
the TILINGLINKS_FORMAT environment variable when set.

Exit codes: 0 success, 2 domain errors (invalid input), 3 internal
verification failures (exact/numeric disagreement).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import pi

from . import __version__
from .arithmeticity import (arithmetic_sweep, certificate_json_dict,
                            check_arithmetic)
from .classify import (arithmetic_status, classification_rows,
                       classify_geometry, commensurable,
                       minimal_orbifold_degree, normalize_type, rows_to_csv)
from .coxeter import (build_presentation, build_hyperbolic_presentation,
                      build_spherical_presentation,
                      presentation_json_dict, rank_and_signature)
from .errors import DomainError, VerificationError
from .lorentz import (build_drum, build_platonic_cell, drum_symmetries_ok,
                      realize, realized_angles, tiling_angle_oracle,
                      tiling_angles, verify_basins, verify_gluing_angles)
from .tracefields import invariant_trace_field, trace_field_json_dict

MAX_PARAM = 50  # guard against runaway field degrees


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _fmt_exact(x) -> str:
    coeffs = ",".join(f"{f.numerator}/{f.denominator}" if f.denominator != 1
                      else str(f.numerator) for f in x.base_coeffs)
    s = f"{x.approx():.12g} (= [{coeffs}]"
    if x.ext_coeffs is not None:
        ext = ",".join(f"{f.numerator}/{f.denominator}" if f.denominator != 1
                       else str(f.numerator) for f in x.ext_coeffs)
        s += f" + [{ext}]*sqrt({x.radicand.approx():.12g})"
    return s + f" over L={x.ctx.L})"


def _check_params(*vals):
    for v in vals:
        if v > MAX_PARAM:
            raise DomainError(
                f"parameter {v} exceeds the supported bound {MAX_PARAM} "
                "(field degrees grow too fast)")


def _presentation_for(args):
    _check_params(args.m, args.n)
    if getattr(args, "spherical", False):
        return build_spherical_presentation(args.m, args.n)
    return build_presentation(args.m, args.n)


def cmd_gram(args, out):
    p = _presentation_for(args)
    if args.format == "json":
        out.write(_dump(presentation_json_dict(p)) + "\n")
        return 0
    out.write(f"Coxeter presentation for [{p.m},{p.n},{p.m},{p.n}] "
              f"({p.family}), faces {', '.join(p.faces)}\n")
    for e in p.edges:
        label = {"angle": f"angle pi/{e.order}", "ideal": "ideal (infinity)",
                 "ultraparallel": "ultraparallel"}[e.kind]
        extra = (f", cosh distance {_fmt_exact(e.cosh_dist)}"
                 if e.cosh_dist is not None else "")
        out.write(f"  F{e.i} -- F{e.j}: {label}{extra}\n")
    out.write("Gram matrix (exact; approximations shown):\n")
    for row in p.gram:
        out.write("  [" + "  ".join(f"{e.approx():12.8f}" for e in row) + "]\n")
    rank, pos, neg = rank_and_signature(p)
    out.write(f"rank {rank}, signature ({pos},{neg})\n")
    return 0


def cmd_arithmetic(args, out):
    p = _presentation_for(args)
    cert = check_arithmetic(p)
    if args.format == "json":
        out.write(_dump(certificate_json_dict(cert)) + "\n")
        return 0
    out.write(f"[{p.m},{p.n},{p.m},{p.n}] ({p.family}): "
              f"{'arithmetic' if cert.arithmetic else 'NOT arithmetic'}\n")
    for w in cert.rationality_witnesses:
        val = (f"rational {w.rational}" if w.rational is not None
               else f"irrational ({w.value.approx():.12g})")
        out.write(f"  cycle {w.faces}: {val}\n")
    for w in cert.integrality_witnesses:
        mp = " + ".join(f"({c.numerator}/{c.denominator})x^{k}"
                        if c.denominator != 1 else f"{c.numerator}x^{k}"
                        for k, c in enumerate(w.minpoly))
        out.write(f"  entry ({w.i},{w.j}): minpoly {mp} -> "
                  f"{'integral' if w.integral else 'NOT integral'}\n")
    if cert.failing_item is not None:
        out.write(f"  failing item: {cert.failing_item}\n")
    return 0


def cmd_tracefield(args, out):
    _check_params(args.m, args.n)
    p = build_hyperbolic_presentation(args.m, args.n)
    res = invariant_trace_field(p)
    if args.format == "json":
        out.write(_dump(trace_field_json_dict(res)) + "\n")
        return 0
    out.write(f"adjoint trace field rational: {res.adjoint_rational}\n")
    out.write(f"det G' = {_fmt_exact(res.discriminant_det)}\n")
    out.write(f"invariant trace field: {res.invariant_field.label}\n")
    return 0


def cmd_classify(args, out):
    _check_params(args.m, args.n)
    gc = classify_geometry(args.m, args.n, args.genus)
    payload = {"m": args.m, "n": args.n, "geometry": gc.tiling.geometry,
               "exists": gc.exists, "vertex_count": gc.vertex_count,
               "note": gc.note}
    from .classify import is_valid_type
    if gc.exists and is_valid_type(args.m, args.n):
        status = arithmetic_status(args.m, args.n)
        payload["arithmetic"] = status.arithmetic
        payload["source"] = status.source
        payload["trace_field"] = (status.trace_field.label
                                  if status.trace_field else None)
        if gc.tiling.geometry == "Hyperbolic":
            deg = minimal_orbifold_degree(args.m, args.n)
            payload["min_orbifold_degree"] = deg
    if args.format == "json":
        out.write(_dump(payload) + "\n")
    else:
        for k, v in payload.items():
            out.write(f"{k}: {v}\n")
    return 0


def cmd_commensurable(args, out):
    _check_params(args.m1, args.n1, args.m2, args.n2)
    verdict, reason = commensurable((args.m1, args.n1), (args.m2, args.n2))
    payload = {"a": list(normalize_type(args.m1, args.n1)),
               "b": list(normalize_type(args.m2, args.n2)),
               "commensurable": verdict, "reason": reason}
    if args.format == "json":
        out.write(_dump(payload) + "\n")
    else:
        out.write(f"{payload['a']} vs {payload['b']}: "
                  f"{'commensurable' if verdict else 'NOT commensurable'} "
                  f"({reason})\n")
    return 0


def _geometry_reports(m, n, samples, seed):
    reports = []
    p = build_presentation(m, n)
    r = realize(p)
    gram_err = float(abs(r.recomputed_gram() - p.gram_float()).max())
    reports.append({"check": "gram_roundtrip", "max_error": gram_err,
                    "pass": gram_err < 1e-9})
    angle_err = 0.0
    edges = {(e.i, e.j): e for e in p.edges}
    for i, j, kind, value in realized_angles(r):
        e = edges.get((i, j))
        if e is None:  # no diagram edge: a right angle
            angle_err = max(angle_err, abs(value - pi / 2))
        elif kind == "angle":
            angle_err = max(angle_err, abs(value - pi / e.order))
        elif kind == "ultraparallel":
            angle_err = max(angle_err, abs(value - e.cosh_dist.approx()))
    reports.append({"check": "dihedral_labels", "max_error": angle_err,
                    "pass": angle_err < 1e-9})
    if p.family == "hyperbolic":
        am, an = tiling_angles(m, n)
        oracle = tiling_angle_oracle(m, n)
        reports.append({"check": "tiling_angle_oracle",
                        "max_error": abs(am - oracle), "pass": abs(am - oracle) < 1e-9})
        reports.append({"check": "gluing_angles",
                        "pass": verify_gluing_angles(m, n)})
        for side in sorted({m, n}):
            d = build_drum(m, n, side=side)
            reports.append({"check": f"drum({side})_symmetries",
                            "pass": drum_symmetries_ok(d)})
            rep = verify_basins(d.cell, samples=samples, seed=seed)
            reports.append(rep.json_dict() | {"check": f"drum({side})_basins",
                                              "pass": rep.violations == 0})
    return reports


def cmd_geometry_verify(args, out):
    reports = []
    if args.cell:
        for kind in args.cell:
            cell = build_platonic_cell(kind)
            rep = verify_basins(cell, samples=args.samples, seed=args.seed)
            reports.append(rep.json_dict() | {"check": f"{kind}_basins",
                                              "pass": rep.violations == 0})
    if args.m is not None and args.n is not None:
        _check_params(args.m, args.n)
        reports += _geometry_reports(args.m, args.n, args.samples, args.seed)
    if not reports:
        raise DomainError("nothing to verify: give --cell and/or --m/--n")
    ok = all(r.get("pass", True) for r in reports)
    if args.format == "json":
        out.write(_dump({"reports": reports, "all_pass": ok,
                         "seed": args.seed}) + "\n")
    else:
        for r in reports:
            out.write(f"{r.get('check', r.get('cell')):28s} "
                      f"{'PASS' if r.get('pass', True) else 'FAIL'}  "
                      + ", ".join(f"{k}={v}" for k, v in r.items()
                                  if k not in ("check", "pass")) + "\n")
    return 0 if ok else 3


def cmd_sweep(args, out):
    _check_params(args.m_max, args.n_max)
    rows = arithmetic_sweep(args.m_max, args.n_max)
    if args.format == "json":
        out.write(_dump([{"m": r.m, "n": r.n, "arithmetic": r.arithmetic,
                          "witness": r.witness} for r in rows]) + "\n")
        return 0
    for r in rows:
        out.write(f"({r.m:2d},{r.n:2d})  "
                  f"{'arithmetic    ' if r.arithmetic else 'non-arithmetic'}  "
                  f"{r.witness}\n")
    arith = [(r.m, r.n) for r in rows if r.arithmetic]
    out.write(f"arithmetic hyperbolic types: {arith}\n")
    return 0


def cmd_report(args, out):
    if args.bound > MAX_PARAM:
        raise DomainError(f"bound must be <= {MAX_PARAM}")
    rows = classification_rows(args.bound)
    sweep = arithmetic_sweep(args.bound, args.bound) if args.bound >= 3 else []
    geometry = []
    if args.with_geometry:
        for kind in ("tetrahedron", "octahedron"):
            cell = build_platonic_cell(kind)
            rep = verify_basins(cell, samples=args.samples, seed=args.seed)
            geometry.append(rep.json_dict() | {"pass": rep.violations == 0})
        for (m, n) in ((6, 6), (6, 4)):
            if m <= args.bound and n <= args.bound:
                for side in sorted({m, n}):
                    d = build_drum(m, n, side=side)
                    rep = verify_basins(d.cell, samples=args.samples,
                                        seed=args.seed)
                    geometry.append(rep.json_dict()
                                    | {"cell": f"({m},{n}) drum({side})",
                                       "pass": rep.violations == 0})
    arithmetic_rows = [r for r in rows if r.arithmetic]
    payload = {
        "bound": args.bound,
        "classification": [r.__dict__ for r in rows],
        "arithmetic_types": [[r.m, r.n] for r in arithmetic_rows],
        "sweep_arithmetic": [[r.m, r.n] for r in sweep if r.arithmetic],
        "trace_fields": {f"({r.m},{r.n})": r.trace_field
                         for r in arithmetic_rows},
        "geometry_checks": geometry,
    }
    if args.format == "json":
        out.write(_dump(payload) + "\n")
        return 0
    out.write(f"Right-angled tiling link classification, 3 <= m,n <= {args.bound}\n\n")
    out.write(rows_to_csv(rows).replace(",", "\t"))
    out.write("\narithmetic types: "
              + ", ".join(f"({r.m},{r.n})" for r in arithmetic_rows) + "\n")
    if geometry:
        out.write("\ngeometry verification:\n")
        for g in geometry:
            out.write(f"  {g['cell']:20s} violations={g['violations']} "
                      f"samples={g['samples']} "
                      f"{'PASS' if g['pass'] else 'FAIL'}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tilinglinks",
        description="Exact arithmetic and geometry for right-angled tiling links")
    ap.add_argument("--version", action="version", version=__version__)
    default_format = os.environ.get("TILINGLINKS_FORMAT", "text")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("text", "json"),
                       default=default_format)
        p.add_argument("--out", type=str, default=None,
                       help="write output to a file instead of stdout")

    p = sub.add_parser("gram", help="Coxeter diagram and exact Gram matrix")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--spherical", action="store_true",
                   help="use the five-face spherical presentation")
    add_common(p)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("arithmetic", help="Vinberg-criterion certificate")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--spherical", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_arithmetic)

    p = sub.add_parser("tracefield", help="invariant trace field via det G'")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    add_common(p)
    p.set_defaults(func=cmd_tracefield)

    p = sub.add_parser("classify", help="geometry type / vertex count / status")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--genus", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("commensurable", help="commensurability of two types")
    p.add_argument("m1", type=int)
    p.add_argument("n1", type=int)
    p.add_argument("m2", type=int)
    p.add_argument("n2", type=int)
    add_common(p)
    p.set_defaults(func=cmd_commensurable)

    p = sub.add_parser("geometry-verify",
                       help="numerical verification of cells and drums")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--cell", action="append", default=None,
                   choices=("tetrahedron", "octahedron"))
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_geometry_verify)

    p = sub.add_parser("sweep", help="arithmeticity sweep over hyperbolic types")
    p.add_argument("--m-max", type=int, default=50)
    p.add_argument("--n-max", type=int, default=50)
    add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="full classification document")
    p.add_argument("--bound", type=int, default=12)
    p.add_argument("--with-geometry", action="store_true")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_report)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "cell", "missing") is None:
        args.cell = []
    try:
        if args.out:
            with open(args.out, "w") as fh:
                return args.func(args, fh)
        return args.func(args, sys.stdout)
    except (DomainError,) as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"error: verification: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
