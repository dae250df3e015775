"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 the algorithm ran but reported
assumption violations (or suspect boxes for ``isolate``).
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import graeffe, oracle
from .contour import Circle, IsolationSpec, Rectangle
from .io import InputError, canonical_json, format_coefficients, parse_region, read_polynomial
from .polynomial import Polynomial
from .subdivision import count_conservation_audit, isolate_roots
from .winding import DEFAULT_MAX_SAMPLES, count_roots, count_roots_adaptive

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2
DEFAULT_DEGREES = (4, 8, 16, 32, 64)


def _method(args) -> str:
    if args.force_fft:
        return "fft"
    if args.force_horner:
        return "horner"
    return "auto"


def cmd_count(args) -> int:
    if (args.r is None) == (not args.adaptive):
        raise InputError("--r/--adaptive: give exactly one of --r FLOAT or --adaptive")
    p = read_polynomial(args.poly)
    region = parse_region(args.region)
    method = _method(args)
    if method == "fft" and not isinstance(region, Circle):
        raise InputError("--force-fft: the FFT path needs a disc region")
    if args.adaptive:
        guess = oracle.estimate_min_modulus(p, region, 64)
        if guess == 0:
            guess = 1.0
        out = count_roots_adaptive(p, region, guess, args.max_doublings, method,
                                   args.max_samples)
    else:
        if not args.r > 0:
            raise InputError("--r: must be positive")
        out = count_roots(p, region, IsolationSpec(args.r, certified=True), method,
                          args.max_samples)
    if args.json:
        print(canonical_json(out.summary()))
    else:
        omega = "none" if out.winding is None else out.winding
        print(f"omega={omega} certified={str(out.certified).lower()}")
        viol = ",".join(f"{k}@{i}" for i, k in out.violations[:10]) or "none"
        if len(out.violations) > 10:
            viol += f",...(+{len(out.violations) - 10})"
        print(f"N={out.N} samples={out.samples_used} method={out.method} "
              f"attempts={out.attempts} violations={viol}")
    return EXIT_OK if out.ok else EXIT_VIOLATION


def cmd_isolate(args) -> int:
    p = read_polynomial(args.poly)
    region = parse_region(args.region)
    if not isinstance(region, Rectangle):
        raise InputError("--region: isolate needs a box region")
    if not args.target_width > 0:
        raise InputError("--target-width: must be positive")
    try:
        report = isolate_roots(p, region, args.target_width, args.max_depth,
                               args.max_doublings, args.max_samples)
    except ValueError as exc:
        raise InputError(f"--region: {exc}") from None
    doc = report.to_json()
    print(canonical_json(doc))
    audit = count_conservation_audit(report, p.degree)
    return EXIT_OK if audit and not report.suspect_boxes else EXIT_VIOLATION


def cmd_graeffe(args) -> int:
    p = read_polynomial(args.poly)
    region = parse_region(args.region) if args.region else Circle(0j, 1.0)
    if not isinstance(region, Circle):
        raise InputError("--region: graeffe needs a disc region")
    if args.iters < 0:
        raise InputError("--iters: must be non-negative")
    if p.degree < 1 and args.iters > 0:
        raise InputError("--poly: graeffe needs degree >= 1")
    try:
        q, rec = graeffe.amplify_isolation(p, region.center, region.radius, args.iters)
    except graeffe.GraeffeOverflowError as exc:
        print(f"error: --iters: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    text = format_coefficients(q)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.json:
        print(canonical_json(rec.to_json()), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def cmd_oracle(args) -> int:
    p = read_polynomial(args.poly)
    region = parse_region(args.region)
    doc: dict = {"degree": p.degree}
    if p.degree >= 1:
        rs = oracle.find_all_roots(p)
        doc["roots"] = [[z.real, z.imag] for z in rs.roots]
        doc["converged"] = rs.converged
        doc["inside_count"] = oracle.count_inside(rs.roots, region)
        doc["min_root_distance"] = float(region.boundary_distance(rs.roots).min())
    else:
        rs = None
    doc["min_modulus_estimate"] = oracle.estimate_min_modulus(p, region)
    try:
        doc["quadrature"] = oracle.quadrature_winding_adaptive(p, region, max_panels=1 << 20)
    except oracle.QuadratureResolutionError as exc:
        doc["quadrature"] = None
        doc["quadrature_error"] = str(exc)
    if args.r is not None:
        chk = oracle.check_isolation(p, region, args.r, rs)
        doc["isolation"] = {
            "ok": chk.ok,
            "indeterminate": chk.indeterminate,
            "root_distance": chk.root_distance,
            "min_modulus": chk.min_modulus,
            "witness_root": None if chk.witness_root is None else chk.witness_root,
            "witness_t": chk.witness_t,
        }
    print(canonical_json(doc))
    return EXIT_OK


def bench_rows(degrees, seed: int) -> list[dict]:
    """Time FFT and Horner counting on seeded random polynomials over the unit circle.

    Each polynomial is scaled so that its boundary minimum modulus satisfies
    the isolation assumption; counts are then certified.
    """
    rng = np.random.default_rng(seed)
    disc = Circle(0j, 1.0)
    rows = []
    for d in degrees:
        roots = 2 * np.sqrt(rng.uniform(0, 1, d)) * np.exp(2j * np.pi * rng.uniform(0, 1, d))
        p, r = oracle.isolation_normalized(Polynomial.from_roots(roots), disc)
        row = {"degree": int(d), "r": r, "inside": oracle.count_inside(roots, disc)}
        for method in ("fft", "horner"):
            t0 = time.perf_counter()
            out = count_roots(p, disc, IsolationSpec(r), method)
            elapsed = time.perf_counter() - t0
            row["N"] = out.N
            row[f"{method}_evals"] = out.samples_used
            row[f"{method}_ms"] = elapsed * 1e3
            row[f"{method}_omega"] = out.winding
        rows.append(row)
    return rows


def cmd_bench(args) -> int:
    degrees = args.degrees or list(DEFAULT_DEGREES)
    if any(d < 1 for d in degrees):
        raise InputError("--degrees: degrees must be positive")
    rows = bench_rows(degrees, args.seed)
    if args.json:
        print(canonical_json({"seed": args.seed, "rows": rows}))
        return EXIT_OK
    header = f"{'degree':>6} {'N':>10} {'fft_evals':>10} {'fft_ms':>9} {'horner_ms':>9} {'omega':>5} {'inside':>6}"
    print(header)
    for row in rows:
        print(f"{row['degree']:>6} {row['N']:>10} {row['fft_evals']:>10} "
              f"{row['fft_ms']:>9.2f} {row['horner_ms']:>9.2f} "
              f"{str(row['fft_omega']):>5} {row['inside']:>6}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="windcount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, region_required=True):
        sp.add_argument("--poly", required=True, metavar="FILE",
                        help="coefficients, lowest degree first ('re im' lines or JSON pairs)")
        sp.add_argument("--region", required=region_required, metavar="JSON",
                        help='region JSON or a path to it, e.g. {"disc": {"center": [0, 0], "radius": 1}}')
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("count", help="winding-number root count on a region boundary")
    common(sp)
    sp.add_argument("--r", type=float, help="certified lower bound on min |p| on the boundary")
    sp.add_argument("--adaptive", action="store_true", help="estimate r and refine on violations")
    sp.add_argument("--max-doublings", type=int, default=20)
    sp.add_argument("--max-samples", type=int, default=DEFAULT_MAX_SAMPLES)
    force = sp.add_mutually_exclusive_group()
    force.add_argument("--force-fft", action="store_true")
    force.add_argument("--force-horner", action="store_true")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("isolate", help="quadtree root isolation in a square box")
    common(sp)
    sp.add_argument("--target-width", type=float, default=0.01)
    sp.add_argument("--max-depth", type=int, default=30)
    sp.add_argument("--max-doublings", type=int, default=20)
    sp.add_argument("--max-samples", type=int, default=DEFAULT_MAX_SAMPLES)
    sp.set_defaults(func=cmd_isolate)

    sp = sub.add_parser("graeffe", help="root-squaring iterates of a disc-shifted polynomial")
    common(sp, region_required=False)
    sp.add_argument("--iters", type=int, default=1, help="number of root-squaring steps")
    sp.add_argument("--out", metavar="FILE", help="write iterate coefficients here (default stdout)")
    sp.set_defaults(func=cmd_graeffe)

    sp = sub.add_parser("oracle", help="roots, quadrature and isolation check as JSON")
    common(sp)
    sp.add_argument("--r", type=float)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bench", help="timing table over seeded random polynomials")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--degrees", type=int, nargs="+")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse usage errors exit with 2; remap to the input-error code
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
