"""Command-line interface: ``realspherical <command> [options]``.

Every command prints one JSON report to standard output with a fixed field
order (command, argv, input_hash, seed, version, results, verdict_basis).
Scan commands can also write their table as CSV with ``--out``.

Exit codes: 0 success, 1 usage or parse error, 2 validation error,
3 numeric non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .catalog import ALIASES, catalog, catalog_names
from .cones import Cone, Lattice, weighted_cone_sum
from .descriptor_io import DescriptorError, descriptor_to_dict, parse_descriptor
from .integrability import (
    ExponentProfile,
    NotWavefrontError,
    WeightList,
    enumerate_factorizations,
    ideal_partition,
    is_interior_dual,
    lambda_V,
    lp_threshold,
    property_I_check,
)
from .spherical import (
    compression_cone,
    image_of_chamber,
    is_wavefront,
    quotient_basis,
    rank_and_edge,
    rho_u,
    validate,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NONCONV = 0, 1, 2, 3
SEED_ENV = "REALSPHERICAL_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _version() -> str:
    try:
        from importlib.metadata import version

        return version("artifact")
    except Exception:  # pragma: no cover - only when not installed
        from . import __version__

        return __version__


# -- JSON encoding ------------------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, Fraction):
        return la.fmt(obj)
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "tolist"):
        return _jsonable(obj.tolist())
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def _cone_dict(c: Cone) -> dict:
    return {
        "ambient_dim": c.ambient_dim,
        "rays": [list(r) for r in c.rays],
        "edge": [list(v) for v in c.lineality],
        "inequalities": [list(r) for r in c.facets],
    }


# -- argument helpers ---------------------------------------------------------------------

def _rational_list(text: str) -> tuple:
    try:
        return la.vec(t for t in text.split(",") if t.strip())
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rationals from {text!r}: {exc}") from None


def _rows(text: str) -> list:
    return [_rational_list(r) for r in text.split(";") if r.strip()]


def parse_lambda(text: str, datum) -> tuple:
    """``rho``, ``k*rho`` / ``krho``, ``H:v1,...`` (values on the dual basis) or a covector."""
    t = text.replace(" ", "")
    if t.endswith("rho"):
        coef = t[: -len("rho")].rstrip("*") or "1"
        return la.scale(la.frac(coef), datum.rho())
    if t.startswith("H:"):
        vals = _rational_list(t[2:])
        if len(vals) != datum.rank:
            raise UsageError(f"H: needs {datum.rank} values")
        out = la.zeros(datum.ambient_dim)
        for v, a in zip(vals, datum.simple_roots):
            out = la.add(out, la.scale(v, a))
        return out
    vec = _rational_list(t)
    if len(vec) != datum.ambient_dim:
        raise UsageError(f"lambda needs {datum.ambient_dim} coordinates")
    return vec


def _load_space(args):
    if getattr(args, "descriptor", None):
        return parse_descriptor(args.descriptor)
    if getattr(args, "space", None):
        try:
            return catalog(args.space)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    raise UsageError("pass --space NAME or --descriptor PATH")


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return int(args.seed)
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write_csv(path: str, rows: list[dict], columns: Sequence[str]):
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(columns)
        for r in rows:
            wr.writerow([r[c] for c in columns])


# -- commands -----------------------------------------------------------------------------

def cmd_catalog(args):
    rows = []
    for n in catalog_names():
        d = catalog(n)
        rows.append({"name": n, "description": d.description, "real_rank": d.datum.ambient_dim - d.a_H.dim,
                     "realization": d.realization})
    return {"spaces": rows, "aliases": dict(ALIASES)}, "exact", None


def cmd_describe(args):
    d = _load_space(args)
    rep = rank_and_edge(d)
    res = {
        "descriptor": descriptor_to_dict(d),
        "violations": validate(d),
        "real_rank": rep.real_rank,
        "wavefront": rep.wavefront,
        "rho_u": list(rep.rho_u),
        "compression_cone": _cone_dict(rep.compression_cone),
        "a_Z_basis": [list(w) for w in quotient_basis(d)],
    }
    return res, "exact", d


def cmd_cone(args):
    d = _load_space(args)
    return {"compression_cone": _cone_dict(compression_cone(d)),
            "a_Z_basis": [list(w) for w in quotient_basis(d)]}, "exact", d


def cmd_wavefront(args):
    d = _load_space(args)
    return {"wavefront": is_wavefront(d), "compression_cone": _cone_dict(compression_cone(d)),
            "image_of_negative_chamber": _cone_dict(image_of_chamber(d))}, "exact", d


def cmd_rho_u(args):
    d = _load_space(args)
    return {"rho_u": list(rho_u(d)), "a_H": [list(b) for b in d.a_H.basis]}, "exact", d


def cmd_lambda_v(args):
    d = _load_space(args)
    wl = WeightList(tuple(_rows(args.weights)))
    lam = lambda_V(wl, d.datum)
    parts = [s for _, s in ideal_partition(d)] or None
    return {"lambda_V": list(lam), "interior_dual": is_interior_dual(lam, d.datum, parts)}, "exact", d


def _threshold_dict(thr) -> dict:
    return {
        "p_star": thr.p_star,
        "upper": thr.upper,
        "reason": thr.reason,
        "critical_rays": [list(r) for r in thr.critical],
        "rays": [
            {"ray": list(r["ray"]), "L": r["L"], "two_rho_u": r["two_rho_u"],
             "constraint": list(r["constraint"]) if isinstance(r["constraint"], tuple) else r["constraint"]}
            for r in thr.rays
        ],
        "verification": list(thr.verification),
    }


def cmd_lp_threshold(args):
    d = _load_space(args)
    lam = parse_lambda(args.lam, d.datum)
    thr = lp_threshold(d, ExponentProfile(lam, args.d), verify=not args.no_verify)
    basis = "analytic"
    return {"lambda_V": list(lam), "d_V": args.d, **_threshold_dict(thr)}, basis, d


def cmd_property_i(args):
    d = _load_space(args)
    lam = parse_lambda(args.lam, d.datum)
    trivial = {t.strip() for t in (args.trivial or "").split(",") if t.strip()}
    unknown = trivial - set(d.labels)
    if unknown:
        raise UsageError(f"unknown ideal labels {sorted(unknown)}; known: {list(d.labels)}")
    flags = {l: l not in trivial for l in d.labels}
    tr = property_I_check(d, flags, ExponentProfile(lam, args.d))
    steps = [
        {"kind": s.kind, "space": s.space, "added": list(s.added), "dim_h_star": s.dim_h_star,
         "detail": s.detail, "p_star": s.p_star, "unimodular": s.unimodular}
        for s in tr.steps
    ]
    return {"verdict": tr.verdict, "p": tr.p, "chain": list(tr.chain), "steps": steps,
            "notes": list(tr.notes)}, "analytic", d


def cmd_factorizations(args):
    d = _load_space(args)
    recs = enumerate_factorizations(d)
    rows = [{"subset": list(r.subset), "dim_h_star": r.dim_h_star, "classification": r.classification}
            for r in recs]
    proper = [r for r in rows if r["classification"] in ("proper-basic",)]
    return {"dim_g": d.dim_g, "dim_h": d.dim_h, "records": rows,
            "proper_count": len(proper)}, "exact", d


def cmd_sum(args):
    d = None
    if args.space or args.descriptor:
        d = _load_space(args)
        cone = compression_cone(d)
    elif args.ineq is not None:
        rows = _rows(args.ineq)
        if not rows:
            raise UsageError("--ineq needs at least one row")
        cone = Cone.from_inequalities(rows, len(rows[0]))
    else:
        raise UsageError("pass --space/--descriptor or --ineq")
    lam = [_rational_list(x) for x in args.lam.split(";")] if args.lam else None
    if lam is None:
        lam = [la.zeros(cone.ambient_dim)]
    if any(len(l) != cone.ambient_dim for l in lam):
        raise UsageError(f"lambda needs {cone.ambient_dim} coordinates")
    norm = args.norm if args.norm in ("sup", "euclidean") else None
    rep = weighted_cone_sum(Lattice.standard(cone.ambient_dim), cone, lam, args.m, args.rmax,
                            norm=norm, analytic=not args.empirical)
    rows = [{"radius": r, "value": v} for r, v in rep.partial_sums]
    if args.out:
        _write_csv(args.out, rows, ["radius", "value"])
    return {"partial_sums": rows, "verdict": rep.verdict, "reason": rep.reason,
            "empirical_verdict": rep.empirical_verdict}, rep.verdict_basis, d


def _realization(args):
    from .numerics import realization

    try:
        return realization(args.space)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def cmd_volume_scan(args):
    from .numerics import BallSpec, growth_scan

    real = _realization(args)
    scan = growth_scan(real, _floats(args.direction), _floats(args.ts), BallSpec(args.R),
                       args.samples, _seed(args), workers=args.workers)
    cols = ["t", "estimate", "stderr", "analytic_reference"]
    if args.out:
        _write_csv(args.out, list(scan.rows), cols)
    return {"rows": list(scan.rows), "slope": scan.slope, "slope_stderr": scan.slope_stderr,
            "expected_slope": scan.expected_slope, "band_ratio": scan.band_ratio,
            "R": args.R, "samples": args.samples}, "numeric", catalog(real.descriptor)


def cmd_limit_scan(args):
    from .numerics import subalgebra_limit_scan

    real = _realization(args)
    desc = catalog(real.descriptor)
    ts = _floats(args.ts)
    dist = subalgebra_limit_scan(real, desc, _floats(args.x), ts)
    rows = [{"t": t, "distance": v} for t, v in zip(ts, dist)]
    if args.out:
        _write_csv(args.out, rows, ["t", "distance"])
    return {"x": _floats(args.x), "rows": rows}, "numeric", desc


def cmd_seminorms(args):
    from .numerics.seminorms import comparison_constant, schwartz_seminorms, standard_profiles

    profiles = standard_profiles()
    if args.profile != "all":
        profiles = [p for p in profiles if p.name == args.profile]
        if not profiles:
            raise UsageError(f"unknown profile {args.profile!r}")
    rows = []
    for p in profiles:
        r = schwartz_seminorms(p, args.n, args.m)
        rows.append({"profile": p.name, "p_n": r.p_n, "q_m": r.q_m})
    res = {"n": args.n, "m": args.m, "rows": rows}
    if 2 * args.m - 2 * args.n > 1:
        c = comparison_constant(args.n, args.m)
        res["comparison_constant"] = c
        res["violations"] = [r["profile"] for r in rows if r["p_n"] > c * r["q_m"] * (1 + 1e-9)]
    if args.out:
        _write_csv(args.out, rows, ["profile", "p_n", "q_m"])
    return res, "numeric", catalog("sl2_gk")


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="realspherical", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def space(sp, descriptor=True):
        sp.add_argument("--space", help="catalog name (see the catalog command)")
        if descriptor:
            sp.add_argument("--descriptor", help="path to a JSON descriptor file")
        sp.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default ${SEED_ENV} or 0)")

    sp = sub.add_parser("catalog", help="list shipped spaces")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_catalog)
    for name, fn, hlp in [
        ("describe", cmd_describe, "descriptor, validation and structure report"),
        ("cone", cmd_cone, "compression cone in a_Z coordinates"),
        ("wavefront", cmd_wavefront, "wavefront test"),
        ("rho-u", cmd_rho_u, "the covector rho_u"),
        ("factorizations", cmd_factorizations, "enlargements of h by simple ideals"),
    ]:
        sp = sub.add_parser(name, help=hlp)
        space(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("lambda-v", help="Lambda_V from a weight list")
    space(sp)
    sp.add_argument("--weights", required=True, help="covectors separated by ';', e.g. '1;-1'")
    sp.set_defaults(func=cmd_lambda_v)

    for name, fn, hlp in [
        ("lp-threshold", cmd_lp_threshold, "exponents p with matrix coefficients in L^p"),
        ("property-i", cmd_property_i, "property I trace for a representation"),
    ]:
        sp = sub.add_parser(name, help=hlp)
        space(sp)
        sp.add_argument("--lambda", dest="lam", required=True,
                        help="rho, k*rho, H:v1,...,vn or an explicit covector")
        sp.add_argument("--d", type=int, default=0, help="polynomial degree d_V")
        if name == "lp-threshold":
            sp.add_argument("--no-verify", action="store_true",
                            help="skip the cross-check by lattice sums")
        else:
            sp.add_argument("--trivial", default="", help="comma-separated ideal labels")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("sum", help="weighted lattice sum over a cone")
    space(sp)
    sp.add_argument("--ineq", help="inequality rows c with c.x >= 0, separated by ';'")
    sp.add_argument("--lambda", dest="lam", default=None,
                    help="covector(s) separated by ';' (pointwise max)")
    sp.add_argument("--m", type=float, default=0.0, help="polynomial degree")
    sp.add_argument("--rmax", type=float, default=64.0)
    sp.add_argument("--norm", choices=["euclidean", "sup", "gram"], default="euclidean")
    sp.add_argument("--empirical", action="store_true", help="skip the analytic verdict")
    sp.add_argument("--out", help="CSV output path")
    sp.set_defaults(func=cmd_sum)

    sp = sub.add_parser("volume-scan", help="Monte-Carlo ball volumes along a ray")
    space(sp, descriptor=False)
    sp.add_argument("--direction", default="-1")
    sp.add_argument("--ts", default="0.5,1,1.5,2,2.5,3")
    sp.add_argument("--R", type=float, default=2.0)
    sp.add_argument("--samples", type=int, default=100000)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="CSV output path")
    sp.set_defaults(func=cmd_volume_scan)

    sp = sub.add_parser("limit-scan", help="Grassmann distance to the limiting subalgebra")
    space(sp, descriptor=False)
    sp.add_argument("--x", required=True, help="direction in a, comma-separated")
    sp.add_argument("--ts", default="0,1,2,5,10,15,20")
    sp.add_argument("--out", help="CSV output path")
    sp.set_defaults(func=cmd_limit_scan)

    sp = sub.add_parser("seminorms", help="p_n and q_m for radial profiles on sl2_gk")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--profile", default="all")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out", help="CSV output path")
    sp.set_defaults(func=cmd_seminorms)
    return p


def _input_hash(args, desc) -> str:
    h = hashlib.sha256()
    if desc is not None:
        h.update(json.dumps(_jsonable(descriptor_to_dict(desc)), sort_keys=True).encode())
    opts = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    h.update(json.dumps(_jsonable(opts), sort_keys=True, default=str).encode())
    return h.hexdigest()


def run_command(argv: Sequence[str], out=None) -> tuple[int, dict | None]:
    """Run one command; returns ``(exit code, report)`` and prints the report."""
    from .numerics.volume import NonConvergenceError

    out = sys.stdout if out is None else out
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    try:
        seed = _seed(args)
        results, basis, desc = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    except DescriptorError as exc:
        label = "parse error" if exc.kind == "parse" else "validation error"
        for line in exc.diagnostics:
            print(f"{label}: {line}", file=sys.stderr)
        return (EXIT_USAGE if exc.kind == "parse" else EXIT_INVALID), None
    except NotWavefrontError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_INVALID, None
    except NonConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONV, None
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    report = {
        "command": args.command,
        "argv": argv,
        "input_hash": _input_hash(args, desc),
        "seed": seed,
        "version": _version(),
        "results": _jsonable(results),
        "verdict_basis": basis,
    }
    out.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK, report


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
