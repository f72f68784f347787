"""Command-line front end.

Subcommands evaluate closed-form families, run the discrete minimizer and the
degenerate axis solver, classify invariant hanging surfaces, and export
CSV/JSON/mesh artifacts.  All outputs are deterministic: fixed float
formatting (17 significant digits), sorted JSON keys, no timestamps.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import curves, odes, singular, surfaces, variational
from .errors import IsoKitError


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_range(raw: str) -> tuple[float, float]:
    lo, hi = raw.split(":")
    return float(lo), float(hi)


def _parse_grid(raw: str) -> tuple[int, int]:
    nu, nv = raw.lower().split("x")
    return int(nu), int(nv)


def _parse_profile(raw: str):
    """Profile spec `kind:args` -> callable t -> (z, z', z'').

    Kinds: log:c,d  power:c,p,d  inverse:z1,z2  poly:a0,a1,...
    """
    kind, _, argstr = raw.partition(":")
    vals = [float(v) for v in argstr.split(",")] if argstr else []
    if kind == "log":
        c, d = vals
        return singular.ProfileForm("log", {"c": c, "d": d})
    if kind == "power":
        c, p, d = vals
        return singular.ProfileForm("power", {"c": c, "p": p, "d": d})
    if kind == "inverse":
        z1, z2 = vals
        return singular.ProfileForm("inverse_radius", {"z1": z1, "z2": z2})
    if kind == "poly":
        coeffs = np.array(vals)

        def poly(t, _c=coeffs):
            powers = _c * t ** np.arange(_c.size)
            dz = _c[1:] * np.arange(1, _c.size) * t ** np.arange(_c.size - 1)
            ddz = (
                _c[2:]
                * np.arange(2, _c.size)
                * np.arange(1, _c.size - 1)
                * t ** np.arange(_c.size - 2)
            )
            return (float(powers.sum()), float(dz.sum()), float(ddz.sum()))

        return poly
    raise argparse.ArgumentTypeError(f"unknown profile kind {kind!r}")


def _profile_curve(profile, t_lo: float, t_hi: float) -> curves.PlaneCurve:
    def eval_fn(t):
        z, zd, zdd = profile(t)
        return (t, z, 1.0, zd, 0.0, zdd)

    return curves.PlaneCurve(t_lo, t_hi, eval_fn)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isokit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catenary", help="sample a closed-form catenary family")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--d", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--range", dest="trange", type=_parse_range, required=True)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--out", default="-")

    p = sub.add_parser("minimize", help="minimize a discrete weight functional")
    p.add_argument("--ref", choices=[curves.LZ, curves.LX], default=curves.LZ)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--endpoints", required=True, help="ta,za,tb,zb")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--out", default="-", help="CSV destination")
    p.add_argument("--json", dest="json_out", default=None, help="summary destination")

    p = sub.add_parser("catenoid", help="solve the two-circle boundary problem")
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--z1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--z2", type=float, required=True)
    p.add_argument("--mesh", default=None, help="optional OBJ destination")
    p.add_argument("--grid", type=_parse_grid, default=(32, 64))

    p = sub.add_parser("surface", help="generate a surface mesh with curvature sidecar")
    p.add_argument("kind", choices=["revolution", "helicoidal", "parabolic"])
    p.add_argument("--profile", type=_parse_profile, required=True)
    p.add_argument("--trange", type=_parse_range, required=True)
    p.add_argument("--thetarange", type=_parse_range, default=None)
    p.add_argument("--pitch", type=float, default=0.0)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--c1", type=float, default=0.0)
    p.add_argument("--c2", type=float, default=0.0)
    p.add_argument("--mesh", required=True)
    p.add_argument("--grid", type=_parse_grid, default=(32, 64))
    p.add_argument("--curvature-csv", default=None)

    p = sub.add_parser("classify", help="classify invariant hanging surfaces")
    p.add_argument("kind", choices=["helicoidal", "parabolic"])
    p.add_argument("--ref", choices=[singular.PI_YZ, singular.PI_XY], required=True)
    p.add_argument("--c", type=float, default=0.0, help="pitch (helicoidal) or c")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--c1", type=float, default=0.0)
    p.add_argument("--c2", type=float, default=0.0)
    p.add_argument("--z1", type=float, default=0.0)
    p.add_argument("--z2", type=float, default=1.0)
    p.add_argument("--out", default="-")

    p = sub.add_parser("ivp", help="solve the degenerate axis-crossing problem")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out", default="-", help="CSV destination")
    p.add_argument("--json", dest="json_out", default=None, help="sidecar destination")

    p = sub.add_parser("residual", help="max residual on a grid; exit 0 iff below threshold")
    p.add_argument("--check", choices=["el", "sms"], required=True)
    p.add_argument("--threshold", type=float, default=1e-9)
    p.add_argument("--ref", choices=[curves.LZ, curves.LX], default=curves.LZ)
    p.add_argument("--sref", choices=[singular.PI_YZ, singular.PI_XY], default=singular.PI_YZ)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--profile", type=_parse_profile, required=True)
    p.add_argument("--range", dest="trange", type=_parse_range, required=True)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--surface", choices=["revolution", "helicoidal", "parabolic"], default="revolution")
    p.add_argument("--thetarange", type=_parse_range, default=(-1.25, 1.25))
    p.add_argument("--grid", type=_parse_grid, default=(50, 16))
    p.add_argument("--pitch", type=float, default=0.0)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--c1", type=float, default=0.0)
    p.add_argument("--c2", type=float, default=0.0)
    return parser


def _cmd_catenary(args) -> int:
    family = curves.CatenaryFamily(
        reference=curves.LZ, alpha=args.alpha, c=args.c, d=args.d, lam=args.lam
    )
    t_lo, t_hi = args.trange
    ts = np.linspace(t_lo, t_hi, args.n)
    rows = ["t,x,z"]
    for t in ts:
        x, z = curves.eval_catenary(family, float(t))
        rows.append(f"{t:.17g},{x:.17g},{z:.17g}")
    _write_text(args.out, "\n".join(rows) + "\n")
    return 0


def _cmd_minimize(args) -> int:
    ta, za, tb, zb = (float(v) for v in args.endpoints.split(","))
    spec = variational.WeightFunctionalSpec(args.ref, args.alpha, args.lam)
    curve = variational.minimize(spec, (ta, za, tb, zb), args.n)
    rows = ["t,x,z"]
    for t, z in zip(curve.grid, curve.values):
        rows.append(f"{t:.17g},{t:.17g},{z:.17g}")
    _write_text(args.out, "\n".join(rows) + "\n")
    grad = variational.functional_gradient(spec, curve)
    summary = {
        "functional_value": variational.evaluate_functional(spec, curve),
        "gradient_max_abs": float(np.max(np.abs(grad))),
        "n": args.n,
    }
    _write_text(args.json_out if args.json_out else "-", _json_dumps(summary) + "\n")
    return 0


def _cmd_catenoid(args) -> int:
    boundary = singular.CatenoidBoundary(args.r1, args.z1, args.r2, args.z2)
    sol = singular.solve_catenoid_boundary(boundary)
    sys.stdout.write(_json_dumps({"c": sol.c, "d": sol.d, "status": sol.status}) + "\n")
    if args.mesh and sol.status == "unique":
        form = singular.ProfileForm("log", {"c": sol.c, "d": sol.d})
        t_lo, t_hi = sorted((args.r1, args.r2))
        spec = surfaces.RevolutionSpec(_profile_curve(form, t_lo, t_hi))
        surf = surfaces.make_revolution(spec)
        nu, nv = args.grid
        surfaces.write_obj_mesh(args.mesh, surf, nu, nv)
    return 0


def _make_surface(kind, profile, trange, thetarange, pitch, a, b, c, c1, c2):
    t_lo, t_hi = trange
    curve = _profile_curve(profile, t_lo, t_hi)
    if kind == "revolution":
        th = thetarange or (0.0, 2.0 * math.pi)
        return surfaces.make_revolution(surfaces.RevolutionSpec(curve), *th)
    if kind == "helicoidal":
        th = thetarange or (0.0, 2.0 * math.pi)
        return surfaces.make_helicoidal(surfaces.HelicoidalSpec(curve, pitch), *th)
    th = thetarange or (-1.0, 1.0)
    return surfaces.make_parabolic_revolution(
        surfaces.ParabolicRevolutionSpec(a, b, c, c1, c2, curve), *th
    )


def _cmd_surface(args) -> int:
    surf = _make_surface(
        args.kind, args.profile, args.trange, args.thetarange,
        args.pitch, args.a, args.b, args.c, args.c1, args.c2,
    )
    nu, nv = args.grid
    surfaces.write_obj_mesh(args.mesh, surf, nu, nv)
    sidecar = args.curvature_csv or args.mesh + ".curvature.csv"
    surfaces.write_vertex_curvature_csv(sidecar, surf, nu, nv)
    return 0


def _cmd_classify(args) -> int:
    if args.kind == "helicoidal":
        report = singular.classify_helicoidal(args.c, args.ref, args.z1, args.z2)
    else:
        report = singular.classify_parabolic_revolution(
            args.a, args.b, args.c, args.c1, args.c2, args.ref, args.z1, args.z2
        )
    _write_text(args.out, report.to_json() + "\n")
    return 0


def _cmd_ivp(args) -> int:
    result = odes.picard_solve_degenerate(args.a, tol=args.tol)
    rows = ["t,z,zp"]
    for t, z, zp in zip(result.t, result.z, result.zp):
        rows.append(f"{t:.17g},{z:.17g},{zp:.17g}")
    _write_text(args.out, "\n".join(rows) + "\n")
    _write_text(
        args.json_out if args.json_out else "-",
        _json_dumps(result.sidecar_dict()) + "\n",
    )
    return 0


def _cmd_residual(args) -> int:
    if args.check == "el":
        spec = variational.WeightFunctionalSpec(args.ref, args.alpha, args.lam)
        t_lo, t_hi = args.trange
        ts = np.linspace(t_lo, t_hi, args.n)
        worst = max(abs(variational.el_residual(spec, args.profile, float(t))) for t in ts)
    else:
        surf = _make_surface(
            args.surface, args.profile, args.trange, args.thetarange,
            args.pitch, args.a, args.b, args.c, args.c1, args.c2,
        )
        spec = singular.SingularSpec(args.sref, args.alpha, args.lam)
        nu, nv = args.grid
        ts = np.linspace(surf.u_lo, surf.u_hi, nu)
        ths = np.linspace(surf.v_lo, surf.v_hi, nv)
        worst = max(
            abs(singular.sms_residual(surf, spec, float(t), float(th)))
            for t in ts
            for th in ths
        )
    sys.stdout.write(f"{worst:.17g}\n")
    return 0 if worst < args.threshold else 1


_COMMANDS = {
    "catenary": _cmd_catenary,
    "minimize": _cmd_minimize,
    "catenoid": _cmd_catenoid,
    "surface": _cmd_surface,
    "classify": _cmd_classify,
    "ivp": _cmd_ivp,
    "residual": _cmd_residual,
}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except IsoKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
