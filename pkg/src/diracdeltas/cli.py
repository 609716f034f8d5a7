"""Command-line reports: scattering sweeps, bound states, region maps, energies.

Four subcommands share a deterministic emission path (CSV or JSON with
17-significant-digit floats) and an optional ``--plot`` switch that renders
a matplotlib figure next to the delimited output:

    diracdeltas scatter --model double-electric --q1 2 --q2 2.5 --a 1 ...
    diracdeltas bound   --model double-generic  --q1 1 --lambda1 0.3 ...
    diracdeltas map     --plane electric --a 1.2 --m 1 --grid 200 ...
    diracdeltas casimir --q 3.14159... --a-min 0.25 --a-max 2.5 ...

Exit codes: 0 on success, 1 when the physics layer rejects the request
(domain errors, degeneracies, non-unitary couplings), 2 for malformed
invocations.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .casimir import classify_unitary, vacuum_energy
from .core import ParticleKind
from .emit import emit
from .matching import Coupling, DeltaConfig
from .scattering import (
    double_electric_amplitudes,
    double_mass_amplitudes,
    generic_double_amplitudes,
    single_delta_amplitudes,
    unitarity_defect,
)
from .spectrum import bound_state_wavefunction, count_map, find_bound_states

__all__ = ["main"]

_MODELS = ("single", "double-electric", "double-mass", "double-generic")
_REQUIRED_COUPLINGS = {
    "single": (),
    "double-electric": ("q1", "q2", "a"),
    "double-mass": ("lambda1", "lambda2", "a"),
    "double-generic": ("q1", "lambda1", "q2", "lambda2", "a"),
}


def _add_model_options(p):
    p.add_argument("--model", choices=_MODELS, required=True, help="potential layout")
    p.add_argument("--q", type=float, default=0.0, help="electric coupling (single)")
    p.add_argument("--lambda", dest="lambda_", type=float, default=0.0,
                   help="mass-spike coupling (single)")
    p.add_argument("--z0", type=float, default=0.0, help="single delta position")
    p.add_argument("--q1", type=float, help="left electric coupling")
    p.add_argument("--q2", type=float, help="right electric coupling")
    p.add_argument("--lambda1", type=float, help="left mass-spike coupling")
    p.add_argument("--lambda2", type=float, help="right mass-spike coupling")
    p.add_argument("--a", type=float, help="half separation of the pair")


def _add_common(p, default_out):
    p.add_argument("--m", type=float, default=1.0, help="fermion mass")
    p.add_argument("--kind", choices=["electron", "positron"], default="electron")
    if default_out is None:
        p.add_argument("--out", required=True, help="output file")
    else:
        p.add_argument("--out", default=default_out, help="output file ('-' = stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--plot", nargs="?", const="AUTO", default=None, metavar="PNG",
                   help="also render a figure (default path derives from --out)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="diracdeltas",
        description="Relativistic scattering, bound states and vacuum energy "
                    "for point potentials on a line.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scatter", help="amplitude sweep over momentum")
    _add_model_options(p)
    p.add_argument("--k-min", type=float, default=0.05)
    p.add_argument("--k-max", type=float, default=5.0)
    p.add_argument("--k-samples", type=int, default=200)
    _add_common(p, default_out="-")

    p = sub.add_parser("bound", help="gap states and spinor profiles")
    _add_model_options(p)
    p.add_argument("--z-min", type=float, default=None)
    p.add_argument("--z-max", type=float, default=None)
    p.add_argument("--z-samples", type=int, default=400)
    p.add_argument("--profiles-out", default=None,
                   help="profiles file (default: <out stem>_profiles.<ext>)")
    _add_common(p, default_out=None)

    p = sub.add_parser("map", help="bound-state count over a coupling plane")
    p.add_argument("--plane", choices=["electric", "mass"], required=True)
    p.add_argument("--a", type=float, default=1.0, help="half separation")
    p.add_argument("--grid", type=int, default=200, help="cells per axis")
    p.add_argument("--extent", type=float, default=3.0, help="mass-plane half width")
    p.add_argument("--curves-out", default=None,
                   help="boundary-curve file (default: <out stem>_curves.<ext>)")
    _add_common(p, default_out=None)

    p = sub.add_parser("casimir", help="mirror-pair vacuum energy against separation")
    p.add_argument("--q", type=float, default=math.pi, help="electric coupling")
    p.add_argument("--lambda", dest="lambda_", type=float, default=0.0,
                   help="mass-spike coupling")
    p.add_argument("--a-min", type=float, default=0.25)
    p.add_argument("--a-max", type=float, default=2.5)
    p.add_argument("--a-samples", type=int, default=10)
    _add_common(p, default_out="-")
    return parser


def _check_model(args, parser):
    missing = [name for name in _REQUIRED_COUPLINGS[args.model]
               if getattr(args, name) is None]
    if missing:
        parser.error(f"--model {args.model} requires " + ", ".join(f"--{n}" for n in missing))
    if args.model != "single" and not args.a > 0:
        parser.error("--a must be positive")
    if not args.m >= 0:
        parser.error("--m must be nonnegative")


def _config(args) -> DeltaConfig:
    if args.model == "single":
        return DeltaConfig.single(args.q, args.lambda_, args.m, z0=args.z0)
    q1 = args.q1 if args.q1 is not None else 0.0
    q2 = args.q2 if args.q2 is not None else 0.0
    l1 = args.lambda1 if args.lambda1 is not None else 0.0
    l2 = args.lambda2 if args.lambda2 is not None else 0.0
    return DeltaConfig.double(Coupling(q1, l1), Coupling(q2, l2), args.a, args.m)


def _amplitude_fn(args, kind):
    m = args.m
    if args.model == "single":
        c = Coupling(args.q, args.lambda_)
        return lambda k: single_delta_amplitudes(c, kind, k, m)
    if args.model == "double-electric":
        return lambda k: double_electric_amplitudes(args.q1, args.q2, args.a, m, k, kind)
    if args.model == "double-mass":
        return lambda k: double_mass_amplitudes(args.lambda1, args.lambda2, args.a, m, k, kind)
    cfg = _config(args)
    return lambda k: generic_double_amplitudes(cfg, k, kind)


def _write(rows, header, spec, args, path):
    text = emit(rows, header, spec=spec, format=args.format, path=None)
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _plot_target(args, parser):
    if args.plot is None:
        return None
    if args.plot != "AUTO":
        return args.plot
    if args.out == "-":
        parser.error("--plot without an explicit path requires --out FILE")
    return os.path.splitext(args.out)[0] + ".png"


def _sibling(out, tag):
    stem, ext = os.path.splitext(out)
    return f"{stem}_{tag}{ext or '.csv'}"


def _coupling_spec(args):
    spec = {"model": args.model, "m": args.m}
    if args.model == "single":
        spec.update(q=args.q, lam=args.lambda_, z0=args.z0)
    else:
        spec["a"] = args.a
        for name in _REQUIRED_COUPLINGS[args.model]:
            if name != "a":
                spec[name] = getattr(args, name)
    return spec


def _cmd_scatter(args, parser):
    _check_model(args, parser)
    if not (args.k_min > 0 and args.k_max >= args.k_min and args.k_samples >= 1):
        parser.error("need 0 < --k-min <= --k-max and --k-samples >= 1")
    kind = ParticleKind(args.kind)
    amplitude = _amplitude_fn(args, kind)
    ks = np.linspace(args.k_min, args.k_max, args.k_samples)

    header = ["k", "sigma_re", "sigma_im", "rho_r_re", "rho_r_im", "rho_l_re", "rho_l_im"]
    interior = args.model != "single"
    if interior:
        header += ["a_r_re", "a_r_im", "b_r_re", "b_r_im",
                   "a_l_re", "a_l_im", "b_l_re", "b_l_im"]
    header.append("unitarity_defect")

    rows, data_list = [], []
    for k in ks:
        d = amplitude(float(k))
        data_list.append(d)
        row = {
            "k": float(k),
            "sigma_re": d.sigma.real, "sigma_im": d.sigma.imag,
            "rho_r_re": d.rho_r.real, "rho_r_im": d.rho_r.imag,
            "rho_l_re": d.rho_l.real, "rho_l_im": d.rho_l.imag,
        }
        if interior:
            row.update(
                a_r_re=d.a_r.real, a_r_im=d.a_r.imag, b_r_re=d.b_r.real, b_r_im=d.b_r.imag,
                a_l_re=d.a_l.real, a_l_im=d.a_l.imag, b_l_re=d.b_l.real, b_l_im=d.b_l.imag,
            )
        row["unitarity_defect"] = unitarity_defect(d)
        rows.append(row)

    spec = {"command": "scatter", **_coupling_spec(args), "kind": args.kind,
            "k_min": args.k_min, "k_max": args.k_max, "k_samples": args.k_samples}
    _write(rows, header, spec, args, args.out)
    png = _plot_target(args, parser)
    if png:
        from .plots import plot_scatter

        sigma = np.array([d.sigma for d in data_list])
        rho_r = np.array([d.rho_r for d in data_list])
        rho_l = np.array([d.rho_l for d in data_list])
        plot_scatter(ks, sigma, rho_r, rho_l, png, title=f"{args.model} ({args.kind})")
    return 0


def _cmd_bound(args, parser):
    _check_model(args, parser)
    if not args.m > 0:
        parser.error("bound states require --m > 0")
    if args.z_samples < 2:
        parser.error("--z-samples must be at least 2")
    kind = ParticleKind(args.kind)
    cfg = _config(args)
    states = find_bound_states(cfg, kind)

    half = (args.a if args.model != "single" else abs(args.z0)) + 4.0 / args.m
    z_min = args.z_min if args.z_min is not None else -half
    z_max = args.z_max if args.z_max is not None else half
    if not z_max > z_min:
        parser.error("need --z-min < --z-max")
    z = np.linspace(z_min, z_max, args.z_samples)

    header = ["state_index", "kappa", "omega", "a1", "b2", "c2", "d3",
              "norm_const", "norm_sq", "residual"]
    rows = [
        {
            "state_index": i, "kappa": s.kappa, "omega": s.omega, "a1": s.a1,
            "b2": s.b2, "c2": s.c2, "d3": s.d3, "norm_const": s.norm_const,
            "norm_sq": s.norm_const**2, "residual": s.residual,
        }
        for i, s in enumerate(states)
    ]
    spec = {"command": "bound", **_coupling_spec(args), "kind": args.kind,
            "n_states": len(states)}
    _write(rows, header, spec, args, args.out)

    profiles_out = args.profiles_out or _sibling(args.out, "profiles")
    p_header = ["state_index", "z", "psi1_re", "psi1_im", "psi2_re", "psi2_im"]
    p_rows, profiles = [], []
    for i, s in enumerate(states):
        psi = bound_state_wavefunction(cfg, s, z)
        profiles.append((f"state {i}", psi))
        for j in range(z.size):
            p_rows.append({
                "state_index": i, "z": float(z[j]),
                "psi1_re": psi[0, j].real, "psi1_im": psi[0, j].imag,
                "psi2_re": psi[1, j].real, "psi2_im": psi[1, j].imag,
            })
    p_spec = {**spec, "z_min": z_min, "z_max": z_max, "z_samples": args.z_samples}
    _write(p_rows, p_header, p_spec, args, profiles_out)

    png = _plot_target(args, parser)
    if png:
        from .plots import plot_bound

        plot_bound(z, profiles, [pos for pos, _ in cfg.deltas], png,
                   title=f"{args.model} ({args.kind})")
    return 0


def _cmd_map(args, parser):
    if not (args.a > 0 and args.m > 0):
        parser.error("map requires --a > 0 and --m > 0")
    if args.grid < 2:
        parser.error("--grid must be at least 2")
    kind = ParticleKind(args.kind)
    rm = count_map(args.plane, args.a * args.m, args.grid, kind, extent=args.extent)

    names = ("q1", "q2") if args.plane == "electric" else ("lambda1", "lambda2")
    header = ["i", "j", names[0], names[1], "count", "zero_mode"]
    rows = []
    for i in range(args.grid):
        for j in range(args.grid):
            c = int(rm.counts[i, j])
            if c < 0:
                continue
            rows.append({
                "i": i, "j": j,
                names[0]: float(rm.axis1[i]), names[1]: float(rm.axis2[j]),
                "count": c, "zero_mode": int(bool(rm.zero_mode[i, j])),
            })
    spec = {"command": "map", "plane": args.plane, "kind": args.kind,
            "a": args.a, "m": args.m, "p_inv": args.a * args.m,
            "grid": args.grid, "extent": args.extent}
    _write(rows, header, spec, args, args.out)

    curves_out = args.curves_out or _sibling(args.out, "curves")
    c_header = ["curve", "branch", names[0], names[1]]
    c_rows = [
        {"curve": name, "branch": b, names[0]: float(x), names[1]: float(y)}
        for name, branches in sorted(rm.curves.items())
        for b, branch in enumerate(branches)
        for x, y in branch
    ]
    _write(c_rows, c_header, spec, args, curves_out)

    png = _plot_target(args, parser)
    if png:
        from .plots import plot_map

        plot_map(rm, png, title=f"{args.plane} plane, am={args.a * args.m:.3g} ({args.kind})")
    return 0


def _cmd_casimir(args, parser):
    if not (args.a_min > 0 and args.a_max >= args.a_min and args.a_samples >= 1):
        parser.error("need 0 < --a-min <= --a-max and --a-samples >= 1")
    if not args.m >= 0:
        parser.error("--m must be nonnegative")
    case = classify_unitary(Coupling(args.q, args.lambda_))
    a_values = np.linspace(args.a_min, args.a_max, args.a_samples)
    results = [vacuum_energy(case, float(a), args.m) for a in a_values]

    header = ["a", "e_int", "quadrature_error"]
    rows = [{"a": r.a, "e_int": r.e_int, "quadrature_error": r.quadrature_error}
            for r in results]
    spec = {"command": "casimir", "q": args.q, "lam": args.lambda_, "m": args.m,
            "case": case.value, "a_min": args.a_min, "a_max": args.a_max,
            "a_samples": args.a_samples}
    _write(rows, header, spec, args, args.out)

    png = _plot_target(args, parser)
    if png:
        from .plots import plot_casimir

        plot_casimir(a_values, [r.e_int for r in results], png,
                     title=f"mirror pair, m={args.m:g}")
    return 0


_COMMANDS = {
    "scatter": _cmd_scatter,
    "bound": _cmd_bound,
    "map": _cmd_map,
    "casimir": _cmd_casimir,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, parser)
    except (ValueError, RuntimeError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
