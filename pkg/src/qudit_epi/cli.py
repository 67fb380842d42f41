"""Command-line front end: ``qudit-epi {verify,cmax,bounds-curve,figure-data,channel-apply}``.

Exit codes: 0 success, 1 an inequality was violated, 2 usage or input
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .bounds import BOUND_KINDS, QUBIT_OPTIMAL, bound_curve, bound_linear
from .channels import boxplus_closed_form
from .concavity import c_max_entropy_power, family_entropy, family_second_moment, gk_grid
from .entropies import DEFAULT_ALPHAS, LOG2, g, k as k_func, von_neumann
from .errors import DimensionMismatch, DomainError, NumericalFailure, QuditEPIError, UnknownFigure
from .io import dumps_json, emit, format_csv, parse_sigma_spec, read_state, state_to_dict
from .states import spectrum
from .verification import FAULTS, NO_FAULT, DEFAULT_TOL, RunConfig, run_campaign, select_functionals

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3

FIGURES = ("fig1", "fig2", "fig3")
CMAX_COLUMNS = ("d", "c_max", "x_star", "lb_closed_form", "inv_log_sq", "inv_d_minus_1")


def _seed(text):
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _kinds(text):
    if text == "all":
        return BOUND_KINDS
    kinds = tuple(t.strip() for t in text.split(",") if t.strip())
    bad = [t for t in kinds if t not in BOUND_KINDS]
    if bad or not kinds:
        raise argparse.ArgumentTypeError(
            f"unknown bound kind(s) {bad}; choose from {', '.join(BOUND_KINDS)} or 'all'")
    return kinds


def _header(command):
    return {"tool": "qudit-epi", "version": __version__, "command": command}


def _scale(bits):
    return 1.0 / LOG2 if bits else 1.0


# ---------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    config = RunConfig(
        dims=tuple(args.dim or (2, 3, 4)),
        trials=args.trials,
        seed=args.seed,
        tolerance=args.tolerance,
        alphas=tuple(args.alpha or DEFAULT_ALPHAS),
        a_grid=tuple(args.a or ()),
        ep_c=args.ep_c,
        photon_c=args.photon_c,
        force_range=args.force_range,
        fault=args.inject_fault,
        jobs=args.jobs,
    )
    report = run_campaign(config)
    if args.format == "csv":
        rows = [(c.check, c.d, c.samples, c.tolerance, c.worst_margin, c.worst_trial,
                 c.certified, c.passed) for c in report.checks]
        text = format_csv(("check", "d", "samples", "tolerance", "worst_margin",
                           "worst_trial", "certified", "passed"), rows)
    else:
        text = dumps_json({**report.to_dict(__version__), "command": "verify"})
    emit(text, args.output)
    for c in report.failures():
        print(f"FAIL {c.check} d={c.d} worst_margin={c.worst_margin:.6g} "
              f"seed={config.seed} trial={c.worst_trial}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VIOLATION


# ---------------------------------------------------------------- cmax

def cmax_rows(dims):
    rows = []
    for d in dims:
        if d < 2:
            raise DomainError(f"dimensions must be >= 2, got {d}")
        res = c_max_entropy_power(d)
        rows.append((d, res.c_max, res.argmax_x, res.lower_bound,
                     1.0 / math.log(d) ** 2, 1.0 / (d - 1)))
    return rows


def cmd_cmax(args) -> int:
    rows = cmax_rows(args.dim or range(2, 9))
    if args.format == "json":
        text = dumps_json({**_header("cmax"),
                           "rows": [dict(zip(CMAX_COLUMNS, r)) for r in rows]})
    else:
        text = format_csv(CMAX_COLUMNS, rows)
    emit(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------- bounds-curve

def bound_curves(dims, a, sigma_spec, kinds, samples):
    """Curves for each (d, kind) plus a list of refused combinations."""
    curves, refused = [], []
    for d in dims:
        sigma = parse_sigma_spec(sigma_spec, d)
        h_sigma = von_neumann(spectrum(sigma))
        for kind in kinds:
            try:
                curves.append(bound_curve(kind, a, d, h_sigma, samples))
            except DomainError as exc:
                if kind != QUBIT_OPTIMAL:
                    raise
                refused.append({"d": d, "kind": kind, "reason": f"DomainError: {exc}"})
    return curves, refused


def _emit_curves(command, args, dims, a, sigma_spec, kinds, samples) -> int:
    curves, refused = bound_curves(dims, a, sigma_spec, kinds, samples)
    scale = _scale(args.bits)
    units = "bits" if args.bits else "nats"
    if args.format == "json":
        text = dumps_json({
            **_header(command),
            "a": a, "sigma": sigma_spec, "units": units, "samples": samples,
            "curves": [{"d": c.d, "kind": c.kind, "sigma_entropy": c.sigma_entropy * scale,
                        "points": [[h * scale, v * scale] for h, v in c.samples]}
                       for c in curves],
            "refused": refused,
        })
    else:
        rows = [(c.d, c.kind, h * scale, v * scale) for c in curves for h, v in c.samples]
        text = format_csv(("d", "kind", "H0", "G"), rows)
        for r in refused:
            print(f"note: {r['kind']} refused for d={r['d']} ({r['reason']})", file=sys.stderr)
    emit(text, args.output)
    return EXIT_OK


def cmd_bounds_curve(args) -> int:
    a = 0.5 if args.a is None else args.a
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"a must lie in [0, 1], got {a}")
    return _emit_curves("bounds-curve", args, args.dim or [2], a, args.sigma,
                        args.kinds, args.samples or 101)


# ---------------------------------------------------------------- figure-data

def fig1_rows(K=6, samples=200):
    """Loci (H, L) of the two-valued families, k = 1..K-1, x over [0, 1/K]."""
    xs = np.linspace(0.0, 1.0 / K, samples)
    rows = []
    for kk in range(1, K):
        hs, ls = family_entropy(K, kk, xs), family_second_moment(K, kk, xs)
        rows.extend((kk, float(x), float(h), float(l)) for x, h, l in zip(xs, hs, ls))
    return rows


def fig2_rows(samples=400):
    return [(float(y), g(float(y)), k_func(float(y))) for y in gk_grid(samples)]


def cmd_figure_data(args) -> int:
    which = args.which
    if which not in FIGURES:
        raise UnknownFigure(f"unknown figure {which!r}; choose from {', '.join(FIGURES)}")
    if which == "fig3":
        a = 0.5 if args.a is None else args.a
        return _emit_curves("figure-data", args, args.dim or [2, 4], a, args.sigma,
                            args.kinds, args.samples or 101)
    if which == "fig1":
        K = args.dim[0] if args.dim else 6
        if K < 2:
            raise DomainError(f"K must be >= 2, got {K}")
        header, rows = ("k", "x", "H", "L"), fig1_rows(K, args.samples or 200)
    else:
        header, rows = ("y", "g", "k"), fig2_rows(args.samples or 400)
    if args.format == "json":
        text = dumps_json({**_header("figure-data"), "figure": which,
                           "columns": list(header), "rows": [list(r) for r in rows]})
    else:
        text = format_csv(header, rows)
    emit(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------- channel-apply

ENTROPIC = ("von_neumann", "renyi", "subentropy")


def channel_apply(rho, sigma, a, alphas=DEFAULT_ALPHAS, ep_c=None, photon_c=None,
                  force_range=False):
    out = boxplus_closed_form(rho, sigma, a)
    d = out.dim
    funcs = select_functionals(d, alphas, ep_c, photon_c, force_range)
    s_out = spectrum(out)
    h_rho, h_sigma = von_neumann(spectrum(rho)), von_neumann(spectrum(sigma))
    return {
        "state": out,
        "spectrum": s_out.values,
        "functionals": [(f.name, f.kind, f(s_out), f.certified(d)) for f in funcs],
        "entropy": von_neumann(s_out),
        "linear_bound": bound_linear(h_rho, h_sigma, a),
    }


def cmd_channel_apply(args) -> int:
    if args.a is None:
        raise DomainError("channel-apply needs --a")
    rho = read_state(args.rho)
    sigma = parse_sigma_spec(args.sigma, rho.dim if args.sigma == "mixed" else None)
    if sigma.dim != rho.dim:
        raise DimensionMismatch(f"rho has dimension {rho.dim}, sigma {sigma.dim}")
    res = channel_apply(rho, sigma, args.a, tuple(args.alpha or DEFAULT_ALPHAS),
                        args.ep_c, args.photon_c, args.force_range)
    scale = _scale(args.bits)

    def shown(kind, v):
        return v * scale if kind in ENTROPIC else v

    funcs = [{"name": n, "value": shown(kind, v), "certified": c}
             for n, kind, v, c in res["functionals"]]
    if args.format == "json":
        text = dumps_json({
            **_header("channel-apply"),
            "a": args.a,
            "units": "bits" if args.bits else "nats",
            "output": state_to_dict(res["state"]),
            "spectrum": [float(v) for v in res["spectrum"]],
            "functionals": funcs,
            "entropy": res["entropy"] * scale,
            "linear_bound": res["linear_bound"] * scale,
        })
    else:
        m = res["state"].data
        d = m.shape[0]
        rows = [(f"re[{i},{j}]", float(m[i, j].real)) for i in range(d) for j in range(d)]
        rows += [(f"im[{i},{j}]", float(m[i, j].imag)) for i in range(d) for j in range(d)]
        rows += [(f"spectrum[{i}]", float(v)) for i, v in enumerate(res["spectrum"])]
        rows += [(f["name"] if f["certified"] else f["name"] + " [uncertified]", f["value"])
                 for f in funcs]
        rows += [("entropy", res["entropy"] * scale),
                 ("linear_bound", res["linear_bound"] * scale)]
        text = format_csv(("quantity", "value"), rows)
    emit(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _common(p, *, fmt="csv"):
    p.add_argument("--output", "-o", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=fmt)


def _functional_flags(p):
    p.add_argument("--alpha", type=float, action="append",
                   help="Rényi order in [0, 1); repeatable (default 0, .25, .5, .75, .9)")
    p.add_argument("--ep-c", type=float, help="entropy-power constant (default 1/(log d)^2)")
    p.add_argument("--photon-c", type=float, help="photon-number constant (default 1/(d-1))")
    p.add_argument("--force-range", action="store_true",
                   help="allow constants outside the certified range (results tagged uncertified)")


def _curve_flags(p):
    p.add_argument("--sigma", default="mixed", help="mixed | diag:v1,v2,... | file:PATH")
    p.add_argument("--kinds", type=_kinds, default=BOUND_KINDS,
                   help=f"comma list of {', '.join(BOUND_KINDS)}, or 'all'")
    p.add_argument("--samples", type=int, help="points per curve")
    p.add_argument("--bits", action="store_true", help="report entropies in bits")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qudit-epi",
                                     description="Entropy inequalities for the qudit partial swap.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="seeded verification campaign")
    p.add_argument("--dim", type=int, action="append", help="dimension; repeatable (default 2 3 4)")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
    p.add_argument("--a", type=float, action="append",
                   help="fix the mixing parameter; repeatable, used cyclically")
    p.add_argument("--jobs", type=int, default=1, help="worker processes across dimensions")
    p.add_argument("--inject-fault", choices=tuple(FAULTS), default=NO_FAULT,
                   help=argparse.SUPPRESS)
    _functional_flags(p)
    _common(p, fmt="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cmax", help="entropy-power concavity thresholds")
    p.add_argument("--dim", type=int, action="append", help="dimension; repeatable (default 2..8)")
    _common(p)
    p.set_defaults(func=cmd_cmax)

    p = sub.add_parser("bounds-curve", help="output-entropy lower-bound curves")
    p.add_argument("--dim", type=int, action="append", help="dimension; repeatable (default 2)")
    p.add_argument("--a", type=float, help="mixing parameter (default 0.5)")
    _curve_flags(p)
    _common(p)
    p.set_defaults(func=cmd_bounds_curve)

    p = sub.add_parser("figure-data", help="data behind the standard plots")
    p.add_argument("which", help="fig1 | fig2 | fig3")
    p.add_argument("--dim", type=int, action="append",
                   help="fig1: K (default 6); fig3: dimensions (default 2 4)")
    p.add_argument("--a", type=float, help="fig3 mixing parameter (default 0.5)")
    _curve_flags(p)
    _common(p)
    p.set_defaults(func=cmd_figure_data)

    p = sub.add_parser("channel-apply", help="apply the partial swap to two states")
    p.add_argument("--rho", required=True, help="state file (JSON)")
    p.add_argument("--sigma", required=True, help="mixed | diag:v1,v2,... | file:PATH")
    p.add_argument("--a", type=float)
    p.add_argument("--bits", action="store_true", help="report entropies in bits")
    _functional_flags(p)
    _common(p, fmt="json")
    p.set_defaults(func=cmd_channel_apply)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (QuditEPIError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
