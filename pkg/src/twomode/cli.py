"""Command-line front end: single-state reports, ordering scans, bound experiments.

Exit codes: 0 success, 2 unphysical input, 3 bound violation in --strict
mode, 64 usage or parse error.  Numeric CSV output uses 17 significant
digits so every double round-trips exactly; JSON floats use Python's
shortest round-trip representation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

from . import bounds as bounds_mod
from . import extremal
from .errors import (
    DomainError,
    MalformedInputError,
    TwoModeError,
    UnphysicalStateError,
)
from .gaussian_em import NEAR_SEPARABLE_TOL, minimize_m
from .negativity import SYMMETRY_RTOL, log_negativity, negativity_report
from .symplectic import (
    DEFAULT_TOL,
    cm_from_json_dict,
    make_two_mode_squeezed,
    to_standard_form,
)

EXIT_OK = 0
EXIT_UNPHYSICAL = 2
EXIT_VIOLATION = 3
EXIT_USAGE = 64

SEED_ENV_VAR = "TWOMODE_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _log_base(text: str):
    return 2 if text == "2" else "e"


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise MalformedInputError(f"{SEED_ENV_VAR} must be an integer, got {env!r}")
    return 12345


def _read_state_json(source: str):
    text = sys.stdin.read() if source == "-" else open(source).read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _ParseFailure(f"invalid JSON input: {exc}")
    return cm_from_json_dict(obj)


class _ParseFailure(Exception):
    pass


def _measure_report(cm, params, args) -> dict:
    sf = to_standard_form(cm, tol=args.tol_physical)
    inv = sf.invariants()
    spectrum = sf.spectrum()
    base = _log_base(args.log_base)
    neg = negativity_report(sf, tol=args.tol_physical, log_base=base,
                            sym_rtol=args.tol_symmetry)
    gem = minimize_m(
        sf,
        near_separable_tol=args.tol_near_separable,
        log_base=base,
    )
    report = {
        "standard_form": {
            "a": sf.a, "b": sf.b, "c_plus": sf.c_plus, "c_minus": sf.c_minus,
        },
        "purities": {
            "global": 1.0 / math.sqrt(inv.det_sigma),
            "local_1": 1.0 / math.sqrt(inv.det_alpha),
            "local_2": 1.0 / math.sqrt(inv.det_beta),
        },
        "invariants": {
            "det_alpha": inv.det_alpha,
            "det_beta": inv.det_beta,
            "det_gamma": inv.det_gamma,
            "det_sigma": inv.det_sigma,
            "delta": inv.delta,
            "delta_tilde": inv.delta_tilde,
        },
        "spectrum": {
            "nu_minus": spectrum.nu_minus,
            "nu_plus": spectrum.nu_plus,
            "nu_tilde_minus": spectrum.nu_tilde_minus,
            "nu_tilde_plus": spectrum.nu_tilde_plus,
        },
        "negativity": {
            "separable": neg.separable,
            "negativity": neg.negativity,
            "log_negativity": neg.log_negativity,
            "eof_symmetric": neg.eof_symmetric,
            "log_base": neg.log_base,
        },
        "gaussian_em": {
            "m_opt": gem.m_opt,
            "theta_opt": gem.theta_opt,
            "nu_tilde_opt": gem.nu_tilde_opt,
            "gaussian_eof": gem.gaussian_eof,
            "extrema_found": gem.extrema_found,
        },
        "closed_form": None,
    }
    if params is not None:
        s, d, g, lam = params
        family = None
        m_closed = None
        if abs(g - (2.0 * abs(d) + 1.0)) <= 1e-12:
            family, m_closed = "gmemms", extremal.m_opt_gmems(s=s, d=d, g=g)
        elif lam == 1.0:
            family, m_closed = "gmems", extremal.m_opt_gmems(s=s, d=d, g=g)
        elif lam == -1.0:
            family, m_closed = "glems", extremal.m_opt_glems(s=s, d=d, g=g)
        report["params"] = {"s": s, "d": d, "g": g, "lambda": lam}
        if family is not None:
            report["closed_form"] = {"family": family, "m_opt": m_closed}
    return report


def _cmd_measure(args) -> int:
    sources = [
        args.input is not None,
        args.squeezed_r is not None,
        args.params is not None,
    ]
    if sum(sources) != 1:
        raise _ParseFailure("provide exactly one of INPUT, --squeezed-r, --params")
    params = None
    if args.squeezed_r is not None:
        cm = make_two_mode_squeezed(args.squeezed_r)
    elif args.params is not None:
        s, d, g, lam = args.params
        params = (s, d, g, lam)
        cm = extremal.build_state(extremal.ExtremalParams(s, d, g, lam)).to_matrix()
    else:
        cm = _read_state_json(args.input)
    report = _measure_report(cm, params, args)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _scan_rows(cells):
    for c in cells:
        yield (c.s, c.d, c.g, c.m_gmems, c.m_glems,
               c.nu_tilde_gmems, c.nu_tilde_glems, c.regime.value)


_SCAN_HEADER = ["s", "d", "g", "m_gmems", "m_glems",
                "nu_tilde_gmems", "nu_tilde_glems", "regime"]


def _cmd_scan(args) -> int:
    cells, boundary = extremal.scan_ordering_slice(
        args.fixed_a, tuple(args.b_range), tuple(args.g_range), args.resolution
    )
    _write_csv(args.grid, _SCAN_HEADER, _scan_rows(cells))
    _write_csv(args.boundary, ["s", "d", "g_boundary"],
               ((p.s, p.d, p.g) for p in boundary))
    counts = {}
    for c in cells:
        counts[c.regime.value] = counts.get(c.regime.value, 0) + 1
    json.dump({"cells": len(cells), "boundary_points": len(boundary),
               "regimes": counts}, sys.stdout, indent=2)
    sys.stdout.write("\n")
    if not any(c.regime is not extremal.Regime.UNPHYSICAL for c in cells):
        sys.stderr.write("warning: scan window contains no physical cells\n")
    return EXIT_OK


def _cmd_scan3d(args) -> int:
    cells, boundary = extremal.scan_ordering_3d(
        tuple(args.s_range), tuple(args.d_range), tuple(args.g_range), args.resolution
    )
    _write_csv(args.grid, _SCAN_HEADER, _scan_rows(cells))
    _write_csv(args.boundary, ["s", "d", "g_boundary"],
               ((p.s, p.d, p.g) for p in boundary))
    json.dump({"cells": len(cells), "boundary_points": len(boundary)},
              sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _cmd_bounds(args) -> int:
    base = _log_base(args.log_base)
    cfg = bounds_mod.SamplerConfig(
        seed=args.seed, count=args.samples, s_max=args.s_max, mode=args.mode
    )
    result = bounds_mod.bound_experiment(cfg, log_base=base)
    _write_csv(
        args.points,
        ["index", "s", "d", "g", "lambda", "nu_tilde_sigma", "nu_tilde_opt",
         "log_neg", "geof", "violates_42", "violates_46"],
        ((p.index, p.s, p.d, p.g, p.lam, p.nu_tilde_sigma, p.nu_tilde_opt,
          p.log_neg, p.geof, p.violates_42, p.violates_46) for p in result.points),
    )
    _write_csv(args.curves, ["nu_tilde", "lower", "upper"],
               bounds_mod.bound_curves(args.curve_resolution))
    if args.geof_curves:
        rows = []
        for nu, lower, _upper in bounds_mod.bound_curves(args.curve_resolution):
            e_n = log_negativity(nu, base)
            if e_n <= 0.0:
                continue
            lo, hi = bounds_mod.geof_bounds(e_n, base)
            rows.append((e_n, lo, hi))
        _write_csv(args.geof_curves, ["log_neg", "geof_lower", "geof_upper"], rows)
    summary = {
        "samples": args.samples,
        "seed": args.seed,
        "s_max": args.s_max,
        "mode": args.mode,
        "violations_42": result.violations_upper,
        "violations_46": result.violations_lower,
        "numerical_failures": len(result.failures),
        "min_slack_42": result.min_upper_slack,
        "min_m_max_slack": result.min_m_max_slack,
    }
    out = open(args.summary, "w") if args.summary else sys.stdout
    json.dump(summary, out, indent=2)
    out.write("\n")
    if args.summary:
        out.close()
    if args.strict and result.violations_upper > 0:
        return EXIT_VIOLATION
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="twomode",
                     description="Entanglement measures for two-mode Gaussian states.")
    sub = parser.add_subparsers(dest="command", required=True)

    measure = sub.add_parser("measure", help="full report for a single state")
    measure.add_argument("input", nargs="?", default=None,
                         help="path to a state JSON file, or - for stdin")
    measure.add_argument("--squeezed-r", type=float, default=None,
                         help="two-mode squeezed state with this squeezing parameter")
    measure.add_argument("--params", type=float, nargs=4, default=None,
                         metavar=("S", "D", "G", "LAMBDA"),
                         help="mixedness parameters of an extremal-family state")
    measure.add_argument("--log-base", choices=["2", "e"], default="2")
    measure.add_argument("--tol-physical", type=float, default=DEFAULT_TOL,
                         help="slack on the physicality inequalities")
    measure.add_argument("--tol-near-separable", type=float,
                         default=NEAR_SEPARABLE_TOL,
                         help="width of the band around separability treated as separable")
    measure.add_argument("--tol-symmetry", type=float, default=SYMMETRY_RTOL,
                         help="relative a == b tolerance for the symmetric closed form")
    measure.set_defaults(func=_cmd_measure)

    scan = sub.add_parser("scan", help="extremal-ordering map over (b, g) at fixed a")
    scan.add_argument("--fixed-a", type=float, required=True)
    scan.add_argument("--b-range", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    scan.add_argument("--g-range", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    scan.add_argument("--resolution", type=int, default=200)
    scan.add_argument("--grid", default="ordering_grid.csv", help="cell table output path")
    scan.add_argument("--boundary", default="ordering_boundary.csv",
                      help="equal-measure polyline output path")
    scan.set_defaults(func=_cmd_scan)

    scan3d = sub.add_parser("scan3d", help="extremal-ordering map over (s, d, g)")
    scan3d.add_argument("--s-range", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    scan3d.add_argument("--d-range", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    scan3d.add_argument("--g-range", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    scan3d.add_argument("--resolution", type=int, default=48)
    scan3d.add_argument("--grid", default="ordering_grid_3d.csv")
    scan3d.add_argument("--boundary", default="ordering_boundary_3d.csv")
    scan3d.set_defaults(func=_cmd_scan3d)

    bnd = sub.add_parser("bounds", help="random-state bound experiment")
    bnd.add_argument("--samples", type=int, required=True)
    bnd.add_argument("--seed", type=int, default=None)
    bnd.add_argument("--s-max", type=float, default=20.0)
    bnd.add_argument("--mode", choices=["extremal_params", "raw_standard_form"],
                     default="extremal_params")
    bnd.add_argument("--strict", action="store_true",
                     help="exit 3 if the proven upper curve is violated")
    bnd.add_argument("--points", default="bound_points.csv")
    bnd.add_argument("--curves", default="bound_curves.csv")
    bnd.add_argument("--geof-curves", default=None,
                     help="optional CSV of the bounds in (log_neg, geof) coordinates")
    bnd.add_argument("--curve-resolution", type=int, default=512)
    bnd.add_argument("--summary", default=None,
                     help="write the summary JSON here instead of stdout")
    bnd.add_argument("--log-base", choices=["2", "e"], default="2")
    bnd.set_defaults(func=_cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "bounds" and args.seed is None:
        try:
            args.seed = _default_seed()
        except MalformedInputError as exc:
            sys.stderr.write(f"twomode: error: {exc}\n")
            return EXIT_USAGE
    try:
        return args.func(args)
    except _ParseFailure as exc:
        sys.stderr.write(f"twomode: error: {exc}\n")
        return EXIT_USAGE
    except (UnphysicalStateError, MalformedInputError, DomainError) as exc:
        sys.stderr.write(f"twomode: unphysical or invalid state: {exc}\n")
        return EXIT_UNPHYSICAL
    except TwoModeError as exc:
        sys.stderr.write(f"twomode: error: {exc}\n")
        return EXIT_UNPHYSICAL
    except OSError as exc:
        sys.stderr.write(f"twomode: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
