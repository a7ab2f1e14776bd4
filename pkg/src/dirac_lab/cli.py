"""Command-line driver producing reproducible CSV/JSON reports.

Exit codes: 0 success, 1 input error, 2 invariant violation,
3 numerical non-convergence. Identical inputs give byte-identical
reports: all randomness is seeded, quadrature sums in fixed order, and
floats are printed with a fixed format. Every report embeds the
tolerance configuration in force.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import geometry
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import (
    DiracLabError,
    DomainInputError,
    InvariantViolationError,
    NonConvergenceError,
    RangeError,
)
from .extensions import (
    ExtensionParameter,
    ModeCoefficients,
    green_pairing,
    tu_membership_residual,
)
from .modes import singular_mode
from .sobolev import regularity_scan
from .spectrum import transverse_gap, weyl_quotient
from .verify import run_suite

FLOAT_FMT = "{:.12g}"


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, complex):
        return f"{FLOAT_FMT.format(x.real)}{'+' if x.imag >= 0 else '-'}{FLOAT_FMT.format(abs(x.imag))}j"
    if isinstance(x, float):
        return FLOAT_FMT.format(x)
    return str(x)


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows: list[list], config: ToleranceConfig) -> str:
    lines = ["# config: " + json.dumps(config.as_dict(), sort_keys=True)]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_report(payload: dict, config: ToleranceConfig) -> str:
    payload = dict(payload)
    payload["config"] = config.as_dict()
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise DomainInputError(f"cannot parse float list {text!r}") from exc


def _load_complex_vector(data) -> list[complex]:
    out = []
    for item in data:
        if isinstance(item, (list, tuple)) and len(item) == 2:
            out.append(complex(float(item[0]), float(item[1])))
        else:
            out.append(complex(item))
    return out


def _load_unitary(path: str, config: ToleranceConfig,
                  omegas=None) -> ExtensionParameter:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainInputError(f"cannot read unitary file {path}: {exc}") from exc
    rows = data["matrix"] if isinstance(data, dict) else data
    mat = np.array([[complex(float(c[0]), float(c[1])) for c in row] for row in rows])
    return ExtensionParameter.from_matrix(mat, omegas=omegas, config=config)


def cmd_validate(args, config) -> int:
    spec = geometry.load_domain(args.domain)
    violations = geometry.validate_polygon(spec, config=config)
    payload = {
        "valid": not violations,
        "violations": [
            {"condition": v.condition, "indices": list(v.indices), "detail": v.detail}
            for v in violations
        ],
        "n_vertices": len(spec.vertices),
        "rho": spec.rho,
        "window": list(spec.window),
        "periodic": spec.period is not None,
    }
    _emit(_json_report(payload, config), args.out)
    return 0


def cmd_corners(args, config) -> int:
    spec = geometry.load_domain(args.domain)
    j_min, j_max = spec.window
    rows = []
    for j in range(j_min + 1, j_max):
        rep = geometry.corner_report(spec, j, config=config)
        rows.append([rep.index, rep.omega, rep.concave,
                     "" if rep.lam is None else rep.lam,
                     "" if rep.s_const is None else rep.s_const,
                     rep.sobolev_threshold])
    _emit(_csv(["j", "omega", "concave", "lambda", "S", "threshold"], rows, config),
          args.out)
    return 0


def cmd_gap(args, config) -> int:
    rows = []
    for m in _parse_floats(args.m_grid):
        g = transverse_gap(m)
        rows.append([g.m, g.E1, g.threshold, g.residual])
    _emit(_csv(["m", "E1", "threshold", "residual"], rows, config), args.out)
    return 0


def cmd_weyl(args, config) -> int:
    ns = _parse_floats(args.n_grid)
    if args.domain is not None:
        spec = geometry.load_domain(args.domain)
        xs = [v[0] for v in spec.vertices]
        cx = 0.5 * (xs[0] + xs[-1])
        for n in ns:
            top = max(v[1] for v in spec.vertices) + n * (1.0 + 1e-6) + spec.rho
            if not geometry.ball_inside(spec, (cx, top), n):
                raise DomainInputError(
                    f"no admissible ball of radius {n} inside the domain window; "
                    "the spectrum hypothesis needs arbitrarily large inscribed balls")
    rows = []
    for n in ns:
        q = weyl_quotient(args.kind, args.mu, n, m=args.m,
                          with_quadrature=not args.no_quad)
        rows.append([n, q.analytic,
                     "" if q.quadrature is None else q.quadrature,
                     q.analytic * n * n])
    _emit(_csv(["n", "quotient", "quotient_quadrature", "quotient_times_n2"],
               rows, config), args.out)
    return 0


def cmd_sobolev_scan(args, config) -> int:
    mode = singular_mode(args.mode, args.omega, args.rho)
    records = regularity_scan(mode, sorted(_parse_floats(args.s_grid)),
                              tol=args.tol, max_depth=args.depth, config=config)
    rows = [[args.omega, r.s, r.verdict, r.value_or_growth, r.depth] for r in records]
    _emit(_csv(["omega", "s", "verdict", "value_or_growth", "depth"], rows, config),
          args.out)
    return 0


def cmd_greens(args, config) -> int:
    try:
        with open(args.coeffs, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        fam_a, fam_b = data["a"], data["b"]
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise DomainInputError(f"cannot read coefficient file {args.coeffs}: {exc}") from exc
    a = ModeCoefficients.build([0], _load_complex_vector(fam_a["c_plus"]),
                               _load_complex_vector(fam_a["c_minus"]), [args.omega])
    b = ModeCoefficients.build([0], _load_complex_vector(fam_b["c_plus"]),
                               _load_complex_vector(fam_b["c_minus"]), [args.omega])
    pairing = green_pairing(a, b, rho=args.rho, tol=config.tol_2d * 1e-2)
    payload = {
        "lhs": [pairing.lhs.real, pairing.lhs.imag],
        "rhs": [pairing.rhs.real, pairing.rhs.imag],
        "abs_difference": abs(pairing.lhs - pairing.rhs),
        "quadrature_error_estimate": pairing.abs_error_estimate,
        "omega": args.omega,
        "rho": args.rho,
    }
    _emit(_json_report(payload, config), args.out)
    return 0


def cmd_extension(args, config) -> int:
    try:
        with open(args.coeffs, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        coeffs = ModeCoefficients.build(
            data["window"], _load_complex_vector(data["c_plus"]),
            _load_complex_vector(data["c_minus"]), data["omegas"])
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise DomainInputError(f"cannot read coefficient file {args.coeffs}: {exc}") from exc
    param = _load_unitary(args.unitary, config, omegas=coeffs.omegas)
    residual = tu_membership_residual(coeffs, param)
    payload = {
        "residual": residual,
        "member": residual <= config.membership_tol,
        "unitarity_defect": param.unitarity_defect,
        "gtilde_stability": param.gtilde_stability_note,
    }
    _emit(_json_report(payload, config), args.out)
    return 0


def cmd_verify(args, config) -> int:
    results = run_suite(args.suite)
    failed = 0
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failed += 0 if r.passed else 1
        note = f"  ({r.note})" if r.note else ""
        lines.append(f"{status} {r.name}: measured={_fmt(r.measured)} "
                     f"tol={_fmt(r.tolerance)}{note}")
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if failed == 0 else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dirac-lab",
                                description="desk-scale Dirac-on-polygon numerics")
    p.add_argument("--config", help="tolerance configuration JSON", default=None)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check a domain file against the corner conditions")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("corners", help="per-corner report CSV")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_corners)

    sp = sub.add_parser("gap", help="transverse gap table")
    sp.add_argument("--m-grid", required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_gap)

    sp = sub.add_parser("weyl", help="Weyl-sequence Rayleigh quotients")
    sp.add_argument("--kind", choices=["plane", "strip"], required=True)
    sp.add_argument("--mu", type=float, required=True)
    sp.add_argument("--n-grid", required=True)
    sp.add_argument("--m", type=float, default=0.0)
    sp.add_argument("--domain", default=None,
                    help="optional domain; inscribed-ball hypothesis is then checked")
    sp.add_argument("--no-quad", action="store_true",
                    help="skip the 2D quadrature recomputation")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_weyl)

    sp = sub.add_parser("sobolev-scan", help="H^s membership scan of a corner mode")
    sp.add_argument("--omega", type=float, required=True)
    sp.add_argument("--s-grid", default="0.5,0.525,0.55,0.575,0.6,0.625,0.65,0.675,"
                                        "0.7,0.725,0.75,0.775,0.8,0.825,0.85,0.875,"
                                        "0.9,0.925,0.95,0.975,0.99")
    sp.add_argument("--mode", choices=["+", "-"], default="+")
    sp.add_argument("--rho", type=float, default=1.0)
    sp.add_argument("--depth", type=int, default=None)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_sobolev_scan)

    sp = sub.add_parser("greens", help="Green identity: quadrature vs coefficients")
    sp.add_argument("--omega", type=float, required=True)
    sp.add_argument("--coeffs", required=True)
    sp.add_argument("--rho", type=float, default=1.0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_greens)

    sp = sub.add_parser("extension", help="T_U membership residual of boundary data")
    sp.add_argument("--unitary", required=True)
    sp.add_argument("--coeffs", required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_extension)

    sp = sub.add_parser("verify", help="run an invariant suite")
    sp.add_argument("--suite", choices=["identities", "bessel", "bounds", "all"],
                    required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = (ToleranceConfig.from_json(args.config)
                  if args.config else DEFAULT_CONFIG)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args, config)
    except (DomainInputError, RangeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except NonConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return 3
    except DiracLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
