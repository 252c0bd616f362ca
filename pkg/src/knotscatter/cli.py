"""Command-line front end: moments, potentials, amplitudes, and self checks.

Subcommands
-----------
moments    multipole moments of a knot as JSON
potential  vector potential samples along a ray as CSV
amplitude  one reduced matrix element as JSON
sweep      seeded random kinematics sweep as CSV
factorize  torus-knot factorization residual report as JSON
selfcheck  internal oracle suite (radial, angular, far field) as JSON

Exit codes: 0 success, 1 failed check, 2 configuration error, 3 numerical
non-convergence. All randomness uses numpy's PCG64 generator seeded from
--seed, so identical configurations produce byte-identical documents.
Angles are radians throughout.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .angular import (
    TABULATED_BRACKETS,
    DirectionCosineMonomial,
    discrepancy_report,
    monomial_expansion,
    triple_product_residual,
)
from .born import (
    BornAmplitude,
    ScatteringKinematics,
    amplitude_to_dict,
    born_amplitude,
    factorization_residual,
    random_kinematics,
)
from .curves import KnotSpec, TorusKnot, UnknotXY, UnknotXZ, UnknotYZ, sampled_from_json
from .multipole import dipole_moment, moments_to_dict, octopole_moments, quadrupole_moments
from .potential import (
    FieldPoint,
    _biot_savart_batch,
    _multipole_components,
    biot_savart_dipole_line,
    divergence_multipole,
    multipole_potential,
)
from .radial import radial_A_closed, radial_B_closed, radial_quadrature, radial_reference
from .specfun import NonConvergent

_PRESETS = {
    "unknot-xy": UnknotXY,
    "unknot-xz": UnknotXZ,
    "unknot-yz": UnknotYZ,
}


def parse_knot(text: str) -> KnotSpec:
    """Knot selector: torus:P,Q | unknot-xy | unknot-xz | unknot-yz | file:PATH."""
    if text in _PRESETS:
        return _PRESETS[text]()
    if text.startswith("torus:"):
        body = text[len("torus:") :]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"torus knot selector must be torus:P,Q, got {text!r}")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError as err:
            raise ValueError(f"torus knot selector needs integer P,Q: {text!r}") from err
        return TorusKnot(p, q)
    if text.startswith("file:"):
        path = text[len("file:") :]
        try:
            with open(path, encoding="utf-8") as handle:
                document = json.load(handle)
        except OSError as err:
            raise ValueError(f"cannot read knot file {path!r}: {err}") from err
        except json.JSONDecodeError as err:
            raise ValueError(f"knot file {path!r} is not valid JSON: {err}") from err
        return sampled_from_json(document)
    raise ValueError(
        f"unknown knot selector {text!r}; expected torus:P,Q, unknot-xy, "
        "unknot-xz, unknot-yz, or file:PATH"
    )


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(document: dict, out_path: str | None) -> None:
    _emit(json.dumps(document, sort_keys=True, indent=2) + "\n", out_path)


def _emit_csv(header: list[str], rows: list[list], out_path: str | None) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(cell) for cell in row))
    _emit("\n".join(lines) + "\n", out_path)


def _csv_cell(cell) -> str:
    if isinstance(cell, float):
        return format(cell, ".17g")
    return str(cell)


def _require_format(args, allowed: str) -> None:
    if args.format != allowed:
        raise ValueError(f"this command only supports --format {allowed}, got {args.format!r}")


def _positive(name: str, value: float) -> float:
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be positive and finite, got {value}")
    return value


def cmd_moments(args) -> int:
    spec = parse_knot(args.knot)
    n = int(args.samples)
    document = moments_to_dict(quadrupole_moments(spec, n), octopole_moments(spec, n))
    document["dipole"] = list(dipole_moment(spec, n))
    document["knot"] = spec.label()
    document["n_samples"] = n
    _require_format(args, "json")
    _emit_json(document, args.out)
    return 0


def cmd_potential(args) -> int:
    spec = parse_knot(args.knot)
    _positive("--r-min", args.r_min)
    if args.r_max < args.r_min:
        raise ValueError(f"--r-max must be >= --r-min, got {args.r_max} < {args.r_min}")
    if args.n_r < 1:
        raise ValueError(f"--n-r must be at least 1, got {args.n_r}")
    _require_format(args, "csv")
    methods = ("multipole", "biot-savart") if args.method == "both" else (args.method,)
    radii = np.geomspace(args.r_min, args.r_max, int(args.n_r))
    quad = quadrupole_moments(spec, int(args.samples))
    octo = octopole_moments(spec, int(args.samples))
    rows = []
    for method in methods:
        for r in radii:
            point = FieldPoint.from_spherical(float(r), args.theta, args.phi)
            if method == "multipole":
                value = multipole_potential(quad, octo, point, order=args.order)
            else:
                value = biot_savart_dipole_line(spec, point, n_samples=int(args.samples))
            rows.append([float(r), args.theta, args.phi, value.ax, value.ay, value.az, method])
    _emit_csv(["r", "theta", "phi", "Ax", "Ay", "Az", "method"], rows, args.out)
    return 0


def _kinematics_from_args(args) -> ScatteringKinematics:
    _positive("--k", args.k)
    _positive("--lambda0", args.lambda0)
    return ScatteringKinematics.from_angles(
        args.k, args.ki_theta, args.ki_phi, args.kn_theta, args.kn_phi, args.lambda0
    )


def cmd_amplitude(args) -> int:
    spec = parse_knot(args.knot)
    if args.coupling == 0.0:
        raise ValueError("coupling must be nonzero")
    kin = _kinematics_from_args(args)
    _require_format(args, "json")
    amp = born_amplitude(spec, kin, args.coupling)
    document = amplitude_to_dict(kin, amp)
    document["knot"] = spec.label()
    document["coupling"] = args.coupling
    _emit_json(document, args.out)
    return 0


def cmd_sweep(args) -> int:
    spec = parse_knot(args.knot)
    _positive("--k", args.k)
    _positive("--lambda0", args.lambda0)
    if args.coupling == 0.0:
        raise ValueError("coupling must be nonzero")
    if args.n < 1:
        raise ValueError(f"--n must be at least 1, got {args.n}")
    _require_format(args, "csv")
    rng = np.random.default_rng(args.seed)
    kins = random_kinematics(rng, args.k, args.lambda0, int(args.n))
    rows = []
    for index, kin in enumerate(kins):
        amp = born_amplitude(spec, kin, args.coupling)
        rows.append(
            [index]
            + list(kin.k_i)
            + list(kin.k_n)
            + [
                amp.v1.real, amp.v1.imag,
                amp.v2.real, amp.v2.imag,
                amp.v3.real, amp.v3.imag,
                amp.v4.real, amp.v4.imag,
                amp.total.real, amp.total.imag,
                abs(amp.total) ** 2,
            ]
        )
    header = (
        ["index", "ki_x", "ki_y", "ki_z", "kn_x", "kn_y", "kn_z"]
        + ["v1_re", "v1_im", "v2_re", "v2_im", "v3_re", "v3_im", "v4_re", "v4_im"]
        + ["total_re", "total_im", "abs_total_sq"]
    )
    _emit_csv(header, rows, args.out)
    return 0


def cmd_factorize(args) -> int:
    if args.p < 1 or args.q < 1:
        raise ValueError(f"p and q must be positive integers, got ({args.p}, {args.q})")
    if math.gcd(args.p, args.q) != 1:
        raise ValueError(f"(p, q) must be coprime, got ({args.p}, {args.q})")
    _positive("--lambda0", args.lambda0)
    _positive("--threshold", args.threshold)
    if not 0 < args.k_min <= args.k_max:
        raise ValueError(f"need 0 < --k-min <= --k-max, got {args.k_min}, {args.k_max}")
    if args.n < 1:
        raise ValueError(f"--n must be at least 1, got {args.n}")
    _require_format(args, "json")
    rng = np.random.default_rng(args.seed)
    kins = [
        random_kinematics(rng, float(rng.uniform(args.k_min, args.k_max)), args.lambda0, 1)[0]
        for _ in range(int(args.n))
    ]
    residual = factorization_residual(args.p, args.q, kins, args.coupling)
    passed = bool(residual < args.threshold)
    document = {
        "p": args.p,
        "q": args.q,
        "n": args.n,
        "seed": args.seed,
        "k_min": args.k_min,
        "k_max": args.k_max,
        "lambda0": args.lambda0,
        "residual": residual,
        "threshold": args.threshold,
        "passed": passed,
    }
    _emit_json(document, args.out)
    return 0 if passed else 1


def _selfcheck_radial(lambda0: float) -> tuple[dict, dict]:
    grid = (0.3, 0.5, 1.0, 2.0, 5.0, 10.0)
    worst_closed = 0.0
    for a in grid:
        k = a / lambda0
        quad_a = radial_quadrature(-1.5, 2, k, lambda0)
        quad_b = radial_quadrature(-2.5, 3, k, lambda0) / k
        worst_closed = max(
            worst_closed,
            abs(radial_A_closed(2, k, lambda0) - quad_a) / abs(quad_a),
            abs(radial_B_closed(3, k, lambda0) - quad_b) / abs(quad_b),
        )
    closed = {
        "name": "radial_closed_vs_quadrature",
        "passed": bool(worst_closed <= 1e-7),
        "worst_relative_error": worst_closed,
        "tolerance": 1e-7,
    }
    worst_pair = 0.0
    for a in grid:
        k = a / lambda0
        for power, l in ((-1.5, 0), (-2.5, 1)):
            one = radial_quadrature(power, l, k, lambda0)
            two = radial_reference(power, l, k, lambda0)
            worst_pair = max(worst_pair, abs(one - two) / max(abs(two), 1e-30))
    degenerate = {
        "name": "radial_degenerate_two_schemes",
        "passed": bool(worst_pair <= 1e-8),
        "worst_relative_error": worst_pair,
        "tolerance": 1e-8,
    }
    return closed, degenerate


def _selfcheck_angular() -> tuple[dict, dict, dict]:
    worst_table = 0.0
    for exponents, table in TABULATED_BRACKETS.items():
        computed = monomial_expansion(DirectionCosineMonomial(exponents)).terms
        for key, value in table.items():
            worst_table = max(worst_table, abs(complex(value) - complex(computed.get(key, 0.0))))
    tables = {
        "name": "angular_tables_vs_oracle",
        "passed": bool(worst_table <= 1e-11),
        "worst_absolute_error": worst_table,
        "tolerance": 1e-11,
    }
    report = discrepancy_report()
    discrepancies = {
        "name": "tabulated_discrepancies",
        "entries": report,
        "note": "known alternate tabulated coefficient; informational unless --strict-tables",
    }
    rng = np.random.default_rng(2024)
    worst_identity = 0.0
    for _ in range(100):
        theta = float(rng.uniform(0.01, math.pi - 0.01))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        worst_identity = max(worst_identity, triple_product_residual(theta, phi))
    identities = {
        "name": "triple_product_identities",
        "passed": bool(worst_identity <= 1e-12),
        "worst_pointwise_error": worst_identity,
        "tolerance": 1e-12,
    }
    return tables, discrepancies, identities


def _selfcheck_farfield() -> dict:
    spec = TorusKnot(2, 3)
    quad = quadrupole_moments(spec)
    octo = octopole_moments(spec)
    rng = np.random.default_rng(7)
    radii = np.geomspace(30.0, 300.0, 8)
    slopes = []
    for _ in range(5):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        points = radii[:, None] * direction[None, :]
        exact = _biot_savart_batch(spec, points, 4096, 1.0)
        truncated = _multipole_components(
            quad, octo, radii, np.broadcast_to(direction, (len(radii), 3)), "octopole"
        )
        gap = np.linalg.norm(exact - truncated, axis=1)
        slopes.append(float(np.polyfit(np.log(radii), np.log(gap), 1)[0]))
    worst_div = 0.0
    for _ in range(3):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        point = FieldPoint.from_cartesian(*(float(rng.uniform(15.0, 60.0)) * direction))
        magnitude = multipole_potential(quad, octo, point).magnitude
        worst_div = max(
            worst_div, abs(divergence_multipole(quad, octo, point)) / (magnitude / point.r)
        )
    slope_ok = all(abs(s + 5.0) <= 0.3 for s in slopes)
    return {
        "name": "far_field_truncation",
        "passed": bool(slope_ok and worst_div <= 1e-6),
        "slopes": slopes,
        "slope_target": [-5.3, -4.7],
        "worst_scaled_divergence": worst_div,
        "divergence_tolerance": 1e-6,
    }


def cmd_selfcheck(args) -> int:
    _positive("--lambda0", args.lambda0)
    _require_format(args, "json")
    closed, degenerate = _selfcheck_radial(args.lambda0)
    tables, discrepancies, identities = _selfcheck_angular()
    farfield = _selfcheck_farfield()
    checks = [closed, degenerate, tables, identities, farfield]
    passed = all(check["passed"] for check in checks)
    if args.strict_tables and discrepancies["entries"]:
        passed = False
    document = {
        "checks": checks,
        "discrepancies": discrepancies,
        "strict_tables": bool(args.strict_tables),
        "passed": bool(passed),
    }
    _emit_json(document, args.out)
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotscatter",
        description=(
            "Multipole moments, vector potentials, and first-order scattering "
            "amplitudes of charged particles off knotted flux lines."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default):
        p.add_argument("--lambda0", type=float, default=3.5, help="cutoff sphere radius (default 3.5)")
        p.add_argument("--coupling", type=float, default=1.0, help="coupling prefactor g (default 1.0)")
        p.add_argument("--samples", type=int, default=1024, help="curve quadrature samples (default 1024)")
        p.add_argument("--format", choices=("json", "csv"), default=fmt_default)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("moments", help="multipole moments of a knot")
    p.add_argument("--knot", required=True)
    common(p, "json")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("potential", help="vector potential samples along a ray")
    p.add_argument("--knot", required=True)
    p.add_argument("--r-min", type=float, default=10.0)
    p.add_argument("--r-max", type=float, default=100.0)
    p.add_argument("--n-r", type=int, default=10)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--phi", type=float, default=0.5)
    p.add_argument("--method", choices=("multipole", "biot-savart", "both"), default="both")
    p.add_argument("--order", choices=("quadrupole", "octopole"), default="octopole")
    common(p, "csv")
    p.set_defaults(func=cmd_potential, samples=2048)

    p = sub.add_parser("amplitude", help="one reduced matrix element")
    p.add_argument("--knot", required=True)
    p.add_argument("--k", type=float, required=True, help="wave number |k_i| = |k_n|")
    p.add_argument("--ki-theta", type=float, required=True)
    p.add_argument("--ki-phi", type=float, required=True)
    p.add_argument("--kn-theta", type=float, required=True)
    p.add_argument("--kn-phi", type=float, required=True)
    common(p, "json")
    p.set_defaults(func=cmd_amplitude)

    p = sub.add_parser("sweep", help="seeded random kinematics sweep")
    p.add_argument("--knot", required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)
    common(p, "csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("factorize", help="torus-knot factorization residual")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--k-min", type=float, default=0.2)
    p.add_argument("--k-max", type=float, default=2.0)
    p.add_argument("--threshold", type=float, default=1e-8)
    common(p, "json")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("selfcheck", help="internal oracle suite")
    p.add_argument(
        "--strict-tables",
        action="store_true",
        help="treat known tabulated-coefficient discrepancies as failures",
    )
    common(p, "json")
    p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except NonConvergent as err:
        print(f"non-convergent: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
