"""Command-line front end.

Subcommands: constants, spectrum, wavefunction, fit, verify.  CSV goes to
stdout with a fixed header; reports are JSON objects with ``inputs``,
``results`` and ``checks`` keys.  Exit codes: 0 success, 2 usage/input
error, 3 numeric/convergence error, 4 verification failure.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import fit as fitmod
from . import isospectral as iso
from . import matelem, model, oracle
from .errors import (
    ConvergenceError,
    FitDomainError,
    InputError,
    NumericError,
    ParameterDomainError,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4


def _fmt(x):
    """Deterministic 9-significant-digit formatting."""
    return format(float(x), ".9g")


def _report(out, inputs, results, checks):
    doc = {"inputs": inputs, "results": results, "checks": checks}
    json.dump(doc, out, indent=2)
    out.write("\n")
    return all(c["pass"] for c in checks)


def _check(name, expected, actual, tolerance, relative=False):
    err = abs(actual - expected)
    if relative:
        err /= max(abs(expected), 1e-300)
    return {
        "name": name,
        "expected": expected,
        "actual": actual,
        "tolerance": tolerance,
        "pass": bool(err <= tolerance),
    }


def load_transitions(path):
    """Read the transitions CSV `n_upper,n_lower,frequency_ghz[,weight]`."""
    records = []
    with open(path, encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader, start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if row[0].strip() == "n_upper":
                continue
            try:
                n_up = int(row[0])
                n_lo = int(row[1])
                freq = float(row[2])
                weight = float(row[3]) if len(row) > 3 and row[3].strip() else 1.0
                records.append(fitmod.TransitionRecord(n_up, n_lo, freq, weight))
            except (ValueError, IndexError, InputError) as exc:
                raise InputError(f"{path}:{lineno}: bad transition row {row!r}: {exc}") from exc
    if not records:
        raise InputError(f"{path}: no transition records found")
    return fitmod.TransitionSet(tuple(records))


def cmd_constants(args, out):
    setup = model.PhysicalSetup(
        epsilon=args.epsilon,
        rydberg_ev=args.rydberg_ev,
        bohr_radius_angstrom=args.bohr_angstrom,
    )
    z = model.coupling_from_epsilon(setup)
    scales = model.derive_scales(setup)
    results = {
        "Z": float(_fmt(z)),
        "e0_mev": float(_fmt(model.e0_mev(setup))),
        "e0_ghz": float(_fmt(scales.e0_ghz)),
        "x0_angstrom": float(_fmt(scales.x0_angstrom)),
        "b0_angstrom": float(_fmt(2.0 * scales.x0_angstrom)),
    }
    _report(out, {"epsilon": args.epsilon}, results, [])
    return EXIT_OK


def cmd_spectrum(args, out):
    if args.nmax < 1:
        raise InputError(f"--nmax must be >= 1, got {args.nmax}")
    dm = model.DefectModel(e0_ghz=args.e0_ghz, delta=args.delta)
    ground = model.StateSpec(1, dm)
    out.write("n,n_star,energy_ghz,delta_to_ground_ghz\n")
    for n in range(1, args.nmax + 1):
        state = model.StateSpec(n, dm)
        gap = 0.0 if n == 1 else model.transition(state, ground)
        out.write(f"{n},{_fmt(state.n_star)},{_fmt(model.energy(state))},{_fmt(gap)}\n")
    return EXIT_OK


def cmd_wavefunction(args, out):
    if args.points < 2:
        raise InputError(f"--points must be >= 2, got {args.points}")
    u = np.linspace(0.0, args.xmax_x0, args.points)
    if args.isospectral:
        family = iso.IsospectralFamily(delta=args.delta, big_r=args.bigr)
        vals = np.where(u > 0.0, iso.chi(family, args.n, np.maximum(u, 1e-300)), 0.0)
    else:
        dm = model.DefectModel(e0_ghz=1.0, delta=args.delta)
        vals = model.wavefunction(model.StateSpec(args.n, dm), u)
    out.write("x_over_x0,value\n")
    for ui, vi in zip(u, vals):
        out.write(f"{_fmt(ui)},{_fmt(vi)}\n")
    return EXIT_OK


def cmd_fit(args, out):
    data = load_transitions(args.input)
    if args.least_squares:
        result = fitmod.fit_least_squares(data)
    else:
        result = fitmod.fit_two_point(data)
    results = {
        "e0_ghz": float(_fmt(result.e0_ghz)),
        "delta": float(_fmt(result.delta)),
        "residuals_ghz": [float(_fmt(r)) for r in result.residuals_ghz],
        "asymptotic_shift_ghz": float(_fmt(result.shift_infinity_ghz)),
    }
    inputs = {
        "file": args.input,
        "records": [
            [r.n_upper, r.n_lower, r.frequency_ghz, r.weight] for r in data.records
        ],
        "method": "least_squares" if args.least_squares else "two_point",
    }
    _report(out, inputs, results, [])
    return EXIT_OK


def cmd_verify(args, out):
    delta = args.delta
    nmax = args.nmax
    if nmax < 1:
        raise InputError(f"--nmax must be >= 1, got {nmax}")
    checks = []

    grid = oracle.GridSpec.tail_checked(nmax, delta, base_points=args.points)
    eigs, _ = oracle.solve_bound_states_richardson(grid, delta, count=nmax)
    for n, lam in enumerate(eigs, start=1):
        checks.append(_check(
            f"eigenvalue_n{n}", model.reduced_eigenvalue(n, delta), lam,
            1e-4, relative=True,
        ))

    dm = model.DefectModel(e0_ghz=1.0, delta=delta)
    states = [model.StateSpec(n, dm) for n in range(1, nmax + 1)]
    for st in states:
        norm = oracle.integrate(
            lambda x: model.wavefunction(st, x) ** 2, 0.0, math.inf, tol=1e-9
        )
        checks.append(_check(f"normalization_n{st.n}", 1.0, norm, 1e-8))
    for a, b in zip(states[:-1], states[1:]):
        overlap = oracle.integrate(
            lambda x: model.wavefunction(a, x) * model.wavefunction(b, x),
            0.0, math.inf, tol=1e-9,
        )
        checks.append(_check(f"orthogonality_n{a.n}_n{b.n}", 0.0, overlap, 1e-8))

    for st in states[: min(nmax, 4)]:
        closed = matelem.expectation_x(st)
        quad = oracle.integrate(
            lambda x: x * model.wavefunction(st, x) ** 2, 0.0, math.inf, tol=1e-10
        )
        checks.append(_check(f"expectation_x_n{st.n}", quad, closed, 1e-8, relative=True))
        closed_d = matelem.dipole_ground(st.n, dm)
        quad_d = oracle.integrate(
            lambda x: model.wavefunction(states[0], x) * x * model.wavefunction(st, x),
            0.0, math.inf, tol=1e-11,
        )
        checks.append(_check(f"dipole_1_to_n{st.n}", quad_d, closed_d, 1e-8, relative=True))

    if delta == 0.0:
        virial = oracle.integrate(
            lambda u: model.reduced_potential(0.0, np.maximum(u, 1e-300))
            * model.wavefunction(states[0], u) ** 2,
            0.0, math.inf, tol=1e-9,
        )
        checks.append(_check(
            "virial_ground", 2.0 * model.reduced_eigenvalue(1, 0.0), virial,
            1e-6, relative=True,
        ))

    family = iso.IsospectralFamily(delta=delta, big_r=args.bigr)
    iso_nmax = min(max(nmax, 2), 3)
    iso_grid = oracle.GridSpec.tail_checked(iso_nmax, delta, base_points=args.points)
    plain, _ = oracle.solve_bound_states_richardson(iso_grid, delta, count=iso_nmax)
    shifted, _ = oracle.solve_bound_states_richardson(
        iso_grid, delta, extra_potential=lambda u: iso.v2(family, u), count=iso_nmax
    )
    for n, (lam_p, lam_s) in enumerate(zip(plain, shifted), start=1):
        checks.append(_check(f"isospectral_eigenvalue_n{n}", lam_p, lam_s, 1e-4, relative=True))
    ray_grid = oracle.GridSpec.tail_checked(iso_nmax, delta)
    u_nodes = ray_grid.nodes()
    for n in range(2, iso_nmax + 1):
        samples = iso.chi_grid(family, n, u_nodes)
        quotient, _ = oracle.rayleigh_residual(
            ray_grid, delta, lambda u: iso.v2(family, u), samples
        )
        checks.append(_check(
            f"chi_rayleigh_n{n}", model.reduced_eigenvalue(n, delta), quotient,
            1e-4, relative=True,
        ))
    report = iso.validate_family(family)
    checks.append({
        "name": "v2_origin_limit_zero",
        "expected": 0.0,
        "actual": report["origin_limit"],
        "tolerance": 1e-3,
        "pass": bool(report["fails_property_i"]),
    })
    checks.append({
        "name": "v2_decays_to_zero",
        "expected": 0.0,
        "actual": 0.0,
        "tolerance": 1e-8,
        "pass": bool(report["decays_to_zero"]),
    })

    ok = _report(out, {"delta": delta, "nmax": nmax, "bigr": args.bigr}, {}, checks)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rydsurf",
        description="Quantum-defect model of electrons above a helium surface.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="coupling Z and the derived energy/length scales")
    p.add_argument("--epsilon", type=float, default=model.HELIUM_EPSILON)
    p.add_argument("--rydberg-ev", type=float, default=model.RYDBERG_EV)
    p.add_argument("--bohr-angstrom", type=float, default=model.BOHR_RADIUS_ANGSTROM)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("spectrum", help="quantum-defect level scheme as CSV")
    p.add_argument("--e0-ghz", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("wavefunction", help="sample psi (or chi with --isospectral) as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--xmax-x0", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--isospectral", action="store_true")
    p.add_argument("--bigr", type=float, default=-2.0)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("fit", help="fit (E0, delta) to a transitions CSV file")
    p.add_argument("--input", required=True)
    p.add_argument("--least-squares", action="store_true")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("verify", help="run the analytic-vs-oracle cross-check suite")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--bigr", type=float, default=-2.0)
    p.add_argument("--points", type=int, default=40000)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args, sys.stdout)
    except (InputError, ParameterDomainError, FitDomainError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, ConvergenceError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
