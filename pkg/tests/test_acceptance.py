"""Acceptance gate: one test per criterion, one PASS/FAIL line each.

Every criterion prints a single summary line so the gate can be audited
from the pytest log; the assertion carries the same condition.
"""

import math

import numpy as np
import pytest

import rydsurf as rs
from rydsurf import isospectral as iso
from rydsurf import oracle


def _report(num, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {num} ({label}): {status}" + (f"  [{detail}]" if detail else ""))
    assert ok, f"criterion {num} ({label}) {detail}"


def test_criterion_1_coupling_constant():
    z = rs.coupling_from_epsilon(rs.PhysicalSetup())
    _report(1, "coupling constant", abs(z - 0.0069547) < 1e-6, f"Z={z:.9g}")


def test_criterion_2_energy_and_length_scales():
    setup = rs.PhysicalSetup()
    e0 = rs.e0_mev(setup)
    model = rs.derive_scales(setup)
    ok = (
        abs(e0 / 0.658086 - 1.0) < 5e-4
        and abs(model.e0_ghz / 159.123 - 1.0) < 5e-4
        and abs(model.x0_angstrom * 2.0 / 76.01 - 1.0) < 2e-3
    )
    _report(2, "derived scales", ok,
            f"e0={e0:.6f} meV = {model.e0_ghz:.4f} GHz, b0={model.x0_angstrom * 2.0:.3f} A")


def test_criterion_3_fit_round_trip_and_shift():
    data = rs.generate_transitions(158.4, 0.0237, (2, 3))
    result = rs.fit_two_point(data)
    shift = result.shift_infinity_ghz
    ok = (
        np.max(np.abs(result.residuals_ghz)) < 1e-9
        and abs(result.e0_ghz - 158.4) < 1e-7
        and abs(result.delta - 0.0237) < 1e-9
        and abs(shift - 7.78) < 0.1
    )
    _report(3, "fit reproduction", ok,
            f"e0={result.e0_ghz:.9g}, delta={result.delta:.9g}, shift={shift:.4f} GHz")


def test_criterion_4_spectrum_oracle_equivalence():
    worst = 0.0
    for delta in (0.0, 0.0237, 0.1):
        grid = oracle.GridSpec.tail_checked(5, delta)
        levels, _ = oracle.solve_bound_states_richardson(grid, delta, count=5)
        for n, value in zip(range(1, 6), levels):
            worst = max(worst, abs(value / rs.reduced_eigenvalue(n, delta) - 1.0))
    _report(4, "spectrum oracle equivalence", worst < 1e-4, f"worst rel err {worst:.3g}")


def test_criterion_5_orthonormality():
    worst = 0.0
    for delta in (0.0, 0.0237, 0.1):
        model = rs.DefectModel(1.0, delta)
        states = [rs.StateSpec(n, model) for n in range(1, 9)]
        for i, si in enumerate(states):
            for sj in states[i:]:
                overlap = rs.integrate(
                    lambda x: rs.wavefunction(si, x) * rs.wavefunction(sj, x),
                    0.0, math.inf, tol=1e-12)
                target = 1.0 if si.n == sj.n else 0.0
                worst = max(worst, abs(overlap - target))
    _report(5, "wavefunction orthonormality", worst < 1e-8, f"worst defect {worst:.3g}")


def test_criterion_6_matrix_elements():
    worst = 0.0
    for delta in (0.0, 0.0237, 0.2):
        model = rs.DefectModel(1.0, delta)
        ground = rs.StateSpec(1, model)
        for n in range(1, 7):
            state = rs.StateSpec(n, model)
            mean_x = rs.integrate(
                lambda x: x * rs.wavefunction(state, x) ** 2, 0.0, math.inf, tol=1e-12)
            worst = max(worst, abs(rs.expectation_x(state) / mean_x - 1.0))
            dip = rs.integrate(
                lambda x: rs.wavefunction(ground, x) * x * rs.wavefunction(state, x),
                0.0, math.inf, tol=1e-12)
            worst = max(worst, abs(rs.dipole_ground(n, model) / dip - 1.0))
    model0 = rs.DefectModel(1.0, 0.0)
    mag = abs(rs.dipole_ground(2, model0))
    coincide = abs(rs.dipole_ground(1, model0) - rs.expectation_x(rs.StateSpec(1, model0)))
    ok = worst < 1e-8 and abs(mag - 1.11740) < 1e-5 and coincide < 1e-12
    _report(6, "matrix elements vs quadrature", ok,
            f"worst rel err {worst:.3g}, |<1|x|2>|={mag:.6f} x0")


def test_criterion_7_laguerre_connection():
    for n in range(0, 11):
        for j in range(0, 11 - n):
            # raises AssertionError internally on any coefficient mismatch
            lhs, rhs = rs.laguerre_connection_check(n, j, 0.7318)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))
    _report(7, "Laguerre connection (exact arithmetic)", True, "all n+j <= 10")


@pytest.mark.parametrize("delta", [0.0, 0.0237])
def test_criterion_8_isospectrality(delta):
    family = iso.IsospectralFamily(delta=delta, big_r=-2.0)
    grid = oracle.GridSpec.tail_checked(3, delta)
    extra = lambda u: iso.v2(family, u)
    levels, fine = oracle.solve_bound_states_richardson(grid, delta, extra_potential=extra,
                                                        count=3)
    worst_eig = max(abs(v / rs.reduced_eigenvalue(n, delta) - 1.0)
                    for n, v in zip(range(1, 4), levels))

    nodes = grid.nodes()
    worst_quot = 0.0
    worst_res = 0.0
    for n in range(1, 4):
        if n == 1:
            samples = iso.chi_ground_shape(family, nodes)
        else:
            samples = iso.chi_grid(family, n, nodes)
        quotient, residual = oracle.rayleigh_residual(grid, delta, extra, samples)
        target = rs.reduced_eigenvalue(n, delta)
        worst_quot = max(worst_quot, abs(quotient / target - 1.0))
        worst_res = max(worst_res, residual)

    v2_origin = abs(iso.v2(family, 1e-8))
    v2_far = abs(iso.v2(family, 400.0))
    ok = (worst_eig < 1e-4 and worst_quot < 1e-4 and worst_res < 1e-3
          and v2_origin < 1e-6 and v2_far < 1e-12)
    _report(8, f"isospectrality (delta={delta})", ok,
            f"eig rel {worst_eig:.3g}, Rayleigh rel {worst_quot:.3g}, "
            f"residual {worst_res:.3g}, V2(0+)={v2_origin:.3g}, V2(inf)={v2_far:.3g}")


def test_criterion_9_property_suite():
    rng = np.random.default_rng(20260826)

    worst_fit = 0.0
    for _ in range(25):
        e0 = float(rng.uniform(50.0, 400.0))
        delta = float(rng.uniform(0.0, 0.45))
        result = rs.fit_two_point(rs.generate_transitions(e0, delta, (2, 3)))
        worst_fit = max(worst_fit, abs(result.e0_ghz / e0 - 1.0), abs(result.delta - delta))

    # analytic Jacobian of the predicted frequencies vs central differences
    records = rs.generate_transitions(158.4, 0.0237, (2, 3, 4)).records
    e0, delta = 158.4, 0.0237
    worst_jac = 0.0
    for rec in records:
        base = rs.predicted([rec], e0, delta)[0]
        d_e0 = base / e0
        d_delta = e0 * (2.0 / (rec.n_lower - delta) ** 3 - 2.0 / (rec.n_upper - delta) ** 3)
        h = 1e-6
        fd_e0 = (rs.predicted([rec], e0 + h, delta)[0]
                 - rs.predicted([rec], e0 - h, delta)[0]) / (2 * h)
        fd_delta = (rs.predicted([rec], e0, delta + h)[0]
                    - rs.predicted([rec], e0, delta - h)[0]) / (2 * h)
        worst_jac = max(worst_jac, abs(fd_e0 / d_e0 - 1.0), abs(fd_delta / d_delta - 1.0))

    worst_quad = 0.0
    for a in (0.5, 1.0, 1.7318, 3.1459, 6.0):
        val = rs.integrate(lambda t: t ** (a - 1.0) * np.exp(-t), 0.0, math.inf, tol=1e-13)
        worst_quad = max(worst_quad, abs(val / rs.gamma_fn(a) - 1.0))

    coarse = oracle.GridSpec(48.0, 2000)
    fine = oracle.GridSpec(48.0, 2 * coarse.points + 1)   # exactly halves the spacing
    err_c = abs(oracle.solve_bound_states(coarse, 0.0)[0].eigenvalue + 0.25)
    err_f = abs(oracle.solve_bound_states(fine, 0.0)[0].eigenvalue + 0.25)
    factor = err_c / err_f

    ok = (worst_fit < 1e-9 and worst_jac < 1e-5 and worst_quad < 1e-12 and factor >= 3.5)
    _report(9, "property-based suite", ok,
            f"fit {worst_fit:.3g}, jacobian {worst_jac:.3g}, "
            f"quadrature {worst_quad:.3g}, halving factor {factor:.2f}")
