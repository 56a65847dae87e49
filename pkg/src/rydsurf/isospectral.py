"""Inequivalent isospectral Hamiltonian: added potential V2, transformation
kernel K, and transformed eigenfunctions chi.

Everything is in reduced units (lengths in x0, energies in 4 E0), with
t = u / (1 - delta) the ground-state-scaled coordinate.  The denominator
Gamma(3 - 2 delta, t) - R must keep one sign on [0, inf), which restricts the
free constant to R < 0 or R > Gamma(3 - 2 delta).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ParameterDomainError, SingularFamilyError
from .model import DefectModel, StateSpec, wavefunction
from .oracle import integrate
from .specfun import gamma_upper_grid

_DENOM_FLOOR = 1e-12


@dataclass(frozen=True)
class IsospectralFamily:
    """delta plus the free constant R (gamma is derived and reported)."""

    delta: float = 0.0
    big_r: float = -2.0

    def __post_init__(self):
        if not 0.0 <= self.delta < 1.0:
            raise ParameterDomainError(f"delta must lie in [0, 1), got {self.delta}")
        g_full = math.gamma(3.0 - 2.0 * self.delta)
        if 0.0 <= self.big_r <= g_full:
            raise SingularFamilyError(
                f"R = {self.big_r} lies in [0, Gamma(3-2delta) = {g_full:.6f}]: "
                "the denominator Gamma(3-2delta, t) - R crosses zero"
            )

    @property
    def one_star(self):
        return 1.0 - self.delta

    @property
    def gamma_complete(self):
        """Gamma(3 - 2 delta), the t -> 0 limit of the incomplete Gamma."""
        return math.gamma(3.0 - 2.0 * self.delta)

    @property
    def gamma_param(self):
        """The dependent constant gamma with R = (gamma+1) Gamma(3-2delta) / gamma."""
        return self.gamma_complete / (self.big_r - self.gamma_complete)

    def _denominator(self, t):
        den = gamma_upper_grid(3.0 - 2.0 * self.delta, t) - self.big_r
        if np.any(np.abs(den) < _DENOM_FLOOR):
            raise SingularFamilyError(
                f"denominator within {_DENOM_FLOOR} of zero for R = {self.big_r}"
            )
        return den


def v2(family, u):
    """Added potential V2(u) in units of 4 E0; vanishes at both ends."""
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr <= 0.0):
        raise ParameterDomainError("V2 defined for u > 0 only")
    os = family.one_star
    d = family.delta
    t = u_arr / os
    den = family._denominator(t)
    decay = np.exp(-t)
    y = decay * np.power(t, 2.0 - 2.0 * d) / den
    # ((2-2d)/t) * Y folded into one power to stay finite as t -> 0
    lead = (2.0 - 2.0 * d) * decay * np.power(t, 1.0 - 2.0 * d) / den
    out = (2.0 / os**2) * (lead - y + y * y)
    return float(out) if np.isscalar(u) else out


def kernel(family, u, y):
    """Transformation kernel K(u, y); the denominator depends on u only."""
    u_arr = np.asarray(u, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    if np.any(u_arr <= 0.0) or np.any(y_arr <= 0.0):
        raise ParameterDomainError("kernel defined for u, y > 0")
    os = family.one_star
    d = family.delta
    tu = u_arr / os
    ty = y_arr / os
    den = family._denominator(tu)
    val = (
        np.exp(-(tu + ty) / 2.0)
        * np.power(tu * ty, 1.0 - d)
        / (os * den)
    )
    return float(val) if np.isscalar(u) and np.isscalar(y) else val


def _state(family, n):
    return StateSpec(n, DefectModel(e0_ghz=1.0, delta=family.delta, x0_angstrom=1.0))


def _kernel_weight(family, y):
    """e^(-t_y/2) t_y^(1-delta), the y-dependent kernel factor."""
    t = np.asarray(y, dtype=float) / family.one_star
    return np.exp(-t / 2.0) * np.power(t, 1.0 - family.delta)


def chi(family, n, u, tol=1e-10):
    """Transformed excited state chi_{n*}(u) = psi + int_0^u K(u, y) psi(y) dy."""
    if int(n) != n or n < 2:
        raise ParameterDomainError(f"chi is defined for n >= 2, got {n}")
    state = _state(family, n)
    if not np.isscalar(u):
        return np.array([chi(family, n, float(ui), tol=tol) for ui in np.asarray(u)])
    if u < 0.0:
        raise ParameterDomainError("chi defined for u >= 0")
    if u == 0.0:
        return 0.0
    inner = integrate(
        lambda y: _kernel_weight(family, y) * wavefunction(state, y), 0.0, u, tol=tol
    )
    tu = np.array([u / family.one_star])
    pref = float(
        (np.exp(-tu / 2.0) * np.power(tu, 1.0 - family.delta)
         / (family.one_star * family._denominator(tu)))[0]
    )
    return wavefunction(state, u) + pref * inner


def chi_grid(family, n, u):
    """chi_{n*} sampled on an ascending grid via cumulative trapezoid.

    Suitable for the dense grids of the eigensolver cross-checks, where the
    O(h^2) cumulative integral matches the discretization order.
    """
    if int(n) != n or n < 2:
        raise ParameterDomainError(f"chi is defined for n >= 2, got {n}")
    u = np.asarray(u, dtype=float)
    state = _state(family, n)
    psi = wavefunction(state, u)
    w = _kernel_weight(family, u) * psi
    # trapezoid antiderivative from 0, with a zero-integrand origin panel
    seg = 0.5 * np.diff(u, prepend=0.0) * (w + np.concatenate([[0.0], w[:-1]]))
    cum = np.cumsum(seg)
    t = u / family.one_star
    pref = (
        np.exp(-t / 2.0) * np.power(t, 1.0 - family.delta)
        / (family.one_star * family._denominator(t))
    )
    return psi + pref * cum


def chi_ground_shape(family, u):
    """Raw (unnormalized) transformed ground state psi_{1*}(u) / (Gamma - R)."""
    u = np.asarray(u, dtype=float)
    state = _state(family, 1)
    return wavefunction(state, u) / family._denominator(u / family.one_star)


def chi_ground_norm(family, tol=1e-10):
    """Squared norm of the raw ground-state shape, by quadrature."""
    return integrate(lambda y: chi_ground_shape(family, y) ** 2, 0.0, math.inf, tol=tol)


def chi_ground(family, u, tol=1e-10):
    """Numerically normalized transformed ground state chi_{1*}(u)."""
    scalar = np.isscalar(u)
    val = chi_ground_shape(family, u) / math.sqrt(chi_ground_norm(family, tol=tol))
    return float(val) if scalar else val


def ground_metadata(family):
    """Nominal printed prefactor and norm of chi_{1*}, recorded as metadata.

    The prefactor -Gamma(3-2delta)/sqrt(gamma) is real only for gamma > 0;
    for gamma < 0 (e.g. R = -2) it and the nominal norm gamma/(gamma+1) are
    reported as-is with ``prefactor_real = False``, and only the numerically
    normalized shape should be used.
    """
    g = family.gamma_param
    real = g > 0.0
    return {
        "gamma": g,
        "nominal_norm": g / (g + 1.0),
        "prefactor_real": real,
        "nominal_prefactor": -family.gamma_complete / math.sqrt(g) if real else None,
        "raw_squared_norm": chi_ground_norm(family),
    }


def validate_family(family, u_probe=None, origin_u=1e-8, far_u=400.0):
    """Report the qualitative properties of V2 on a probe grid.

    Keys: ``origin_limit`` (V2 as u -> 0+), ``fails_property_i`` (the origin
    limit is not +infinity), ``negative_at_large_u``, ``decays_to_zero``,
    ``denominator_sign_constant``.
    """
    if u_probe is None:
        u_probe = np.geomspace(1e-6, far_u, 2000)
    den = family._denominator(np.asarray(u_probe, dtype=float) / family.one_star)
    origin = float(v2(family, origin_u))
    far = float(v2(family, far_u))
    mid = v2(family, np.asarray(u_probe))
    return {
        "origin_limit": origin,
        "fails_property_i": abs(origin) < 1e-3,
        "negative_at_large_u": far < 0.0,
        "decays_to_zero": abs(far) < 1e-8,
        "denominator_sign_constant": bool(np.all(den > 0.0) or np.all(den < 0.0)),
        "max_abs_v2": float(np.max(np.abs(mid))),
    }


def v2_integral(family, tol=1e-8):
    """int_0^inf |V2| du; finite for a valid family."""
    val = integrate(lambda u: np.abs(v2(family, u)), 1e-12, math.inf, tol=tol)
    if not math.isfinite(val):
        raise NumericError("V2 integral did not converge")
    return val
