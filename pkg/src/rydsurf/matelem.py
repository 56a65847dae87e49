"""Closed-form expectation values and transition matrix elements.

The general moment <j*|x^t|k*> expands both Laguerre polynomials into their
finite series and integrates term by term against the shared exponential,
giving a double sum of Gamma functions.  The ground-state dipole uses the
single-sum closed form with the (n-1-k)! denominator and (n*/1*)^(2-delta)
prefactor; the quadrature oracle in the test suite is authoritative for it.
"""

import math
from dataclasses import dataclass, field

from .errors import ParameterDomainError
from .model import DefectModel, StateSpec

_MAX_POWER = 20


def expectation_x(state):
    """<x>_{n*} = x0 [3 n^2 - delta (6 n - 1 - 2 delta)]."""
    n, d = state.n, state.model.delta
    return state.model.x0_angstrom * (3.0 * n * n - d * (6.0 * n - 1.0 - 2.0 * d))


def dipole_ground(ket_n, model):
    """Signed dipole matrix element <1*|x|n*> in the model's length units."""
    if int(ket_n) != ket_n or ket_n < 1:
        raise ParameterDomainError(f"ket_n must be an integer >= 1, got {ket_n}")
    n, d = int(ket_n), model.delta
    one_star = 1.0 - d
    n_star = n - d
    g = 2.0 * one_star / (n_star + one_star)
    log_pref = 0.5 * (
        math.lgamma(n + 1.0 - 2.0 * d) + math.lgamma(n) - math.lgamma(2.0 - 2.0 * d)
    )
    total = 0.0
    for k in range(n):
        total += (
            (-g) ** k
            / math.factorial(k)
            * (k + 3.0 - 2.0 * d)
            * (k + 2.0 - 2.0 * d)
            / math.factorial(n - 1 - k)
        )
    return (
        0.5
        * model.x0_angstrom
        * g ** (4.0 - 2.0 * d)
        * (n_star / one_star) ** (2.0 - d)
        * math.exp(log_pref)
        * total
    )


@dataclass(frozen=True)
class MatrixElementSpec:
    """<bra_n*| x^power |ket_n*> under one DefectModel."""

    bra_n: int
    ket_n: int
    power: int
    model: DefectModel = field(repr=False)

    def __post_init__(self):
        for label, n in (("bra_n", self.bra_n), ("ket_n", self.ket_n)):
            if int(n) != n or n < 1:
                raise ParameterDomainError(f"{label} must be an integer >= 1, got {n}")
        if int(self.power) != self.power or self.power < 0:
            raise ParameterDomainError(f"power must be a non-negative integer, got {self.power}")
        if self.power > _MAX_POWER:
            raise ParameterDomainError(
                f"power > {_MAX_POWER} is outside the stable Gamma-ratio range"
            )


def _series_log_coeffs(n, delta):
    """(sign, log|c_p|) of the Laguerre series coefficients of state n."""
    out = []
    for p in range(n):
        logc = (
            math.lgamma(n + 1.0 - 2.0 * delta)
            - math.lgamma(2.0 - 2.0 * delta + p)
            - math.lgamma(n - p)
            - math.lgamma(p + 1.0)
        )
        out.append((-1.0 if p % 2 else 1.0, logc))
    return out


def moment(spec):
    """General moment <j*|x^t|k*> as a double sum of Gamma functions."""
    j, k = sorted((spec.bra_n, spec.ket_n))
    d = spec.model.delta
    x0 = spec.model.x0_angstrom
    t = spec.power
    j_star, k_star = j - d, k - d
    beta = (j_star + k_star) / (2.0 * j_star * k_star * x0)
    log_beta = math.log(beta)
    log_nj = math.log(StateSpec(j, spec.model).norm_constant)
    log_nk = math.log(StateSpec(k, spec.model).norm_constant)
    log_aj = math.log(j_star * x0)
    log_ak = math.log(k_star * x0)
    cj = _series_log_coeffs(j, d)
    ck = _series_log_coeffs(k, d)
    total = 0.0
    for p, (sp, lp) in enumerate(cj):
        for q, (sq, lq) in enumerate(ck):
            s = t + 3.0 - 2.0 * d + p + q
            log_term = (
                lp + lq + log_nj + log_nk
                - (1.0 - d + p) * log_aj
                - (1.0 - d + q) * log_ak
                + math.lgamma(s)
                - s * log_beta
            )
            total += sp * sq * math.exp(log_term)
    return total
