"""Special functions: Gamma, upper incomplete Gamma, generalized binomial
coefficients, and generalized Laguerre polynomials of arbitrary real order.

The Laguerre evaluator uses the three-term upward recurrence, which is stable
for x >= 0 and the moderate degrees needed here.  The explicit finite series
is kept as ``laguerre_series`` for use as a small-n test oracle only.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import gamma_upper_array, gamma_upper_scalar
from .errors import ParameterDomainError

_MAX_EXACT_FACTORIAL = 18


def gamma_fn(a):
    """Gamma(a) for a > 0."""
    if a <= 0.0:
        raise ParameterDomainError(f"gamma_fn requires a > 0, got {a}")
    return math.gamma(a)


def log_gamma(a):
    """log Gamma(a) for a > 0; preferred for ratios at large argument."""
    if a <= 0.0:
        raise ParameterDomainError(f"log_gamma requires a > 0, got {a}")
    return math.lgamma(a)


def gen_binomial(a, b):
    """Generalized binomial coefficient Gamma(a+1) / [Gamma(a-b+1) Gamma(b+1)]."""
    if a - b + 1.0 <= 0.0 or b + 1.0 <= 0.0 or a + 1.0 <= 0.0:
        raise ParameterDomainError(f"gen_binomial out of domain: a={a}, b={b}")
    return math.exp(math.lgamma(a + 1.0) - math.lgamma(a - b + 1.0) - math.lgamma(b + 1.0))


def gamma_upper(a, z):
    """Upper incomplete Gamma(a, z) for a > 0, z >= 0, relative accuracy ~1e-12."""
    if a <= 0.0:
        raise ParameterDomainError(f"gamma_upper requires a > 0, got {a}")
    if z < 0.0:
        raise ParameterDomainError(f"gamma_upper requires z >= 0, got {z}")
    return gamma_upper_scalar(a, z)


def gamma_upper_grid(a, z):
    """Vectorized Gamma(a, z) over a numpy array z >= 0."""
    if a <= 0.0:
        raise ParameterDomainError(f"gamma_upper requires a > 0, got {a}")
    z = np.asarray(z, dtype=float)
    if np.any(z < 0.0):
        raise ParameterDomainError("gamma_upper requires z >= 0")
    return gamma_upper_array(a, z.ravel()).reshape(z.shape)


@dataclass(frozen=True)
class LaguerreParams:
    """Degree n >= 0 and real order alpha > -1 of L_n^(alpha)."""

    degree: int
    alpha: float

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise ParameterDomainError(f"degree must be a non-negative integer, got {self.degree}")
        if self.alpha <= -1.0:
            raise ParameterDomainError(f"alpha must exceed -1, got {self.alpha}")


def _laguerre_rec(n, alpha, x):
    """Upward recurrence for L_n^(alpha)(x); x may be a scalar or ndarray."""
    lm1 = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return lm1
    l = 1.0 + alpha - x
    for k in range(1, n):
        lm1, l = l, ((2 * k + 1 + alpha - x) * l - (k + alpha) * lm1) / (k + 1)
    return l


def laguerre(params, x):
    """Evaluate L_n^(alpha)(x) by the three-term recurrence."""
    if isinstance(x, np.ndarray):
        return _laguerre_rec(params.degree, params.alpha, np.asarray(x, dtype=float))
    return float(_laguerre_rec(params.degree, params.alpha, float(x)))


def laguerre_series(params, x):
    """Direct finite-series evaluation of L_n^(alpha)(x); small-n oracle only."""
    n, alpha = params.degree, params.alpha
    total = 0.0
    for k in range(n + 1):
        total += gen_binomial(n + alpha, n - k) * (-x) ** k / math.factorial(k)
    return total


def _ordinary_laguerre_scaled_coeffs(m):
    """Exact integer coefficients of m! * L_m(x), ascending powers."""
    return [
        Fraction((-1) ** k * math.factorial(m) * math.comb(m, k), math.factorial(k))
        for k in range(m + 1)
    ]


def _poly_derivative(coeffs, j):
    """j-th derivative of a coefficient list, exact arithmetic."""
    for _ in range(j):
        coeffs = [coeffs[k] * k for k in range(1, len(coeffs))]
        if not coeffs:
            coeffs = [Fraction(0)]
    return coeffs


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def laguerre_connection_check(n, j, x):
    """Evaluate both sides of the associated/generalized Laguerre identity.

    The left side is the derivative-defined associated polynomial
    d^j/dx^j [(n+j)! L_{n+j}(x)]; the right side is
    (-1)^j (n+j)! L_n^(j)(x) from the series form.  Both are built from
    exact rational coefficients and must agree coefficient by coefficient.
    """
    if n < 0 or j < 0 or n + j > _MAX_EXACT_FACTORIAL:
        raise ParameterDomainError(f"need 0 <= n+j <= {_MAX_EXACT_FACTORIAL}, got n={n}, j={j}")
    lhs_coeffs = _poly_derivative(_ordinary_laguerre_scaled_coeffs(n + j), j)
    sign_fact = Fraction((-1) ** j * math.factorial(n + j))
    rhs_coeffs = [
        sign_fact
        * Fraction((-1) ** k, math.factorial(k))
        * Fraction(math.factorial(n + j), math.factorial(k + j) * math.factorial(n - k))
        for k in range(n + 1)
    ]
    lhs_coeffs = lhs_coeffs + [Fraction(0)] * (len(rhs_coeffs) - len(lhs_coeffs))
    rhs_coeffs = rhs_coeffs + [Fraction(0)] * (len(lhs_coeffs) - len(rhs_coeffs))
    if lhs_coeffs != rhs_coeffs:
        raise AssertionError(f"connection identity violated at n={n}, j={j}")
    xf = Fraction(x).limit_denominator(10**12) if not isinstance(x, Fraction) else x
    return float(_poly_eval(lhs_coeffs, xf)), float(_poly_eval(rhs_coeffs, xf))
