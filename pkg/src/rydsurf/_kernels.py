"""Hot numeric kernels.

Every function here is written as plain Python over numpy arrays and scalars,
then jitted with numba unless the environment variable ``RYDSURF_NO_NUMBA`` is
set (or numba is unavailable), in which case the identical source runs as a
pure-Python/numpy fallback.  ``python -m rydsurf.benchmark`` compares the two
paths.
"""

import math
import os

import numpy as np

USE_NUMBA = os.environ.get("RYDSURF_NO_NUMBA", "").lower() not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if not USE_NUMBA:

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


@njit(cache=True)
def gamma_upper_scalar(a, z):
    """Upper incomplete Gamma(a, z) = int_z^inf y^(a-1) e^-y dy, a > 0, z >= 0.

    Power series for z < a+1, Lentz continued fraction otherwise.
    """
    gln = math.lgamma(a)
    if z <= 0.0:
        return math.exp(gln)
    if z < a + 1.0:
        ap = a
        term = 1.0 / a
        total = term
        for _ in range(500):
            ap += 1.0
            term *= z / ap
            total += term
            if abs(term) < abs(total) * 1e-16:
                break
        p = total * math.exp(-z + a * math.log(z) - gln)
        return math.exp(gln) * (1.0 - p)
    tiny = 1e-300
    b = z + 1.0 - a
    c = 1e300
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delt = d * c
        h *= delt
        if abs(delt - 1.0) < 1e-16:
            break
    return math.exp(-z + a * math.log(z)) * h


@njit(cache=True)
def gamma_upper_array(a, z):
    out = np.empty(z.size)
    for i in range(z.size):
        out[i] = gamma_upper_scalar(a, z[i])
    return out


@njit(cache=True)
def sturm_count(d, e2, x):
    """Number of eigenvalues of the symmetric tridiagonal (d, e) below x.

    e2 holds the squared off-diagonal entries.
    """
    count = 0
    q = 1.0
    for i in range(d.size):
        if i == 0:
            q = d[0] - x
        else:
            denom = q
            if abs(denom) < 1e-300:
                denom = 1e-300
            q = d[i] - x - e2[i - 1] / denom
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def kth_eigenvalue(d, e2, k, lo, hi):
    """k-th (0-based, ascending) eigenvalue by Sturm-sequence bisection."""
    a = lo
    b = hi
    for _ in range(200):
        mid = 0.5 * (a + b)
        if sturm_count(d, e2, mid) >= k + 1:
            b = mid
        else:
            a = mid
        if b - a <= 1e-14 * max(1.0, abs(b)):
            break
    return 0.5 * (a + b)


@njit(cache=True)
def inverse_iteration(d, e, lam, iters):
    """Eigenvector of the symmetric tridiagonal (d, e) for eigenvalue lam.

    Thomas solves with safeguarded pivots; the returned vector has unit
    2-norm and is positive at its first significant component.
    """
    n = d.size
    v = np.ones(n) / math.sqrt(n)
    w = np.empty(n)
    cp = np.empty(n)
    shift = lam + 1e-12 * max(1.0, abs(lam))
    for _ in range(iters):
        b0 = d[0] - shift
        if abs(b0) < 1e-280:
            b0 = 1e-280
        if n > 1:
            cp[0] = e[0] / b0
        w[0] = v[0] / b0
        for i in range(1, n):
            bi = d[i] - shift - e[i - 1] * cp[i - 1]
            if abs(bi) < 1e-280:
                bi = 1e-280
            if i < n - 1:
                cp[i] = e[i] / bi
            w[i] = (v[i] - e[i - 1] * w[i - 1]) / bi
        for i in range(n - 2, -1, -1):
            w[i] -= cp[i] * w[i + 1]
        nrm = 0.0
        for i in range(n):
            nrm += w[i] * w[i]
        nrm = math.sqrt(nrm)
        for i in range(n):
            v[i] = w[i] / nrm
    thresh = 0.0
    for i in range(n):
        if abs(v[i]) > thresh:
            thresh = abs(v[i])
    thresh *= 1e-3
    for i in range(n):
        if abs(v[i]) > thresh:
            if v[i] < 0.0:
                for j in range(n):
                    v[j] = -v[j]
            break
    return v
