"""Independent numerical verification tools: adaptive Gauss-Kronrod
quadrature and a finite-difference bound-state eigensolver for the reduced
Hamiltonian -d^2/du^2 - 1/u + (delta^2 - delta)/u^2 [+ extra potential].

Nothing here reuses the closed forms it is meant to check.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import inverse_iteration, kth_eigenvalue
from .errors import AccuracyError, InputError, NumericError, ParameterDomainError
from .model import reduced_potential

# 7/15 Gauss-Kronrod abscissae and weights on [-1, 1] (QUADPACK values).
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # 15 ascending nodes
_W15 = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W7 = np.zeros(15)
_W7[1:-1:2] = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk15(f, lo, hi):
    """Kronrod estimates and error guesses on a batch of intervals."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    pts = mid[:, None] + half[:, None] * _NODES[None, :]
    fv = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
    if not np.all(np.isfinite(fv)):
        raise NumericError("integrand evaluated to a non-finite value")
    i15 = half * (fv @ _W15)
    i7 = half * (fv @ _W7)
    return i15, np.abs(i15 - i7)


_WINDOW = np.array([1.0, 1.13, 1.31, 1.57, 1.83])


def _exponential_cutoff(f, a, tol):
    """Upper limit B such that the tail bound beyond B is below tol/10.

    Probes a short window of points at each doubling so that isolated zeros
    of the integrand are not mistaken for decay.
    """
    prev_b, prev_m = None, None
    for k in range(64):
        b = a + 2.0**k
        m = float(np.max(np.abs(f(b * _WINDOW))))
        if m == 0.0:
            return 2.0 * b
        if prev_m is not None and m < prev_m:
            rate = math.log(prev_m / m) / (b - prev_b)
            if m / rate < tol / 10.0:
                return 2.0 * b
        prev_b, prev_m = b, m
    raise NumericError("no exponential decay detected on the semi-infinite tail")


def integrate(f, a, b, tol=1e-10, max_rounds=300, max_intervals=40000):
    """Globally adaptive Gauss-Kronrod quadrature of a vectorized integrand.

    ``b`` may be ``math.inf``; the tail is then truncated where an
    exponential-decay bound drops below tol/10.  Converges when the summed
    error estimate is below max(tol, tol * |integral|).
    """
    if math.isinf(b):
        b = _exponential_cutoff(f, a, tol)
    if not b > a:
        raise ParameterDomainError(f"need b > a, got [{a}, {b}]")
    n0 = 8
    edges = np.linspace(a, b, n0 + 1)
    lo, hi = edges[:-1], edges[1:]
    vals, errs = _gk15(f, lo, hi)
    # intervals may shrink very deep to resolve integrable endpoint
    # singularities; only stop splitting near the floating-point floor
    min_width = max(1e-280, 4e-16 * max(abs(a), abs(b)) * 1e-10)
    for _ in range(max_rounds):
        total = vals.sum()
        err_total = errs.sum()
        target = max(tol, tol * abs(total))
        if err_total <= target:
            return float(total)
        splittable = (hi - lo) > min_width
        if not np.any(splittable):
            break
        thresh = target / (2.0 * lo.size)
        mask = (errs > thresh) & splittable
        if not np.any(mask):
            mask = np.zeros_like(splittable)
            mask[np.argmax(np.where(splittable, errs, -1.0))] = True
        if lo.size + np.count_nonzero(mask) > max_intervals:
            break
        mid = 0.5 * (lo[mask] + hi[mask])
        new_lo = np.concatenate([lo[~mask], lo[mask], mid])
        new_hi = np.concatenate([hi[~mask], mid, hi[mask]])
        keep_vals, keep_errs = vals[~mask], errs[~mask]
        add_vals, add_errs = _gk15(f, new_lo[keep_vals.size:], new_hi[keep_vals.size:])
        lo, hi = new_lo, new_hi
        vals = np.concatenate([keep_vals, add_vals])
        errs = np.concatenate([keep_errs, add_errs])
    raise NumericError(
        f"quadrature failed to reach tol={tol}: error estimate {errs.sum():.3e}"
    )


@dataclass(frozen=True)
class GridSpec:
    """Uniform Dirichlet grid on (0, u_max): nodes i*h, i = 1..points."""

    u_max: float
    points: int

    def __post_init__(self):
        if self.points < 1000:
            raise ParameterDomainError(f"points must be >= 1000, got {self.points}")
        if self.u_max <= 0.0:
            raise ParameterDomainError(f"u_max must be positive, got {self.u_max}")

    @property
    def spacing(self):
        return self.u_max / (self.points + 1)

    @property
    def u_min(self):
        return self.spacing

    def nodes(self):
        h = self.spacing
        return h * np.arange(1, self.points + 1)

    @classmethod
    def standard(cls, n_max, points=40000):
        """u_max = 8 n_max^2 covers the ~3 n^2 extent of the highest state."""
        return cls(u_max=8.0 * n_max**2, points=points)

    @classmethod
    def tail_checked(cls, n_max, delta=0.0, amplitude=1e-12, base_points=40000):
        """Standard spacing, but u_max extended until psi_{n_max} < amplitude.

        Sampled-state residual checks need the wall where the analytic state
        has genuinely decayed; 8 n_max^2 alone leaves psi(u_max) ~ 1e-3 for
        n >= 3, which wrecks the last-node residual.
        """
        from .model import DefectModel, StateSpec, wavefunction

        base = cls.standard(n_max, points=base_points)
        state = StateSpec(n_max, DefectModel(e0_ghz=1.0, delta=delta))
        u_max = base.u_max
        while abs(wavefunction(state, u_max)) > amplitude and u_max < 64.0 * n_max**2:
            u_max += 2.0 * n_max
        points = int(round(u_max / base.spacing)) - 1
        return cls(u_max=u_max, points=points)


@dataclass(frozen=True)
class EigenResult:
    eigenvalue: float
    samples: np.ndarray
    residual: float


def _diagonals(grid, delta, extra_potential):
    u = grid.nodes()
    h = grid.spacing
    v = reduced_potential(delta, u)
    if extra_potential is not None:
        v = v + np.asarray(extra_potential(u), dtype=float)
    d = 2.0 / h**2 + v
    e = np.full(u.size - 1, -1.0 / h**2)
    return u, d, e


def solve_bound_states(grid, delta, extra_potential=None, count=1):
    """Lowest ``count`` eigenpairs of the discretized reduced Hamiltonian.

    Sturm-sequence bisection for eigenvalues, inverse iteration for
    eigenvectors; samples are normalized so that sum(psi^2) * h = 1.
    """
    if count < 1:
        raise ParameterDomainError(f"count must be >= 1, got {count}")
    _, d, e = _diagonals(grid, delta, extra_potential)
    e2 = e * e
    radius = np.empty_like(d)
    radius[0] = abs(e[0])
    radius[-1] = abs(e[-1])
    radius[1:-1] = np.abs(e[:-1]) + np.abs(e[1:])
    lo = float(np.min(d - radius))
    hi = float(np.max(d + radius))
    h = grid.spacing
    results = []
    for k in range(count):
        lam = kth_eigenvalue(d, e2, k, lo, hi)
        if lam >= 0.0:
            raise NumericError(
                f"state {k + 1} is not bound on this grid (eigenvalue {lam:.3e})"
            )
        vec = inverse_iteration(d, e, lam, 4)
        tv = d * vec
        tv[:-1] += e * vec[1:]
        tv[1:] += e * vec[:-1]
        residual = float(np.linalg.norm(tv - lam * vec))
        results.append(EigenResult(eigenvalue=lam, samples=vec / math.sqrt(h), residual=residual))
    return results


def solve_bound_states_richardson(grid, delta, extra_potential=None, count=1,
                                  max_disagreement=0.05):
    """Eigenvalues Richardson-extrapolated with an empirically measured order.

    The wavefunctions behave as u^(1-delta) at the wall, so the three-point
    scheme converges as h^(1-2*delta) there rather than h^2; the convergence
    order is therefore estimated from three meshes (half, given, double) and
    used in the extrapolation.  Returns (extrapolated eigenvalues, EigenResults
    on the given grid).  Raises AccuracyError when successive meshes disagree
    too much for the extrapolation to be trusted.
    """
    meshes = [
        GridSpec(u_max=grid.u_max, points=grid.points // 2),
        grid,
        GridSpec(u_max=grid.u_max, points=2 * grid.points),
    ]
    per_mesh = [solve_bound_states(m, delta, extra_potential, count) for m in meshes]
    out = []
    for k in range(count):
        l1, l2, l3 = (res[k].eigenvalue for res in per_mesh)
        if abs(l3 - l1) > max_disagreement * abs(l3):
            raise AccuracyError(
                f"grid too coarse: meshes give {l1:.6e} .. {l3:.6e} for state {k + 1}"
            )
        d1, d2 = l2 - l1, l3 - l2
        if d2 == 0.0 or d1 * d2 <= 0.0 or abs(d1) <= abs(d2):
            out.append(l3)
            continue
        order = min(max(math.log2(abs(d1) / abs(d2)), 0.5), 4.0)
        out.append(l3 + d2 / (2.0**order - 1.0))
    return out, per_mesh[1]


def rayleigh_residual(grid, delta, extra_potential, samples):
    """Rayleigh quotient and normalized residual of sampled amplitudes.

    quotient = <v|H|v> / <v|v>, residual = ||(H - quotient) v|| / ||v||,
    with H the same tridiagonal discretization used by solve_bound_states.
    """
    v = np.asarray(samples, dtype=float)
    _, d, e = _diagonals(grid, delta, extra_potential)
    if v.shape != d.shape:
        raise InputError(f"samples shape {v.shape} does not match grid ({d.shape})")
    norm = np.linalg.norm(v)
    if norm == 0.0 or not np.isfinite(norm):
        raise InputError("samples have zero or non-finite norm")
    tv = d * v
    tv[:-1] += e * v[1:]
    tv[1:] += e * v[:-1]
    quotient = float(v @ tv / (norm * norm))
    residual = float(np.linalg.norm(tv - quotient * v) / norm)
    return quotient, residual
