"""Recovery of (E0, delta) from measured transition frequencies.

Fits the exact transition formula
Delta(n_hi, n_lo) = E0 [1/(n_lo-delta)^2 - 1/(n_hi-delta)^2]
rather than its small-delta expansion.  Two routes: an exact two-line solve
(delta by root bracketing with E0 eliminated through the frequency ratio) and
a weighted Gauss-Newton least squares over any number of lines.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, FitDomainError, InputError, ParameterDomainError
from .model import transition_shape

DELTA_BRACKET = (0.0, 0.5)


@dataclass(frozen=True)
class TransitionRecord:
    n_upper: int
    n_lower: int
    frequency_ghz: float
    weight: float = 1.0

    def __post_init__(self):
        if self.n_upper <= self.n_lower or self.n_lower < 1:
            raise InputError(
                f"need n_upper > n_lower >= 1, got {self.n_upper} -> {self.n_lower}"
            )
        if self.frequency_ghz <= 0.0:
            raise InputError(f"frequency must be positive, got {self.frequency_ghz}")
        if self.weight <= 0.0:
            raise InputError(f"weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class TransitionSet:
    records: tuple

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        if not self.records:
            raise InputError("transition set is empty")

    def merged(self):
        """Average duplicate (n_upper, n_lower) lines with summed weights."""
        groups = {}
        for r in self.records:
            groups.setdefault((r.n_upper, r.n_lower), []).append(r)
        out = []
        for (hi, lo), rs in groups.items():
            w = sum(r.weight for r in rs)
            f = sum(r.weight * r.frequency_ghz for r in rs) / w
            out.append(TransitionRecord(hi, lo, f, w))
        return out


@dataclass(frozen=True)
class FitResult:
    e0_ghz: float
    delta: float
    residuals_ghz: np.ndarray
    shift_infinity_ghz: float


def predicted(records, e0, delta):
    return np.array(
        [e0 * transition_shape(r.n_upper, r.n_lower, delta) for r in records]
    )


def asymptotic_shift(e0, delta):
    """Large-n Balmer offset E0 [1/(1-delta)^2 - 1] in GHz."""
    return e0 * (1.0 / (1.0 - delta) ** 2 - 1.0)


def _result(records, e0, delta):
    res = np.array([r.frequency_ghz for r in records]) - predicted(records, e0, delta)
    return FitResult(
        e0_ghz=e0,
        delta=delta,
        residuals_ghz=res,
        shift_infinity_ghz=asymptotic_shift(e0, delta),
    )


def fit_two_point(data):
    """Exact solve of two n->1 lines for (E0, delta) by ratio bracketing."""
    records = list(data.records)
    if len(records) != 2:
        raise FitDomainError(f"two-point fit needs exactly 2 records, got {len(records)}")
    r1, r2 = records
    if r1.n_lower != 1 or r2.n_lower != 1:
        raise FitDomainError("two-point fit requires both lines to end on n = 1")
    if (r1.n_upper, r1.n_lower) == (r2.n_upper, r2.n_lower):
        raise InputError("duplicate transition lines cannot determine two parameters")
    ratio = r1.frequency_ghz / r2.frequency_ghz

    def mismatch(delta):
        return (
            transition_shape(r1.n_upper, 1, delta)
            / transition_shape(r2.n_upper, 1, delta)
            - ratio
        )

    lo, hi = DELTA_BRACKET
    f_lo, f_hi = mismatch(lo), mismatch(hi)
    if f_lo == 0.0:
        delta = lo
    elif f_hi == 0.0:
        delta = hi
    elif f_lo * f_hi > 0.0:
        raise FitDomainError(
            f"no quantum defect in [{lo}, {hi}] reproduces the frequency ratio {ratio:.6f}"
        )
    else:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            f_mid = mismatch(mid)
            if f_mid == 0.0:
                lo = hi = mid
                break
            if f_lo * f_mid < 0.0:
                hi = mid
            else:
                lo, f_lo = mid, f_mid
            if hi - lo < 1e-16:
                break
        delta = 0.5 * (lo + hi)
    e0 = r1.frequency_ghz / transition_shape(r1.n_upper, 1, delta)
    return _result(records, e0, delta)


def fit_least_squares(data, init=None, max_iter=200, step_tol=1e-10):
    """Weighted Gauss-Newton fit of the exact transition formula.

    Analytic partials: dDelta/dE0 = Delta/E0 and
    dDelta/ddelta = E0 [2/(n_lo-delta)^3 - 2/(n_hi-delta)^3].
    Convergence: scaled step norm below ``step_tol``.
    """
    records = data.merged()
    if len(records) < 2:
        raise FitDomainError(f"least squares needs >= 2 distinct lines, got {len(records)}")
    freqs = np.array([r.frequency_ghz for r in records])
    sqw = np.sqrt(np.array([r.weight for r in records]))
    if init is not None:
        e0, delta = init
    else:
        delta = 0.0
        shapes0 = predicted(records, 1.0, 0.0)
        e0 = float((sqw**2 * freqs * shapes0).sum() / (sqw**2 * shapes0**2).sum())
    e0_scale = max(abs(e0), 1e-30)
    for _ in range(max_iter):
        model_f = predicted(records, e0, delta)
        resid = freqs - model_f
        jac = np.column_stack([
            model_f / e0,
            np.array([
                e0 * (2.0 / (r.n_lower - delta) ** 3 - 2.0 / (r.n_upper - delta) ** 3)
                for r in records
            ]),
        ])
        step, *_ = np.linalg.lstsq(sqw[:, None] * jac, sqw * resid, rcond=None)
        scale = 1.0
        while not -0.5 < delta + scale * step[1] < 0.95 and scale > 1e-8:
            scale *= 0.5
        e0 += scale * step[0]
        delta += scale * step[1]
        if math.hypot(step[0] / e0_scale, step[1]) < step_tol:
            delta = min(max(delta, 0.0), 1.0 - 1e-12)
            return _result(records, e0, delta)
    raise ConvergenceError(
        f"Gauss-Newton did not converge in {max_iter} iterations",
        last=_result(records, e0, min(max(delta, 0.0), 1.0 - 1e-12)),
    )


def generate_transitions(e0, delta, upper_levels, n_lower=1, weight=1.0):
    """Synthetic exact lines for round-trip fitting tests and examples."""
    if not 0.0 <= delta < 1.0:
        raise ParameterDomainError(f"delta must lie in [0, 1), got {delta}")
    return TransitionSet(tuple(
        TransitionRecord(n, n_lower, e0 * transition_shape(n, n_lower, delta), weight)
        for n in upper_levels
    ))
