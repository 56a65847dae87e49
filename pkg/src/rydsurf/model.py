"""Physical constants, unit conversions, the quantum-defect spectrum, and the
exact analytic bound-state wavefunctions.

Internal computations use reduced units: lengths in x0 = b0/2 and energies in
units of 4*E0, in which the Hamiltonian reads
-d^2/du^2 - 1/u + (delta^2 - delta)/u^2 with eigenvalues -1/(4 n*^2).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NoBindingError, ParameterDomainError
from .specfun import _laguerre_rec

#: CODATA-vintage reference constants (configuration defaults).
RYDBERG_EV = 13.605693122994
BOHR_RADIUS_ANGSTROM = 0.529177210903
#: Frequency of a 1 meV photon, GHz (1e-3 eV / h).
GHZ_PER_MEV = 241.798924208

HELIUM_EPSILON = 1.05723


@dataclass(frozen=True)
class PhysicalSetup:
    """Dielectric constant plus reference constants for deriving all scales."""

    epsilon: float = HELIUM_EPSILON
    rydberg_ev: float = RYDBERG_EV
    bohr_radius_angstrom: float = BOHR_RADIUS_ANGSTROM
    ghz_per_mev: float = GHZ_PER_MEV

    def __post_init__(self):
        if self.epsilon <= 1.0:
            raise NoBindingError(
                f"epsilon must exceed 1 for an attractive image charge, got {self.epsilon}"
            )


def coupling_from_epsilon(setup):
    """Image-charge coupling Z = (eps - 1) / (4 (eps + 1)), in (0, 1/4)."""
    eps = setup.epsilon
    return (eps - 1.0) / (4.0 * (eps + 1.0))


@dataclass(frozen=True)
class DefectModel:
    """The (E0, delta) pair defining the quantum-defect spectrum.

    e0_ghz is the surface Rydberg scale in GHz; x0_angstrom = b0/2 carries the
    physical length scale (1.0 means 'work in units of x0').
    """

    e0_ghz: float
    delta: float = 0.0
    x0_angstrom: float = 1.0

    def __post_init__(self):
        if self.e0_ghz <= 0.0:
            raise ParameterDomainError(f"e0_ghz must be positive, got {self.e0_ghz}")
        if not 0.0 <= self.delta < 1.0:
            raise ParameterDomainError(f"delta must lie in [0, 1), got {self.delta}")
        if self.x0_angstrom <= 0.0:
            raise ParameterDomainError(f"x0_angstrom must be positive, got {self.x0_angstrom}")

    def n_star(self, n):
        return n - self.delta


def derive_scales(setup, delta=0.0):
    """Derive (E0, x0) from a PhysicalSetup: E0 = Z^2 R_inf, b0 = a0/Z, x0 = b0/2."""
    z = coupling_from_epsilon(setup)
    e0_mev = z * z * setup.rydberg_ev * 1e3
    e0_ghz = e0_mev * setup.ghz_per_mev
    b0 = setup.bohr_radius_angstrom / z
    return DefectModel(e0_ghz=e0_ghz, delta=delta, x0_angstrom=0.5 * b0)


def e0_mev(setup):
    """Surface Rydberg in meV for reporting."""
    z = coupling_from_epsilon(setup)
    return z * z * setup.rydberg_ev * 1e3


@dataclass(frozen=True)
class StateSpec:
    """Principal quantum number n >= 1 bound to its DefectModel."""

    n: int
    model: DefectModel = field(repr=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ParameterDomainError(f"n must be an integer >= 1, got {self.n}")

    @property
    def n_star(self):
        return self.model.n_star(self.n)

    @property
    def norm_constant(self):
        """N_{n*} = [Gamma(n) / (2 n*^2 x0 Gamma(n + 1 - 2 delta))]^(1/2)."""
        n, d = self.n, self.model.delta
        log_ratio = math.lgamma(n) - math.lgamma(n + 1.0 - 2.0 * d)
        return math.exp(0.5 * log_ratio) / math.sqrt(
            2.0 * self.n_star**2 * self.model.x0_angstrom
        )


def energy(state):
    """E_{n*} = -E0 / (n - delta)^2 in GHz."""
    return -state.model.e0_ghz / state.n_star**2


def transition(state_hi, state_lo):
    """Transition frequency |E_lo| - |E_hi| in GHz; requires n_hi > n_lo."""
    if state_hi.n <= state_lo.n:
        raise ParameterDomainError(
            f"transition needs n_hi > n_lo, got {state_hi.n} <= {state_lo.n}"
        )
    return energy(state_hi) - energy(state_lo)


def transition_shape(n_hi, n_lo, delta):
    """Dimensionless transition factor 1/(n_lo-delta)^2 - 1/(n_hi-delta)^2."""
    return 1.0 / (n_lo - delta) ** 2 - 1.0 / (n_hi - delta) ** 2


def defect_expansion(n, model):
    """Balmer term and the first two defect corrections of the n -> 1 line.

    Returns (E0 (1 - 1/n^2), 2 delta E0 (1 - 1/n^3), 3 delta^2 E0 (1 - 1/n^4));
    diagnostic only, the exact formula is used everywhere else.
    """
    if n < 2:
        raise ParameterDomainError(f"expansion needs n >= 2, got {n}")
    e0, d = model.e0_ghz, model.delta
    nf = float(n)
    return (
        e0 * (1.0 - nf**-2),
        2.0 * d * e0 * (1.0 - nf**-3),
        3.0 * d * d * e0 * (1.0 - nf**-4),
    )


def wavefunction(state, x):
    """Analytic bound state psi_{n*}(x) for x >= 0 (units of the model's x0).

    psi = N_{n*} z^(1-delta) exp(-z/2) L_{n-1}^((1-2 delta))(z),
    z = x / (n* x0).
    """
    d = state.model.delta
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0):
        raise ParameterDomainError("wavefunction defined for x >= 0 (hard wall below)")
    z = x_arr / (state.n_star * state.model.x0_angstrom)
    val = (
        state.norm_constant
        * np.power(z, 1.0 - d)
        * np.exp(-z / 2.0)
        * _laguerre_rec(state.n - 1, 1.0 - 2.0 * d, z)
    )
    return float(val) if np.isscalar(x) else val


def reduced_potential(delta, u):
    """-1/u + (delta^2 - delta)/u^2 in units of 4 E0, u = x/x0 > 0."""
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0.0):
        raise ParameterDomainError("potential defined for x > 0 only")
    out = -1.0 / u + (delta * delta - delta) / (u * u)
    return float(out) if out.ndim == 0 else out


def potential(model, x):
    """Defect potential in GHz at physical length x (same units as x0)."""
    u = np.asarray(x, dtype=float) / model.x0_angstrom
    return 4.0 * model.e0_ghz * reduced_potential(model.delta, u)


def reduced_eigenvalue(n, delta):
    """Bound-state energy -1/(4 n*^2) in units of 4 E0."""
    return -1.0 / (4.0 * (n - delta) ** 2)
