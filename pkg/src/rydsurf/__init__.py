"""Quantum-defect model of electrons bound above a liquid-helium surface.

Analytic spectra, wavefunctions and matrix elements of the one-dimensional
Rydberg atom with a quantum defect, spectroscopic fitting of (E0, delta), an
isospectral-potential construction, and independent numerical oracles
(finite-difference eigensolver, adaptive quadrature) for cross-verification.
"""

from .errors import (
    AccuracyError,
    ConvergenceError,
    FitDomainError,
    InputError,
    NoBindingError,
    NumericError,
    ParameterDomainError,
    RydSurfError,
    SingularFamilyError,
)
from .fit import (
    FitResult,
    TransitionRecord,
    TransitionSet,
    asymptotic_shift,
    fit_least_squares,
    fit_two_point,
    generate_transitions,
    predicted,
)
from .isospectral import (
    IsospectralFamily,
    chi,
    chi_grid,
    chi_ground,
    chi_ground_shape,
    ground_metadata,
    kernel,
    v2,
    v2_integral,
    validate_family,
)
from .matelem import MatrixElementSpec, dipole_ground, expectation_x, moment
from .model import (
    DefectModel,
    PhysicalSetup,
    StateSpec,
    coupling_from_epsilon,
    defect_expansion,
    derive_scales,
    e0_mev,
    energy,
    potential,
    reduced_eigenvalue,
    reduced_potential,
    transition,
    transition_shape,
    wavefunction,
)
from .oracle import (
    EigenResult,
    GridSpec,
    integrate,
    rayleigh_residual,
    solve_bound_states,
    solve_bound_states_richardson,
)
from .specfun import (
    LaguerreParams,
    gamma_fn,
    gamma_upper,
    gamma_upper_grid,
    gen_binomial,
    laguerre,
    laguerre_connection_check,
    laguerre_series,
    log_gamma,
)

__version__ = "0.1.0"
