"""Exception hierarchy shared by all modules."""


class RydSurfError(Exception):
    """Base class for all library errors."""


class ParameterDomainError(RydSurfError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NoBindingError(ParameterDomainError):
    """Dielectric constant <= 1: the image charge vanishes and nothing binds."""


class InputError(RydSurfError, ValueError):
    """Malformed or inconsistent user-supplied data."""


class FitDomainError(RydSurfError):
    """The fit problem is underdetermined or has no solution in the bracket."""


class ConvergenceError(RydSurfError):
    """An iterative procedure failed to converge.

    Carries the last iterate in ``last`` when available.
    """

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class NumericError(RydSurfError):
    """A numerical routine (quadrature, eigensolver) could not reach its tolerance."""


class AccuracyError(NumericError):
    """A post-hoc accuracy check (mesh refinement) failed."""


class SingularFamilyError(ParameterDomainError):
    """Isospectral family whose denominator Gamma(a, t) - R crosses zero."""
