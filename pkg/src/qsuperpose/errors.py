"""Exception types shared across the package.

Two families: ``ValidationError`` covers bad inputs (rejected before any
numerics run), ``NumericsError`` covers failures of the numerical machinery
itself.  The CLI maps them to exit codes 2 and 3 respectively.
"""


class ValidationError(ValueError):
    """Invalid input: parameters outside their physical or numerical domain."""


class DomainError(ValidationError):
    """A parameter violates a basic domain constraint (sign, range, size)."""


class StabilityError(ValidationError):
    """Pump too strong for a steady state: requires eps2 < kappa/2 (b < 1)."""


class StepError(ValidationError):
    """Bad time-stepping request (non-positive step, negative time) or a
    diverging fixed-step integration."""


class NumericsError(RuntimeError):
    """A numerical procedure failed to meet its own quality checks."""


class QuadratureError(NumericsError):
    """The integrand is not negligible at the quadrature box boundary, so the
    truncated integral cannot be trusted."""


class TruncationError(NumericsError):
    """The Fock-space cutoff is too small for the requested state or
    expectation value."""


class SolveError(NumericsError):
    """The steady-state solve produced no acceptable density matrix."""


class NormalizationWarning(UserWarning):
    """A discretized Q function deviates from unit normalization by more than
    the advertised tolerance."""
