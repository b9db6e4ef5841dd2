"""Moments of the cavity light when both drives act through one Hamiltonian.

This is the conventional treatment: add the coherent-drive and subharmonic
Hamiltonians, write the damped operator equation of motion, and close the
first and second moment equations.  The steady state then mixes the two
drives: the coherent contribution to the photon number picks up a spurious
dependence on the pump (see :func:`coherent_term`), and the quadrature
variance loses the coherent contribution entirely.  The module reproduces
that procedure faithfully so it can be contrasted with the Q-function
superposition of :mod:`qsuperpose.superposed`.

Times are measured in units of 1/kappa throughout (tau = kappa * t).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StepError
from .params import ScaledParams

#: default dimensionless integration step (in units of 1/kappa)
DEFAULT_DT = 0.01


@dataclass(frozen=True)
class MomentSet:
    """First and second moments of the cavity mode.

    Attributes:
        mean_amp: <a> (= <a^dag>, real for real drives).
        mean_sq: <a^2> (= <a^dag^2>, real here).
        mean_photon: <a^dag a>, >= 0.
    """

    mean_amp: float
    mean_sq: float
    mean_photon: float

    def __post_init__(self):
        # tolerate quadrature-level noise but reject genuinely negative values
        if self.mean_photon < -1e-9:
            raise DomainError(f"mean photon number negative: {self.mean_photon}")


def steady_mean_amp(params: ScaledParams) -> float:
    """Steady-state <a> = a/(1+b)."""
    return params.a / (1 + params.b)


def coherent_term(params: ScaledParams) -> float:
    """The coherent-drive part a^2/(1+b)^2 of the combined photon number.

    Diagnostic: for b > 0 this differs from the pump-free value a^2, i.e. in
    the combined treatment the pump alters the coherent light's own photon
    number, which has no physical justification.
    """
    return (params.a / (1 + params.b)) ** 2


def steady_moments_combined(params: ScaledParams) -> MomentSet:
    """Closed-form steady-state moments of the combined treatment."""
    a, b = params.a, params.b
    # (1-b)(1+b) keeps full relative precision in the threshold-divergent
    # denominator 1-b^2 as b -> 1
    one_minus_b2 = (1 - b) * (1 + b)
    mean_amp = a / (1 + b)
    mean_sq = a**2 / (1 + b) ** 2 - b / (2 * one_minus_b2)
    mean_photon = a**2 / (1 + b) ** 2 + b**2 / (2 * one_minus_b2)
    return MomentSet(mean_amp, mean_sq, mean_photon)


def _moment_system(params: ScaledParams):
    """Linear system dy/dtau = M y + c for y = (<a>, <a^dag>, <a^2>,
    <a^dag^2>, <a^dag a>), in units of 1/kappa."""
    a, b = params.a, params.b
    m = np.array(
        [
            [-0.5, -b / 2, 0.0, 0.0, 0.0],
            [-b / 2, -0.5, 0.0, 0.0, 0.0],
            [a, 0.0, -1.0, 0.0, -b],
            [0.0, a, 0.0, -1.0, -b],
            [a / 2, a / 2, -b / 2, -b / 2, -1.0],
        ]
    )
    c = np.array([a / 2, a / 2, -b / 2, -b / 2, 0.0])
    return m, c


def evolve_moments(params: ScaledParams, t: float, dt: float = DEFAULT_DT) -> MomentSet:
    """Integrate the closed moment equations from vacuum up to time t.

    t and dt are in units of 1/kappa.  Classic fixed-step RK4; the system is
    linear with eigenvalues bounded by kappa(1+b), so the default step is far
    inside the stability region.  <a^dag> and <a^dag^2> are propagated as
    independent components and checked against <a> and <a^2> instead of being
    assumed equal.
    """
    if not np.isfinite(t) or t < 0:
        raise StepError(f"time must be non-negative, got {t}")
    if not np.isfinite(dt) or dt <= 0:
        raise StepError(f"step must be positive, got {dt}")
    m, c = _moment_system(params)
    y = np.zeros(5)
    n_full, rem = divmod(t, dt)
    steps = [dt] * int(n_full)
    if rem > 1e-15 * max(t, 1.0):
        steps.append(rem)
    for h in steps:
        k1 = m @ y + c
        k2 = m @ (y + 0.5 * h * k1) + c
        k3 = m @ (y + 0.5 * h * k2) + c
        k4 = m @ (y + h * k3) + c
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)) or np.abs(y).max() > 1e12:
            raise StepError(f"moment integration diverged (dt={dt})")
    assert abs(y[1] - y[0]) < 1e-10 and abs(y[3] - y[2]) < 1e-10, (
        "conjugate-moment symmetry broken during integration"
    )
    return MomentSet(mean_amp=float(y[0]), mean_sq=float(y[2]), mean_photon=float(y[4]))


def quad_variance_single(params: ScaledParams) -> tuple[float, float]:
    """Steady-state variances of a_+ = a^dag + a and a_- = i(a^dag - a)
    relative to the single-beam coherent baseline of one.

    Evaluated through the normally-ordered moment expansion and cross-checked
    against the closed forms 1 -+ b/(1 +- b); any disagreement is a bug.  The
    result depends on b only: in this treatment the coherent drive drops out
    of the variance entirely.
    """
    b = params.b
    mom = steady_moments_combined(params)
    m, s, n = mom.mean_amp, mom.mean_sq, mom.mean_photon
    var_plus = 1 + 2 * n + 2 * s - 4 * m * m
    var_minus = 1 + 2 * n - 2 * s
    closed_plus = 1 - b / (1 + b)
    closed_minus = 1 + b / (1 - b)
    # the expansion cancels moments that diverge as b -> 1, so allow the
    # corresponding roundoff on top of the 1e-12 agreement
    tol = 1e-12 * max(1.0, abs(n), abs(s))
    assert abs(var_plus - closed_plus) <= tol and abs(var_minus - closed_minus) <= tol, (
        "moment expansion disagrees with the closed-form variance"
    )
    return closed_plus, closed_minus
