"""Cavity parameters and the Gaussian phase-space forms they induce.

The system is a single cavity mode, resonantly driven by a coherent field of
amplitude rate ``eps1`` and pumped through a degenerate subharmonic
(parametric) process of amplitude rate ``eps2``, damped at rate ``kappa``
into a vacuum reservoir through a one-sided mirror.  All steady-state
physics depends only on the dimensionless drives

    a = 2*eps1/kappa,    b = 2*eps2/kappa,

and a steady state exists only below threshold, b < 1.  This module owns
those parameter types, the stability checks, and the coefficients (u, v, A)
of the Gaussian Husimi Q functions every other module consumes.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StabilityError

Q_KINDS = ("coherent", "squeezed", "superposed")


@dataclass(frozen=True)
class CavityConfig:
    """Physical rates of the driven cavity.

    Attributes:
        kappa: cavity damping constant (inverse time), > 0.
        eps1: coherent-drive amplitude rate, >= 0.
        eps2: subharmonic pump amplitude rate, >= 0 and < kappa/2.
    """

    kappa: float
    eps1: float = 0.0
    eps2: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.kappa) or self.kappa <= 0:
            raise DomainError(f"kappa must be positive, got {self.kappa}")
        if not np.isfinite(self.eps1) or self.eps1 < 0:
            raise DomainError(f"eps1 must be non-negative, got {self.eps1}")
        if not np.isfinite(self.eps2) or self.eps2 < 0:
            raise DomainError(f"eps2 must be non-negative, got {self.eps2}")
        if self.eps2 >= self.kappa / 2:
            raise StabilityError(
                f"no steady state: eps2={self.eps2} >= kappa/2={self.kappa / 2}"
            )


@dataclass(frozen=True)
class ScaledParams:
    """Dimensionless drive strengths a = 2*eps1/kappa, b = 2*eps2/kappa."""

    a: float
    b: float

    def __post_init__(self):
        if not np.isfinite(self.a) or self.a < 0:
            raise DomainError(f"a must be non-negative, got {self.a}")
        if not np.isfinite(self.b) or self.b < 0:
            raise DomainError(f"b must be non-negative, got {self.b}")
        if self.b >= 1:
            raise StabilityError(f"no steady state: b={self.b} >= 1")


def scale(config: CavityConfig) -> ScaledParams:
    """Reduce physical rates to the dimensionless drives (a, b)."""
    return ScaledParams(2 * config.eps1 / config.kappa, 2 * config.eps2 / config.kappa)


def squeeze_coeffs(params: ScaledParams) -> tuple[float, float]:
    """Gaussian exponent coefficients (u, v) of the squeezed-light Q function.

    Q_squeezed(alpha) = sqrt(u^2 - v^2)/pi * exp(-u|alpha|^2 + v*Re(alpha^2)).

    For b in [0, 1): u in (2/3, 1] and v in (-2/3, 0], with u^2 > v^2, so the
    Gaussian is always normalizable.  v < 0 places the narrow quadrature on
    the real axis.
    """
    b = params.b
    denom = 1 - b * b / 4
    u = (1 - b * b / 2) / denom
    v = -(b / 2) / denom
    return u, v


def superposed_norm(params: ScaledParams) -> float:
    """Normalization constant A of the superposed-light Q function.

    With (u, v) from :func:`squeeze_coeffs`,

        A = sqrt(u^2 - v^2) * exp(a^2 * (v - u)),

    which makes (A/pi) * exp(-u|alpha|^2 + v*Re(alpha^2) + 2a(u-v)Re alpha)
    integrate to one over the phase plane.
    """
    u, v = squeeze_coeffs(params)
    return float(np.sqrt(u * u - v * v) * np.exp(params.a**2 * (v - u)))


@dataclass(frozen=True)
class GaussianQ:
    """Parametric Gaussian Q function on the phase plane.

    Evaluates as

        Q(alpha) = prefactor * exp(-quad*|alpha|^2
                                   + squeeze*(alpha^2 + conj(alpha)^2)/2
                                   + linear*(alpha + conj(alpha)))

    with real coefficients.  ``prefactor`` already includes the 1/pi of the
    normalized form.
    """

    prefactor: float
    quad: float
    squeeze: float
    linear: float

    def __post_init__(self):
        if self.prefactor <= 0:
            raise DomainError(f"prefactor must be positive, got {self.prefactor}")
        if self.quad <= 0:
            raise DomainError(f"quad must be positive, got {self.quad}")
        if self.quad**2 <= self.squeeze**2:
            raise DomainError(
                f"not normalizable: quad^2={self.quad**2} <= squeeze^2={self.squeeze**2}"
            )

    def __call__(self, alpha):
        """Evaluate at a complex point or array of points."""
        alpha = np.asarray(alpha, dtype=complex)
        expo = (
            -self.quad * (alpha.real**2 + alpha.imag**2)
            + self.squeeze * (alpha**2).real
            + 2 * self.linear * alpha.real
        )
        out = self.prefactor * np.exp(expo)
        return float(out) if out.ndim == 0 else out

    @property
    def normalized_prefactor(self) -> float:
        """Prefactor that would make this Gaussian integrate to exactly one."""
        det = self.quad**2 - self.squeeze**2
        return float(
            np.sqrt(det) / np.pi * np.exp(-self.linear**2 / (self.quad - self.squeeze))
        )


def gaussian_form(params: ScaledParams, kind: str) -> GaussianQ:
    """Closed-form Gaussian Q function for one of the three light kinds.

    kind: "coherent" (linear drive only), "squeezed" (pump only), or
    "superposed" (Q-function superposition of both).
    """
    if kind not in Q_KINDS:
        raise DomainError(f"kind must be one of {Q_KINDS}, got {kind!r}")
    a = params.a
    if kind == "coherent":
        return GaussianQ(
            prefactor=float(np.exp(-(a**2)) / np.pi), quad=1.0, squeeze=0.0, linear=a
        )
    u, v = squeeze_coeffs(params)
    if kind == "squeezed":
        return GaussianQ(
            prefactor=float(np.sqrt(u * u - v * v) / np.pi),
            quad=u,
            squeeze=v,
            linear=0.0,
        )
    return GaussianQ(
        prefactor=superposed_norm(params) / np.pi,
        quad=u,
        squeeze=v,
        linear=a * (u - v),
    )
