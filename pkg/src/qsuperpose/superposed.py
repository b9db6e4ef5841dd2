"""Moments, variances, and squeezing of the superposed light, plus the
output-beam relations.

Everything here follows from the superposed Q function: operator expectations
are antinormally-ordered phase-space averages (whence <a^dag a> =
int Q |alpha|^2 - 1), and the quadrature variance of the superposed pair is
referenced to the variance of a pair of coherent beams (two), not of a single
beam (one).  With that baseline the coherent drive no longer leaks into the
squeezing, and the output light through the mirror inherits the cavity
squeezing unchanged.
"""

import math
from dataclasses import dataclass

import numpy as np

from .combined import MomentSet
from .errors import DomainError
from .params import CavityConfig, ScaledParams, gaussian_form, scale

#: coherent-state quadrature variance of a single beam
SINGLE_BEAM_BASELINE = 1.0
#: quadrature variance of a pair of superposed coherent beams
PAIR_BASELINE = 2.0


def output_pair_baseline(kappa: float) -> float:
    """Quadrature variance of a pair of superposed coherent output beams."""
    return 2.0 * kappa


def superposed_moments(params: ScaledParams) -> MomentSet:
    """Closed-form moments of the superposed light.

    mean_amp = a, mean_sq = a^2 + b/(2(b^2-1)), mean_photon =
    a^2 + b^2/(2(1-b^2)): each is exactly the sum of the coherent-only and
    squeezed-only steady-state moments, with no cross contamination.
    """
    a, b = params.a, params.b
    one_minus_b2 = (1 - b) * (1 + b)  # full precision as b -> 1
    return MomentSet(
        mean_amp=a,
        mean_sq=a**2 - b / (2 * one_minus_b2),
        mean_photon=a**2 + b**2 / (2 * one_minus_b2),
    )


def moments_via_qfunction(
    params: ScaledParams, n: int = 601, extent: float | None = None
) -> MomentSet:
    """Moments by direct quadrature against the superposed Q function.

    Antinormal ordering: mean_photon = int Q |alpha|^2 d^2alpha - 1, while
    <a> and <a^2> carry over unordered.  Serves as an independent check on
    :func:`superposed_moments`; defaults resolve the integrals to ~1e-9.
    """
    form = gaussian_form(params, "superposed")
    if extent is None:
        mean = form.linear / (form.quad - form.squeeze)
        sigma = math.sqrt(1 / (2 * (form.quad - abs(form.squeeze))))
        extent = abs(mean) + 10 * max(1.0, sigma)
    ax = np.linspace(-extent, extent, n)
    dx = ax[1] - ax[0]
    alpha = ax[:, None] + 1j * ax[None, :]
    q = form(alpha)
    w = q * dx * dx
    mean_amp = float((w * alpha.real).sum())
    mean_sq = float((w * (alpha**2).real).sum())
    mean_photon = float((w * (alpha.real**2 + alpha.imag**2)).sum()) - 1.0
    return MomentSet(mean_amp=mean_amp, mean_sq=mean_sq, mean_photon=mean_photon)


def quad_variance_pair(params: ScaledParams) -> tuple[float, float]:
    """Variances of a_+ and a_- for the superposed pair, baseline two.

    Evaluated through the antinormal moment expansion and cross-checked
    against the closed forms 2 -+ b/(1 +- b); both are independent of a, and
    the product (4 - b^2)/(1 - b^2) never drops below four.
    """
    b = params.b
    mom = superposed_moments(params)
    m, s, n = mom.mean_amp, mom.mean_sq, mom.mean_photon
    var_plus = PAIR_BASELINE + 2 * n + 2 * s - 4 * m * m
    var_minus = PAIR_BASELINE + 2 * n - 2 * s
    closed_plus = 2 - b / (1 + b)
    closed_minus = 2 + b / (1 - b)
    # cancellation of near-threshold moments limits the attainable agreement
    tol = 1e-12 * max(1.0, abs(n), abs(s))
    assert abs(var_plus - closed_plus) <= tol and abs(var_minus - closed_minus) <= tol, (
        "moment expansion disagrees with the closed-form pair variance"
    )
    return closed_plus, closed_minus


def quadrature_squeezing(params: ScaledParams) -> float:
    """Fractional squeezing of the plus quadrature below the pair baseline,
    S = (2 - var_plus)/2 = b/(2(1+b)), in [0, 1/4).

    Half the squeezing of the squeezed light alone, and never clamped: a
    numerically negative value would be reported as computed.
    """
    var_plus, _ = quad_variance_pair(params)
    return (PAIR_BASELINE - var_plus) / PAIR_BASELINE


@dataclass(frozen=True)
class SqueezingReport:
    """Cavity and output-light statistics for one configuration.

    The *_out fields are for the traveling beam outside the mirror: photon
    flux kappa * <a^dag a> and variances kappa * (cavity variance), referenced
    to the output pair baseline 2*kappa.  The fractional squeezing is
    identical inside and out.
    """

    kappa: float
    eps1: float
    eps2: float
    a: float
    b: float
    mean_photon: float
    mean_photon_out: float
    var_plus: float
    var_minus: float
    var_plus_out: float
    var_minus_out: float
    squeezing: float
    squeezing_out: float

    def __post_init__(self):
        if self.var_plus * self.var_minus < 4.0 - 1e-12:
            raise DomainError(
                f"pair uncertainty product {self.var_plus * self.var_minus} < 4"
            )
        if self.squeezing_out != self.squeezing:
            raise DomainError("output squeezing must equal cavity squeezing")
        if self.mean_photon_out != self.kappa * self.mean_photon:
            raise DomainError("output photon flux must be kappa * mean_photon")

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "eps1": self.eps1,
            "eps2": self.eps2,
            "a": self.a,
            "b": self.b,
            "mean_photon": self.mean_photon,
            "mean_photon_out": self.mean_photon_out,
            "var_plus": self.var_plus,
            "var_minus": self.var_minus,
            "var_plus_out": self.var_plus_out,
            "var_minus_out": self.var_minus_out,
            "squeezing": self.squeezing,
            "squeezing_out": self.squeezing_out,
        }


def output_report(config: CavityConfig) -> SqueezingReport:
    """Full report for one cavity configuration.

    Output relations are exact identities: photon flux kappa * <a^dag a>,
    variances kappa * (cavity variances), squeezing unchanged.
    """
    p = scale(config)
    mom = superposed_moments(p)
    var_plus, var_minus = quad_variance_pair(p)
    s = quadrature_squeezing(p)
    k = config.kappa
    return SqueezingReport(
        kappa=k,
        eps1=config.eps1,
        eps2=config.eps2,
        a=p.a,
        b=p.b,
        mean_photon=mom.mean_photon,
        mean_photon_out=k * mom.mean_photon,
        var_plus=var_plus,
        var_minus=var_minus,
        var_plus_out=k * var_plus,
        var_minus_out=k * var_minus,
        squeezing=s,
        squeezing_out=s,
    )
