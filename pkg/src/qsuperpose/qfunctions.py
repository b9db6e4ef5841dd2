"""Husimi Q functions of the coherent, squeezed, and superposed cavity light.

Closed Gaussian forms, the antinormally-ordered characteristic functions they
derive from, and two brute-force cross-checks:

* :func:`q_from_char_fn` rebuilds Q from the characteristic function by a 2-d
  phase-space transform on a real grid,
* :func:`superpose_q_numeric` evaluates the raw 4-d superposition integral
  that composes the coherent and squeezed Q functions into the superposed one.

Conventions: alpha is an ordinary Python complex number, and all phase-space
integrals use d^2alpha = d(Re alpha) d(Im alpha); the 1/pi prefactors only
normalize under that measure.
"""

import csv
import io
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError, NormalizationWarning, QuadratureError
from .params import Q_KINDS, GaussianQ, ScaledParams, gaussian_form, squeeze_coeffs

#: integrand-to-peak ratio above which a quadrature box is rejected
BOUNDARY_RATIO = 1e-12

CHAR_KINDS = ("coherent", "squeezed")


@dataclass(frozen=True)
class QuadratureSpec:
    """Real-grid quadrature settings: half-width and node count per axis.

    The same extent and node count apply to every real dimension of the
    integral (two for the characteristic-function transform, four for the
    superposition kernel).  ``rtol`` is the agreement the caller expects
    against the closed form when the box covers the integrand.
    """

    extent: float = 8.0
    nodes: int = 64
    rtol: float = 1e-3

    def __post_init__(self):
        if not np.isfinite(self.extent) or self.extent <= 0:
            raise DomainError(f"extent must be positive, got {self.extent}")
        if self.nodes < 8:
            raise DomainError(f"need at least 8 nodes per axis, got {self.nodes}")

    def grid(self) -> tuple[np.ndarray, np.ndarray, float]:
        x = np.linspace(-self.extent, self.extent, self.nodes)
        return x, kernels.trapezoid_weights(self.nodes), x[1] - x[0]


def q_coherent(alpha, params: ScaledParams):
    """Q function of the coherently driven cavity at steady state,
    (1/pi) exp(-|alpha|^2 + 2a Re(alpha) - a^2).  Peaks at alpha = a."""
    return gaussian_form(params, "coherent")(alpha)


def q_squeezed(alpha, params: ScaledParams):
    """Q function of the subharmonically pumped cavity at steady state."""
    return gaussian_form(params, "squeezed")(alpha)


def q_superposed(alpha, params: ScaledParams):
    """Q function of the superposed coherent and squeezed light."""
    return gaussian_form(params, "superposed")(alpha)


def _char_gauss_coeffs(params: ScaledParams) -> tuple[float, float]:
    """(a1, a2) of the squeezed characteristic function
    exp(-a1 |z|^2 + a2 (z^2 + conj(z)^2)/2)."""
    b = params.b
    one_minus_b2 = (1 - b) * (1 + b)
    a1 = 1 + b**2 / (2 * one_minus_b2)
    a2 = -b / (2 * one_minus_b2)
    return a1, a2


def char_fn_antinormal(z, params: ScaledParams, kind: str):
    """Steady-state antinormally-ordered characteristic function.

    kind "coherent": exp(-|z|^2 + a(z - conj(z))).
    kind "squeezed": exp(-a1 |z|^2 + a2 (z^2 + conj(z)^2)/2).

    Accepts a complex scalar or array; always returns complex values (the
    coherent form is complex off the real z axis).
    """
    if kind not in CHAR_KINDS:
        raise DomainError(f"kind must be one of {CHAR_KINDS}, got {kind!r}")
    z = np.asarray(z, dtype=complex)
    zz = z.real**2 + z.imag**2
    if kind == "coherent":
        out = np.exp(-zz + params.a * (z - z.conj()))
    else:
        a1, a2 = _char_gauss_coeffs(params)
        out = np.exp(-a1 * zz + a2 * (z**2).real)
    return complex(out) if out.ndim == 0 else out


def q_from_char_fn(
    alpha: complex,
    params: ScaledParams,
    kind: str,
    quad_spec: QuadratureSpec | None = None,
) -> float:
    """Rebuild Q(alpha) from the characteristic function numerically.

    Evaluates (1/pi^2) * integral d^2z phi(z) exp(conj(z) alpha - z conj(alpha))
    by tensor-product trapezoid quadrature on a square box.  The kernel is
    purely oscillatory, so the box only needs to cover the Gaussian decay of
    phi; a box that clips it raises :class:`QuadratureError`.
    """
    spec = quad_spec or QuadratureSpec()
    x, w, h = spec.grid()
    z = x[:, None] + 1j * x[None, :]
    phi = char_fn_antinormal(z, params, kind)
    mag = np.abs(phi)
    edge_max = max(mag[0].max(), mag[-1].max(), mag[:, 0].max(), mag[:, -1].max())
    if edge_max > BOUNDARY_RATIO * mag.max():
        raise QuadratureError(
            f"characteristic function not negligible at the box edge "
            f"(ratio {edge_max / mag.max():.2e}); increase extent"
        )
    osc = np.exp(z.conj() * alpha - z * np.conj(alpha))
    total = np.einsum("i,j,ij->", w, w, phi * osc)
    return float((total * h * h / np.pi**2).real)


def superpose_q_numeric(
    alpha: complex,
    params: ScaledParams,
    quad_spec: QuadratureSpec | None = None,
) -> float:
    """Brute-force superposed Q function via the raw 4-d composition integral.

    The coherent and squeezed Q functions are composed through a Gaussian
    kernel over two intermediate phase-space variables; this evaluates that
    integral directly on a 4-d trapezoid grid (no completion of squares), as
    an independent check on :func:`q_superposed`.  Agreement within
    ``quad_spec.rtol`` is expected once the box extends past the integrand's
    support (~6 standard deviations).
    """
    spec = quad_spec or QuadratureSpec()
    u, v = squeeze_coeffs(params)
    a = params.a
    x, w, h = spec.grid()
    total, peak, bnd = kernels.superposition_sum(
        x, w, u, v, a, float(np.real(alpha)), float(np.imag(alpha))
    )
    if bnd - peak > math.log(BOUNDARY_RATIO):
        raise QuadratureError(
            f"superposition integrand not negligible at the box edge "
            f"(ratio {math.exp(bnd - peak):.2e}); increase extent"
        )
    alpha = complex(alpha)
    const = (
        -abs(alpha) ** 2 + a * alpha - a * a + 0.5 * v * alpha * alpha
    )  # alpha-only part of the exponent
    pref = math.sqrt(u * u - v * v) / np.pi**3
    return float((pref * np.exp(const) * total * h**4).real)


def auto_extent(params: ScaledParams, kind: str) -> float:
    """Grid half-width covering the displaced peak plus six standard
    deviations of the widest Gaussian axis (at least the vacuum width)."""
    g = gaussian_form(params, kind)
    mean = g.linear / (g.quad - g.squeeze)
    sigma = math.sqrt(1 / (2 * (g.quad - abs(g.squeeze))))
    return abs(mean) + 6 * max(1.0, sigma)


@dataclass(frozen=True)
class QGrid:
    """A Q function sampled on a centered square grid.

    values[i, j] = Q(axis[i] + 1j*axis[j]) with axis = linspace(-extent,
    extent, n); dx is the spacing.  ``normalization`` is the discrete
    integral sum(values) * dx**2, which should be 1 for an adequate grid.
    """

    kind: str
    params: ScaledParams
    extent: float
    n: int
    dx: float
    values: np.ndarray
    normalization: float
    form: GaussianQ = field(repr=False)

    def __post_init__(self):
        if self.values.shape != (self.n, self.n):
            raise DomainError(f"values must be {self.n}x{self.n}")
        if np.any(self.values < 0):
            raise DomainError("Q values must be non-negative")

    def axis(self) -> np.ndarray:
        return np.linspace(-self.extent, self.extent, self.n)

    def write_csv(self, fh: io.TextIOBase) -> None:
        """Rows of (re, im, q), row-major over the grid, 9 significant digits."""
        writer = csv.writer(fh)
        writer.writerow(["re", "im", "q"])
        ax = self.axis()
        for i in range(self.n):
            re = f"{ax[i]:.9g}"
            for j in range(self.n):
                writer.writerow([re, f"{ax[j]:.9g}", f"{self.values[i, j]:.9g}"])

    def as_json_dict(self) -> dict:
        """Compact JSON envelope with the values flattened row-major."""
        return {
            "kind": self.kind,
            "params": {
                "a": float(f"{self.params.a:.9g}"),
                "b": float(f"{self.params.b:.9g}"),
            },
            "extent": float(f"{self.extent:.9g}"),
            "n": self.n,
            "dx": float(f"{self.dx:.9g}"),
            "normalization": float(f"{self.normalization:.9g}"),
            "values": [float(f"{v:.9g}") for v in self.values.ravel()],
        }


def q_grid(
    kind: str,
    params: ScaledParams,
    n: int = 128,
    extent: float | None = None,
) -> QGrid:
    """Sample a closed-form Q function on a centered square grid.

    extent=None picks :func:`auto_extent`.  If the discrete normalization
    deviates from one by more than 1e-4 a :class:`NormalizationWarning` is
    issued and the deviation is left visible in ``normalization``.
    """
    if kind not in Q_KINDS:
        raise DomainError(f"kind must be one of {Q_KINDS}, got {kind!r}")
    if int(n) != n or n < 16:
        raise DomainError(f"need n >= 16 grid points per axis, got {n}")
    n = int(n)
    if extent is None:
        extent = auto_extent(params, kind)
    elif extent <= 0:
        raise DomainError(f"extent must be positive, got {extent}")
    form = gaussian_form(params, kind)
    ax = np.linspace(-extent, extent, n)
    alpha = ax[:, None] + 1j * ax[None, :]
    values = form(alpha)
    dx = ax[1] - ax[0]
    norm = float(values.sum() * dx * dx)
    if abs(norm - 1) > 1e-4:
        warnings.warn(
            NormalizationWarning(
                f"discrete Q normalization {norm:.6g} deviates from 1; "
                f"grid (n={n}, extent={extent:.3g}) is too coarse or too small"
            )
        )
    return QGrid(
        kind=kind,
        params=params,
        extent=float(extent),
        n=n,
        dx=float(dx),
        values=values,
        normalization=norm,
        form=form,
    )
