"""Oracle-equivalence checks behind the ``verify`` CLI command.

Each check compares a closed-form result against an independent numerical
path (truncated Fock-space steady state, phase-space quadrature, moment-ODE
integration) and reports its worst deviation.  Everything is deterministic:
fixed grids, fixed summation orders, no sampling.
"""

from dataclasses import dataclass

import numpy as np

from . import fock
from .combined import (
    coherent_term,
    evolve_moments,
    quad_variance_single,
    steady_moments_combined,
)
from .params import CavityConfig, ScaledParams, gaussian_form, scale
from .qfunctions import Q_KINDS, QuadratureSpec, q_from_char_fn, superpose_q_numeric
from .superposed import (
    PAIR_BASELINE,
    moments_via_qfunction,
    output_report,
    quad_variance_pair,
    quadrature_squeezing,
    superposed_moments,
)

#: standard (a, b) grid the cross-validations sweep over
STANDARD_A = (0.0, 0.3, 0.6)
STANDARD_B = (0.0, 0.2, 0.4, 0.8)

#: phase points probed by the kernel and transform checks
KERNEL_POINTS = (0j, 0.5 + 0.2j, -0.3 + 0.4j, 0.25 - 0.35j, 0.1 + 0.6j)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "note": self.note,
        }


def _within(name: str, dev: float, tol: float, note: str = "") -> CheckResult:
    return CheckResult(name, float(dev), tol, bool(dev <= tol), note)


def _norm_quadrature(params: ScaledParams, kind: str) -> float:
    """Discrete integral of the closed-form Q over a generous box."""
    form = gaussian_form(params, kind)
    mean = form.linear / (form.quad - form.squeeze)
    sigma = np.sqrt(1 / (2 * (form.quad - abs(form.squeeze))))
    extent = abs(mean) + 9 * max(1.0, sigma)
    ax = np.linspace(-extent, extent, 801)
    dx = ax[1] - ax[0]
    vals = form(ax[:, None] + 1j * ax[None, :])
    return float(vals.sum() * dx * dx)


def _grid_params(extra: ScaledParams) -> list[ScaledParams]:
    grid = [ScaledParams(a, b) for a in STANDARD_A for b in STANDARD_B]
    if all((p.a, p.b) != (extra.a, extra.b) for p in grid):
        grid.append(extra)
    return grid


def check_combined_vs_lindblad(config: CavityConfig, trunc, tol) -> CheckResult:
    closed = steady_moments_combined(scale(config))
    rho = fock.steady_state(config, trunc)
    dev = max(
        abs(fock.expect(rho, "a") - closed.mean_amp),
        abs(fock.expect(rho, "a2") - closed.mean_sq),
        abs(fock.expect(rho, "adag_a") - closed.mean_photon),
    )
    return _within("combined_moments_vs_lindblad", dev, tol)


def check_squeezed_variance_vs_oracle(config: CavityConfig, trunc, tol) -> CheckResult:
    sq_config = CavityConfig(config.kappa, 0.0, config.eps2)
    p = scale(sq_config)
    vp, vm = quad_variance_single(p)
    rho = fock.steady_state(sq_config, trunc)
    dev = max(
        abs(fock.expect(rho, "quad_var_plus") - vp),
        abs(fock.expect(rho, "quad_var_minus") - vm),
    )
    return _within("squeezed_variance_vs_oracle", dev, tol)


def check_single_uncertainty_product() -> CheckResult:
    bs = np.linspace(0.0, 0.99, 100)
    dev = 0.0
    for b in bs:
        vp, vm = quad_variance_single(ScaledParams(0.0, float(b)))
        dev = max(dev, abs(vp * vm - 1 / (1 - b * b)))
    return _within("single_uncertainty_product", dev, 1e-9)


def check_q_normalization(extra: ScaledParams) -> CheckResult:
    dev = 0.0
    for p in _grid_params(extra):
        for kind in Q_KINDS:
            dev = max(dev, abs(_norm_quadrature(p, kind) - 1.0))
    return _within("q_normalization", dev, 1e-6)


def check_superposition_kernel(params: ScaledParams) -> CheckResult:
    spec = QuadratureSpec()
    form = gaussian_form(params, "superposed")
    dev = 0.0
    for alpha in KERNEL_POINTS:
        closed = form(alpha)
        dev = max(dev, abs(superpose_q_numeric(alpha, params, spec) - closed) / closed)
    return _within("superposition_kernel_4d", dev, spec.rtol, "relative")


def check_charfn_transform(params: ScaledParams) -> CheckResult:
    pts = [
        complex(re, im)
        for re in np.linspace(-1.2, 1.2, 5)
        for im in np.linspace(-1.2, 1.2, 5)
    ]
    dev = 0.0
    for kind in ("coherent", "squeezed"):
        form = gaussian_form(params, kind)
        for alpha in pts:
            dev = max(dev, abs(q_from_char_fn(alpha, params, kind) - form(alpha)))
    return _within("charfn_transform", dev, 1e-4)


def check_superposed_moments_threeway(config: CavityConfig, trunc, tol) -> CheckResult:
    closed = superposed_moments(scale(config))
    quad = moments_via_qfunction(scale(config))
    oracle = fock.superposition_oracle(config, trunc)
    dev = max(
        abs(closed.mean_amp - quad.mean_amp),
        abs(closed.mean_sq - quad.mean_sq),
        abs(closed.mean_photon - quad.mean_photon),
        abs(closed.mean_amp - oracle.mean_amp),
        abs(closed.mean_sq - oracle.mean_sq),
        abs(closed.mean_photon - oracle.mean_photon),
    )
    return _within("superposed_moments_threeway", dev, tol)


def check_pair_variance_quadrature(params: ScaledParams) -> CheckResult:
    mom = moments_via_qfunction(params)
    vp = PAIR_BASELINE + 2 * mom.mean_photon + 2 * mom.mean_sq - 4 * mom.mean_amp**2
    vm = PAIR_BASELINE + 2 * mom.mean_photon - 2 * mom.mean_sq
    closed_plus, closed_minus = quad_variance_pair(params)
    dev = max(abs(vp - closed_plus), abs(vm - closed_minus))
    return _within("pair_variance_quadrature", dev, 1e-6)


def check_halving_identity() -> CheckResult:
    dev = 0.0
    for b in np.linspace(0.0, 0.99, 100):
        p = ScaledParams(0.0, float(b))
        single_plus, _ = quad_variance_single(p)
        dev = max(dev, abs(quadrature_squeezing(p) - 0.5 * (1 - single_plus)))
    return _within("halving_identity", dev, 1e-12)


def check_output_scaling(config: CavityConfig) -> CheckResult:
    p = scale(config)
    dev = 0.0
    for factor in (0.5, 1.0, 2.0):
        k = factor * config.kappa
        rep = output_report(CavityConfig(k, p.a * k / 2, p.b * k / 2))
        dev = max(
            dev,
            abs(rep.mean_photon_out - k * rep.mean_photon),
            abs(rep.squeezing_out - rep.squeezing),
            abs(rep.var_plus_out - k * rep.var_plus),
        )
    return _within("output_scaling_identities", dev, 1e-15)


def check_transient_mean_amp(config: CavityConfig) -> CheckResult:
    p = scale(CavityConfig(config.kappa, config.eps1, 0.0))
    dev = 0.0
    for kt in (0.5, 1.0, 2.0, 4.0):
        got = evolve_moments(p, kt).mean_amp
        dev = max(dev, abs(got - p.a * (1 - np.exp(-kt / 2))))
    return _within("transient_mean_amplitude", dev, 1e-6)


def check_coherent_term_contrast() -> CheckResult:
    # the combined treatment's defect: the pump shifts the coherent light's
    # own photon-number contribution
    with_pump = coherent_term(ScaledParams(0.6, 0.4))
    without = coherent_term(ScaledParams(0.6, 0.0))
    gap = without - with_pump
    return CheckResult(
        "coherent_term_contrast",
        float(gap),
        1e-12,
        bool(gap > 1e-12),
        "gap must exceed tolerance",
    )


def check_truncation_doubling(config: CavityConfig, trunc, tol=1e-8) -> CheckResult:
    dim = trunc if trunc is not None else fock.default_truncation(config)
    lo = fock.steady_state(config, dim)
    hi = fock.steady_state(config, 2 * dim)
    dev = max(
        abs(fock.expect(lo, "a") - fock.expect(hi, "a")),
        abs(fock.expect(lo, "a2") - fock.expect(hi, "a2")),
        abs(fock.expect(lo, "adag_a") - fock.expect(hi, "adag_a")),
    )
    return _within("oracle_truncation_doubling", dev, tol)


def run_verification(
    config: CavityConfig,
    trunc: int | None = None,
    tol: float = 1e-6,
) -> list[CheckResult]:
    """Run every check against the given configuration; deterministic."""
    p = scale(config)
    return [
        check_combined_vs_lindblad(config, trunc, tol),
        check_squeezed_variance_vs_oracle(config, trunc, tol),
        check_single_uncertainty_product(),
        check_q_normalization(p),
        check_superposition_kernel(p),
        check_charfn_transform(p),
        check_superposed_moments_threeway(config, trunc, tol),
        check_pair_variance_quadrature(p),
        check_halving_identity(),
        check_output_scaling(config),
        check_transient_mean_amp(config),
        check_coherent_term_contrast(),
        check_truncation_doubling(config, trunc),
    ]
