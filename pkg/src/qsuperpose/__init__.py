"""Statistics and squeezing of superposed coherent and squeezed cavity light.

A single cavity mode is driven coherently and pumped subharmonically; the
package computes its photon statistics and quadrature squeezing two ways (a
combined-Hamiltonian treatment and a Q-function superposition), together with
the numerical machinery to cross-validate every closed form: a truncated
Fock-space steady-state oracle, phase-space quadrature, and moment-ODE
integration.
"""

from .combined import (
    MomentSet,
    coherent_term,
    evolve_moments,
    quad_variance_single,
    steady_mean_amp,
    steady_moments_combined,
)
from .errors import (
    DomainError,
    NormalizationWarning,
    NumericsError,
    QuadratureError,
    SolveError,
    StabilityError,
    StepError,
    TruncationError,
    ValidationError,
)
from .fock import (
    DensityMatrix,
    default_truncation,
    expect,
    propagate,
    steady_state,
    superposition_oracle,
)
from .params import (
    CavityConfig,
    GaussianQ,
    ScaledParams,
    gaussian_form,
    scale,
    squeeze_coeffs,
    superposed_norm,
)
from .qfunctions import (
    QGrid,
    QuadratureSpec,
    char_fn_antinormal,
    q_coherent,
    q_from_char_fn,
    q_grid,
    q_squeezed,
    q_superposed,
    superpose_q_numeric,
)
from .superposed import (
    PAIR_BASELINE,
    SINGLE_BEAM_BASELINE,
    SqueezingReport,
    moments_via_qfunction,
    output_pair_baseline,
    output_report,
    quad_variance_pair,
    quadrature_squeezing,
    superposed_moments,
)

__version__ = "0.1.0"

__all__ = [
    "CavityConfig",
    "DensityMatrix",
    "DomainError",
    "GaussianQ",
    "MomentSet",
    "NormalizationWarning",
    "NumericsError",
    "PAIR_BASELINE",
    "QGrid",
    "QuadratureError",
    "QuadratureSpec",
    "ScaledParams",
    "SINGLE_BEAM_BASELINE",
    "SolveError",
    "SqueezingReport",
    "StabilityError",
    "StepError",
    "TruncationError",
    "ValidationError",
    "char_fn_antinormal",
    "coherent_term",
    "default_truncation",
    "evolve_moments",
    "expect",
    "gaussian_form",
    "moments_via_qfunction",
    "output_pair_baseline",
    "output_report",
    "propagate",
    "q_coherent",
    "q_from_char_fn",
    "q_grid",
    "q_squeezed",
    "q_superposed",
    "quad_variance_pair",
    "quad_variance_single",
    "quadrature_squeezing",
    "scale",
    "squeeze_coeffs",
    "steady_mean_amp",
    "steady_moments_combined",
    "steady_state",
    "superpose_q_numeric",
    "superposed_moments",
    "superposed_norm",
    "superposition_oracle",
]
