"""Shared grids and independent quadrature helpers for the test suite.

The helpers here are deliberately primitive (plain trapezoid sums written out
by hand) so they stay independent of the package's own integration code.
"""

import numpy as np
import pytest

from qsuperpose import ScaledParams

# standard drive grid used by the cross-validation tests
A_VALUES = (0.0, 0.3, 0.6)
B_VALUES = (0.0, 0.2, 0.4, 0.8)
GRID_AB = [(a, b) for a in A_VALUES for b in B_VALUES]


def phase_integral(f, extent: float, n: int = 801) -> complex:
    """Trapezoid integral of f(alpha) over the square |Re|,|Im| <= extent."""
    ax = np.linspace(-extent, extent, n)
    h = ax[1] - ax[0]
    w = np.ones(n)
    w[0] = w[-1] = 0.5
    alpha = ax[:, None] + 1j * ax[None, :]
    vals = np.asarray(f(alpha), dtype=complex)
    return complex(np.einsum("i,j,ij->", w, w, vals) * h * h)


@pytest.fixture
def params_ref() -> ScaledParams:
    """The reference drive point used by most worked examples."""
    return ScaledParams(0.6, 0.4)
