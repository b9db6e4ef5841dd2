"""Hot numeric kernels: numba-jitted with a pure-numpy fallback.

The only genuinely hot loop in the package is the brute-force superposition
integral: a tensor-product trapezoid sum over a 4-d grid (Re/Im of two
intermediate phase-space variables), ~17M complex exponentials at the default
64 nodes per axis.  The jitted scalar loop is used when numba is importable;
set QSUPERPOSE_NO_NUMBA=1 to force the vectorized numpy fallback.  Both paths
accumulate in a fixed order, so each is deterministic run to run.

``benchmarks/bench_superposition.py`` compares the two paths.
"""

import os

import numpy as np

ENV_FLAG = "QSUPERPOSE_NO_NUMBA"


def numba_disabled_by_env() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


def trapezoid_weights(n: int) -> np.ndarray:
    w = np.ones(n)
    w[0] = w[-1] = 0.5
    return w


def _superposition_sum_loops(x, w, u, v, a, alpha_re, alpha_im):
    # Weighted sum of exp(E) over the 4-d grid beta = x[i]+1j*x[j],
    # gamma = x[k]+1j*x[l], where E is the variable part of the superposition
    # kernel exponent; the alpha-only constant is folded in by the caller.
    # Also tracks max Re(E) overall and on the grid boundary, so the caller
    # can reject a box that truncates a non-negligible integrand.
    alpha = complex(alpha_re, alpha_im)
    ac = alpha.conjugate()
    n = x.shape[0]
    cb = ac - v * alpha  # beta coefficient, minus its (u-1)*conj(gamma) part
    cg = ac - a  # gamma coefficient
    cgc = (1.0 - u) * alpha  # conj(gamma) coefficient
    um1 = u - 1.0
    total = 0.0 + 0.0j
    peak = -1.0e300
    bnd = -1.0e300
    for i in range(n):
        for j in range(n):
            beta = complex(x[i], x[j])
            betac = complex(x[i], -x[j])
            e_b = -betac * beta + a * betac + 0.5 * v * beta * beta + cb * beta
            w_b = w[i] * w[j]
            edge_b = i == 0 or i == n - 1 or j == 0 or j == n - 1
            for k in range(n):
                for l in range(n):
                    gam = complex(x[k], x[l])
                    gamc = complex(x[k], -x[l])
                    e = (
                        e_b
                        - gamc * gam
                        + cg * gam
                        + cgc * gamc
                        + 0.5 * v * gamc * gamc
                        + um1 * gamc * beta
                    )
                    re = e.real
                    if re > peak:
                        peak = re
                    if (
                        edge_b or k == 0 or k == n - 1 or l == 0 or l == n - 1
                    ) and re > bnd:
                        bnd = re
                    total += (w_b * w[k] * w[l]) * np.exp(e)
    return total, peak, bnd


def superposition_sum_numpy(x, w, u, v, a, alpha_re, alpha_im):
    """Pure-numpy fallback: vectorize over Im(beta) and the gamma plane."""
    alpha = complex(alpha_re, alpha_im)
    ac = alpha.conjugate()
    n = x.shape[0]
    cb = ac - v * alpha
    gam = x[:, None] + 1j * x[None, :]
    gamc = gam.conj()
    g_part = (
        -gamc * gam + (ac - a) * gam + (1.0 - u) * alpha * gamc + 0.5 * v * gamc * gamc
    )
    cross = (u - 1.0) * gamc
    wg = w[:, None] * w[None, :]
    edge_g = np.zeros((n, n), dtype=bool)
    edge_g[0, :] = edge_g[-1, :] = edge_g[:, 0] = edge_g[:, -1] = True
    total = 0.0 + 0.0j
    peak = -np.inf
    bnd = -np.inf
    for i in range(n):
        beta = x[i] + 1j * x  # all beta with Re(beta) = x[i]
        betac = beta.conj()
        e_b = -betac * beta + a * betac + 0.5 * v * beta * beta + cb * beta
        expo = (
            e_b[:, None, None]
            + g_part[None, :, :]
            + beta[:, None, None] * cross[None, :, :]
        )
        re = expo.real
        peak = max(peak, re.max())
        if i == 0 or i == n - 1:
            bnd = max(bnd, re.max())
        else:
            bnd = max(bnd, re[0].max(), re[-1].max(), re[1:-1, edge_g].max())
        total += w[i] * np.einsum("j,jkl,kl->", w, np.exp(expo), wg)
    return total, float(peak), float(bnd)


try:
    from numba import njit

    superposition_sum_numba = njit(cache=True)(_superposition_sum_loops)
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    superposition_sum_numba = None
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and not numba_disabled_by_env()

superposition_sum = superposition_sum_numba if USE_NUMBA else superposition_sum_numpy


def backend() -> str:
    """Name of the active kernel backend: 'numba' or 'numpy'."""
    return "numba" if USE_NUMBA else "numpy"
