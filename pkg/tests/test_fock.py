import numpy as np
import pytest

from qsuperpose import (
    CavityConfig,
    DensityMatrix,
    DomainError,
    ScaledParams,
    SolveError,
    TruncationError,
    default_truncation,
    expect,
    propagate,
    q_coherent,
    q_squeezed,
    char_fn_antinormal,
    quad_variance_single,
    steady_moments_combined,
    steady_state,
    superposed_moments,
    superposition_oracle,
)
from qsuperpose.fock import ladder
from conftest import GRID_AB

REF_CONFIG = CavityConfig(1.0, 0.3, 0.2)
COMBINED_PHOTON_REF = 0.27891156462585037

HUSIMI_POINTS = [
    complex(re, im)
    for re in np.linspace(-1.0, 1.4, 5)
    for im in np.linspace(-1.2, 1.2, 5)
]


class TestOperators:
    def test_ladder_convention(self):
        am = ladder(4)
        want = np.zeros((4, 4))
        want[0, 1] = 1.0
        want[1, 2] = np.sqrt(2.0)
        want[2, 3] = np.sqrt(3.0)
        np.testing.assert_allclose(am, want)

    def test_commutator(self):
        am = ladder(30)
        comm = am @ am.T - am.T @ am
        # exact identity except in the truncation corner
        np.testing.assert_allclose(comm[:29, :29], np.eye(29)[:29, :29], atol=1e-12)


class TestSteadyState:
    def test_undriven_cavity_is_vacuum(self):
        rho = steady_state(CavityConfig(1.0, 0.0, 0.0), trunc=12)
        want = np.zeros((12, 12))
        want[0, 0] = 1.0
        np.testing.assert_allclose(rho.elements, want, atol=1e-12)

    def test_coherent_self_check(self):
        # pump off: the steady state is the coherent state with amplitude a
        rho = steady_state(CavityConfig(1.0, 0.3, 0.0), trunc=30)
        assert expect(rho, "a") == pytest.approx(0.6, abs=1e-8)
        assert expect(rho, "adag_a") == pytest.approx(0.36, abs=1e-8)
        assert expect(rho, "a2") == pytest.approx(0.36, abs=1e-8)

    def test_combined_closed_form_cross_validation(self):
        rho = steady_state(REF_CONFIG, trunc=40)
        assert expect(rho, "adag_a") == pytest.approx(
            COMBINED_PHOTON_REF, rel=1e-6
        )
        closed = steady_moments_combined(ScaledParams(0.6, 0.4))
        assert expect(rho, "a").real == pytest.approx(closed.mean_amp, abs=1e-8)
        assert expect(rho, "a2").real == pytest.approx(closed.mean_sq, abs=1e-8)

    def test_truncation_doubling(self):
        lo = steady_state(REF_CONFIG, trunc=40)
        hi = steady_state(REF_CONFIG, trunc=80)
        for which in ("a", "a2", "adag_a"):
            assert abs(expect(lo, which) - expect(hi, which)) < 1e-8

    @pytest.mark.parametrize("a,b", GRID_AB)
    def test_oracle_equivalence_over_drive_grid(self, a, b):
        closed = steady_moments_combined(ScaledParams(a, b))
        rho = steady_state(CavityConfig(1.0, a / 2, b / 2))
        assert expect(rho, "a").real == pytest.approx(closed.mean_amp, abs=1e-6)
        assert expect(rho, "a2").real == pytest.approx(closed.mean_sq, abs=1e-6)
        assert expect(rho, "adag_a") == pytest.approx(closed.mean_photon, abs=1e-6)

    def test_solver_paths_agree(self):
        dense = steady_state(REF_CONFIG, trunc=40, method="dense")
        sparse = steady_state(REF_CONFIG, trunc=40, method="sparse")
        prop = steady_state(CavityConfig(1.0, 0.3, 0.1), trunc=16, method="propagate")
        direct = steady_state(CavityConfig(1.0, 0.3, 0.1), trunc=16, method="dense")
        np.testing.assert_allclose(dense.elements, sparse.elements, atol=1e-10)
        for which in ("a", "a2", "adag_a"):
            assert abs(expect(prop, which) - expect(direct, which)) < 1e-9

    def test_tiny_truncation_rejected(self):
        with pytest.raises(DomainError):
            steady_state(REF_CONFIG, trunc=4)
        with pytest.raises(DomainError):
            steady_state(REF_CONFIG, trunc=40, method="magic")

    def test_elements_are_immutable(self):
        rho = steady_state(REF_CONFIG, trunc=40)
        with pytest.raises(ValueError):
            rho.elements[0, 0] = 0.5


class TestDefaultTruncation:
    def test_moderate_drive(self):
        assert default_truncation(REF_CONFIG) == 40

    def test_scales_near_threshold(self):
        # b = 0.85: ceil(40 / (1 - 0.7225)) = 145
        assert default_truncation(CavityConfig(1.0, 0.0, 0.425)) == 145

    def test_cap_exceeded(self):
        with pytest.raises(TruncationError):
            default_truncation(CavityConfig(1.0, 0.0, 0.45))  # b = 0.9 -> 211


class TestDensityMatrixValidation:
    def test_non_hermitian_rejected(self):
        bad = np.zeros((8, 8), dtype=complex)
        bad[0, 0] = 1.0
        bad[0, 1] = 0.1
        with pytest.raises(SolveError):
            DensityMatrix(8, bad)

    def test_bad_trace_rejected(self):
        bad = np.zeros((8, 8), dtype=complex)
        bad[0, 0] = 0.9
        with pytest.raises(SolveError):
            DensityMatrix(8, bad)

    def test_negative_eigenvalue_rejected(self):
        bad = np.zeros((8, 8), dtype=complex)
        bad[0, 0] = 1.5
        bad[1, 1] = -0.5
        with pytest.raises(SolveError):
            DensityMatrix(8, bad)

    def test_tail_mass_rejected(self):
        bad = np.zeros((10, 10), dtype=complex)
        bad[0, 0] = 0.5
        bad[9, 9] = 0.5
        with pytest.raises(TruncationError):
            DensityMatrix(10, bad)

    def test_wrong_shape_rejected(self):
        with pytest.raises(DomainError):
            DensityMatrix(8, np.eye(4, dtype=complex))


class TestExpectations:
    def test_vacuum_values(self):
        rho = steady_state(CavityConfig(1.0, 0.0, 0.0), trunc=12)
        assert expect(rho, "adag_a") == pytest.approx(0.0, abs=1e-12)
        assert expect(rho, "quad_var_plus") == pytest.approx(1.0, abs=1e-12)
        assert expect(rho, "quad_var_minus") == pytest.approx(1.0, abs=1e-12)

    def test_squeezed_variances(self):
        rho = steady_state(CavityConfig(1.0, 0.0, 0.2), trunc=40)
        vp, vm = quad_variance_single(ScaledParams(0.0, 0.4))
        assert expect(rho, "quad_var_plus") == pytest.approx(vp, abs=1e-6)
        assert expect(rho, "quad_var_minus") == pytest.approx(vm, abs=1e-6)

    def test_husimi_matches_coherent_q(self):
        rho = steady_state(CavityConfig(1.0, 0.3, 0.0), trunc=40)
        p = ScaledParams(0.6, 0.0)
        for alpha in HUSIMI_POINTS:
            assert expect(rho, "husimi", alpha) == pytest.approx(
                q_coherent(alpha, p), abs=1e-6
            )

    def test_husimi_matches_squeezed_q(self):
        rho = steady_state(CavityConfig(1.0, 0.0, 0.2), trunc=40)
        p = ScaledParams(0.0, 0.4)
        for alpha in HUSIMI_POINTS:
            assert expect(rho, "husimi", alpha) == pytest.approx(
                q_squeezed(alpha, p), abs=1e-6
            )

    @pytest.mark.parametrize("z", (0.5 + 0j, 0.5j, 0.3 - 0.4j))
    def test_char_fn_matches_closed_forms(self, z):
        coh = steady_state(CavityConfig(1.0, 0.3, 0.0), trunc=40)
        sqz = steady_state(CavityConfig(1.0, 0.0, 0.2), trunc=40)
        want_coh = char_fn_antinormal(z, ScaledParams(0.6, 0.0), "coherent")
        want_sqz = char_fn_antinormal(z, ScaledParams(0.0, 0.4), "squeezed")
        assert expect(coh, "char_fn", z) == pytest.approx(want_coh, abs=1e-6)
        assert expect(sqz, "char_fn", z) == pytest.approx(want_sqz, abs=1e-6)

    def test_husimi_amplitude_beyond_truncation(self):
        rho = steady_state(CavityConfig(1.0, 0.0, 0.0), trunc=12)
        with pytest.raises(TruncationError):
            expect(rho, "husimi", 8.0 + 0j)

    def test_argument_required(self):
        rho = steady_state(CavityConfig(1.0, 0.0, 0.0), trunc=12)
        with pytest.raises(DomainError):
            expect(rho, "char_fn")
        with pytest.raises(DomainError):
            expect(rho, "hussimi")


class TestPropagation:
    @pytest.mark.parametrize("kt", (0.5, 1.0, 2.0, 4.0))
    def test_transient_mean_amplitude(self, kt):
        # pump off: <a>(t) = a (1 - e^{-kappa t / 2})
        rho = propagate(CavityConfig(1.0, 0.3, 0.0), kt, trunc=24)
        want = 0.6 * (1 - np.exp(-kt / 2))
        assert expect(rho, "a").real == pytest.approx(want, abs=1e-6)

    def test_zero_time_is_vacuum(self):
        rho = propagate(REF_CONFIG, 0.0, trunc=12)
        assert rho.elements[0, 0] == pytest.approx(1.0, abs=1e-14)

    def test_long_time_matches_steady_state(self):
        rho = propagate(REF_CONFIG, 40.0, trunc=24)
        direct = steady_state(REF_CONFIG, trunc=24)
        for which in ("a", "a2", "adag_a"):
            assert abs(expect(rho, which) - expect(direct, which)) < 1e-8


class TestSuperpositionOracle:
    def test_vacuum(self):
        mom = superposition_oracle(CavityConfig(1.0, 0.0, 0.0), trunc=12)
        assert mom.mean_amp == pytest.approx(0.0, abs=1e-12)
        assert mom.mean_photon == pytest.approx(0.0, abs=1e-12)

    def test_matches_closed_form(self):
        mom = superposition_oracle(REF_CONFIG)
        want = superposed_moments(ScaledParams(0.6, 0.4))
        assert mom.mean_amp == pytest.approx(want.mean_amp, abs=1e-6)
        assert mom.mean_sq == pytest.approx(want.mean_sq, abs=1e-6)
        assert mom.mean_photon == pytest.approx(want.mean_photon, abs=1e-6)

    def test_pump_off_reduces_to_coherent_beam(self):
        mom = superposition_oracle(CavityConfig(1.0, 0.3, 0.0), trunc=30)
        assert mom.mean_amp == pytest.approx(0.6, abs=1e-8)
        assert mom.mean_photon == pytest.approx(0.36, abs=1e-8)
