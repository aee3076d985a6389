"""
Unit tests for the Riesz-Dunford functional calculus and Richardson derivatives.
"""

import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import linalg

# Add the project root to the path so we can import our modules
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from funcalc.contour import Contour, build_log_contour, validate_contour
from funcalc.derivative import default_step, richardson_derivative, stencil
from funcalc.dunford import (
    dunford_integral, frechet_log, log_contour, op_function, op_log, principal_log
)
from linops.dense import mat_exp
from linops.spectra import spectral_enclosure
from utils.errors import (
    EvaluationFailed, InvalidContour, NoConvergence, OriginEnclosed, SpectrumHitsBranchCut,
    StepUnderflow
)
from utils.helpers import relative_error


def _diagonalizable(seed: int, n: int):
    """P diag(lam) P^-1 with lam near 3 and a well-conditioned P."""
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    p = q @ np.diag(rng.uniform(1.0, 2.0, n))
    lam = 3 + 0.9 * np.exp(2j * np.pi * rng.uniform(0, 1, n)) * np.sqrt(rng.uniform(0, 1, n))
    p_inv = np.linalg.inv(p)
    return p @ np.diag(lam) @ p_inv, p @ np.diag(np.log(lam)) @ p_inv


class TestContour:
    """Contour construction and certification."""

    def test_weights_close_the_path(self):
        c = Contour(2.0, 1.0, 64)
        assert c.closed_path_residual() < 1e-13

    def test_rejects_bad_node_count(self):
        with pytest.raises(InvalidContour):
            Contour(2.0, 1.0, 48)

    def test_rejects_non_positive_radius(self):
        with pytest.raises(InvalidContour):
            Contour(2.0, 0.0)

    def test_doubling_keeps_nodes(self):
        c = Contour(2.0, 1.0, 16)
        doubled = c.doubled().nodes
        for nodes in (c.nodes, c.companion().nodes):
            gaps = np.abs(nodes[:, None] - doubled[None, :]).min(axis=1)
            assert gaps.max() < 1e-12

    def test_log_contour_refuses_origin(self):
        with pytest.raises(OriginEnclosed):
            build_log_contour(spectral_enclosure(np.diag([-1.0, 1.0])))

    def test_log_contour_refuses_negative_axis(self):
        with pytest.raises(SpectrumHitsBranchCut):
            build_log_contour(spectral_enclosure(np.diag([-3.0, -2.0])))

    def test_validate_counts_every_eigenvalue(self):
        a = np.diag([2.0, 3.0, 4.0])
        validity = validate_contour(a, log_contour(a))
        assert validity.valid_for_log
        assert validity.eigencount == 3

    def test_validate_refines_a_coarse_rule(self):
        a = np.diag([2.0, 4.0])
        c = log_contour(a)
        validity = validate_contour(a, c)
        assert validity.encloses_spectrum
        assert validity.node_count > c.node_count
        assert validity.integrality_defect < 1e-6

    def test_validate_detects_missed_eigenvalue(self):
        a = np.diag([2.0, 10.0])
        validity = validate_contour(a, Contour(2.0, 1.0))
        assert not validity.encloses_spectrum
        assert validity.eigencount == 1


class TestOpLog:
    """Principal logarithm by contour integral."""

    def test_principal_log_branch(self):
        assert principal_log(-1).imag == pytest.approx(np.pi)

    def test_diagonal(self):
        a = np.diag([1.0, 2.0, 5.0])
        assert np.allclose(op_log(a), np.diag(np.log([1.0, 2.0, 5.0])), atol=1e-11)

    def test_matches_scipy_logm(self):
        a = np.array([[3.0, 1.0], [0.5, 2.0]])
        assert relative_error(op_log(a), linalg.logm(a)) < 1e-10

    def test_jordan_block(self):
        a = np.array([[2.0, 1.0], [0.0, 2.0]])
        expected = np.array([[np.log(2.0), 0.5], [0.0, np.log(2.0)]])
        assert np.allclose(op_log(a), expected, atol=1e-10)

    def test_well_separated_spectrum(self):
        assert np.allclose(op_log(np.diag([2.0, 4.0])), np.diag(np.log([2.0, 4.0])), atol=1e-11)

    def test_quadrature_converges_geometrically(self):
        a = np.diag([2.0, 4.0])
        c = log_contour(a)
        expected = np.diag(np.log([2.0, 4.0]))
        errors = [
            relative_error(dunford_integral(principal_log, a, Contour(c.center, c.radius, n)), expected)
            for n in (16, 32, 64, 128)
        ]
        assert all(fine < 0.1 * coarse for coarse, fine in zip(errors, errors[1:]))

    def test_negative_spectrum_raises(self):
        with pytest.raises(SpectrumHitsBranchCut):
            op_log(np.diag([-2.0, -3.0]))

    def test_tiny_node_cap_raises(self):
        a, _ = _diagonalizable(3, 6)
        with pytest.raises(NoConvergence):
            op_log(a, node_cap=64)

    @given(st.integers(min_value=0, max_value=10_000), st.sampled_from([2, 4, 8]))
    @settings(max_examples=15, deadline=None)
    def test_matches_eigen_logarithm(self, seed, n):
        a, eigenlog = _diagonalizable(seed, n)
        log_a = op_log(a)
        assert relative_error(log_a, eigenlog) < 1e-9
        assert relative_error(mat_exp(log_a), a) < 1e-9


class TestDunfordIntegral:
    """Fixed-rule and adaptive integrals of other functions."""

    def test_identity_function_returns_matrix(self):
        a = np.array([[3.0, 1.0], [0.0, 2.5]])
        result = dunford_integral(lambda z: z, a, Contour(2.75, 2.0, 64))
        assert np.allclose(result, a, atol=1e-12)

    def test_missing_eigenvalue_raises(self):
        with pytest.raises(InvalidContour):
            dunford_integral(lambda z: 1.0, np.diag([2.0, 10.0]), Contour(2.0, 1.0))

    def test_exponential_matches_expm(self):
        a = np.array([[0.0, -1.0], [1.0, 0.0]])
        result = op_function(np.exp, a, Contour(0.0, 2.0))
        assert np.allclose(result, mat_exp(a), atol=1e-11)


class TestFrechetLog:
    """Directional derivative of Log."""

    def test_commuting_direction(self):
        a = np.diag([2.0, 3.0])
        e = np.diag([1.0, 1.0])
        assert np.allclose(frechet_log(a, e), np.diag([0.5, 1 / 3]), atol=1e-11)

    def test_matches_finite_difference(self):
        a = np.array([[3.0, 1.0], [0.5, 2.0]])
        e = np.array([[0.0, 1.0], [1.0, 0.0]])
        estimate = richardson_derivative(lambda x: op_log(a + x * e), 0.0)
        assert relative_error(frechet_log(a, e), estimate.value) < 1e-7


class TestRichardson:
    """Extrapolated central differences."""

    def test_polynomial_derivative(self):
        estimate = richardson_derivative(lambda x: x ** 5, 1.0)
        assert estimate.value == pytest.approx(5.0, rel=1e-10)

    def test_matrix_valued(self):
        b = np.array([[0.0, -1.0], [1.0, 0.0]])
        estimate = richardson_derivative(lambda x: mat_exp(x * b), 1.0)
        assert np.allclose(estimate.value, b @ mat_exp(b), atol=1e-10)

    def test_default_step_scales_with_t(self):
        assert default_step(10.0) == pytest.approx(10 * default_step(0.5))

    def test_stencil_has_six_points(self):
        assert len(stencil(1.0, 1e-3)) == 6

    def test_step_underflow(self):
        with pytest.raises(StepUnderflow):
            richardson_derivative(np.sin, 0.0, h0=1e-12)

    def test_failing_evaluation_is_wrapped(self):
        def g(x):
            if x > 1.0:
                raise RuntimeError("outside domain")
            return x

        with pytest.raises(EvaluationFailed):
            richardson_derivative(g, 1.0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
