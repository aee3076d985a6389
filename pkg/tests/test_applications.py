"""
Unit tests for the Cole-Hopf and strip-logarithm applications.
"""

import os
import sys

import numpy as np
import pytest

# Add the project root to the path so we can import our modules
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from applications.cole_hopf import (
    CONVENTIONS, cole_hopf_report, cole_hopf_series, cole_hopf_transform, convention_ratio_defect,
    convention_scale, heat_evolve, heat_residual, positive_heat_profile
)
from applications.grid import (
    GridFunction, grid_points, read_grid_function, spectral_derivative, write_grid_function
)
from applications.strip import select_strip_shift, strip_double_log
from config.settings import TOLERANCES
from families.spectral import differentiation_matrix
from linops.dense import mat_exp
from logrep.params import ShiftParams
from utils.errors import InvalidMatrix, OriginEnclosed, VanishingDenominator

MU, T, N = 0.5, 0.1, 128


@pytest.fixture(scope="module")
def phi0():
    return positive_heat_profile(N, MU, 0.0)


class TestGridFunction:
    """Periodic samples and spectral derivatives."""

    def test_rejects_wrong_length(self):
        with pytest.raises(InvalidMatrix):
            GridFunction(8, 2 * np.pi, np.ones(7))

    def test_rejects_bad_period(self):
        with pytest.raises(InvalidMatrix):
            GridFunction(8, 0.0, np.ones(8))

    def test_values_are_read_only(self):
        f = GridFunction(8, 2 * np.pi, np.ones(8))
        assert not f.values.flags.writeable

    def test_derivative_of_cosine(self):
        f = GridFunction.sample(lambda x: np.cos(2 * x), 32)
        df = spectral_derivative(f)
        assert np.allclose(df.values, -2 * np.sin(2 * f.x), atol=1e-12)
        d2f = spectral_derivative(f, 2)
        assert np.allclose(d2f.values, -4 * np.cos(2 * f.x), atol=1e-11)

    def test_grid_points(self):
        assert np.allclose(grid_points(4, 2.0), [0.0, 0.5, 1.0, 1.5])

    def test_file_roundtrip(self, tmp_path):
        f = GridFunction.sample(np.sin, 16)
        path = tmp_path / "f.json"
        write_grid_function(f, path)
        g = read_grid_function(path)
        assert g.n == 16 and np.array_equal(g.values, f.values)


class TestHeatFlow:
    """Exact periodic heat evolution."""

    def test_matches_closed_form(self, phi0):
        assert np.allclose(heat_evolve(phi0, MU, T).values, positive_heat_profile(N, MU, T).values, atol=1e-13)

    def test_heat_residual_is_small(self, phi0):
        residual = heat_residual(lambda tau: heat_evolve(phi0, MU, tau), MU, T)
        assert residual < 1e-9

    def test_rejects_bad_inputs(self, phi0):
        with pytest.raises(ValueError):
            heat_evolve(phi0, -1.0, T)
        with pytest.raises(ValueError):
            heat_evolve(phi0, MU, -0.1)

    def test_profile_needs_positive_base(self):
        with pytest.raises(ValueError):
            positive_heat_profile(N, MU, 0.0, base=0.5, amplitude=1.0)


class TestColeHopf:
    """A = -2 s phi_x / phi under both conventions."""

    def test_convention_scales(self):
        assert convention_scale(4.0, "paper") == pytest.approx(0.5)
        assert convention_scale(4.0, "root") == pytest.approx(0.5)
        assert convention_scale(4.0, "classical") == pytest.approx(4.0)
        with pytest.raises(ValueError):
            convention_scale(4.0, "other")

    def test_classical_transform(self):
        phi = GridFunction.sample(lambda x: 2 + np.sin(x), 64)
        u = cole_hopf_transform(phi, MU, "classical")
        expected = -2 * MU * np.cos(phi.x) / (2 + np.sin(phi.x))
        assert np.allclose(u.values, expected, atol=1e-12)

    def test_vanishing_denominator(self):
        phi = GridFunction.sample(lambda x: 1 + np.cos(x), 16)
        with pytest.raises(VanishingDenominator):
            cole_hopf_transform(phi, MU)

    @pytest.mark.parametrize("convention", CONVENTIONS)
    def test_identity_residual(self, phi0, convention):
        report = cole_hopf_report(phi0, MU, T, convention)
        assert report.identity_residual < TOLERANCES['cole_hopf_identity']

    def test_classical_solves_burgers(self, phi0):
        report = cole_hopf_report(phi0, MU, T, "classical")
        assert report.burgers_residual < TOLERANCES['burgers_residual']

    def test_conventions_differ_by_constant(self, phi0):
        assert convention_ratio_defect(heat_evolve(phi0, MU, T), MU) < TOLERANCES['convention_ratio']

    def test_series_frame(self, phi0):
        frame = cole_hopf_series(phi0, MU, [0.1, 0.2], "classical")
        assert list(frame.columns) == ["t", "identity_residual", "burgers_residual"]
        assert len(frame) == 2
        assert (frame["burgers_residual"] < TOLERANCES['burgers_residual']).all()


class TestStripLog:
    """Log(Log U) with translation when needed."""

    def test_sectorial_needs_no_shift(self):
        result = strip_double_log(np.diag([np.exp(2.0), np.exp(3.0)]))
        assert not result.translated
        assert np.allclose(result.value, np.diag(np.log([2.0, 3.0])), atol=1e-10)
        assert result.roundtrip_error < TOLERANCES['double_log_roundtrip']

    def test_skew_generator_is_translated(self):
        u = mat_exp(0.1 * differentiation_matrix(8, 2 * np.pi))
        result = strip_double_log(u)
        assert result.translated
        assert result.shift.real > 0
        assert result.roundtrip_error < TOLERANCES['double_log_roundtrip']

    def test_given_shift_is_used(self):
        u = mat_exp(0.1 * differentiation_matrix(8, 2 * np.pi))
        result = strip_double_log(u, ShiftParams(0j, 3.0))
        assert result.shift == 3.0

    def test_shift_selection_clears_origin(self):
        a = np.diag([-1.0, 1.0])
        nu = select_strip_shift(a)
        assert nu.real >= 3.0

    def test_singular_u_has_no_log(self):
        with pytest.raises(OriginEnclosed):
            strip_double_log(np.diag([0.0, 1.0]))

    def test_to_dict(self):
        data = strip_double_log(np.diag([np.exp(2.0), np.exp(3.0)])).to_dict()
        assert data["translated"] is False
        assert data["shift"] == [0.0, 0.0]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
