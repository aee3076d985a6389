"""
Unit tests for the dense linear algebra substrate.

Covers validation, solves with their failure modes, the exponential,
spectral enclosures and the matrix file format.
"""

import json
import os
import sys
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add the project root to the path so we can import our modules
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from linops.dense import (
    as_operator, commutator, componentwise_condition, condition_estimate, identity, mat_exp, mat_inv,
    mat_solve, singular_value_ratio
)
from linops.matrix_io import matrix_from_dict, matrix_to_dict, read_matrix, write_matrix
from linops.spectra import gershgorin_disc, spectral_enclosure
from utils.errors import (
    IllConditioned, IllConditionedWarning, InvalidMatrix, MatrixExpOverflow, SingularMatrix
)


class TestAsOperator:
    """Validation and freezing of matrices."""

    def test_returns_read_only_complex(self):
        a = as_operator([[1, 2], [3, 4]])
        assert a.dtype == np.complex128
        assert not a.flags.writeable

    def test_scalar_is_one_by_one(self):
        assert as_operator(2.5).shape == (1, 1)

    def test_rejects_non_square(self):
        with pytest.raises(InvalidMatrix):
            as_operator(np.ones((2, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidMatrix):
            as_operator([[1.0, np.nan], [0.0, 1.0]])

    def test_identity(self):
        assert np.array_equal(identity(3), np.eye(3))


class TestMatSolve:
    """LU solves and their error contract."""

    def test_solves_well_conditioned_system(self):
        a = np.array([[4.0, 1.0], [2.0, 3.0]])
        b = np.array([[1.0], [2.0]])
        x = mat_solve(a, b)
        assert np.allclose(a @ x, b, atol=1e-14)

    def test_zero_matrix_is_singular(self):
        with pytest.raises(SingularMatrix):
            mat_solve(np.zeros((2, 2)), np.eye(2))

    def test_ill_conditioned_raises_when_asked(self):
        a = np.diag([1.0, 1e-17])
        with pytest.raises(IllConditioned):
            mat_solve(a, np.eye(2), on_ill_conditioned="raise")

    def test_ill_conditioned_warns_by_default(self):
        a = np.diag([1.0, 1e-17])
        with pytest.warns(IllConditionedWarning):
            mat_solve(a, np.eye(2))

    def test_ignore_is_silent(self):
        a = np.diag([1.0, 1e-17])
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            x = mat_solve(a, np.eye(2), on_ill_conditioned="ignore")
        assert np.isclose(x[1, 1], 1e17)

    def test_inverse(self):
        a = np.array([[2.0, 1.0], [1.0, 3.0]])
        assert np.allclose(mat_inv(a) @ a, np.eye(2), atol=1e-14)

    def test_condition_estimate_of_diagonal(self):
        assert condition_estimate(np.diag([1.0, 1e-3])) == pytest.approx(1e3, rel=1e-8)


class TestMatExp:
    """Matrix exponential."""

    def test_rotation(self):
        b = np.array([[0.0, -1.0], [1.0, 0.0]])
        expected = np.array([[np.cos(1), -np.sin(1)], [np.sin(1), np.cos(1)]])
        assert np.allclose(mat_exp(b), expected, atol=1e-14)

    def test_overflow_raises(self):
        with pytest.raises(MatrixExpOverflow):
            mat_exp(np.diag([1000.0, 0.0]))

    @given(st.integers(min_value=0, max_value=2 ** 31 - 1))
    @settings(max_examples=20, deadline=None)
    def test_exp_of_commuting_sum_is_product(self, seed):
        rng = np.random.default_rng(seed)
        a = 0.3 * rng.standard_normal((3, 3))
        lhs = mat_exp(2 * a)
        rhs = mat_exp(a) @ mat_exp(a)
        assert np.allclose(lhs, rhs, rtol=1e-10, atol=1e-12)


class TestHelpers:
    """Small matrix helpers."""

    def test_singular_value_ratio(self):
        assert singular_value_ratio(np.diag([4.0, 2.0])) == pytest.approx(0.5)
        assert singular_value_ratio(np.zeros((2, 2))) == 0.0

    def test_commutator_of_diagonals_vanishes(self):
        assert np.allclose(commutator(np.diag([1.0, 2.0]), np.diag([3.0, 4.0])), 0)

    def test_commutator_of_pauli_matrices(self):
        x = np.array([[0, 1], [1, 0]])
        z = np.array([[1, 0], [0, -1]])
        assert np.allclose(commutator(x, z), [[0, -2], [2, 0]])


class TestSpectralEnclosure:
    """Gershgorin and eigenvalue-tightened discs."""

    def test_gershgorin_of_diagonal(self):
        center, radius = gershgorin_disc(np.diag([1.0, 3.0]))
        assert center == pytest.approx(2.0)
        assert radius == pytest.approx(1.0)

    def test_enclosure_contains_eigenvalues(self):
        rng = np.random.default_rng(7)
        a = rng.standard_normal((6, 6))
        enc = spectral_enclosure(a)
        assert all(enc.contains(z, slack=1e-12) for z in np.linalg.eigvals(a))

    def test_tightening_shrinks_disc(self):
        a = np.array([[1.0, 10.0], [0.0, 2.0]])
        tight = spectral_enclosure(a)
        loose = spectral_enclosure(a, tighten=False)
        assert tight.tightened
        assert tight.radius < loose.radius

    def test_shifted_and_scaled(self):
        enc = spectral_enclosure(np.diag([1.0, 3.0]))
        assert enc.shifted(1.0).center == pytest.approx(3.0)
        assert enc.scaled(2.0).radius == pytest.approx(2 * enc.radius)
        assert enc.reach == pytest.approx(enc.radius + 2.0)


class TestComponentwiseCondition:
    """Skeel condition number of a solve at its solution."""

    def test_diagonal_is_perfectly_conditioned(self):
        a = np.diag([1.0, 1e-40, 1e-80])
        x = mat_solve(a, np.diag([2.0, 3e-40, 5e-80]), on_ill_conditioned="ignore")
        assert componentwise_condition(a, x) == pytest.approx(1.0)

    def test_dense_ill_conditioned_is_flagged(self):
        q = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)
        a = q @ np.diag([1.0, 1e-12]) @ q.T
        x = mat_solve(a, np.array([1.0, 0.0]), on_ill_conditioned="ignore")
        assert componentwise_condition(a, x) > 1e8

    def test_zero_solution(self):
        assert componentwise_condition(np.eye(2), np.zeros((2, 2))) == 1.0


class TestMatrixIO:
    """The shared JSON matrix format."""

    def test_dict_layout(self):
        data = matrix_to_dict(np.array([[1 + 2j, 0], [0, 3]]))
        assert data["n"] == 2
        assert data["entries"][0][0] == [1.0, 2.0]

    def test_file_roundtrip(self, tmp_path):
        a = np.array([[1 + 1j, 2], [3, 4 - 1j]])
        path = tmp_path / "a.json"
        write_matrix(a, path)
        assert np.array_equal(read_matrix(path), a)

    def test_rejects_wrong_shape(self):
        with pytest.raises(InvalidMatrix):
            matrix_from_dict({"n": 2, "entries": [[[1, 0], [0, 0]]]})

    def test_rejects_missing_keys(self):
        with pytest.raises(InvalidMatrix):
            matrix_from_dict({"entries": []})

    def test_rejects_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(InvalidMatrix):
            read_matrix(path)

    @pytest.mark.parametrize("data", [
        {"n": 2, "entries": 5},
        {"n": 2, "entries": [5, 5]},
        {"n": 1, "entries": [[[None, 0]]]},
        {"n": 1, "entries": [[["re", "im"]]]},
        {"n": True, "entries": [[1]]},
    ])
    def test_rejects_malformed_entries(self, data):
        with pytest.raises(InvalidMatrix):
            matrix_from_dict(data)

    def test_rejects_scalar_entries_file(self, tmp_path):
        path = tmp_path / "scalar.json"
        path.write_text(json.dumps({"n": 2, "entries": 5}))
        with pytest.raises(InvalidMatrix):
            read_matrix(path)

    def test_rejects_non_finite_entries(self, tmp_path):
        path = tmp_path / "nan.json"
        path.write_text(json.dumps({"n": 1, "entries": [[["NaN", 0]]]}))
        with pytest.raises(InvalidMatrix):
            read_matrix(path)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
