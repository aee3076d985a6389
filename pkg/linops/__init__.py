"""
Dense complex linear algebra substrate for oplog.

Arithmetic, pivoted solves with condition estimation, the matrix
exponential, spectral enclosures and the shared matrix file format.
"""

from .dense import (
    OperatorMatrix,
    as_operator,
    identity,
    mat_solve,
    mat_inv,
    mat_exp,
    condition_estimate,
    componentwise_condition,
    singular_value_ratio,
    commutator,
)
from .spectra import SpectralEnclosure, spectral_enclosure, gershgorin_disc
from .matrix_io import matrix_to_dict, matrix_from_dict, read_matrix, write_matrix

__all__ = [
    "OperatorMatrix",
    "as_operator",
    "identity",
    "mat_solve",
    "mat_inv",
    "mat_exp",
    "condition_estimate",
    "componentwise_condition",
    "singular_value_ratio",
    "commutator",
    "SpectralEnclosure",
    "spectral_enclosure",
    "gershgorin_disc",
    "matrix_to_dict",
    "matrix_from_dict",
    "read_matrix",
    "write_matrix",
]
