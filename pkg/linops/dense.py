"""
Dense complex linear algebra substrate.

OperatorMatrix values are read-only complex128 numpy arrays standing in for
closed operators on a finite-dimensional truncation. All routines here are
pure functions of their inputs.
"""

import logging
import warnings
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy import linalg
from scipy.sparse.linalg import LinearOperator, onenormest

from config.settings import COND_LIMIT, PIVOT_FLOOR
from utils.errors import (
    IllConditioned, IllConditionedWarning, InvalidMatrix, MatrixExpOverflow, SingularMatrix
)

logger = logging.getLogger(__name__)

OperatorMatrix = npt.NDArray[np.complex128]


def as_operator(a, *, name: str = "matrix") -> OperatorMatrix:
    """
    Validate and freeze a square matrix.

    Args:
        a: Anything numpy can turn into a 2-D array (a scalar is read as 1x1)
        name: Label used in error messages

    Returns:
        Read-only complex128 copy of a

    Raises:
        InvalidMatrix: If a is not square or has non-finite entries
    """
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidMatrix(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidMatrix(f"{name} has non-finite entries")
    arr.setflags(write=False)
    return arr


def identity(n: int) -> OperatorMatrix:
    """n x n identity as an OperatorMatrix."""
    return as_operator(np.eye(n))


def _freeze(arr: np.ndarray) -> OperatorMatrix:
    arr = np.asarray(arr, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


def condition_estimate(a: np.ndarray, lu_piv=None) -> float:
    """
    1-norm condition number estimate ||A||_1 * est(||A^-1||_1).

    Uses the block 1-norm power iteration of scipy's onenormest on the
    inverse, applied through an existing LU factorization when given.
    """
    n = a.shape[0]
    if lu_piv is None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", linalg.LinAlgWarning)
            lu_piv = linalg.lu_factor(a, check_finite=False)

    inverse = LinearOperator(
        (n, n),
        matvec=lambda x: linalg.lu_solve(lu_piv, x, check_finite=False),
        rmatvec=lambda x: linalg.lu_solve(lu_piv, x, trans=2, check_finite=False),
        dtype=np.complex128,
    )
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        inverse_norm = onenormest(inverse, t=min(2, n))
    return float(np.linalg.norm(a, 1) * inverse_norm)


def mat_solve(a: np.ndarray, b: np.ndarray, *,
              on_ill_conditioned: Literal["warn", "raise", "ignore"] = "warn") -> OperatorMatrix:
    """
    Solve A X = B by LU with partial pivoting.

    Args:
        a: Square coefficient matrix
        b: Right-hand side (vector or matrix with matching row count)
        on_ill_conditioned: What to do when the condition estimate exceeds
            COND_LIMIT: emit IllConditionedWarning and return ("warn"),
            raise IllConditioned ("raise"), or stay silent ("ignore")

    Returns:
        The solution X

    Raises:
        SingularMatrix: If a pivot magnitude falls below PIVOT_FLOOR
        IllConditioned: Only with on_ill_conditioned="raise"
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu_piv = linalg.lu_factor(a, check_finite=False)

    pivots = np.abs(np.diag(lu_piv[0]))
    if pivots.min() < PIVOT_FLOOR or not np.all(np.isfinite(pivots)):
        raise SingularMatrix(f"pivot magnitude {pivots.min():.3e} below {PIVOT_FLOOR:.0e}")

    if on_ill_conditioned != "ignore":
        condition = condition_estimate(a, lu_piv)
        if condition > COND_LIMIT:
            message = f"condition estimate {condition:.3e} exceeds {COND_LIMIT:.0e}"
            if on_ill_conditioned == "raise":
                raise IllConditioned(message, condition)
            logger.debug(message)
            warnings.warn(message, IllConditionedWarning, stacklevel=2)

    return _freeze(linalg.lu_solve(lu_piv, b, check_finite=False))


def componentwise_condition(a: np.ndarray, x: np.ndarray) -> float:
    """
    Skeel condition number of A X = B at the solution X.

    max over columns of || |A^-1| |A| |x| ||_inf / ||x||_inf. It is 1 for a
    diagonal A however widely its entries are spread, and close to the
    normwise condition number for a dense ill-conditioned A.
    """
    a = np.asarray(a, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim == 1:
        x = x[:, None]

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu_piv = linalg.lu_factor(a, check_finite=False)
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        inverse = np.abs(linalg.lu_solve(lu_piv, np.eye(a.shape[0]), check_finite=False))
        bound = inverse @ (np.abs(a) @ np.abs(x))

    scale = np.abs(x).max(axis=0)
    nonzero = scale > 0
    if not nonzero.any():
        return 1.0
    value = float((bound.max(axis=0)[nonzero] / scale[nonzero]).max())
    return value if np.isfinite(value) else float("inf")


def mat_inv(a: np.ndarray, **kwargs) -> OperatorMatrix:
    """A^-1 through mat_solve (same error contract)."""
    return mat_solve(a, np.eye(a.shape[0]), **kwargs)


def mat_exp(a: np.ndarray) -> OperatorMatrix:
    """
    Matrix exponential by scaling and squaring with a Pade kernel.

    Raises:
        MatrixExpOverflow: If e^A leaves the floating point range
    """
    a = np.asarray(a, dtype=np.complex128)
    with np.errstate(over='ignore', invalid='ignore'):
        result = linalg.expm(a)
    if not np.all(np.isfinite(result)):
        raise MatrixExpOverflow(f"e^A overflows for ||A||_1 = {np.linalg.norm(a, 1):.3e}")
    return _freeze(result)


def singular_value_ratio(a: np.ndarray) -> float:
    """sigma_min / sigma_max (0 for the zero matrix)."""
    sv = linalg.svdvals(np.asarray(a, dtype=np.complex128))
    if sv[0] == 0:
        return 0.0
    return float(sv[-1] / sv[0])


def commutator(a: np.ndarray, b: np.ndarray) -> OperatorMatrix:
    """[A, B] = AB - BA."""
    return _freeze(a @ b - b @ a)
