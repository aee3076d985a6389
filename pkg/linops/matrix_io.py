"""
Shared matrix file format.

JSON object {"n": int, "entries": [[[re, im], ...], ...]}, row-major. The
reader rejects non-square and non-finite input.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from linops.dense import OperatorMatrix, as_operator
from utils.errors import InvalidMatrix

logger = logging.getLogger(__name__)


def encode_complex(z: complex) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def decode_complex(pair) -> complex:
    if isinstance(pair, (int, float)) and not isinstance(pair, bool):
        return complex(pair)
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise InvalidMatrix(f"complex entry must be [re, im], got {pair!r}")
    try:
        return complex(float(pair[0]), float(pair[1]))
    except (TypeError, ValueError) as e:
        raise InvalidMatrix(f"complex entry must hold two numbers, got {pair!r}") from e


def matrix_to_dict(a: np.ndarray) -> Dict[str, Any]:
    """Serialize a square matrix to the shared JSON structure."""
    a = np.asarray(a, dtype=np.complex128)
    return {
        "n": int(a.shape[0]),
        "entries": [[encode_complex(z) for z in row] for row in a],
    }


def matrix_from_dict(data: Dict[str, Any]) -> OperatorMatrix:
    """Parse the shared JSON structure into a validated OperatorMatrix."""
    if not isinstance(data, dict) or "n" not in data or "entries" not in data:
        raise InvalidMatrix("matrix JSON needs keys 'n' and 'entries'")

    n = data["n"]
    rows = data["entries"]
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise InvalidMatrix(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise InvalidMatrix("'entries' must be a list of rows, each a list of entries")
    if len(rows) != n or any(len(row) != n for row in rows):
        raise InvalidMatrix(f"'entries' is not {n}x{n}")

    return as_operator([[decode_complex(z) for z in row] for row in rows])


def read_matrix(path: Union[str, Path]) -> OperatorMatrix:
    """Read a matrix file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise InvalidMatrix(f"{path}: not valid JSON ({e})") from e
    matrix = matrix_from_dict(data)
    logger.info(f"Loaded {matrix.shape[0]}x{matrix.shape[0]} matrix from {path}")
    return matrix


def write_matrix(a: np.ndarray, path: Union[str, Path]) -> None:
    """Write a matrix file."""
    Path(path).write_text(json.dumps(matrix_to_dict(a)))
