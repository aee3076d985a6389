"""
Sampled functions on a uniform periodic grid and their spectral derivatives.

GridFunction JSON: {"n": int, "L": float, "values": [[re, im], ...]}.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Union

import numpy as np

from families.spectral import differentiation_symbol
from linops.matrix_io import decode_complex, encode_complex
from utils.errors import InvalidMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridFunction:
    """n complex samples of an L-periodic function at x_j = j L / n."""
    n: int
    L: float
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128).reshape(-1)
        if values.shape[0] != self.n:
            raise InvalidMatrix(f"grid function has {values.shape[0]} samples for n = {self.n}")
        if not np.all(np.isfinite(values)):
            raise InvalidMatrix("grid function has non-finite samples")
        if not self.L > 0:
            raise InvalidMatrix(f"period must be positive, got {self.L}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(cls, f: Callable[[np.ndarray], np.ndarray], n: int, L: float = 2 * np.pi) -> "GridFunction":
        return cls(n, L, f(grid_points(n, L)))

    @property
    def x(self) -> np.ndarray:
        return grid_points(self.n, self.L)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.n, self.L, values)

    def norm(self) -> float:
        """Discrete L2 norm (sqrt(L/n) * ||values||_2)."""
        return float(np.sqrt(self.L / self.n) * np.linalg.norm(self.values))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "L": float(self.L),
            "values": [encode_complex(v) for v in self.values],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GridFunction":
        if not isinstance(data, dict) or not {"n", "L", "values"} <= data.keys():
            raise InvalidMatrix("grid function JSON needs keys 'n', 'L' and 'values'")
        return cls(int(data["n"]), float(data["L"]), [decode_complex(v) for v in data["values"]])


def grid_points(n: int, L: float) -> np.ndarray:
    return L * np.arange(n) / n


def spectral_derivative(f: GridFunction, order: int = 1) -> GridFunction:
    """
    d^order f / dx^order by FFT.

    The Nyquist mode is dropped for odd orders so real data stays real.
    """
    symbol = differentiation_symbol(f.n, f.L, order)
    if order % 2 and f.n % 2 == 0:
        symbol = symbol.copy()
        symbol[f.n // 2] = 0
    return f.with_values(np.fft.ifft(symbol * np.fft.fft(f.values)))


def read_grid_function(path: Union[str, Path]) -> GridFunction:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise InvalidMatrix(f"{path}: not valid JSON ({e})") from e
    return GridFunction.from_dict(data)


def write_grid_function(f: GridFunction, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(f.to_dict()))
