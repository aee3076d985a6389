"""
Fourier-collocation differentiation on a periodic grid.

Wavenumbers are ordered as numpy's FFT output with the Nyquist mode taken
as +n/2, so the first-derivative matrix has the full spectrum
{i k 2 pi / L : k = -n/2+1, ..., n/2} and is skew-Hermitian.
"""

import numpy as np
from scipy import linalg


def wavenumbers(n: int, L: float) -> np.ndarray:
    """Angular wavenumbers 2 pi k / L in FFT order, Nyquist positive."""
    k = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        k[n // 2] = n // 2
    return 2 * np.pi * k / L


def fourier_matrix(n: int) -> np.ndarray:
    """Unitary DFT matrix F with F @ x = fft(x) / sqrt(n)."""
    return linalg.dft(n, scale='sqrtn')


def to_physical(diagonal: np.ndarray) -> np.ndarray:
    """F^H diag(d) F: the physical-space matrix of a Fourier multiplier."""
    f = fourier_matrix(len(diagonal))
    return f.conj().T @ np.diag(diagonal) @ f


def differentiation_symbol(n: int, L: float, order: int = 1) -> np.ndarray:
    """Fourier symbol (i k)^order of the order-th derivative."""
    return (1j * wavenumbers(n, L)) ** order


def differentiation_matrix(n: int, L: float, order: int = 1, basis: str = "physical") -> np.ndarray:
    """
    Spectral differentiation matrix of the given order.

    Args:
        n: Grid size (even)
        L: Period
        order: Derivative order
        basis: "physical" (grid values) or "fourier" (diagonal in mode space)
    """
    symbol = differentiation_symbol(n, L, order)
    if basis == "fourier":
        return np.diag(symbol)
    return to_physical(symbol)
