import logging
from typing import Callable, Iterable, Optional, Tuple, Type, TypeVar

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar('T')


def frobenius(a: np.ndarray) -> float:
    """Frobenius norm (2-norm for vectors)."""
    return float(np.linalg.norm(a))


def safe_divide(numerator: float, denominator: float, default: float = 0.0) -> float:
    """Safely divide two numbers, returning default if denominator is zero."""
    if denominator == 0:
        return default
    return numerator / denominator


def relative_error(value: np.ndarray, reference: np.ndarray, floor: float = 1.0) -> float:
    """||value - reference||_F / max(||reference||_F, floor).

    The floor keeps the measure meaningful when the reference is zero
    (e.g. the generator of the identity family).
    """
    return frobenius(value - reference) / max(frobenius(reference), floor)


def relative_discrepancy(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric relative difference ||a - b|| / max(||a||, ||b||); 0 when both vanish."""
    scale = max(frobenius(a), frobenius(b))
    return safe_divide(frobenius(a - b), scale)



def retry_with_jitter(attempt: Callable[[float], T], start: float, *,
                      retries: int, factor: float,
                      retry_on: Tuple[Type[BaseException], ...],
                      label: str = "parameter") -> Tuple[T, float]:
    """Call attempt(value) with value = start, start*factor, ... until it succeeds.

    Args:
        attempt: Callable receiving the candidate value
        start: First candidate
        retries: Number of additional candidates after the first
        factor: Multiplicative jitter between candidates
        retry_on: Exception types that trigger the next candidate
        label: Name used in log messages

    Returns:
        Tuple of (attempt result, accepted value)

    Raises:
        The last exception caught when every candidate fails
    """
    value = start
    last_exception: Optional[BaseException] = None

    for n in range(retries + 1):
        try:
            return attempt(value), value
        except retry_on as e:
            last_exception = e
            logger.warning(f"Attempt {n + 1} rejected {label}={value!r}: {e}")
            value = value * factor

    logger.error(f"All {retries + 1} candidates failed for {label}: {last_exception}")
    raise last_exception


def pairs(items: Iterable[T]):
    """Unordered pairs (a, b) with a before b in iteration order."""
    items = list(items)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            yield items[i], items[j]
