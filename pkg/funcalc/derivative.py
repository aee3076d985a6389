"""
Richardson-extrapolated central differences for parameter derivatives.

In finite dimension every operator topology coincides, so the t-differential
of a matrix-valued function is an ordinary derivative and a difference
quotient is faithful to it.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from config.settings import RICHARDSON_H0, RICHARDSON_STEP_FLOOR
from utils.errors import EvaluationFailed, StepUnderflow
from utils.helpers import frobenius

logger = logging.getLogger(__name__)

ArrayLike = Union[np.ndarray, complex, float]


@dataclass(frozen=True)
class DerivativeEstimate:
    """Extrapolated derivative, norm of the last correction, and the base step."""
    value: np.ndarray
    error: float
    step: float


def default_step(t: float) -> float:
    """RICHARDSON_H0 scaled by max(1, |t|)."""
    return RICHARDSON_H0 * max(1.0, abs(t))


def stencil(t: float, h0: float):
    """The six abscissae richardson_derivative samples, in evaluation order."""
    points = []
    for h in (h0, h0 / 2, h0 / 4):
        points.extend((t + h, t - h))
    return points


def richardson_derivative(g: Callable[[float], ArrayLike], t: float,
                          h0: Optional[float] = None) -> DerivativeEstimate:
    """
    Derivative of g at t from central differences at h0, h0/2, h0/4.

    Two Richardson levels eliminate the h^2 and h^4 error terms.

    Args:
        g: Real-parameter function returning a scalar or array
        t: Evaluation point
        h0: Largest step (default RICHARDSON_H0 * max(1, |t|))

    Returns:
        DerivativeEstimate with the extrapolated value and the norm of the
        last Richardson correction as error estimate

    Raises:
        StepUnderflow: If h0 < RICHARDSON_STEP_FLOOR
        EvaluationFailed: If any g(t +- h) raises
    """
    h0 = default_step(t) if h0 is None else h0
    if h0 < RICHARDSON_STEP_FLOOR:
        raise StepUnderflow(f"h0 = {h0:.3e} below {RICHARDSON_STEP_FLOOR:.0e}")

    def sample(x: float) -> np.ndarray:
        try:
            return np.asarray(g(x), dtype=np.complex128)
        except Exception as e:
            raise EvaluationFailed(f"evaluation at t = {x!r} failed: {e}") from e

    central = []
    for h in (h0, h0 / 2, h0 / 4):
        central.append((sample(t + h) - sample(t - h)) / (2 * h))

    first = [(4 * central[1] - central[0]) / 3, (4 * central[2] - central[1]) / 3]
    second = (16 * first[1] - first[0]) / 15

    error = frobenius(second - first[1])
    logger.debug(f"Richardson derivative at t={t:.6g}, h0={h0:.3e}: correction {error:.3e}")

    second.setflags(write=False)
    return DerivativeEstimate(value=second, error=error, step=h0)
