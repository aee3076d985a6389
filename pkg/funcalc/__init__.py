"""
Contour construction and the Riesz-Dunford functional calculus.
"""

from .contour import (
    Contour,
    ContourValidity,
    build_log_contour,
    validate_contour,
)
from .dunford import (
    principal_log,
    dunford_integral,
    adaptive_contour_integral,
    op_log,
    frechet_log,
    op_function,
)
from .derivative import DerivativeEstimate, richardson_derivative, default_step, stencil

__all__ = [
    "Contour",
    "ContourValidity",
    "build_log_contour",
    "validate_contour",
    "principal_log",
    "dunford_integral",
    "adaptive_contour_integral",
    "op_log",
    "frechet_log",
    "op_function",
    "DerivativeEstimate",
    "richardson_derivative",
    "default_step",
    "stencil",
]
