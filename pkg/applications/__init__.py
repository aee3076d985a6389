"""
Applications of the logarithmic calculus: Cole-Hopf and the strip-type double logarithm.
"""

from .grid import GridFunction, spectral_derivative, read_grid_function, write_grid_function
from .cole_hopf import (
    CONVENTIONS,
    CONVENTION_ALIASES,
    ColeHopfReport,
    canonical_convention,
    convention_scale,
    heat_evolve,
    positive_heat_profile,
    cole_hopf_transform,
    identity_residual,
    burgers_residual,
    heat_residual,
    convention_ratio_defect,
    cole_hopf_report,
    cole_hopf_series,
)
from .strip import StripLog, strip_double_log, select_strip_shift

__all__ = [
    "GridFunction",
    "spectral_derivative",
    "read_grid_function",
    "write_grid_function",
    "CONVENTIONS",
    "CONVENTION_ALIASES",
    "ColeHopfReport",
    "canonical_convention",
    "convention_scale",
    "heat_evolve",
    "positive_heat_profile",
    "cole_hopf_transform",
    "identity_residual",
    "burgers_residual",
    "heat_residual",
    "convention_ratio_defect",
    "cole_hopf_report",
    "cole_hopf_series",
    "StripLog",
    "strip_double_log",
    "select_strip_shift",
]
