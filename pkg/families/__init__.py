"""
Catalogue of two-parameter evolution families used as test subjects.
"""

from .catalogue import (
    EvolutionFamily,
    family_constant,
    family_commuting_time_dependent,
    family_advection,
    family_heat,
    family_noncommuting,
    family_from_spec,
    list_families,
    preset_matrix,
)
from .spectral import wavenumbers, differentiation_matrix, fourier_matrix

__all__ = [
    "EvolutionFamily",
    "family_constant",
    "family_commuting_time_dependent",
    "family_advection",
    "family_heat",
    "family_noncommuting",
    "family_from_spec",
    "list_families",
    "preset_matrix",
    "wavenumbers",
    "differentiation_matrix",
    "fourier_matrix",
]
