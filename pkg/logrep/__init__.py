"""
Logarithmic representation of infinitesimal generators of evolution families.
"""

from .params import (
    ShiftParams,
    resolvent_approx,
    resolvent_gap,
    resolvent_pair,
    resolvent_identity_defect,
    shifted_operator,
    select_eta,
    select_eta_matrix,
    select_nu,
    select_collapse_eta,
    nu_from_eta,
    certify_params,
    default_params,
    collapse_params,
    adaptive_step,
    certify_stencil,
)
from .alternative import AltGenerator, alt_generator_a1, alt_generator_a2
from .generators import (
    GeneratorReport,
    GeneratorEvaluation,
    REPRESENTATIONS,
    generator_lemma1,
    generator_corollary1,
    generator_theorem1,
    generator_corollary2,
    generator_report,
)
from .diagnostics import (
    LogAttempt,
    FormalLogRecord,
    PropertyReport,
    formal_log_decomposition,
    algebraic_property_report,
)

__all__ = [
    "ShiftParams",
    "resolvent_approx",
    "resolvent_gap",
    "resolvent_pair",
    "resolvent_identity_defect",
    "shifted_operator",
    "select_eta",
    "select_eta_matrix",
    "select_nu",
    "select_collapse_eta",
    "nu_from_eta",
    "certify_params",
    "default_params",
    "collapse_params",
    "adaptive_step",
    "certify_stencil",
    "AltGenerator",
    "alt_generator_a1",
    "alt_generator_a2",
    "GeneratorReport",
    "GeneratorEvaluation",
    "REPRESENTATIONS",
    "generator_lemma1",
    "generator_corollary1",
    "generator_theorem1",
    "generator_corollary2",
    "generator_report",
    "LogAttempt",
    "FormalLogRecord",
    "PropertyReport",
    "formal_log_decomposition",
    "algebraic_property_report",
]
