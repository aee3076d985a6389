"""
Acceptance suite: every verification criterion of the library in one run.

Each criterion contributes checks prefixed "cN"; the suite passes iff every
check passes. Randomness comes from numpy Generators seeded by --seed.
"""

import json
import logging
import time
from typing import List, Tuple

import numpy as np

from applications.cole_hopf import (
    CONVENTIONS, cole_hopf_report, convention_ratio_defect, heat_evolve, positive_heat_profile
)
from applications.strip import strip_double_log
from cli.commands import RunConfig
from cli.reports import Report
from config.settings import SUITE_BUDGET_S, SUITE_LOG_BUDGET_S
from families.catalogue import family_from_spec
from families.spectral import differentiation_matrix
from funcalc.dunford import op_log
from linops.dense import mat_exp
from logrep.alternative import alt_generator_a1, alt_generator_a2
from logrep.diagnostics import algebraic_property_report, formal_log_decomposition
from logrep.generators import (
    REPRESENTATIONS, generator_lemma1, generator_report, generator_theorem1
)
from logrep.params import (
    ShiftParams, collapse_params, default_params, resolvent_identity_defect, select_eta_matrix, select_nu
)
from utils.errors import NotInvertible, OperatorCalculusError, error_name
from utils.helpers import frobenius, relative_error

logger = logging.getLogger(__name__)

RANDOM_MATRIX_COUNT = 50
RANDOM_MATRIX_SIZES = (2, 4, 8, 16)

RESOLVENT_FAMILIES = (
    "constant:B=zero", "constant:B=rot", "constant:B=nilpotent", "constant:B=growth",
    "constant:B=mixed", "constant:B=stiff", "constant:B=random,n=4",
    "commuting:B=mixed,profile=square", "advection:n=16", "heat:n=16,basis=fourier",
    "noncommuting:n=3",
)
RESOLVENT_GRID = tuple((t, s) for t in (0.5, 1.0, 1.5) for s in (0.0, 0.25, 0.5) if t > s) + ((1.0, 1.0), (0.25, 0.0))

LEMMA_FAMILIES = (
    "constant:B=rot", "constant:B=nilpotent", "constant:B=growth", "constant:B=mixed",
    "constant:B=random,n=8", "commuting:B=mixed,profile=square", "commuting:B=rot,profile=cos",
    "commuting:B=random,n=16,profile=linear",
)
EQUIVALENCE_FAMILIES = ("constant:B=growth", "commuting:B=growth,profile=linear")
GENERALITY_CASES = (("constant:B=stiff", 1.0, 0.0), ("heat:n=16,basis=fourier", 2.0, 0.0))
ADVECTION_CASES = ("advection:n=16,c=1", "advection:n=128,c=15.625,basis=fourier")


def random_diagonalizable(rng: np.random.Generator, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    A = P diag(lam) P^-1 with lam in |lam - 3| <= 1 and cond(P) <= 2, and its eigen-logarithm.
    """
    q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    p = q @ np.diag(rng.uniform(1.0, 2.0, n))
    lam = 3 + np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    p_inv = np.linalg.inv(p)
    return p @ np.diag(lam) @ p_inv, p @ np.diag(np.log(lam)) @ p_inv


def _criterion_logs(report: Report, seed: int) -> None:
    rng = np.random.default_rng(seed)
    started = time.perf_counter()
    oracle_errors, roundtrips = [], []
    for i in range(RANDOM_MATRIX_COUNT):
        a, eigenlog = random_diagonalizable(rng, RANDOM_MATRIX_SIZES[i % len(RANDOM_MATRIX_SIZES)])
        log_a = op_log(a)
        oracle_errors.append(frobenius(log_a - eigenlog) / frobenius(eigenlog))
        roundtrips.append(frobenius(mat_exp(log_a) - a) / frobenius(a))
    elapsed = time.perf_counter() - started
    logger.info(f"Suite: {RANDOM_MATRIX_COUNT} contour logs in {elapsed:.2f} s")
    report.holds("c1:within_budget", elapsed < SUITE_LOG_BUDGET_S, f"budget {SUITE_LOG_BUDGET_S:g} s")
    report.at_most("c1:contour_log_oracle", max(oracle_errors), "contour_log_oracle")
    report.at_most("c2:exp_log_roundtrip", max(roundtrips), "exp_log_roundtrip")


def _criterion_resolvent(report: Report) -> None:
    defects: List[float] = []
    for spec in RESOLVENT_FAMILIES:
        family = family_from_spec(spec)
        for t, s in RESOLVENT_GRID:
            u = family(t, s)
            defects.append(resolvent_identity_defect(u, select_eta_matrix(u)))
    report.holds("c3:pairs_visited", len(defects) >= 100, f"{len(defects)} pairs")
    report.at_most("c3:resolvent_identity", max(defects), "resolvent_identity")


def _criterion_lemma(report: Report) -> None:
    for spec in LEMMA_FAMILIES:
        family = family_from_spec(spec)
        p = default_params(family, 1.0, 0.5)
        a = generator_lemma1(family, 1.0, 0.5, p)
        report.at_most(f"c4:{spec}", relative_error(a, family.generator_oracle(1.0)), "oracle_recovery")


def _criterion_equivalence(report: Report) -> None:
    for spec in EQUIVALENCE_FAMILIES:
        family = family_from_spec(spec)
        p = collapse_params(family, 1.0, 0.5)
        result = generator_report(family, 1.0, 0.5, p, collapse=p)
        report.holds(f"c5:{spec}:all_present", not result.errors, "; ".join(result.errors.values()) or None)
        report.at_most(f"c5:{spec}:max_discrepancy", result.max_discrepancy(), "equivalence")


def _criterion_generality(report: Report) -> None:
    for spec, t, s in GENERALITY_CASES:
        family = family_from_spec(spec)
        p = default_params(family, t, s)
        a = generator_theorem1(family, t, s, p)
        report.at_most(f"c6:{spec}:theorem1", relative_error(a, family.generator_oracle(t)), "oracle_recovery")
        try:
            generator_lemma1(family, t, s, p)
            report.holds(f"c6:{spec}:lemma1_refuses", False, "lemma1 returned a result")
        except NotInvertible:
            report.holds(f"c6:{spec}:lemma1_refuses", True)


def _criterion_advection(report: Report) -> None:
    for spec in ADVECTION_CASES:
        family = family_from_spec(spec)
        p = default_params(family, 1.0, 0.5)
        result = generator_report(family, 1.0, 0.5, p, representations=("lemma1", "thm1"))
        report.holds(f"c7:{spec}:available", not result.errors, "; ".join(result.errors.values()) or None)
        report.at_most(f"c7:{spec}:oracle", result.max_oracle_error(), "advection_recovery",
                       f"spectral radius {family.params['spectral_radius']:.4g}")


def _criterion_formal_log(report: Report) -> None:
    u = np.diag([0.0, 1.0]).astype(complex)
    record = formal_log_decomposition(u, 2.0)
    product = record.attempt("Log[U I_eta]")
    report.holds("c8:obstruction_origin_enclosed",
                 product is not None and not product.ok and product.error.startswith("OriginEnclosed"),
                 None if product is None else product.error)
    p = ShiftParams(2.0, select_nu(u, 2.0))
    try:
        alt_generator_a1(u, p)
        alt_generator_a2(u, p)
        report.holds("c8:translated_path", True)
    except OperatorCalculusError as e:
        report.holds("c8:translated_path", False, f"{error_name(e)}: {e}")


def _criterion_algebra(report: Report) -> None:
    grid = ((1.0, 0.5), (1.25, 0.5), (1.0, 0.25))
    family = family_from_spec("constant:B=rot")
    commuting = algebraic_property_report(family, grid, default_params(family, 1.0, 0.5))
    report.at_most("c9:commuting_commutator", commuting.max_commutator, "commutator")
    report.holds("c9:continuity_finite", all(np.isfinite(v) for v in
                                              [*commuting.continuity_t.values(), *commuting.continuity_s.values()]))

    control = family_from_spec("noncommuting:n=3")
    flagged = algebraic_property_report(control, ((1.0, 0.0),), default_params(control, 1.0, 0.0))
    report.at_least("c9:noncommuting_flagged", flagged.max_commutator, "noncommuting_flag")


def _criterion_cole_hopf(report: Report) -> None:
    n, mu, t = 128, 0.5, 0.1
    phi0 = positive_heat_profile(n, mu, 0.0)
    for convention in CONVENTIONS:
        result = cole_hopf_report(phi0, mu, t, convention)
        report.at_most(f"c10:identity:{convention}", result.identity_residual, "cole_hopf_identity")
        if convention == "classical":
            report.at_most("c10:burgers:classical", result.burgers_residual, "burgers_residual")
    report.at_most("c10:convention_ratio", convention_ratio_defect(heat_evolve(phi0, mu, t), mu), "convention_ratio")


def _strip_cases():
    sectorial = np.diag([np.exp(2.0), np.exp(3.0)])
    skew = mat_exp(0.1 * differentiation_matrix(8, 2 * np.pi))
    return (("sectorial", sectorial), ("skew", skew))


def _criterion_strip(report: Report) -> None:
    for name, u in _strip_cases():
        result = strip_double_log(u)
        report.at_most(f"c11:{name}", result.roundtrip_error, "double_log_roundtrip",
                       f"shift {result.shift.real:.4g}")


def _criterion_determinism(report: Report, seed: int) -> None:
    """Two runs of the seeded criteria must serialize identically."""
    runs = []
    for _ in range(2):
        rerun = Report("suite-rerun", {"seed": seed}, tolerance_override=report.tolerance_override)
        _criterion_logs(rerun, seed)
        _criterion_strip(rerun)
        runs.append(json.dumps([c.to_dict() for c in rerun.checks], sort_keys=True))
    report.holds("c12:deterministic", runs[0] == runs[1])


CRITERIA = (
    ("random logs", lambda r, seed: _criterion_logs(r, seed)),
    ("resolvent identity", lambda r, seed: _criterion_resolvent(r)),
    ("lemma 1 recovery", lambda r, seed: _criterion_lemma(r)),
    ("four-way equivalence", lambda r, seed: _criterion_equivalence(r)),
    ("theorem 1 generality", lambda r, seed: _criterion_generality(r)),
    ("advection", lambda r, seed: _criterion_advection(r)),
    ("formal log", lambda r, seed: _criterion_formal_log(r)),
    ("algebraic properties", lambda r, seed: _criterion_algebra(r)),
    ("cole-hopf", lambda r, seed: _criterion_cole_hopf(r)),
    ("strip log", lambda r, seed: _criterion_strip(r)),
    ("determinism", lambda r, seed: _criterion_determinism(r, seed)),
)


def run_suite(config: RunConfig) -> Report:
    """
    Run every criterion; an unexpected library error fails that criterion only.
    """
    report = config.report()
    report.data["representations"] = list(REPRESENTATIONS)
    started = time.perf_counter()
    for label, criterion in CRITERIA:
        logger.info(f"Suite: {label}")
        try:
            criterion(report, config.seed)
        except OperatorCalculusError as e:
            report.holds(f"{label}:error", False, f"{error_name(e)}: {e}")
    # wall time goes to the log only; the report keeps just the verdict
    elapsed = time.perf_counter() - started
    report.holds("c12:within_budget", elapsed <= SUITE_BUDGET_S, f"budget {SUITE_BUDGET_S:g} s")
    logger.info(f"Suite finished in {elapsed:.1f} s: "
                f"{len(report.checks) - len(report.failures)}/{len(report.checks)} checks passed")
    return report
