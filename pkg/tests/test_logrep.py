"""
Unit tests for the logarithmic representation of generators.

Covers the resolvent approximation, shift parameter selection, the
alternative generators a1/a2, the four representations of A(t) and the
diagnostics built on them.
"""

import os
import sys

import numpy as np
import pytest

# Add the project root to the path so we can import our modules
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import TOLERANCES
from families.catalogue import family_constant, family_from_spec
from logrep.alternative import alt_generator_a1, alt_generator_a2
from logrep.diagnostics import algebraic_property_report, formal_log_decomposition
from logrep.generators import (
    REPRESENTATIONS, generator_corollary1, generator_corollary2, generator_lemma1, generator_report,
    generator_theorem1
)
from logrep.params import (
    ShiftParams, adaptive_step, certify_params, collapse_params, default_params, nu_from_eta,
    require_collapse, resolvent_approx, resolvent_gap, resolvent_identity_defect, resolvent_pair,
    select_collapse_eta, select_eta, select_eta_matrix, select_nu, shifted_operator
)
from utils.errors import (
    EtaEqualsOne, EtaInSpectrum, IllConditioned, NoEtaFound, NotInvertible, NuMismatch
)
from utils.helpers import relative_discrepancy, relative_error

ORACLE_TOL = TOLERANCES['oracle_recovery']


@pytest.fixture(scope="module")
def rotation():
    family = family_from_spec("constant:B=rot")
    return family, default_params(family, 1.0, 0.5)


@pytest.fixture(scope="module")
def growth():
    family = family_from_spec("constant:B=growth")
    return family, collapse_params(family, 1.0, 0.5)


class TestResolvent:
    """I_eta and its gap K = I_eta - I."""

    def test_identity_defect_is_tiny(self):
        u = family_from_spec("constant:B=mixed")(1.0, 0.0)
        assert resolvent_identity_defect(u, select_eta_matrix(u)) < TOLERANCES['resolvent_identity']

    def test_gap_matches_definition(self):
        u = np.diag([1.0, 2.0])
        j, k = resolvent_pair(u, 5.0)
        assert np.allclose(j, np.diag([5 / 4, 5 / 3]))
        assert np.allclose(k, j - np.eye(2), atol=1e-15)

    def test_eta_on_eigenvalue(self):
        with pytest.raises(EtaInSpectrum):
            resolvent_approx(np.diag([1.0, 2.0]), 2.0)

    def test_zero_eta(self):
        with pytest.raises(EtaInSpectrum):
            resolvent_gap(np.eye(2), 0.0)

    def test_shifted_operators(self):
        k = np.diag([0.25, 0.5])
        assert np.allclose(shifted_operator("a1", k, 2.0, 3.0), np.diag([3.5, 4.0]))
        assert np.allclose(shifted_operator("a2", k, 2.0, 3.0), np.diag([4.25, 4.5]))
        assert np.allclose(shifted_operator("lemma1", k, 2.0, 3.0), np.diag([1.75, 2.0]))
        with pytest.raises(ValueError):
            shifted_operator("a3", k, 2.0, 3.0)


class TestParameterSelection:
    """eta and nu selection and certification."""

    def test_eta_from_enclosure(self):
        assert select_eta_matrix(np.diag([1.0, 2.0])) == pytest.approx(5.0)

    def test_eta_for_family(self):
        family = family_constant(np.diag([0.0, np.log(2.0)]))
        assert select_eta(family, 1.0, 0.0) == pytest.approx(5.0)

    def test_nu_is_certified(self):
        u = np.diag([1.0, 2.0])
        p = certify_params(u, 5.0, select_nu(u, 5.0))
        assert p.eta_in_resolvent_set and p.nu_valid_for_a1 and p.nu_valid_for_a2

    def test_bad_eta_gives_false_certificate(self):
        p = certify_params(np.diag([1.0, 2.0]), 2.0, 1.0)
        assert not p.eta_in_resolvent_set

    def test_nu_from_eta(self):
        assert nu_from_eta(2.0) == pytest.approx(-2.0)
        assert nu_from_eta(-1.0) == pytest.approx(-0.5)
        with pytest.raises(EtaEqualsOne):
            nu_from_eta(1.0)

    def test_collapse_relation(self):
        assert ShiftParams(2.0, -2.0).collapses
        assert not ShiftParams(2.0, 3.0).collapses
        assert not ShiftParams(1.0, 3.0).collapses
        with pytest.raises(NuMismatch):
            require_collapse(ShiftParams(2.0, 3.0))

    def test_with_nu_drops_certificates(self, rotation):
        _, p = rotation
        assert not p.with_nu(7.0).nu_valid_for_a1

    def test_collapse_eta_positive_for_growth(self, growth):
        _, p = growth
        assert p.eta.real > 1
        assert p.collapses

    def test_identity_has_no_collapse_eta(self):
        with pytest.raises(NoEtaFound):
            select_collapse_eta(np.eye(2))

    def test_adaptive_step_shrinks_for_fast_families(self):
        family = family_from_spec("advection:n=128,c=15.625,basis=fourier")
        assert adaptive_step(family, 1.0, 0.5) < 1e-3
        assert adaptive_step(family_from_spec("constant:B=rot"), 1.0, 0.5) == pytest.approx(1e-3)


class TestAlternativeGenerators:
    """a1 = Log[eta K + nu I], a2 = Log[I_eta + nu I]."""

    def test_a1_agrees_with_direct_log(self, rotation):
        family, p = rotation
        a1 = alt_generator_a1(family(1.0, 0.5), p)
        assert a1.direct is not None
        assert a1.direct_discrepancy() < 1e-9

    def test_a1_direct_unavailable_for_singular_u(self):
        u = np.diag([0.0, 1.0])
        p = ShiftParams(2.0, select_nu(u, 2.0))
        a1 = alt_generator_a1(u, p)
        assert a1.direct is None
        assert a1.direct_status.startswith("DirectLogUnavailable")

    def test_a2_norm_bound(self, rotation):
        family, p = rotation
        a2 = alt_generator_a2(family(1.0, 0.5), p)
        assert a2.bound_holds
        assert a2.to_dict()["bound_holds"] is True


class TestRepresentations:
    """The four representations of A(t)."""

    def test_lemma1_recovers_rotation(self, rotation):
        family, p = rotation
        a = generator_lemma1(family, 1.0, 0.5, p)
        assert relative_error(a, family.generator_oracle(1.0)) < ORACLE_TOL

    def test_theorem1_recovers_rotation(self, rotation):
        family, p = rotation
        a = generator_theorem1(family, 1.0, 0.5, p)
        assert relative_error(a, family.generator_oracle(1.0)) < ORACLE_TOL

    def test_direct_derivative_mode(self, rotation):
        family, p = rotation
        a = generator_theorem1(family, 1.0, 0.5, p, derivative="direct")
        assert relative_error(a, family.generator_oracle(1.0)) < ORACLE_TOL

    def test_unknown_derivative_mode(self, rotation):
        family, p = rotation
        with pytest.raises(ValueError):
            generator_theorem1(family, 1.0, 0.5, p, derivative="symbolic")

    def test_time_dependent_generator(self):
        family = family_from_spec("commuting:B=mixed,profile=square")
        p = default_params(family, 1.0, 0.5)
        a = generator_lemma1(family, 1.0, 0.5, p)
        assert relative_error(a, family.generator_oracle(1.0)) < ORACLE_TOL

    def test_corollaries_recover_growth(self, growth):
        family, p = growth
        oracle = family.generator_oracle(1.0)
        assert relative_error(generator_corollary1(family, 1.0, 0.5, p), oracle) < ORACLE_TOL
        assert relative_error(generator_corollary2(family, 1.0, 0.5, p), oracle) < ORACLE_TOL

    def test_corollaries_need_collapse(self, rotation):
        family, p = rotation
        with pytest.raises(NuMismatch):
            generator_corollary2(family, 1.0, 0.5, p)

    def test_all_four_agree(self, growth):
        family, p = growth
        report = generator_report(family, 1.0, 0.5, p, collapse=p)
        assert not report.errors
        assert set(report.generators) == set(REPRESENTATIONS)
        assert len(report.pairwise_discrepancies) == 6
        assert report.max_discrepancy() <= TOLERANCES['equivalence']

    def test_scalar_exponential(self):
        family = family_constant(np.array([[2.0]]))
        p = default_params(family, 1.0, 0.5)
        a = generator_lemma1(family, 1.0, 0.5, p)
        assert a.shape == (1, 1)
        assert a[0, 0] == pytest.approx(2.0, rel=ORACLE_TOL)

    def test_independent_of_translation(self, rotation):
        family, p = rotation
        doubled = default_params(family, 1.0, 0.5, eta=p.eta, nu=2 * p.nu)
        assert doubled.nu_valid_for_a1 and doubled.nu_valid_for_a2
        a = generator_theorem1(family, 1.0, 0.5, p)
        b = generator_theorem1(family, 1.0, 0.5, doubled)
        assert relative_discrepancy(a, b) <= TOLERANCES['equivalence']

    def test_independent_of_eta(self, rotation):
        family, p = rotation
        other = default_params(family, 1.0, 0.5, eta=2 * p.eta)
        assert other.eta_in_resolvent_set
        a = generator_theorem1(family, 1.0, 0.5, p)
        b = generator_theorem1(family, 1.0, 0.5, other)
        assert relative_discrepancy(a, b) <= TOLERANCES['equivalence']

    def test_theorem1_refuses_dense_non_invertible_basis(self):
        family = family_from_spec("heat:n=16")
        p = default_params(family, 2.0, 0.0)
        with pytest.raises(IllConditioned):
            generator_theorem1(family, 2.0, 0.0, p)
        report = generator_report(family, 2.0, 0.0, p, representations=("lemma1", "thm1"))
        assert report.errors["thm1"].startswith("IllConditioned")
        assert report.errors["lemma1"].startswith("NotInvertible")

    def test_report_records_unavailable_corollaries(self, rotation):
        family, p = rotation
        report = generator_report(family, 1.0, 0.5, p)
        assert report.A_cor1 is None
        assert report.errors["cor1"].startswith("NuMismatch")
        assert report.A_lemma1 is not None and report.A_thm1 is not None
        assert list(report.pairwise_discrepancies) == ["lemma1/thm1"]

    @pytest.mark.parametrize("spec,t,s", [("constant:B=stiff", 1.0, 0.0), ("heat:n=16,basis=fourier", 2.0, 0.0)])
    def test_theorem1_without_invertibility(self, spec, t, s):
        family = family_from_spec(spec)
        assert not family.is_invertible_at(t, s)
        p = default_params(family, t, s)
        a = generator_theorem1(family, t, s, p)
        assert relative_error(a, family.generator_oracle(t)) < ORACLE_TOL
        with pytest.raises(NotInvertible):
            generator_lemma1(family, t, s, p)


class TestDiagnostics:
    """Formal decomposition and algebraic properties."""

    def test_formal_log_fails_on_singular_u(self):
        record = formal_log_decomposition(np.diag([0.0, 1.0]), 2.0)
        product = record.attempt("Log[U I_eta]")
        assert not product.ok
        assert product.error.startswith("OriginEnclosed")
        assert record.defect is None
        assert "Log[U]" in record.failures

    def test_formal_log_holds_when_commuting(self):
        u = np.diag([2.0, 3.0])
        record = formal_log_decomposition(u, select_eta_matrix(u))
        assert record.defect < 1e-10

    def test_formal_log_records_bad_eta(self):
        record = formal_log_decomposition(np.diag([1.0, 2.0]), 2.0)
        assert record.attempt("I_eta") is not None
        assert not record.attempt("I_eta").ok

    def test_commuting_family(self, rotation):
        family, p = rotation
        report = algebraic_property_report(family, [(1.0, 0.5), (1.25, 0.5)], p)
        assert report.commuting
        assert len(report.rows) == 4
        assert all(np.isfinite(v) for v in report.boundedness.values())

    def test_noncommuting_family_is_flagged(self):
        family = family_from_spec("noncommuting:n=3")
        p = default_params(family, 1.0, 0.0)
        report = algebraic_property_report(family, [(1.0, 0.0)], p)
        assert report.noncommuting_flag
        assert not report.commuting


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
