"""
Resolvent approximation of U(t,s) and selection of the shift parameters.

I_eta = (I - U/eta)^-1 is the resolvent approximation of U(t,s), and
K = I_eta - I = (eta I - U)^-1 U its resolvent gap. The translation nu moves
the spectra of eta K + nu I (for a1) and I_eta + nu I (for a2) into the
right half-plane so that their principal logarithms exist.
"""

import logging
from dataclasses import dataclass, replace
from typing import Any, Dict, Iterable, Optional, Tuple

import numpy as np

from config.settings import (
    NU_MATCH_TOL, RICHARDSON_STEP_FLOOR, SELECTION_JITTER, SELECTION_RETRIES,
    STENCIL_MAX_RELATIVE_CHANGE
)
from funcalc.contour import build_log_contour, validate_contour
from funcalc.derivative import default_step, stencil
from linops.dense import OperatorMatrix, _freeze, mat_solve
from linops.matrix_io import encode_complex
from linops.spectra import spectral_enclosure
from utils.errors import (
    ContourError, EtaEqualsOne, EtaInSpectrum, IllConditioned, NoEtaFound, NoNuFound,
    NuMismatch, ResolventBlowup, SingularMatrix, StepUnderflow
)
from utils.helpers import frobenius, retry_with_jitter

logger = logging.getLogger(__name__)

SHIFTED_OPERATORS = ("a1", "a2")


@dataclass(frozen=True)
class ShiftParams:
    """
    Resolvent parameter eta and translation parameter nu with their certificates.

    The certificates refer to the (t, s) at which the parameters were certified.
    """
    eta: complex
    nu: complex
    eta_in_resolvent_set: bool = False
    nu_valid_for_a1: bool = False
    nu_valid_for_a2: bool = False

    @property
    def collapses(self) -> bool:
        """True when nu = eta / (1 - eta), the corollary relation."""
        try:
            return nu_matches(self.eta, self.nu)
        except EtaEqualsOne:
            return False

    def with_nu(self, nu: complex) -> "ShiftParams":
        """Same eta, new (uncertified) nu."""
        return replace(self, nu=complex(nu), nu_valid_for_a1=False, nu_valid_for_a2=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "eta": encode_complex(self.eta),
            "nu": encode_complex(self.nu),
            "eta_in_resolvent_set": self.eta_in_resolvent_set,
            "nu_valid_for_a1": self.nu_valid_for_a1,
            "nu_valid_for_a2": self.nu_valid_for_a2,
        }


def _solve_or_reselect(a: np.ndarray, b: np.ndarray, eta: complex) -> OperatorMatrix:
    try:
        return mat_solve(a, b, on_ill_conditioned="raise")
    except (SingularMatrix, IllConditioned) as e:
        raise EtaInSpectrum(f"eta = {eta:.6g} is (numerically) in the spectrum of U: {e}") from e


def resolvent_approx(u: np.ndarray, eta: complex) -> OperatorMatrix:
    """
    I_eta = (I - U/eta)^-1.

    Raises:
        EtaInSpectrum: If eta = 0 or eta I - U is singular or ill-conditioned
    """
    eta = complex(eta)
    if eta == 0:
        raise EtaInSpectrum("eta must be nonzero")
    n = u.shape[0]
    return _solve_or_reselect(np.eye(n) - u / eta, np.eye(n), eta)


def resolvent_gap(u: np.ndarray, eta: complex) -> OperatorMatrix:
    """
    K = I_eta - I = eta^-1 U I_eta, computed as (eta I - U)^-1 U in one solve.

    Raises:
        EtaInSpectrum: As resolvent_approx
    """
    eta = complex(eta)
    if eta == 0:
        raise EtaInSpectrum("eta must be nonzero")
    return _solve_or_reselect(eta * np.eye(u.shape[0]) - u, u, eta)


def resolvent_pair(u: np.ndarray, eta: complex) -> Tuple[OperatorMatrix, OperatorMatrix]:
    """(I_eta, K) with I_eta = I + K, consistent to the last bit."""
    k = resolvent_gap(u, eta)
    return _freeze(np.eye(u.shape[0]) + k), k


def resolvent_identity_defect(u: np.ndarray, eta: complex) -> float:
    """||(I_eta - I) - eta^-1 U I_eta||_F / ||I_eta||_F."""
    j = resolvent_approx(u, eta)
    return frobenius((j - np.eye(u.shape[0])) - (u @ j) / complex(eta)) / frobenius(j)


def shifted_operator(which: str, k: np.ndarray, eta: complex, nu: complex) -> OperatorMatrix:
    """
    The translated operator whose logarithm defines a1 or a2.

    a1: eta I_eta + (nu - eta) I = eta K + nu I
    a2: I_eta + nu I = K + (1 + nu) I
    lemma1: I_eta + ((nu - eta)/eta) I = K + (nu/eta) I
    """
    eye = np.eye(k.shape[0])
    if which == "a1":
        return _freeze(eta * k + nu * eye)
    if which == "a2":
        return _freeze(k + (1 + nu) * eye)
    if which == "lemma1":
        return _freeze(k + (nu / eta) * eye)
    raise ValueError(f"unknown shifted operator {which!r}")


def nu_from_eta(eta: complex) -> complex:
    """
    nu = eta / (1 - eta), the translation under which the representations collapse.

    Raises:
        EtaEqualsOne: If eta = 1
    """
    eta = complex(eta)
    if eta == 1:
        raise EtaEqualsOne("nu = eta / (1 - eta) is undefined at eta = 1")
    return eta / (1 - eta)


def nu_matches(eta: complex, nu: complex) -> bool:
    target = nu_from_eta(eta)
    return abs(complex(nu) - target) <= NU_MATCH_TOL * max(abs(target), 1.0)


def require_collapse(p: ShiftParams) -> None:
    """
    Raises:
        NuMismatch: If p.nu differs from eta / (1 - eta)
    """
    target = nu_from_eta(p.eta)
    if not nu_matches(p.eta, p.nu):
        raise NuMismatch(f"nu = {p.nu:.6g} but eta / (1 - eta) = {target:.6g}")


def require_loggable(a: np.ndarray, label: str) -> None:
    """Build the log contour of a and certify it; raises ContourError or ResolventBlowup."""
    c = build_log_contour(spectral_enclosure(a))
    validity = validate_contour(a, c)
    if not validity.valid_for_log:
        raise ContourError(f"{label}: contour encloses {validity.eigencount} of {a.shape[0]} eigenvalues")


def certify_params(u: np.ndarray, eta: complex, nu: complex) -> ShiftParams:
    """
    Certify (eta, nu) against U(t,s); failures become false certificates.
    """
    eta, nu = complex(eta), complex(nu)
    try:
        k = resolvent_gap(u, eta)
    except EtaInSpectrum as e:
        logger.warning(f"eta = {eta:.6g} rejected: {e}")
        return ShiftParams(eta, nu)

    valid = {}
    for which in SHIFTED_OPERATORS:
        try:
            require_loggable(shifted_operator(which, k, eta, nu), which)
            valid[which] = True
        except (ContourError, ResolventBlowup) as e:
            logger.info(f"nu = {nu:.6g} not valid for {which}: {e}")
            valid[which] = False
    return ShiftParams(eta, nu, True, valid["a1"], valid["a2"])


def select_eta_matrix(u: np.ndarray) -> complex:
    """select_eta on a bare matrix U(t,s)."""
    start = 2 * spectral_enclosure(u).reach + 1

    def attempt(eta: float) -> complex:
        resolvent_gap(u, eta)
        return complex(eta)

    try:
        eta, _ = retry_with_jitter(attempt, start, retries=SELECTION_RETRIES,
                                   factor=SELECTION_JITTER, retry_on=(EtaInSpectrum,), label="eta")
    except EtaInSpectrum as e:
        raise NoEtaFound(f"no eta in the resolvent set after {SELECTION_RETRIES} retries: {e}") from e
    return eta


def select_eta(family, t: float, s: float) -> complex:
    """
    Real eta = 2 * (enclosure radius + |center|) + 1 of U(t,s), jittered on collision.

    Raises:
        NoEtaFound: If every candidate is in the spectrum
    """
    eta = select_eta_matrix(family(t, s))
    logger.info(f"Selected eta = {eta.real:.6g} for {family.name} at (t, s) = ({t:g}, {s:g})")
    return eta


def select_nu(u: np.ndarray, eta: complex) -> complex:
    """
    Real nu > 0 making both eta K + nu I and I_eta + nu I loggable.

    Starts from 2 * max(reach) + 1 over the enclosures of eta K and I_eta and
    certifies both contours by the argument principle.

    Raises:
        EtaInSpectrum: If I_eta does not exist
        NoNuFound: If no candidate validates both contours
    """
    eta = complex(eta)
    k = resolvent_gap(u, eta)
    j = np.eye(u.shape[0]) + k
    reach = max(spectral_enclosure(eta * k).reach, spectral_enclosure(j).reach)

    def attempt(nu: float) -> complex:
        for which in SHIFTED_OPERATORS:
            require_loggable(shifted_operator(which, k, eta, nu), which)
        return complex(nu)

    try:
        nu, _ = retry_with_jitter(attempt, 2 * reach + 1, retries=SELECTION_RETRIES,
                                  factor=SELECTION_JITTER, retry_on=(ContourError, ResolventBlowup),
                                  label="nu")
    except (ContourError, ResolventBlowup) as e:
        raise NoNuFound(f"no translation validates both logs after {SELECTION_RETRIES} retries: {e}") from e
    return nu


def select_collapse_eta(u: np.ndarray) -> complex:
    """
    Real eta for which nu = eta / (1 - eta) keeps I_eta + nu I loggable.

    I_eta + nu I = (eta / (eta - 1)) (U - I)(eta I - U)^-1, so eta takes the
    sign of Re(center) of the enclosure of U - I: positive beyond the spectrum
    for growing evolutions, negative for decaying ones.

    Raises:
        NoEtaFound: If no candidate works (e.g. U = I, where I_eta + nu I = 0)
    """
    center = spectral_enclosure(u - np.eye(u.shape[0])).center
    sign = 1.0 if center.real >= 0 else -1.0
    start = sign * (2 * spectral_enclosure(u).reach + 1)

    def attempt(eta: float) -> complex:
        k = resolvent_gap(u, eta)
        require_loggable(shifted_operator("a2", k, eta, nu_from_eta(eta)), "a2")
        return complex(eta)

    try:
        eta, _ = retry_with_jitter(attempt, start, retries=SELECTION_RETRIES, factor=SELECTION_JITTER,
                                   retry_on=(EtaInSpectrum, EtaEqualsOne, ContourError, ResolventBlowup),
                                   label="collapse eta")
    except (EtaInSpectrum, EtaEqualsOne, ContourError, ResolventBlowup) as e:
        raise NoEtaFound(f"no eta with a loggable I_eta + eta/(1 - eta) I: {e}") from e
    return eta


def default_params(family, t: float, s: float, *, eta: Optional[complex] = None,
                   nu: Optional[complex] = None) -> ShiftParams:
    """Select whatever is not given and certify at (t, s)."""
    u = family(t, s)
    eta = select_eta(family, t, s) if eta is None else complex(eta)
    nu = select_nu(u, eta) if nu is None else complex(nu)
    p = certify_params(u, eta, nu)
    logger.info(f"Parameters for {family.name} at ({t:g}, {s:g}): eta={eta:.6g}, nu={nu:.6g}, "
                f"a1 valid={p.nu_valid_for_a1}, a2 valid={p.nu_valid_for_a2}")
    return p


def collapse_params(family, t: float, s: float, *, eta: Optional[complex] = None) -> ShiftParams:
    """Parameters with nu = eta / (1 - eta), for the corollary representations."""
    u = family(t, s)
    eta = select_collapse_eta(u) if eta is None else complex(eta)
    return certify_params(u, eta, nu_from_eta(eta))


def adaptive_step(family, t: float, s: float, h0: Optional[float] = None) -> float:
    """
    Largest h <= h0 with ||U(t+h,s) - U(t-h,s)||_F / (2 ||U(t,s)||_F) below the change limit.

    Raises:
        StepUnderflow: If halving reaches the Richardson step floor
    """
    h = default_step(t) if h0 is None else h0
    scale = max(frobenius(family(t, s)), np.finfo(float).tiny)
    while frobenius(family(t + h, s) - family(t - h, s)) / (2 * scale) > STENCIL_MAX_RELATIVE_CHANGE:
        h /= 2
        if h < RICHARDSON_STEP_FLOOR:
            raise StepUnderflow(f"U changes too fast at t = {t:g} for any admissible step")
    return h


def certify_stencil(family, t: float, s: float, p: ShiftParams, h0: float,
                    need: Iterable[str] = SHIFTED_OPERATORS) -> None:
    """
    Check eta and the needed log contours at every point of the difference stencil.

    Raises:
        EtaInSpectrum: If eta I - U(tau, s) is singular at a stencil point
        ContourError: If a shifted operator has no log contour at a stencil point
    """
    need = tuple(need)
    for tau in stencil(t, h0):
        k = resolvent_gap(family(tau, s), p.eta)
        for which in need:
            build_log_contour(spectral_enclosure(shifted_operator(which, k, p.eta, p.nu)))
    logger.debug(f"Parameters certified on the stencil around t={t:g} (h0={h0:.3e}, {need})")

