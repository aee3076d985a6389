"""
Logarithm of a logarithm.

A = Log U of a sectorial U has its spectrum in the horizontal strip
|Im z| < pi; Log A then needs A's spectrum off the cut, and otherwise a
translation Log(A + nu I) recorded alongside the result.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from config.settings import SELECTION_JITTER, SELECTION_RETRIES
from funcalc.dunford import op_log
from linops.dense import OperatorMatrix, mat_exp
from linops.matrix_io import encode_complex, matrix_to_dict
from linops.spectra import spectral_enclosure
from logrep.params import ShiftParams, require_loggable
from utils.errors import ContourError, NoNuFound, ResolventBlowup
from utils.helpers import relative_error, retry_with_jitter

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StripLog:
    """
    log_u = Log U and value = Log(log_u + shift I).

    shift is 0 when Log(Log U) exists untranslated. roundtrip_error is
    ||e^value - shift I - log_u||_F / max(||log_u||_F, 1).
    """
    log_u: OperatorMatrix
    value: OperatorMatrix
    shift: complex
    roundtrip_error: float

    @property
    def translated(self) -> bool:
        return self.shift != 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "log_u": matrix_to_dict(self.log_u),
            "value": matrix_to_dict(self.value),
            "shift": encode_complex(self.shift),
            "translated": self.translated,
            "roundtrip_error": self.roundtrip_error,
        }


def select_strip_shift(a: np.ndarray) -> complex:
    """
    Real nu = 2 * (radius + |center|) + 1 of A's enclosure, certified for Log(A + nu I).

    Raises:
        NoNuFound: If no candidate validates
    """
    eye = np.eye(a.shape[0])

    def attempt(nu: float) -> complex:
        require_loggable(a + nu * eye, "Log A + nu I")
        return complex(nu)

    try:
        nu, _ = retry_with_jitter(attempt, 2 * spectral_enclosure(a).reach + 1, retries=SELECTION_RETRIES,
                                  factor=SELECTION_JITTER, retry_on=(ContourError, ResolventBlowup),
                                  label="strip nu")
    except (ContourError, ResolventBlowup) as e:
        raise NoNuFound(f"no translation makes Log(Log U + nu I) computable: {e}") from e
    return nu


def strip_double_log(u: np.ndarray, p: Optional[ShiftParams] = None) -> StripLog:
    """
    Log(Log U), translated by p.nu (or a selected nu) when Log U meets the cut.

    Raises:
        ContourError: If Log U does not exist, or p.nu does not fix the second level
    """
    log_u = op_log(u)
    eye = np.eye(log_u.shape[0])
    try:
        value, shift = op_log(log_u), 0j
    except ContourError as e:
        shift = complex(p.nu) if p is not None else select_strip_shift(log_u)
        logger.info(f"Log(Log U) needs a translation ({type(e).__name__}); using nu = {shift:.6g}")
        value = op_log(log_u + shift * eye)

    roundtrip = relative_error(mat_exp(value) - shift * eye, log_u)
    logger.info(f"Strip log round trip {roundtrip:.3e} (shift {shift:.6g})")
    return StripLog(log_u, value, shift, roundtrip)
