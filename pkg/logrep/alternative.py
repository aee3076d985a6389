"""
Alternative infinitesimal generators a1(t,s) and a2(t,s).

a1 is kept in its translated form Log[eta K + nu I]; the untranslated
Log[eta K] = Log[eta (I_eta - I)] is attempted only as a cross-check and
does not exist when U(t,s) is non-invertible.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from config.settings import INVERTIBILITY_RATIO
from funcalc.dunford import op_log
from linops.dense import OperatorMatrix, mat_exp, singular_value_ratio
from linops.matrix_io import encode_complex, matrix_to_dict
from logrep.params import ShiftParams, resolvent_pair, shifted_operator
from utils.errors import DirectLogUnavailable, OperatorCalculusError, error_name
from utils.helpers import relative_error

logger = logging.getLogger(__name__)

NORM_BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class AltGenerator:
    """
    Translated logarithm a = Log[T + nu I] with its cross-checks.

    direct holds Log[T] when it exists (a1 only); direct_status carries the
    reason it does not. exp_norm and bound record ||e^a||_2 <= ||I_eta||_2 + |nu|
    for a2.
    """
    name: str
    value: OperatorMatrix
    nu: complex
    direct: Optional[OperatorMatrix] = None
    direct_status: Optional[str] = None
    exp_norm: Optional[float] = None
    bound: Optional[float] = None

    @property
    def bound_holds(self) -> Optional[bool]:
        if self.bound is None:
            return None
        return self.exp_norm <= self.bound + NORM_BOUND_SLACK

    def direct_discrepancy(self) -> Optional[float]:
        """Relative gap between e^a - nu I and e^{Log T}; None without the direct log."""
        if self.direct is None:
            return None
        return relative_error(mat_exp(self.value) - self.nu * np.eye(self.value.shape[0]),
                              mat_exp(self.direct))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "value": matrix_to_dict(self.value),
            "nu": encode_complex(self.nu),
            "direct": None if self.direct is None else matrix_to_dict(self.direct),
            "direct_status": self.direct_status,
            "exp_norm": self.exp_norm,
            "bound": self.bound,
            "bound_holds": self.bound_holds,
        }


def _direct_log(t: np.ndarray):
    """Log[T] or the reason it is unavailable."""
    if singular_value_ratio(t) < INVERTIBILITY_RATIO:
        e = DirectLogUnavailable("eta (I_eta - I) is numerically singular (U(t,s) non-invertible)")
        return None, f"{error_name(e)}: {e}"
    try:
        return op_log(t), None
    except OperatorCalculusError as e:
        wrapped = DirectLogUnavailable(f"{error_name(e)}: {e}")
        return None, f"{error_name(wrapped)}: {wrapped}"


def alt_generator_a1(u_ts: np.ndarray, p: ShiftParams, *, cross_check: bool = True) -> AltGenerator:
    """
    a1 = Log[eta I_eta + (nu - eta) I], the translated Log[eta (I_eta - I)].

    Raises:
        EtaInSpectrum: If I_eta does not exist
        ContourError: If the translated operator has no log contour
    """
    _, k = resolvent_pair(u_ts, p.eta)
    value = op_log(shifted_operator("a1", k, p.eta, p.nu))

    direct, status = (None, None)
    if cross_check:
        direct, status = _direct_log(p.eta * k)
        if status:
            logger.info(f"a1 cross-check skipped: {status}")
    return AltGenerator("a1", value, complex(p.nu), direct, status)


def alt_generator_a2(u_ts: np.ndarray, p: ShiftParams) -> AltGenerator:
    """
    a2 = Log[I_eta + nu I], with the norm bound ||e^a2|| <= ||I_eta|| + |nu| recorded.

    Raises:
        EtaInSpectrum: If I_eta does not exist
        ContourError: If I_eta + nu I has no log contour
    """
    j, k = resolvent_pair(u_ts, p.eta)
    value = op_log(shifted_operator("a2", k, p.eta, p.nu))
    exp_norm = float(np.linalg.norm(mat_exp(value), 2))
    bound = float(np.linalg.norm(j, 2) + abs(p.nu))
    if exp_norm > bound + NORM_BOUND_SLACK:
        logger.warning(f"||e^a2|| = {exp_norm:.6g} exceeds ||I_eta|| + |nu| = {bound:.6g}")
    return AltGenerator("a2", value, complex(p.nu), exp_norm=exp_norm, bound=bound)
