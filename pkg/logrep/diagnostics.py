"""
Diagnostics around the logarithmic representation.

formal_log_decomposition tries the untranslated splitting
Log U = Log[U I_eta] - Log[I_eta] and records where it breaks down.
algebraic_property_report measures the three conditions under which the
a1/a2 representation of A(t) holds in a module: boundedness of I + nu e^-a,
continuity of a in (t, s), and commutation of e^-a with d a.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from config.settings import TOLERANCES
from funcalc.dunford import op_log
from linops.dense import OperatorMatrix, commutator, mat_exp
from linops.matrix_io import encode_complex, matrix_to_dict
from logrep.generators import GeneratorEvaluation
from logrep.params import ShiftParams, SHIFTED_OPERATORS, resolvent_approx, resolvent_gap, shifted_operator
from utils.errors import OperatorCalculusError, error_name
from utils.helpers import frobenius, safe_divide

logger = logging.getLogger(__name__)

CONTINUITY_STEP = 1e-3


@dataclass(frozen=True)
class LogAttempt:
    """One logarithm the decomposition tried; value is None when it failed."""
    name: str
    value: Optional[OperatorMatrix]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.value is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "ok": self.ok,
            "value": None if self.value is None else matrix_to_dict(self.value),
            "error": self.error,
        }


@dataclass
class FormalLogRecord:
    eta: complex
    attempts: List[LogAttempt] = field(default_factory=list)
    defect: Optional[float] = None

    def attempt(self, name: str) -> Optional[LogAttempt]:
        return next((a for a in self.attempts if a.name == name), None)

    @property
    def failures(self) -> Dict[str, str]:
        return {a.name: a.error for a in self.attempts if not a.ok}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "eta": encode_complex(self.eta),
            "attempts": [a.to_dict() for a in self.attempts],
            "defect": self.defect,
        }


def _try_log(name: str, a: np.ndarray) -> LogAttempt:
    try:
        return LogAttempt(name, op_log(a))
    except OperatorCalculusError as e:
        logger.info(f"{name} unavailable: {error_name(e)}: {e}")
        return LogAttempt(name, None, f"{error_name(e)}: {e}")


def formal_log_decomposition(u_ts: np.ndarray, eta: complex) -> FormalLogRecord:
    """
    Attempt Log[U I_eta], Log[I_eta] and Log U without translation.

    Failures are recorded, never raised. When all three exist, defect is
    ||(Log[U I_eta] - Log[I_eta]) - Log U||_F / max(||Log U||_F, 1).
    """
    record = FormalLogRecord(eta=complex(eta))
    try:
        j = resolvent_approx(u_ts, eta)
    except OperatorCalculusError as e:
        record.attempts.append(LogAttempt("I_eta", None, f"{error_name(e)}: {e}"))
        return record

    record.attempts.extend([
        _try_log("Log[U I_eta]", u_ts @ j),
        _try_log("Log[I_eta]", j),
        _try_log("Log[U]", u_ts),
    ])
    product, resolvent, direct = record.attempts
    if product.ok and resolvent.ok and direct.ok:
        record.defect = frobenius((product.value - resolvent.value) - direct.value) / max(frobenius(direct.value), 1.0)
        logger.info(f"Formal decomposition defect at eta={complex(eta):.6g}: {record.defect:.3e}")
    return record


@dataclass
class PropertyReport:
    """Maxima over the grid of the three module conditions, per alternative generator."""
    params: ShiftParams
    grid: List[Tuple[float, float]]
    boundedness: Dict[str, float] = field(default_factory=dict)
    continuity_t: Dict[str, float] = field(default_factory=dict)
    continuity_s: Dict[str, float] = field(default_factory=dict)
    commutator: Dict[str, float] = field(default_factory=dict)
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def max_commutator(self) -> float:
        return max(self.commutator.values(), default=0.0)

    @property
    def commuting(self) -> bool:
        return self.max_commutator <= TOLERANCES['commutator']

    @property
    def noncommuting_flag(self) -> bool:
        return self.max_commutator >= TOLERANCES['noncommuting_flag']

    def to_dict(self) -> Dict[str, Any]:
        return {
            "params": self.params.to_dict(),
            "grid": [list(point) for point in self.grid],
            "boundedness": dict(self.boundedness),
            "continuity_t": dict(self.continuity_t),
            "continuity_s": dict(self.continuity_s),
            "commutator": dict(self.commutator),
            "commuting": self.commuting,
            "noncommuting_flag": self.noncommuting_flag,
            "rows": list(self.rows),
        }


def _alt_log(family, t: float, s: float, which: str, p: ShiftParams) -> OperatorMatrix:
    k = resolvent_gap(family(t, s), p.eta)
    return op_log(shifted_operator(which, k, p.eta, p.nu))


def algebraic_property_report(family, grid: Iterable[Tuple[float, float]], p: ShiftParams, *,
                              delta: float = CONTINUITY_STEP) -> PropertyReport:
    """
    Boundedness, continuity and commutation of the alternative generators on a grid.

    Per point and per a in (a1, a2): ||I + nu e^-a||_2, the difference
    quotients ||a(t+delta, s) - a(t, s)||_F / delta (and in s), and the
    normalized commutator ||[e^-a, d a]||_F / (||e^-a||_F ||d a||_F).

    Raises:
        OperatorCalculusError: Whatever computing a1, a2 or their derivatives raises
    """
    grid = [(float(t), float(s)) for t, s in grid]
    report = PropertyReport(params=p, grid=grid)
    for which in SHIFTED_OPERATORS:
        report.boundedness[which] = 0.0
        report.continuity_t[which] = 0.0
        report.continuity_s[which] = 0.0
        report.commutator[which] = 0.0

    eye = np.eye(family.dim)
    for t, s in grid:
        ev = GeneratorEvaluation(family, t, s, p)
        for which in SHIFTED_OPERATORS:
            a = ev.log(which)
            da = ev.dlog(which)
            e_minus = mat_exp(-a)

            bounded = float(np.linalg.norm(eye + p.nu * e_minus, 2))
            cont_t = frobenius(_alt_log(family, t + delta, s, which, p) - a) / delta
            cont_s = frobenius(_alt_log(family, t, s + delta, which, p) - a) / delta
            comm = safe_divide(frobenius(commutator(e_minus, da)), frobenius(e_minus) * frobenius(da))

            report.boundedness[which] = max(report.boundedness[which], bounded)
            report.continuity_t[which] = max(report.continuity_t[which], cont_t)
            report.continuity_s[which] = max(report.continuity_s[which], cont_s)
            report.commutator[which] = max(report.commutator[which], comm)
            report.rows.append({
                "t": t, "s": s, "generator": which, "boundedness": bounded,
                "continuity_t": cont_t, "continuity_s": cont_s, "commutator": comm,
            })

    if report.noncommuting_flag:
        logger.warning(f"{family.name}: e^-a and d a do not commute "
                       f"(normalized commutator {report.max_commutator:.3e})")
    logger.info(f"Property report for {family.name} on {len(grid)} grid points: "
                f"max commutator {report.max_commutator:.3e}")
    return report
