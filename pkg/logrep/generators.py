"""
Logarithmic representations of the infinitesimal generator A(t).

All four representations differentiate a logarithm of a translated
resolvent approximation at fixed (eta, nu):

    lemma1   A = (I + nu eta^-1 K^-1) d Log[I_eta + ((nu - eta)/eta) I]
                 - (I + nu I_eta^-1) d Log[I_eta + nu I]
    cor1     A = (I_eta^2 - I_eta)^-1 (I_eta + nu I) d Log[I_eta + nu I],   nu = eta/(1 - eta)
    thm1     A = (I - nu e^-a1)^-1 d a1 - (I - nu e^-a2)^-1 d a2
    cor2     A = (e^a - (2 nu + 1) I + (nu^2 + nu) e^-a)^-1 d a,           a = a2

with K = I_eta - I. In thm1, (I - nu e^-a)^-1 = e^a (e^a - nu I)^-1 and
e^a1 - nu I = eta K, e^a2 - nu I = I_eta; its leading Neumann terms are
I + nu e^-a.

d Log M(t) is the Frechet derivative L(M, M') by contour ("chain", M' from
a Richardson derivative of K) or a Richardson derivative of the contour
logarithm itself ("direct").
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Literal, Optional

import numpy as np

from config.settings import AMPLIFICATION_LIMIT, INVERTIBILITY_RATIO
from funcalc.derivative import richardson_derivative
from funcalc.dunford import frechet_log, op_log
from linops.dense import (
    OperatorMatrix, _freeze, componentwise_condition, mat_exp, mat_solve, singular_value_ratio
)
from linops.matrix_io import matrix_to_dict
from logrep.params import (
    ShiftParams, adaptive_step, certify_stencil, require_collapse, resolvent_gap, resolvent_pair,
    shifted_operator
)
from utils.errors import (
    IllConditioned, NotInvertible, OperatorCalculusError, SingularCollapse, SingularCombination,
    SingularMatrix, SingularResolventGap, error_name
)
from utils.helpers import pairs, relative_discrepancy, relative_error

logger = logging.getLogger(__name__)

DerivativeMode = Literal["chain", "direct"]
REPRESENTATIONS = ("lemma1", "cor1", "thm1", "cor2")


class GeneratorEvaluation:
    """Shared pieces of one (family, t, s, params) evaluation, computed on demand."""

    def __init__(self, family, t: float, s: float, p: ShiftParams,
                 derivative: DerivativeMode = "chain", h0: Optional[float] = None):
        if derivative not in ("chain", "direct"):
            raise ValueError(f"derivative must be 'chain' or 'direct', got {derivative!r}")
        self.family = family
        self.t = float(t)
        self.s = float(s)
        self.p = p
        self.derivative = derivative
        self.u = family(t, s)
        self.j, self.k = resolvent_pair(self.u, p.eta)
        self._h0 = h0
        self._logs: Dict[str, OperatorMatrix] = {}
        self._dlogs: Dict[str, OperatorMatrix] = {}

    @property
    def n(self) -> int:
        return self.u.shape[0]

    @cached_property
    def h0(self) -> float:
        return adaptive_step(self.family, self.t, self.s, self._h0)

    @cached_property
    def dk(self) -> OperatorMatrix:
        """dK/dt at fixed eta."""
        estimate = richardson_derivative(
            lambda tau: resolvent_gap(self.family(tau, self.s), self.p.eta), self.t, self.h0
        )
        logger.debug(f"dK/dt at t={self.t:g}: Richardson correction {estimate.error:.3e}")
        return _freeze(estimate.value)

    def log(self, which: str) -> OperatorMatrix:
        if which not in self._logs:
            self._logs[which] = op_log(shifted_operator(which, self.k, self.p.eta, self.p.nu))
        return self._logs[which]

    def dlog(self, which: str) -> OperatorMatrix:
        """d/dt Log[shifted operator] at fixed (eta, nu)."""
        if which in self._dlogs:
            return self._dlogs[which]

        certify_stencil(self.family, self.t, self.s, self.p, self.h0, need=(which,))
        if self.derivative == "chain":
            direction = self.p.eta * self.dk if which == "a1" else self.dk
            value = frechet_log(shifted_operator(which, self.k, self.p.eta, self.p.nu), direction)
        else:
            def logarithm(tau: float) -> OperatorMatrix:
                k = resolvent_gap(self.family(tau, self.s), self.p.eta)
                return op_log(shifted_operator(which, k, self.p.eta, self.p.nu))
            value = _freeze(richardson_derivative(logarithm, self.t, self.h0).value)

        self._dlogs[which] = value
        return value


def _require_invertible(ev: GeneratorEvaluation) -> None:
    if not ev.family.is_invertible_at(ev.t, ev.s):
        raise NotInvertible(
            f"U({ev.t:g}, {ev.s:g}) of {ev.family.name} is numerically non-invertible "
            f"(sigma_min/sigma_max = {singular_value_ratio(ev.u):.3e} < {INVERTIBILITY_RATIO:.0e})"
        )


def _lemma1(ev: GeneratorEvaluation) -> OperatorMatrix:
    _require_invertible(ev)
    eye = np.eye(ev.n)
    try:
        k_inv = mat_solve(ev.k, eye)
    except SingularMatrix as e:
        raise SingularResolventGap(f"I_eta - I is singular: {e}") from e
    first = (eye + (ev.p.nu / ev.p.eta) * k_inv) @ ev.dlog("lemma1")
    second = (eye + ev.p.nu * mat_solve(ev.j, eye)) @ ev.dlog("a2")
    return _freeze(first - second)


def _corollary1(ev: GeneratorEvaluation) -> OperatorMatrix:
    require_collapse(ev.p)
    _require_invertible(ev)
    # I_eta^2 - I_eta = I_eta K
    collapse = ev.j @ ev.k
    rhs = (ev.j + ev.p.nu * np.eye(ev.n)) @ ev.dlog("a2")
    try:
        return mat_solve(collapse, rhs)
    except SingularMatrix as e:
        raise SingularCollapse(f"I_eta^2 - I_eta is singular: {e}") from e


def _theorem1(ev: GeneratorEvaluation) -> OperatorMatrix:
    # e^a1 - nu I = eta K is as ill-conditioned as U itself; accepted only while
    # the solve stays componentwise well-conditioned (U diagonal in its basis)
    terms = []
    for which, base in (("a1", ev.p.eta * ev.k), ("a2", ev.j)):
        try:
            solved = mat_solve(base, ev.dlog(which), on_ill_conditioned="ignore")
        except SingularMatrix as e:
            raise SingularResolventGap(f"e^{which} - nu I is singular: {e}") from e
        amplification = componentwise_condition(base, solved)
        if amplification > AMPLIFICATION_LIMIT:
            raise IllConditioned(
                f"e^{which} - nu I amplifies rounding in d{which} by {amplification:.3e} "
                f"(limit {AMPLIFICATION_LIMIT:.0e}) for {ev.family.name} at ({ev.t:g}, {ev.s:g})",
                amplification,
            )
        terms.append(mat_exp(ev.log(which)) @ solved)
    return _freeze(terms[0] - terms[1])


def _corollary2(ev: GeneratorEvaluation) -> OperatorMatrix:
    require_collapse(ev.p)
    a = ev.log("a2")
    nu = ev.p.nu
    combination = mat_exp(a) - (2 * nu + 1) * np.eye(ev.n) + (nu * nu + nu) * mat_exp(-a)
    try:
        return mat_solve(combination, ev.dlog("a2"))
    except SingularMatrix as e:
        raise SingularCombination(f"e^a - (2nu+1)I + (nu^2+nu)e^-a is singular: {e}") from e


_BUILDERS = {
    "lemma1": _lemma1,
    "cor1": _corollary1,
    "thm1": _theorem1,
    "cor2": _corollary2,
}


def generator_lemma1(family, t: float, s: float, p: ShiftParams, *,
                     derivative: DerivativeMode = "chain", h0: Optional[float] = None) -> OperatorMatrix:
    """
    A(t) from the invertible-U representation.

    Raises:
        NotInvertible: If U(t,s) is numerically non-invertible
        SingularResolventGap: If I_eta - I is singular
        ContourError: If a log contour fails at t or on the stencil
    """
    return _lemma1(GeneratorEvaluation(family, t, s, p, derivative, h0))


def generator_corollary1(family, t: float, s: float, p: ShiftParams, *,
                         derivative: DerivativeMode = "chain", h0: Optional[float] = None) -> OperatorMatrix:
    """
    A(t) = (I_eta^2 - I_eta)^-1 (I_eta + nu I) d Log[I_eta + nu I], nu = eta/(1 - eta).

    Raises:
        NuMismatch: If nu != eta / (1 - eta)
        NotInvertible: If U(t,s) is numerically non-invertible
        SingularCollapse: If I_eta^2 - I_eta is singular
    """
    return _corollary1(GeneratorEvaluation(family, t, s, p, derivative, h0))


def generator_theorem1(family, t: float, s: float, p: ShiftParams, *,
                       derivative: DerivativeMode = "chain", h0: Optional[float] = None) -> OperatorMatrix:
    """
    A(t) from the alternative generators a1 and a2; U(t,s) need not be invertible.

    Raises:
        ContourError: If a1 or a2 has no log contour at t or on the stencil
        IllConditioned: If a prefactor solve would amplify rounding beyond AMPLIFICATION_LIMIT
    """
    return _theorem1(GeneratorEvaluation(family, t, s, p, derivative, h0))


def generator_corollary2(family, t: float, s: float, p: ShiftParams, *,
                         derivative: DerivativeMode = "chain", h0: Optional[float] = None) -> OperatorMatrix:
    """
    A(t) = (e^a - (2 nu + 1) I + (nu^2 + nu) e^-a)^-1 d a with a = a2, nu = eta/(1 - eta).

    Raises:
        NuMismatch: If nu != eta / (1 - eta)
        SingularCombination: If the combination is singular
    """
    return _corollary2(GeneratorEvaluation(family, t, s, p, derivative, h0))


@dataclass
class GeneratorReport:
    """All representations of A(t) at one (t, s), cross-compared."""
    t: float
    s: float
    params: ShiftParams
    collapse_params: Optional[ShiftParams] = None
    generators: Dict[str, Optional[OperatorMatrix]] = field(default_factory=dict)
    errors: Dict[str, str] = field(default_factory=dict)
    oracle: Optional[OperatorMatrix] = None
    pairwise_discrepancies: Dict[str, float] = field(default_factory=dict)
    oracle_errors: Dict[str, float] = field(default_factory=dict)
    derivative: str = "chain"

    @property
    def A_lemma1(self) -> Optional[OperatorMatrix]:
        return self.generators.get("lemma1")

    @property
    def A_cor1(self) -> Optional[OperatorMatrix]:
        return self.generators.get("cor1")

    @property
    def A_thm1(self) -> Optional[OperatorMatrix]:
        return self.generators.get("thm1")

    @property
    def A_cor2(self) -> Optional[OperatorMatrix]:
        return self.generators.get("cor2")

    def max_discrepancy(self) -> Optional[float]:
        return max(self.pairwise_discrepancies.values(), default=None)

    def max_oracle_error(self) -> Optional[float]:
        return max(self.oracle_errors.values(), default=None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "s": self.s,
            "derivative": self.derivative,
            "params": self.params.to_dict(),
            "collapse_params": None if self.collapse_params is None else self.collapse_params.to_dict(),
            "generators": {
                name: None if value is None else matrix_to_dict(value)
                for name, value in self.generators.items()
            },
            "errors": dict(self.errors),
            "oracle": None if self.oracle is None else matrix_to_dict(self.oracle),
            "pairwise_discrepancies": dict(self.pairwise_discrepancies),
            "oracle_errors": dict(self.oracle_errors),
        }


def generator_report(family, t: float, s: float, p: ShiftParams, *,
                     collapse: Optional[ShiftParams] = None,
                     derivative: DerivativeMode = "chain",
                     h0: Optional[float] = None,
                     representations=REPRESENTATIONS) -> GeneratorReport:
    """
    Run every requested representation and compare them.

    lemma1 and thm1 use p; the corollaries use collapse when given (they need
    nu = eta/(1 - eta)), otherwise p. A failing representation is recorded by
    error name and message instead of raising.
    """
    report = GeneratorReport(t=float(t), s=float(s), params=p, collapse_params=collapse,
                             derivative=derivative)
    evaluations: Dict[int, GeneratorEvaluation] = {}

    for name in representations:
        params = collapse if (collapse is not None and name in ("cor1", "cor2")) else p
        try:
            key = id(params)
            if key not in evaluations:
                evaluations[key] = GeneratorEvaluation(family, t, s, params, derivative, h0)
            report.generators[name] = _BUILDERS[name](evaluations[key])
        except OperatorCalculusError as e:
            report.generators[name] = None
            report.errors[name] = f"{error_name(e)}: {e}"
            logger.info(f"{name} unavailable for {family.name} at ({t:g}, {s:g}): {error_name(e)}")

    present = {name: a for name, a in report.generators.items() if a is not None}
    for (name_a, a), (name_b, b) in pairs(present.items()):
        report.pairwise_discrepancies[f"{name_a}/{name_b}"] = relative_discrepancy(a, b)

    if family.generator_oracle is not None:
        report.oracle = family.generator_oracle(t)
        for name, a in present.items():
            report.oracle_errors[name] = relative_error(a, report.oracle)

    logger.info(f"Generator report for {family.name} at ({t:g}, {s:g}): "
                f"{len(present)}/{len(representations)} representations, "
                f"max discrepancy {report.max_discrepancy()}, max oracle error {report.max_oracle_error()}")
    return report
