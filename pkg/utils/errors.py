"""
Exception hierarchy for oplog.

Every failure a numerical routine can signal is a subclass of
OperatorCalculusError, so diagnostics and the CLI can record failures
as data by catching the base class.
"""


class OperatorCalculusError(Exception):
    """Base class for all oplog errors."""


class IllConditionedWarning(UserWarning):
    """A linear solve went through with a condition estimate above the limit."""


# ─── linops ───────────────────────────────────────────────────────────────────

class InvalidMatrix(OperatorCalculusError, ValueError):
    """Input is not a finite square matrix."""


class SingularMatrix(OperatorCalculusError):
    """LU pivot magnitude fell below the pivot floor."""


class IllConditioned(OperatorCalculusError):
    """Condition estimate exceeded the limit and the caller asked to refuse."""

    def __init__(self, message: str, condition: float):
        super().__init__(message)
        self.condition = condition


class MatrixExpOverflow(OperatorCalculusError, OverflowError):
    """The matrix exponential left the floating point range."""


# ─── funcalc ──────────────────────────────────────────────────────────────────

class ContourError(OperatorCalculusError):
    """A contour cannot serve the requested Dunford integral."""


class SpectrumHitsBranchCut(ContourError):
    """The inflated enclosure meets the branch cut (-inf, 0]."""


class OriginEnclosed(ContourError):
    """The inflated enclosure contains the origin."""


class InvalidContour(ContourError):
    """The contour does not enclose the spectrum (argument-principle check)."""


# logrep names the same condition from the caller's side
ContourInvalid = InvalidContour


class ResolventBlowup(OperatorCalculusError):
    """A quadrature node sits on (or numerically at) the spectrum."""


class NoConvergence(OperatorCalculusError):
    """Node doubling exhausted the node budget."""


class EvaluationFailed(OperatorCalculusError):
    """A function sampled on a difference stencil raised."""


class StepUnderflow(OperatorCalculusError, ValueError):
    """Initial difference step is below the step floor."""


# ─── logrep ───────────────────────────────────────────────────────────────────

class EtaInSpectrum(OperatorCalculusError):
    """eta I - U is singular; eta must be reselected."""


class NoEtaFound(OperatorCalculusError):
    """No resolvent parameter survived the retries."""


class NoNuFound(OperatorCalculusError):
    """No translation parameter survived the retries."""


class EtaEqualsOne(OperatorCalculusError, ZeroDivisionError):
    """nu = eta / (1 - eta) is undefined at eta = 1."""


class NotInvertible(OperatorCalculusError):
    """U(t,s) is numerically non-invertible."""


class SingularResolventGap(OperatorCalculusError):
    """I_eta - I is singular."""


class NuMismatch(OperatorCalculusError, ValueError):
    """nu differs from eta / (1 - eta)."""


class SingularCollapse(OperatorCalculusError):
    """I_eta^2 - I_eta is singular."""


class SingularCombination(OperatorCalculusError):
    """e^a - (2 nu + 1) I + (nu^2 + nu) e^-a is singular."""


class DirectLogUnavailable(OperatorCalculusError):
    """Untranslated Log[eta (I_eta - I)] does not exist (informational)."""


# ─── families / applications / cli ───────────────────────────────────────────

class UnknownFamily(OperatorCalculusError, ValueError):
    """Family name or parameter string could not be resolved."""


class VanishingDenominator(OperatorCalculusError):
    """Cole-Hopf input comes too close to zero."""


def error_name(exc: BaseException) -> str:
    """Name recorded in reports for a caught error."""
    return type(exc).__name__
