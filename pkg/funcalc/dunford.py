"""
Riesz-Dunford functional calculus on circular contours.

f(A) = (1/2 pi i) * contour integral of f(lambda) (lambda I - A)^-1 d lambda,
evaluated by the trapezoidal rule. The principal logarithm and its Frechet
derivative are the two kernels the logarithmic representation needs; both
refine the rule by node doubling until successive results agree.
"""

import logging
from typing import Callable, Optional, Tuple

import numpy as np

from config.settings import CONTOUR_MARGIN, QUADRATURE_NODE_CAP, QUADRATURE_TOL
from funcalc.contour import Contour, build_log_contour, certify_trace, node_resolvent
from linops.dense import OperatorMatrix, _freeze
from linops.spectra import spectral_enclosure
from utils.errors import InvalidContour, NoConvergence
from utils.helpers import frobenius

logger = logging.getLogger(__name__)

ScalarFunction = Callable[[complex], complex]
# kernel(lam, R) -> contribution before the weight, R = (lam I - A)^-1
Kernel = Callable[[complex, np.ndarray], np.ndarray]


def principal_log(z: complex) -> complex:
    """Log z = log|z| + i arg z with -pi < arg z <= pi."""
    return complex(np.log(complex(z)))


def _contour_sum(a: np.ndarray, c: Contour, kernel: Kernel) -> Tuple[np.ndarray, complex, float]:
    """Sum w_k * kernel(lam_k, R_k) in fixed node order, with the trace sum of R_k alongside."""
    total = np.zeros(a.shape, dtype=np.complex128)
    raw = 0j
    min_distance = np.inf
    for lam, w in zip(c.nodes, c.weights):
        r = node_resolvent(a, lam)
        total += w * kernel(lam, r)
        raw += w * np.trace(r)
        min_distance = min(min_distance, 1.0 / np.linalg.norm(r))
    return total, complex(raw), float(min_distance)


def dunford_integral(f: ScalarFunction, a: np.ndarray, c: Contour) -> OperatorMatrix:
    """
    Riesz-Dunford integral of a scalar function on one contour.

    f must be analytic on and inside c (not checked). The contour is certified
    by the argument principle, starting from the trace summed in the same
    pass over the nodes.

    Raises:
        InvalidContour: If c does not enclose the whole spectrum of a
        ResolventBlowup: If a node's resolvent cannot be formed
    """
    a = np.asarray(a, dtype=np.complex128)
    total, raw, min_distance = _contour_sum(a, c, lambda lam, r: f(lam) * r)
    validity = certify_trace(a, c, raw, min_distance)
    if not validity.encloses_spectrum:
        raise InvalidContour(
            f"contour encloses {validity.eigencount} of {a.shape[0]} eigenvalues "
            f"(raw count {validity.raw_eigencount:.3g})"
        )
    return _freeze(total)


def adaptive_contour_integral(a: np.ndarray, c: Contour, kernel: Kernel, *,
                              tol: Optional[float] = None,
                              node_cap: Optional[int] = None,
                              label: str = "f(A)") -> OperatorMatrix:
    """
    Contour integral refined by node doubling.

    Each doubling adds only the companion nodes and refines the eigencount
    trace with the same resolvents. Stops when
    ||F_2N - F_N||_F <= tol * max(||F_2N||_F, 1); the contour is certified on
    the final rule.

    Raises:
        InvalidContour: If the contour does not enclose the spectrum
        NoConvergence: If doubling would exceed node_cap
    """
    tol = QUADRATURE_TOL if tol is None else tol
    node_cap = QUADRATURE_NODE_CAP if node_cap is None else node_cap
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]

    current, raw, min_distance = _contour_sum(a, c, kernel)
    if abs(raw - n) > 0.5:
        raise InvalidContour(f"{label}: contour encloses about {raw.real:.3g} of {n} eigenvalues")

    while 2 * c.node_count <= node_cap:
        companion, extra, extra_distance = _contour_sum(a, c.companion(), kernel)
        refined = 0.5 * (current + companion)
        raw = 0.5 * (raw + extra)
        min_distance = min(min_distance, extra_distance)
        change = frobenius(refined - current)
        c = c.doubled()
        logger.debug(f"{label}: {c.node_count} nodes, change {change:.3e}")
        if change <= tol * max(frobenius(refined), 1.0):
            validity = certify_trace(a, c, raw, min_distance, node_cap)
            if not validity.encloses_spectrum:
                raise InvalidContour(
                    f"{label}: contour encloses {validity.eigencount} of {n} eigenvalues "
                    f"(integrality defect {validity.integrality_defect:.1e} at {validity.node_count} nodes)"
                )
            return _freeze(refined)
        current = refined

    raise NoConvergence(f"{label}: no convergence to {tol:.0e} within {node_cap} nodes")


def log_contour(a: np.ndarray, margin: Optional[float] = None) -> Contour:
    """Log contour around the spectral enclosure of a (see build_log_contour)."""
    return build_log_contour(spectral_enclosure(a), CONTOUR_MARGIN if margin is None else margin)


def op_log(a: np.ndarray, *, margin: Optional[float] = None,
           tol: Optional[float] = None, node_cap: Optional[int] = None) -> OperatorMatrix:
    """
    Principal logarithm by the Riesz-Dunford integral.

    Args:
        a: Square matrix whose enclosure avoids 0 and the cut (-inf, 0]
        margin: Contour inflation (default CONTOUR_MARGIN)
        tol: Relative convergence tolerance of node doubling (default QUADRATURE_TOL)
        node_cap: Largest admissible node count (default QUADRATURE_NODE_CAP, env OPLOG_NODE_CAP)

    Returns:
        Log A

    Raises:
        SpectrumHitsBranchCut, OriginEnclosed: From the contour builder
        NoConvergence: If the node budget is exhausted
    """
    a = np.asarray(a, dtype=np.complex128)
    c = log_contour(a, margin)
    return adaptive_contour_integral(
        a, c, lambda lam, r: principal_log(lam) * r, tol=tol, node_cap=node_cap, label="Log"
    )


def frechet_log(a: np.ndarray, e: np.ndarray, *, margin: Optional[float] = None,
                tol: Optional[float] = None, node_cap: Optional[int] = None) -> OperatorMatrix:
    """
    Frechet derivative of the principal logarithm at A in direction E.

    L(A, E) = (1/2 pi i) * contour integral of Log(lambda) R E R, R = (lambda I - A)^-1,
    so that d/dt Log M(t) = L(M(t), M'(t)). The direction enters linearly at
    every node, so entries of E far below ||A|| keep their relative accuracy
    when A and E share an eigenbasis.
    """
    a = np.asarray(a, dtype=np.complex128)
    e = np.asarray(e, dtype=np.complex128)
    c = log_contour(a, margin)
    return adaptive_contour_integral(
        a, c, lambda lam, r: principal_log(lam) * (r @ e @ r),
        tol=tol, node_cap=node_cap, label="dLog",
    )


def op_function(f: ScalarFunction, a: np.ndarray, c: Contour, *,
                tol: Optional[float] = None, node_cap: Optional[int] = None) -> OperatorMatrix:
    """f(A) on a caller-supplied contour with node doubling."""
    return adaptive_contour_integral(
        np.asarray(a, dtype=np.complex128), c, lambda lam, r: f(lam) * r,
        tol=tol, node_cap=node_cap, label="f(A)",
    )
