"""
Circular contours for Riesz-Dunford integrals and their certification.

A contour is a circle sampled by the trapezoidal rule. Weights fold the
1/(2 pi i) normalization in, so sum_k w_k f(lambda_k) approximates
(1/2 pi i) * contour integral of f.
"""

import logging
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Any, Dict, Optional, Tuple

import numpy as np

from config.settings import (
    CONTOUR_MARGIN, CONTOUR_MIN_NODES, EIGENCOUNT_INTEGRALITY_TOL, QUADRATURE_NODE_CAP,
    QUADRATURE_NODE_START
)
from linops.dense import mat_solve
from linops.matrix_io import encode_complex
from linops.spectra import SpectralEnclosure
from utils.errors import (
    IllConditioned, InvalidContour, OriginEnclosed, ResolventBlowup, SingularMatrix,
    SpectrumHitsBranchCut
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Contour:
    """Circle |lambda - center| = radius with node_count trapezoidal nodes.

    phase shifts the nodes by a fraction of the node spacing; the rule with
    phase p + 1/2 holds exactly the nodes a doubling adds.
    """
    center: complex
    radius: float
    node_count: int = QUADRATURE_NODE_START
    phase: float = 0.0

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidContour(f"contour radius must be positive, got {self.radius}")
        n = self.node_count
        if n < CONTOUR_MIN_NODES or n & (n - 1):
            raise InvalidContour(f"node_count must be a power of two >= {CONTOUR_MIN_NODES}, got {n}")

    @cached_property
    def nodes(self) -> np.ndarray:
        k = np.arange(self.node_count)
        return self.center + self.radius * np.exp(2j * np.pi * (k + self.phase) / self.node_count)

    @cached_property
    def weights(self) -> np.ndarray:
        return (self.nodes - self.center) / self.node_count

    def closed_path_residual(self) -> float:
        """|contour integral of d lambda| as evaluated by the rule."""
        return float(abs(2j * np.pi * self.weights.sum()))

    def companion(self) -> "Contour":
        """Rule on the midpoints between this contour's nodes."""
        return Contour(self.center, self.radius, self.node_count, self.phase + 0.5)

    def doubled(self) -> "Contour":
        """Rule with twice the nodes, containing this one's nodes."""
        return Contour(self.center, self.radius, 2 * self.node_count, 2 * self.phase)

    @property
    def excludes_origin(self) -> bool:
        return abs(self.center) > self.radius

    @property
    def avoids_branch_cut(self) -> bool:
        meets_cut = self.center.real <= 0 and abs(self.center.imag) <= self.radius
        return self.excludes_origin and not meets_cut

    def to_dict(self) -> Dict[str, Any]:
        return {
            "center": encode_complex(self.center),
            "radius": self.radius,
            "node_count": self.node_count,
            "nodes": [encode_complex(z) for z in self.nodes],
            "weights": [encode_complex(w) for w in self.weights],
        }


@dataclass(frozen=True)
class ContourValidity:
    """Outcome of certifying a contour against a matrix."""
    encloses_spectrum: bool
    excludes_origin: bool
    avoids_branch_cut: bool
    eigencount: int
    min_resolvent_distance: float
    raw_eigencount: complex = 0j
    node_count: int = 0

    @property
    def valid_for_log(self) -> bool:
        return self.encloses_spectrum and self.excludes_origin and self.avoids_branch_cut

    @property
    def integrality_defect(self) -> float:
        return float(abs(self.raw_eigencount - self.eigencount))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "encloses_spectrum": self.encloses_spectrum,
            "excludes_origin": self.excludes_origin,
            "avoids_branch_cut": self.avoids_branch_cut,
            "eigencount": self.eigencount,
            "min_resolvent_distance": self.min_resolvent_distance,
            "integrality_defect": self.integrality_defect,
            "node_count": self.node_count,
        }


def build_log_contour(enc: SpectralEnclosure, margin: Optional[float] = None) -> Contour:
    """
    Circle around an enclosure suitable for the principal logarithm.

    Args:
        enc: Spectral enclosure of the operator
        margin: Relative inflation of the enclosure radius (default CONTOUR_MARGIN)

    Returns:
        Contour with center enc.center and radius enc.radius * (1 + margin)

    Raises:
        OriginEnclosed: If 0 lies in the inflated disc
        SpectrumHitsBranchCut: If the inflated disc meets (-inf, 0]
    """
    margin = CONTOUR_MARGIN if margin is None else margin
    center = complex(enc.center)
    # a point spectrum (radius 0) still needs a circle of positive radius
    floor = 0.05 * margin * max(1.0, abs(center))
    radius = max(enc.radius * (1 + margin), floor)

    if abs(center) <= radius:
        raise OriginEnclosed(
            f"disc |z - ({center:.4g})| <= {radius:.4g} contains 0; translate the operator (+nu I)"
        )
    if center.real <= 0 and abs(center.imag) <= radius:
        raise SpectrumHitsBranchCut(
            f"disc |z - ({center:.4g})| <= {radius:.4g} meets (-inf, 0]; translate the operator (+nu I)"
        )
    return Contour(center, radius)


def node_resolvent(a: np.ndarray, lam: complex) -> np.ndarray:
    """(lam I - A)^-1, refusing singular or ill-conditioned nodes."""
    n = a.shape[0]
    try:
        return mat_solve(lam * np.eye(n) - a, np.eye(n), on_ill_conditioned="raise")
    except (SingularMatrix, IllConditioned) as e:
        raise ResolventBlowup(f"resolvent at node {lam:.6g} blows up: {e}") from e


def validity_from_trace(a: np.ndarray, c: Contour, raw: complex, min_distance: float) -> ContourValidity:
    eigencount = int(round(raw.real))
    validity = ContourValidity(
        encloses_spectrum=False,
        excludes_origin=c.excludes_origin,
        avoids_branch_cut=c.avoids_branch_cut,
        eigencount=eigencount,
        min_resolvent_distance=min_distance,
        raw_eigencount=complex(raw),
        node_count=c.node_count,
    )
    integral = validity.integrality_defect < EIGENCOUNT_INTEGRALITY_TOL
    return replace(validity, encloses_spectrum=integral and eigencount == a.shape[0])


def trace_sum(a: np.ndarray, c: Contour) -> Tuple[complex, float]:
    """Rule value of (1/2 pi i) * contour integral of tr R, and min 1/||R|| over the nodes."""
    raw = 0j
    min_distance = np.inf
    for lam, w in zip(c.nodes, c.weights):
        r = node_resolvent(a, lam)
        raw += w * np.trace(r)
        min_distance = min(min_distance, 1.0 / np.linalg.norm(r))
    return complex(raw), float(min_distance)


def certify_trace(a: np.ndarray, c: Contour, raw: complex, min_distance: float,
                  node_cap: Optional[int] = None) -> ContourValidity:
    """
    Argument-principle certificate from a trace already summed on c.

    The trapezoidal eigencount converges geometrically in the node count, so
    the rule is doubled (companion nodes only) until the count is integral
    or node_cap is reached.
    """
    node_cap = QUADRATURE_NODE_CAP if node_cap is None else node_cap
    validity = validity_from_trace(a, c, raw, min_distance)
    while validity.integrality_defect >= EIGENCOUNT_INTEGRALITY_TOL and 2 * c.node_count <= node_cap:
        extra, extra_distance = trace_sum(a, c.companion())
        raw = 0.5 * (raw + extra)
        min_distance = min(min_distance, extra_distance)
        c = c.doubled()
        validity = validity_from_trace(a, c, raw, min_distance)
    return validity


def validate_contour(a: np.ndarray, c: Contour, node_cap: Optional[int] = None) -> ContourValidity:
    """
    Certify a contour against a matrix by the argument principle.

    The eigencount is (1/2 pi i) * contour integral of tr((lambda I - A)^-1),
    evaluated by the contour's rule and refined by doubling until it is an
    integer to EIGENCOUNT_INTEGRALITY_TOL.

    Raises:
        ResolventBlowup: If a node's resolvent solve is singular or ill-conditioned
    """
    a = np.asarray(a, dtype=np.complex128)
    raw, min_distance = trace_sum(a, c)
    validity = certify_trace(a, c, raw, min_distance, node_cap)
    logger.debug(f"Contour center={c.center:.4g} radius={c.radius:.4g}: eigencount "
                 f"{validity.eigencount}/{a.shape[0]} at {validity.node_count} nodes, "
                 f"raw {validity.raw_eigencount:.3g}")
    return validity
