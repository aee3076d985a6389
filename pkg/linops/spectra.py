"""
Spectral enclosures: discs containing every eigenvalue of a matrix.

The Gershgorin disc is the contractual enclosure. When the dimension is
small enough, eigenvalue estimates tighten it; the tightened disc is not
certified here, and contours built on it are certified separately by the
argument principle (funcalc.validate_contour).
"""

import logging
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from config.settings import EIGEN_ESTIMATE_MAX_N

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralEnclosure:
    """Closed disc (center, radius) containing the spectrum."""
    center: complex
    radius: float
    eigen_estimates: Tuple[complex, ...] = ()
    gershgorin_center: complex = 0j
    gershgorin_radius: float = 0.0
    tightened: bool = False

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return abs(z - self.center) <= self.radius * (1 + slack) + slack

    def shifted(self, z: complex) -> "SpectralEnclosure":
        """Enclosure of A + zI."""
        return replace(
            self,
            center=self.center + z,
            eigen_estimates=tuple(e + z for e in self.eigen_estimates),
            gershgorin_center=self.gershgorin_center + z,
        )

    def scaled(self, c: complex) -> "SpectralEnclosure":
        """Enclosure of cA."""
        return replace(
            self,
            center=self.center * c,
            radius=self.radius * abs(c),
            eigen_estimates=tuple(e * c for e in self.eigen_estimates),
            gershgorin_center=self.gershgorin_center * c,
            gershgorin_radius=self.gershgorin_radius * abs(c),
        )

    @property
    def reach(self) -> float:
        """radius + |center|, the scale used by the shift selectors."""
        return self.radius + abs(self.center)


def gershgorin_disc(a: np.ndarray) -> Tuple[complex, float]:
    """Single disc covering the union of the Gershgorin discs."""
    a = np.asarray(a, dtype=np.complex128)
    centers = np.diag(a)
    radii = np.abs(a).sum(axis=1) - np.abs(centers)
    center = complex(centers.mean())
    radius = float(np.max(np.abs(centers - center) + radii))
    return center, radius


def _eigen_disc(eigs: np.ndarray) -> Tuple[complex, float]:
    center = complex(0.5 * (eigs.real.min() + eigs.real.max()),
                     0.5 * (eigs.imag.min() + eigs.imag.max()))
    radius = float(np.max(np.abs(eigs - center)))
    # eigenvalue estimates carry backward error ~ eps * ||A||
    radius = radius * (1 + 1e-8) + 1e-12 * max(1.0, float(np.max(np.abs(eigs))))
    return center, radius


def spectral_enclosure(a: np.ndarray, *, tighten: bool = True) -> SpectralEnclosure:
    """
    Disc containing all eigenvalues of a.

    Args:
        a: Square matrix
        tighten: Use QR-iteration eigenvalue estimates (n <= EIGEN_ESTIMATE_MAX_N)
            to shrink the Gershgorin disc when they allow it

    Returns:
        SpectralEnclosure; never fails (the Gershgorin disc is the fallback)
    """
    a = np.asarray(a, dtype=np.complex128)
    g_center, g_radius = gershgorin_disc(a)
    enclosure = SpectralEnclosure(
        center=g_center, radius=g_radius,
        gershgorin_center=g_center, gershgorin_radius=g_radius,
    )

    if not tighten or a.shape[0] > EIGEN_ESTIMATE_MAX_N:
        return enclosure

    try:
        eigs = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as e:
        logger.warning(f"Eigenvalue estimates unavailable, keeping Gershgorin disc: {e}")
        return enclosure

    eigen_estimates = tuple(complex(e) for e in eigs)
    e_center, e_radius = _eigen_disc(eigs)
    if e_radius < g_radius:
        return replace(enclosure, center=e_center, radius=e_radius,
                       eigen_estimates=eigen_estimates, tightened=True)
    return replace(enclosure, eigen_estimates=eigen_estimates)
