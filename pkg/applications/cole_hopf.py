"""
Cole-Hopf transform between the periodic heat and Burgers equations.

For a positive solution phi of phi_t = mu phi_xx, the field
A = -2 scale * phi_x / phi satisfies A_t + (mu / scale) A A_x = mu A_xx.

    classical   scale = mu          (u_t + u u_x = mu u_xx)
    paper       scale = mu^(-1/2)   (d_x phi = -(mu^(1/2)/2) A phi)

so the two conventions differ pointwise by the factor mu^(3/2). "root" is
accepted as another name for the mu^(-1/2) convention.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, Literal, Optional

import numpy as np
import pandas as pd

from applications.grid import GridFunction, grid_points, spectral_derivative
from config.settings import COLE_HOPF_FLOOR
from families.spectral import differentiation_symbol
from funcalc.derivative import richardson_derivative
from utils.errors import VanishingDenominator
from utils.helpers import frobenius, safe_divide

logger = logging.getLogger(__name__)

Convention = Literal["paper", "root", "classical"]
CONVENTIONS = ("paper", "classical")
CONVENTION_ALIASES = {"root": "paper"}


def canonical_convention(convention: str) -> str:
    """Resolve an alias; unknown names raise ValueError."""
    name = CONVENTION_ALIASES.get(convention, convention)
    if name not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS + tuple(CONVENTION_ALIASES)}, got {convention!r}")
    return name


def convention_scale(mu: float, convention: Convention) -> float:
    """The factor s in A = -2 s phi_x / phi."""
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    if canonical_convention(convention) == "paper":
        return mu ** -0.5
    return float(mu)


def heat_evolve(phi0: GridFunction, mu: float, t: float) -> GridFunction:
    """
    Exact periodic solution of phi_t = mu phi_xx at time t, mode by mode.

    Exact for band-limited data.
    """
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    decay = np.exp(mu * t * differentiation_symbol(phi0.n, phi0.L, 2).real)
    return phi0.with_values(np.fft.ifft(decay * np.fft.fft(phi0.values)))


def positive_heat_profile(n: int, mu: float, t: float, L: float = 2 * np.pi,
                          base: float = 2.0, amplitude: float = 0.5, mode: int = 1) -> GridFunction:
    """base + amplitude cos(2 pi mode x / L) e^{-mu (2 pi mode / L)^2 t}, a positive heat solution."""
    if amplitude >= base:
        raise ValueError("amplitude must stay below base for a positive profile")
    k = 2 * np.pi * mode / L
    x = grid_points(n, L)
    return GridFunction(n, L, base + amplitude * np.cos(k * x) * np.exp(-mu * k * k * t))


def cole_hopf_transform(phi: GridFunction, mu: float, convention: Convention = "paper") -> GridFunction:
    """
    A = -2 s phi_x / phi with s from convention_scale.

    Raises:
        VanishingDenominator: If min |phi| <= COLE_HOPF_FLOOR
    """
    smallest = float(np.min(np.abs(phi.values)))
    if smallest <= COLE_HOPF_FLOOR:
        raise VanishingDenominator(f"min |phi| = {smallest:.3e} at or below {COLE_HOPF_FLOOR:.0e}")
    scale = convention_scale(mu, convention)
    phi_x = spectral_derivative(phi)
    return phi.with_values(-2 * scale * phi_x.values / phi.values)


def identity_residual(phi: GridFunction, a: GridFunction, mu: float, convention: Convention = "paper") -> float:
    """||phi_x + A phi / (2 s)|| / ||phi_x|| (0 for constant phi)."""
    scale = convention_scale(mu, convention)
    phi_x = spectral_derivative(phi).values
    return safe_divide(frobenius(phi_x + a.values * phi.values / (2 * scale)), frobenius(phi_x))


def _time_derivative(field_of_t: Callable[[float], GridFunction], t: float, h0: Optional[float]) -> np.ndarray:
    return richardson_derivative(lambda tau: field_of_t(tau).values, t, h0).value


def burgers_residual(u_of_t: Callable[[float], GridFunction], mu: float, t: float,
                     convention: Convention = "classical", h0: Optional[float] = None) -> float:
    """
    ||u_t + (mu / s) u u_x - mu u_xx|| / ||u||, u_t by Richardson, x-derivatives spectral.

    0 when u vanishes. Stencil failures propagate as EvaluationFailed.
    """
    gamma = mu / convention_scale(mu, convention)
    u = u_of_t(t)
    norm = frobenius(u.values)
    if norm == 0:
        return 0.0
    u_t = _time_derivative(u_of_t, t, h0)
    u_x = spectral_derivative(u).values
    u_xx = spectral_derivative(u, 2).values
    return frobenius(u_t + gamma * u.values * u_x - mu * u_xx) / norm


def heat_residual(phi_of_t: Callable[[float], GridFunction], mu: float, t: float,
                  h0: Optional[float] = None) -> float:
    """||phi_t - mu phi_xx|| / ||phi||."""
    phi = phi_of_t(t)
    phi_t = _time_derivative(phi_of_t, t, h0)
    return safe_divide(frobenius(phi_t - mu * spectral_derivative(phi, 2).values), frobenius(phi.values))


def convention_ratio_defect(phi: GridFunction, mu: float) -> float:
    """max |A_classical - mu^(3/2) A_paper| / max |A_classical| pointwise."""
    classical = cole_hopf_transform(phi, mu, "classical").values
    paper = cole_hopf_transform(phi, mu, "paper").values
    return safe_divide(float(np.max(np.abs(classical - mu ** 1.5 * paper))), float(np.max(np.abs(classical))))


@dataclass(frozen=True)
class ColeHopfReport:
    mu: float
    t: float
    convention: str
    identity_residual: float
    burgers_residual: float
    heat_residual: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mu": self.mu,
            "t": self.t,
            "convention": self.convention,
            "identity_residual": self.identity_residual,
            "burgers_residual": self.burgers_residual,
            "heat_residual": self.heat_residual,
        }


def cole_hopf_report(phi0: GridFunction, mu: float, t: float,
                     convention: Convention = "classical") -> ColeHopfReport:
    """Evolve phi0 by the heat flow, transform, and measure all three residuals at t."""
    convention = canonical_convention(convention)
    def phi_of_t(tau: float) -> GridFunction:
        return heat_evolve(phi0, mu, tau)

    def a_of_t(tau: float) -> GridFunction:
        return cole_hopf_transform(phi_of_t(tau), mu, convention)

    phi = phi_of_t(t)
    report = ColeHopfReport(
        mu=float(mu),
        t=float(t),
        convention=convention,
        identity_residual=identity_residual(phi, a_of_t(t), mu, convention),
        burgers_residual=burgers_residual(a_of_t, mu, t, convention),
        heat_residual=heat_residual(phi_of_t, mu, t),
    )
    logger.info(f"Cole-Hopf ({convention}, mu={mu:g}) at t={t:g}: identity {report.identity_residual:.3e}, "
                f"Burgers {report.burgers_residual:.3e}, heat {report.heat_residual:.3e}")
    return report


def cole_hopf_series(phi0: GridFunction, mu: float, times: Iterable[float],
                     convention: Convention = "classical") -> pd.DataFrame:
    """Residual time series with columns t, identity_residual, burgers_residual."""
    rows = []
    for t in times:
        report = cole_hopf_report(phi0, mu, t, convention)
        rows.append({
            "t": report.t,
            "identity_residual": report.identity_residual,
            "burgers_residual": report.burgers_residual,
        })
    return pd.DataFrame(rows, columns=["t", "identity_residual", "burgers_residual"])
