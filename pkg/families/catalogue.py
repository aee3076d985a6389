"""
Catalogue of two-parameter evolution families U(t,s).

Every family is linear and finite-dimensional; U(t,s) is an OperatorMatrix
evaluated on demand. The domain condition on D(U(t,s)) holds trivially
here since every domain is the whole space.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from config.settings import INVERTIBILITY_RATIO, STEPPER_ATOL, STEPPER_RTOL
from families.spectral import differentiation_matrix
from linops.dense import OperatorMatrix, as_operator, mat_exp, singular_value_ratio
from utils.errors import UnknownFamily
from utils.helpers import frobenius

logger = logging.getLogger(__name__)

Evaluator = Callable[[float, float], OperatorMatrix]
Oracle = Callable[[float], OperatorMatrix]


@dataclass(frozen=True)
class EvolutionFamily:
    """
    Two-parameter evolution family (t, s) -> U(t, s).

    commuting records whether U(t,s) commutes with its generator A(t);
    invertible whether U(t,s) is invertible in exact arithmetic (the
    numerical certificate is is_invertible_at).
    """
    name: str
    dim: int
    evaluator: Evaluator = field(repr=False)
    generator_oracle: Optional[Oracle] = field(default=None, repr=False)
    commuting: bool = True
    invertible: bool = True
    t_range: Tuple[float, float] = (0.0, 1.0)
    params: Dict[str, object] = field(default_factory=dict, compare=False)

    def __call__(self, t: float, s: float) -> OperatorMatrix:
        return self.evaluator(float(t), float(s))

    def is_invertible_at(self, t: float, s: float) -> bool:
        """sigma_min(U) >= INVERTIBILITY_RATIO * sigma_max(U)."""
        return singular_value_ratio(self(t, s)) >= INVERTIBILITY_RATIO

    def semigroup_defect(self, t: float, r: float, s: float) -> float:
        """||U(t,r)U(r,s) - U(t,s)||_F / ||U(t,s)||_F."""
        target = self(t, s)
        return frobenius(self(t, r) @ self(r, s) - target) / frobenius(target)

    def identity_defect(self, t: float) -> float:
        """||U(t,t) - I||_F."""
        return frobenius(self(t, t) - np.eye(self.dim))

    def inverse_defect(self, t: float, s: float) -> float:
        """||U(t,s)U(s,t) - I||_F."""
        return frobenius(self(t, s) @ self(s, t) - np.eye(self.dim))

    def describe(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "dim": self.dim,
            "commuting": self.commuting,
            "invertible": self.invertible,
            "t_range": list(self.t_range),
            "has_oracle": self.generator_oracle is not None,
            "params": {k: v for k, v in self.params.items() if isinstance(v, (int, float, str))},
        }


def _cached(evaluator: Evaluator) -> Evaluator:
    cached = lru_cache(maxsize=256)(evaluator)
    return lambda t, s: cached(float(t), float(s))


def family_constant(b: np.ndarray, name: str = "constant") -> EvolutionFamily:
    """U(t,s) = e^{(t-s)B}, generator B."""
    b = as_operator(b, name="B")
    logger.info(f"Building constant-generator family {name} (n={b.shape[0]})")
    return EvolutionFamily(
        name=name,
        dim=b.shape[0],
        evaluator=_cached(lambda t, s: mat_exp((t - s) * b)),
        generator_oracle=lambda t: b,
        commuting=True,
        invertible=True,
        params={"B": b},
    )


def family_commuting_time_dependent(b: np.ndarray, f: Callable[[float], float],
                                    antiderivative: Callable[[float], float],
                                    name: str = "commuting") -> EvolutionFamily:
    """
    U(t,s) = e^{(F(t) - F(s))B}, generator f(t)B.

    Args:
        b: Fixed matrix B
        f: Scalar rate f(t)
        antiderivative: F with F' = f, supplied in closed form
    """
    b = as_operator(b, name="B")
    return EvolutionFamily(
        name=name,
        dim=b.shape[0],
        evaluator=_cached(lambda t, s: mat_exp((antiderivative(t) - antiderivative(s)) * b)),
        generator_oracle=lambda t: as_operator(f(t) * b),
        commuting=True,
        invertible=True,
        params={"B": b},
    )


def _multiplier_family(name: str, symbol: np.ndarray, basis: str, n: int, L: float,
                       generator: np.ndarray, invertible: bool, t_range, params) -> EvolutionFamily:
    b = as_operator(generator, name="B")
    return EvolutionFamily(
        name=name,
        dim=n,
        evaluator=_cached(lambda t, s: mat_exp((t - s) * b)),
        generator_oracle=lambda t: b,
        commuting=True,
        invertible=invertible,
        t_range=t_range,
        params={**params, "n": n, "L": L, "basis": basis, "B": b,
                "spectral_radius": float(np.max(np.abs(symbol)))},
    )


def family_advection(n: int, c: float = 1.0, L: float = 2 * np.pi,
                     basis: str = "physical") -> EvolutionFamily:
    """
    Periodic spectral discretization of du/dt = c du/dx.

    B = c D is skew-Hermitian with purely imaginary spectrum {i c k 2pi/L}, so
    U(t,s) is unitary while ||B|| grows linearly in n: a non-sectorial,
    norm-preserving evolution whose generator emulates an unbounded one.
    """
    if n < 8 or n % 2:
        raise UnknownFamily(f"advection needs an even n >= 8, got {n}")
    b = c * differentiation_matrix(n, L, 1, basis)
    symbol = c * np.diag(differentiation_matrix(n, L, 1, "fourier"))
    logger.info(f"Building advection family n={n}, c={c}, L={L:.6g}, basis={basis}")
    return _multiplier_family("advection", symbol, basis, n, L, b, True, (0.0, 1.0), {"c": c})


def family_heat(n: int, mu: float = 1.0, L: float = 2 * np.pi,
                basis: str = "physical") -> EvolutionFamily:
    """
    Periodic spectral discretization of du/dt = mu d2u/dx2.

    Spectrum {-mu k^2 (2pi/L)^2}; singular values decay with t - s, so
    invertibility is certified per (t, s) by is_invertible_at.
    """
    if n < 8 or n % 2:
        raise UnknownFamily(f"heat needs an even n >= 8, got {n}")
    if mu <= 0:
        raise UnknownFamily(f"heat needs mu > 0, got {mu}")
    b = mu * differentiation_matrix(n, L, 2, basis)
    symbol = mu * np.diag(differentiation_matrix(n, L, 2, "fourier"))
    logger.info(f"Building heat family n={n}, mu={mu}, L={L:.6g}, basis={basis}")
    return _multiplier_family("heat", symbol, basis, n, L, b, False, (0.0, 2.0), {"mu": mu})


def noncommuting_generators(n: int, seed: int = 0, commuting_control: bool = False):
    """B0, B1 for A(t) = B0 + t B1; B1 = B0 / 2 in the commuting control."""
    rng = np.random.default_rng(seed)
    b0 = rng.standard_normal((n, n)) / np.sqrt(n)
    b1 = 0.5 * b0 if commuting_control else rng.standard_normal((n, n)) / np.sqrt(n)
    return as_operator(b0), as_operator(b1)


def family_noncommuting(n: int = 3, seed: int = 0, commuting_control: bool = False) -> EvolutionFamily:
    """
    U(t,s) from integrating dU/dt = A(t)U, U(s,s) = I, with A(t) = B0 + t B1.

    Generic B0, B1 do not commute, so U(t,s) does not commute with A(t):
    the negative control for the commuting hypothesis.
    """
    if n < 2:
        raise UnknownFamily(f"noncommuting needs n >= 2, got {n}")
    b0, b1 = noncommuting_generators(n, seed, commuting_control)
    eye = np.eye(n, dtype=np.complex128).ravel()

    def rhs(t, y):
        return ((b0 + t * b1) @ y.reshape(n, n)).ravel()

    def evaluate(t: float, s: float) -> OperatorMatrix:
        if t == s:
            return as_operator(np.eye(n))
        sol = solve_ivp(rhs, (s, t), eye, method='DOP853', rtol=STEPPER_RTOL, atol=STEPPER_ATOL)
        if not sol.success:
            raise RuntimeError(f"time stepping failed on ({t}, {s}): {sol.message}")
        return as_operator(sol.y[:, -1].reshape(n, n))

    name = "noncommuting-control" if commuting_control else "noncommuting"
    return EvolutionFamily(
        name=name,
        dim=n,
        evaluator=_cached(evaluate),
        generator_oracle=lambda t: as_operator(b0 + t * b1),
        commuting=commuting_control,
        invertible=True,
        params={"n": n, "seed": seed, "B0": b0, "B1": b1},
    )


# ─── Named presets and the family-spec parser ────────────────────────────────

MATRIX_PRESETS: Dict[str, np.ndarray] = {
    "zero": np.zeros((2, 2)),
    "rot": np.array([[0.0, 1.0], [-1.0, 0.0]]),
    "nilpotent": np.array([[0.0, 1.0], [0.0, 0.0]]),
    "growth": np.diag([1.0, 2.0]),
    "mixed": np.diag([1.0, -0.5]),
    "stiff": np.diag([-50.0, 1.0]),
}

RATE_PROFILES: Dict[str, Tuple[Callable[[float], float], Callable[[float], float]]] = {
    "square": (lambda t: 2.0 * t, lambda t: t * t),
    "linear": (lambda t: 1.0, lambda t: t),
    "cos": (lambda t: float(np.cos(t)), lambda t: float(np.sin(t))),
}


def preset_matrix(name: str, n: int = 4, seed: int = 0) -> np.ndarray:
    """Preset B by name; "random" draws a seeded n x n matrix."""
    if name == "random":
        return np.random.default_rng(seed).standard_normal((n, n)) / np.sqrt(n)
    if name not in MATRIX_PRESETS:
        raise UnknownFamily(f"unknown matrix preset {name!r}; choose from {sorted(MATRIX_PRESETS)} or random")
    return MATRIX_PRESETS[name]


def _parse_params(text: str) -> Dict[str, str]:
    params = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in item:
            raise UnknownFamily(f"malformed family parameter {item!r} (expected key=value)")
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()
    return params


def family_from_spec(spec: str) -> EvolutionFamily:
    """
    Build a family from "name:key=value,...", e.g. "advection:n=16,c=1".

    Raises:
        UnknownFamily: On unknown names, presets or malformed parameters
    """
    name, _, rest = spec.partition(":")
    params = _parse_params(rest)
    try:
        if name == "constant":
            b = preset_matrix(params.get("B", "rot"), int(params.get("n", 4)), int(params.get("seed", 0)))
            return family_constant(b, name=f"constant:{params.get('B', 'rot')}")
        if name == "commuting":
            b = preset_matrix(params.get("B", "mixed"), int(params.get("n", 4)), int(params.get("seed", 0)))
            profile = params.get("profile", "square")
            if profile not in RATE_PROFILES:
                raise UnknownFamily(f"unknown rate profile {profile!r}; choose from {sorted(RATE_PROFILES)}")
            f, antiderivative = RATE_PROFILES[profile]
            return family_commuting_time_dependent(b, f, antiderivative,
                                                   name=f"commuting:{params.get('B', 'mixed')}:{profile}")
        if name == "advection":
            return family_advection(int(params.get("n", 16)), float(params.get("c", 1.0)),
                                    float(params.get("L", 2 * np.pi)), params.get("basis", "physical"))
        if name == "heat":
            return family_heat(int(params.get("n", 16)), float(params.get("mu", 1.0)),
                               float(params.get("L", 2 * np.pi)), params.get("basis", "physical"))
        if name == "noncommuting":
            return family_noncommuting(int(params.get("n", 3)), int(params.get("seed", 0)),
                                       params.get("control", "false").lower() == "true")
    except ValueError as e:
        raise UnknownFamily(f"bad parameter in family spec {spec!r}: {e}") from e
    raise UnknownFamily(f"unknown family {name!r}; choose from {sorted(CATALOGUE)}")


CATALOGUE: Dict[str, str] = {
    "constant": "U = exp((t-s)B); B=zero|rot|nilpotent|growth|mixed|stiff|random[,n,seed]",
    "commuting": "U = exp((F(t)-F(s))B); B=<preset>, profile=square|linear|cos",
    "advection": "du/dt = c du/dx, spectral; n (even >= 8), c, L, basis=physical|fourier",
    "heat": "du/dt = mu d2u/dx2, spectral; n (even >= 8), mu, L, basis=physical|fourier",
    "noncommuting": "dU/dt = (B0 + t B1)U, stepped; n, seed, control=true|false",
}


def list_families() -> Dict[str, str]:
    """Catalogue names with their parameter summaries."""
    return dict(CATALOGUE)
