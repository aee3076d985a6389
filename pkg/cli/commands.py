"""
Single-shot commands. Each takes a RunConfig and returns a Report.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from applications.cole_hopf import (
    CONVENTIONS, cole_hopf_report, cole_hopf_series, convention_ratio_defect, heat_evolve,
    positive_heat_profile
)
from applications.strip import strip_double_log
from cli.reports import Report
from config.settings import DEFAULT_OUTPUT_FORMAT, DEFAULT_SEED
from families.catalogue import EvolutionFamily, family_from_spec, list_families
from funcalc.dunford import log_contour, op_log
from funcalc.contour import validate_contour
from linops.dense import OperatorMatrix, mat_exp
from linops.matrix_io import matrix_to_dict, read_matrix
from logrep.alternative import alt_generator_a1, alt_generator_a2
from logrep.diagnostics import algebraic_property_report, formal_log_decomposition
from logrep.generators import generator_report
from logrep.params import (
    ShiftParams, collapse_params, default_params, resolvent_identity_defect, select_eta_matrix, select_nu
)
from utils.errors import NoEtaFound, OperatorCalculusError, error_name
from utils.helpers import relative_error

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    """Malformed command line or input (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    family_spec: Optional[str] = None
    matrix_path: Optional[str] = None
    t: float = 1.0
    s: float = 0.5
    eta: Optional[complex] = None
    nu: Optional[complex] = None
    output_format: str = DEFAULT_OUTPUT_FORMAT
    output_path: Optional[str] = None
    seed: int = DEFAULT_SEED
    tolerance: Optional[float] = None
    derivative: str = "chain"
    mu: float = 0.5
    n: int = 128
    convention: str = "both"
    grid: Tuple[Tuple[float, float], ...] = ()
    series_path: Optional[str] = None

    def params(self) -> Dict[str, object]:
        """Report echo of the configuration (paths and formats excluded)."""
        data = {
            "family": self.family_spec,
            "matrix": self.matrix_path,
            "t": self.t,
            "s": self.s,
            "eta": None if self.eta is None else [self.eta.real, self.eta.imag],
            "nu": None if self.nu is None else [self.nu.real, self.nu.imag],
            "seed": self.seed,
            "tolerance": self.tolerance,
            "derivative": self.derivative,
        }
        if self.command == "cole-hopf":
            data.update({"mu": self.mu, "n": self.n, "convention": self.convention})
        if self.grid:
            data["grid"] = [list(p) for p in self.grid]
        return data

    def report(self) -> Report:
        return Report(self.command, self.params(), tolerance_override=self.tolerance)


def require_family(config: RunConfig) -> EvolutionFamily:
    if config.matrix_path is not None:
        raise UsageError(f"{config.command} needs a time-dependent family (--family), not --matrix")
    if config.family_spec is None:
        raise UsageError(f"{config.command} needs --family")
    return family_from_spec(config.family_spec)


def require_operator(config: RunConfig) -> OperatorMatrix:
    """U from --matrix, or U(t, s) from --family; exactly one must be given."""
    if (config.family_spec is None) == (config.matrix_path is None):
        raise UsageError(f"{config.command} needs exactly one of --family / --matrix")
    if config.matrix_path is not None:
        return read_matrix(config.matrix_path)
    return family_from_spec(config.family_spec)(config.t, config.s)


def _params_for(family: EvolutionFamily, config: RunConfig) -> ShiftParams:
    return default_params(family, config.t, config.s, eta=config.eta, nu=config.nu)


def command_logm(config: RunConfig) -> Report:
    report = config.report()
    u = require_operator(config)
    try:
        log_u = op_log(u)
    except OperatorCalculusError as e:
        report.data["error"] = f"{error_name(e)}: {e}"
        report.holds(f"logm:{error_name(e)}", False, str(e))
        return report

    validity = validate_contour(u, log_contour(u))
    report.data["log"] = matrix_to_dict(log_u)
    report.data["contour"] = log_contour(u).to_dict()
    report.data["validity"] = validity.to_dict()
    report.holds("contour_valid_for_log", validity.valid_for_log)
    report.at_most("exp_log_roundtrip", relative_error(mat_exp(log_u), u), "exp_log_roundtrip")
    return report


def _recovery_key(family: EvolutionFamily) -> str:
    return "advection_recovery" if family.name == "advection" else "oracle_recovery"


def command_verify_gen(config: RunConfig) -> Report:
    report = config.report()
    family = require_family(config)
    p = _params_for(family, config)
    try:
        collapse = collapse_params(family, config.t, config.s)
    except NoEtaFound as e:
        logger.info(f"No collapse parameters for {family.name}: {e}")
        collapse = None

    result = generator_report(family, config.t, config.s, p, collapse=collapse, derivative=config.derivative)
    report.data["generators"] = result.to_dict()
    report.at_most("resolvent_identity", resolvent_identity_defect(family(config.t, config.s), p.eta),
                   "resolvent_identity")
    report.holds("some_representation_available", any(a is not None for a in result.generators.values()),
                 "; ".join(f"{k}: {v}" for k, v in result.errors.items()) or None)
    for name, err in result.oracle_errors.items():
        report.at_most(f"oracle_error:{name}", err, _recovery_key(family))
    return report


def command_equivalence(config: RunConfig) -> Report:
    report = config.report()
    family = require_family(config)
    try:
        p = collapse_params(family, config.t, config.s, eta=config.eta)
    except NoEtaFound as e:
        report.holds("collapse_params", False, f"{error_name(e)}: {e}")
        return report

    result = generator_report(family, config.t, config.s, p, collapse=p, derivative=config.derivative)
    report.data["generators"] = result.to_dict()
    for name, err in result.errors.items():
        report.holds(f"available:{name}", False, err)
    for pair, value in result.pairwise_discrepancies.items():
        report.at_most(f"discrepancy:{pair}", value, "equivalence")
    return report


def command_formal_log(config: RunConfig) -> Report:
    report = config.report()
    u = require_operator(config)
    eta = select_eta_matrix(u) if config.eta is None else config.eta
    record = formal_log_decomposition(u, eta)
    report.data["decomposition"] = record.to_dict()
    if record.defect is not None:
        report.at_most("decomposition_defect", record.defect, "contour_log_oracle")

    try:
        nu = select_nu(u, eta) if config.nu is None else config.nu
        p = ShiftParams(complex(eta), complex(nu))
        a1, a2 = alt_generator_a1(u, p), alt_generator_a2(u, p)
        report.data["a1"] = a1.to_dict()
        report.data["a2"] = a2.to_dict()
        report.holds("translated_logs_available", True)
        report.holds("a2_norm_bound", bool(a2.bound_holds))
    except OperatorCalculusError as e:
        report.holds("translated_logs_available", False, f"{error_name(e)}: {e}")
    return report


def command_algebra(config: RunConfig) -> Report:
    report = config.report()
    family = require_family(config)
    grid = config.grid or ((config.t, config.s), (config.t + 0.25, config.s), (config.t, config.s - 0.25))
    p = default_params(family, grid[0][0], grid[0][1], eta=config.eta, nu=config.nu)
    result = algebraic_property_report(family, grid, p)
    report.data["properties"] = result.to_dict()
    for which in result.boundedness:
        report.holds(f"bounded:{which}", bool(np.isfinite(result.boundedness[which])))
        report.holds(f"continuous:{which}", bool(np.isfinite(result.continuity_t[which])
                                                 and np.isfinite(result.continuity_s[which])))
    if family.commuting:
        report.at_most("commutator", result.max_commutator, "commutator")
    else:
        report.at_least("noncommuting_flag", result.max_commutator, "noncommuting_flag")
    return report


def command_cole_hopf(config: RunConfig) -> Report:
    report = config.report()
    if config.n < 8 or config.mu <= 0 or config.t <= 0:
        raise UsageError("cole-hopf needs --n >= 8, --mu > 0 and --t > 0")
    phi0 = positive_heat_profile(config.n, config.mu, 0.0)
    conventions = CONVENTIONS if config.convention == "both" else (config.convention,)

    for convention in conventions:
        result = cole_hopf_report(phi0, config.mu, config.t, convention)
        report.data[convention] = result.to_dict()
        report.at_most(f"identity_residual:{convention}", result.identity_residual, "cole_hopf_identity")
        report.at_most(f"burgers_residual:{convention}", result.burgers_residual, "burgers_residual")
    report.at_most("convention_ratio", convention_ratio_defect(heat_evolve(phi0, config.mu, config.t), config.mu),
                   "convention_ratio")

    if config.series_path is not None:
        times = np.linspace(config.t, 2 * config.t, 5)
        cole_hopf_series(phi0, config.mu, times, "classical").to_csv(config.series_path, index=False)
        logger.info(f"Cole-Hopf series written to {config.series_path}")
    return report


def command_striplog(config: RunConfig) -> Report:
    report = config.report()
    u = require_operator(config)
    p = None if config.nu is None else ShiftParams(complex(config.eta or 0), config.nu)
    try:
        result = strip_double_log(u, p)
    except OperatorCalculusError as e:
        report.holds(f"striplog:{error_name(e)}", False, str(e))
        return report
    report.data["strip"] = result.to_dict()
    report.at_most("double_log_roundtrip", result.roundtrip_error, "double_log_roundtrip")
    return report


PRESET_SPECS = (
    "constant:B=zero", "constant:B=rot", "constant:B=nilpotent", "constant:B=growth",
    "constant:B=mixed", "constant:B=stiff", "constant:B=random,n=4",
    "commuting:B=mixed,profile=square", "advection:n=16", "heat:n=16,basis=fourier",
    "noncommuting:n=3", "noncommuting:n=3,control=true",
)


def command_families(config: RunConfig) -> Report:
    report = config.report()
    report.data["catalogue"] = list_families()
    described = []
    for spec in PRESET_SPECS:
        family = family_from_spec(spec)
        described.append({"spec": spec, **family.describe()})
        report.at_most(f"semigroup:{spec}", family.semigroup_defect(1.0, 0.75, 0.5), "semigroup")
        report.at_most(f"identity:{spec}", family.identity_defect(0.5), "semigroup")
    report.data["presets"] = described
    return report


COMMANDS: Dict[str, Callable[[RunConfig], Report]] = {
    "logm": command_logm,
    "verify-gen": command_verify_gen,
    "equivalence": command_equivalence,
    "formal-log": command_formal_log,
    "algebra": command_algebra,
    "cole-hopf": command_cole_hopf,
    "striplog": command_striplog,
    "families": command_families,
}
