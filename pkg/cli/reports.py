"""
Verification reports: named checks against tolerances, written as JSON or CSV.

Every report carries {"command", "params", "checks": [{name, value, tolerance, pass}]}
plus command-specific "data". Nothing time- or host-dependent goes into a
report, so a fixed seed gives byte-identical output.
"""

import json
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from config.settings import TOLERANCES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    """One verification: value compared with tolerance ("<=" or ">="), or a bare condition."""
    name: str
    value: Optional[float]
    tolerance: Optional[float]
    passed: bool
    detail: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "name": self.name,
            "value": _plain(self.value),
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.detail is not None:
            data["detail"] = self.detail
        return data


def _plain(value):
    """JSON-safe scalar: NaN and inf become None."""
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


@dataclass
class Report:
    command: str
    params: Dict[str, Any]
    tolerance_override: Optional[float] = None
    checks: List[Check] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def tolerance(self, key: Union[str, float]) -> float:
        """TOLERANCES[key] (or the number itself) unless --tolerance overrides it."""
        if self.tolerance_override is not None:
            return self.tolerance_override
        return TOLERANCES[key] if isinstance(key, str) else float(key)

    def at_most(self, name: str, value: Optional[float], key: Union[str, float],
                detail: Optional[str] = None) -> Check:
        tol = self.tolerance(key)
        ok = value is not None and np.isfinite(value) and value <= tol
        return self._add(Check(name, value, tol, bool(ok), detail))

    def at_least(self, name: str, value: Optional[float], key: Union[str, float],
                 detail: Optional[str] = None) -> Check:
        tol = TOLERANCES[key] if isinstance(key, str) else float(key)
        ok = value is not None and np.isfinite(value) and value >= tol
        return self._add(Check(name, value, tol, bool(ok), detail))

    def holds(self, name: str, condition: bool, detail: Optional[str] = None) -> Check:
        return self._add(Check(name, 1.0 if condition else 0.0, None, bool(condition), detail))

    def _add(self, check: Check) -> Check:
        self.checks.append(check)
        if not check.passed:
            logger.error(f"{self.command}: check {check.name} failed "
                         f"(value {check.value}, tolerance {check.tolerance}){': ' + check.detail if check.detail else ''}")
        return check

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "params": self.params,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "data": self.data,
        }


def report_to_json(report: Report) -> str:
    return json.dumps(_jsonable(report.to_dict()), indent=2, sort_keys=True)


def report_to_frame(report: Report) -> pd.DataFrame:
    """Flat table of the checks, one row per check."""
    rows = [{"command": report.command, **c.to_dict()} for c in report.checks]
    return pd.DataFrame(rows, columns=["command", "name", "value", "tolerance", "pass", "detail"])


def write_report(report: Report, output_format: str = "json", path: Optional[Union[str, Path]] = None) -> None:
    """Write to path, or to stdout when path is None."""
    if output_format == "json":
        text = report_to_json(report) + "\n"
    elif output_format == "csv":
        text = report_to_frame(report).to_csv(index=False)
    else:
        raise ValueError(f"unknown output format {output_format!r}")

    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
        logger.info(f"Report written to {path}")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _plain(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_plain(obj.real), _plain(obj.imag)]
    return obj
