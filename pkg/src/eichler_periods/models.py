"""
Data models for Eichler Periods
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np


class MultiplierKind(str, Enum):
    """Multiplier system enumeration"""
    TRIVIAL = "trivial"
    ETA_POWER = "eta_power"


class GrowthClass(str, Enum):
    """Coefficient growth class used for tail bounds"""
    CUSP = "cusp"
    HOLOMORPHIC = "holomorphic"
    WEAKLY_HOLOMORPHIC = "weakly_holomorphic"


class VerifyStatus(str, Enum):
    """Verification outcome"""
    PASSED = "passed"
    FAILED = "failed"


def complex_pair(value: complex) -> List[float]:
    """[re, im] pair for JSON output"""
    value = complex(value)
    return [float(value.real), float(value.imag)]


class Estimate:
    """Numerical value with an error estimate and the truncation that produced it"""

    def __init__(self, value: Any, error: float = 0.0, truncation: Optional[int] = None):
        self.value = value
        self.error = float(error)
        self.truncation = truncation

    def __iter__(self):
        # allows ``value, error = estimate``
        yield self.value
        yield self.error

    def to_dict(self) -> Dict[str, Any]:
        if np.ndim(self.value) == 0:
            value = complex_pair(self.value)
        else:
            value = [complex_pair(v) for v in np.ravel(self.value)]
        return {
            "value": value,
            "error": self.error,
            "truncation": self.truncation,
        }


class VerificationReport:
    """Outcome of a numerical theorem check"""

    def __init__(
        self,
        theorem: str,
        gamma: Optional[str] = None,
        points: Sequence[complex] = (),
        deviations: Optional[Dict[str, float]] = None,
        tolerances: Optional[Dict[str, float]] = None,
        truncations: Optional[Dict[str, Any]] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        self.theorem = theorem
        self.gamma = gamma
        self.points = [complex(z) for z in points]
        self.deviations = {k: float(v) for k, v in (deviations or {}).items()}
        self.tolerances = dict(tolerances or {})
        self.truncations = dict(truncations or {})
        self.details = dict(details or {})

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)

    def tolerance_for(self, name: str) -> float:
        return float(self.tolerances.get(name, self.tolerances.get("default", 0.0)))

    @property
    def passed(self) -> bool:
        # NaN deviations fail
        return all(
            dev <= self.tolerance_for(name) for name, dev in self.deviations.items()
        )

    @property
    def status(self) -> VerifyStatus:
        return VerifyStatus.PASSED if self.passed else VerifyStatus.FAILED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem,
            "gamma": self.gamma,
            "points": [complex_pair(z) for z in self.points],
            "max_deviation": self.max_deviation,
            "deviations": self.deviations,
            "tolerances": self.tolerances,
            "truncations": self.truncations,
            "status": self.status.value,
            "passed": self.passed,
            "details": self.details,
        }
