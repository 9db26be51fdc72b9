"""
SL2(Z) arithmetic, Dedekind sums, eta multiplier systems and coset index sets
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Dict, List, Tuple, Union

import numpy as np

from .errors import DomainError, NonCoprimeError, require
from .models import MultiplierKind


def _extended_gcd(x: int, y: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*x + t*y = g and |g| = gcd(x, y)"""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class GroupElement:
    """Integer matrix (a b; c d) of determinant 1"""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        require(
            self.a * self.d - self.b * self.c == 1,
            f"determinant of ({self.a} {self.b}; {self.c} {self.d}) is not 1",
            DomainError,
        )

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, n: int) -> "GroupElement":
        base = self if n >= 0 else self.inverse()
        result = IDENTITY
        for _ in range(abs(n)):
            result = result @ base
        return result

    def __str__(self) -> str:
        return f"({self.a} {self.b}; {self.c} {self.d})"

    def inverse(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a)

    @property
    def lower_row(self) -> Tuple[int, int]:
        return self.c, self.d

    def act(self, z):
        """Moebius action on a point (or numpy array of points) in the upper half plane"""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def j(self, z):
        """Automorphy factor cz + d"""
        return self.c * z + self.d

    def to_list(self) -> List[int]:
        return [self.a, self.b, self.c, self.d]

    @classmethod
    def from_string(cls, text: str) -> "GroupElement":
        """Parse a generator name (I, S, T, U, ST, TS, ...) or an ``a,b,c,d`` list"""
        text = text.strip()
        if "," in text:
            parts = [int(p) for p in text.split(",")]
            require(len(parts) == 4, f"expected four entries in '{text}'", DomainError)
            return cls(*parts)
        result = IDENTITY
        for letter in text.upper():
            require(letter in GENERATORS, f"unknown group element '{text}'", DomainError)
            result = result @ GENERATORS[letter]
        return result


IDENTITY = GroupElement(1, 0, 0, 1)
S = GroupElement(0, -1, 1, 0)
T = GroupElement(1, 1, 0, 1)
U = GroupElement(1, -1, 1, 0)
GENERATORS = {"I": IDENTITY, "S": S, "T": T, "U": U}


def complete_lower_row(c: int, d: int) -> GroupElement:
    """Some element of SL2(Z) with lower row (c, d)"""
    g, x, y = _extended_gcd(d, c)
    if g != 1:
        raise NonCoprimeError("non-coprime pair")
    return GroupElement(x, -y, c, d)


@lru_cache(maxsize=None)
def _dedekind_reduced(d: int, c: int) -> Fraction:
    # 0 <= d < c, gcd(d, c) = 1
    if c == 1:
        return Fraction(0)
    reciprocity = Fraction(-1, 4) + (Fraction(c, d) + Fraction(d, c) + Fraction(1, c * d)) / 12
    return reciprocity - _dedekind_reduced(c % d, d)


def dedekind_sum(d: int, c: int) -> Fraction:
    """Exact Dedekind sum s(d, c) for c > 0 and gcd(d, c) = 1"""
    require(c > 0, "dedekind_sum needs c > 0", DomainError)
    if gcd(d, c) != 1:
        raise NonCoprimeError("non-coprime pair")
    return _dedekind_reduced(d % c, c)


def kappa_prime(kappa: Union[Fraction, float]) -> Union[Fraction, float]:
    """Offset of the conjugate character: 0 stays 0, otherwise 1 - kappa"""
    return 0 * kappa if kappa == 0 else 1 - kappa


@dataclass(frozen=True)
class MultiplierSystem:
    """
    Multiplier of eta^r for r modulo 24 (r = 0 is the trivial character).

    chi(gamma) is defined by F(gamma z) = chi(gamma) (cz+d)^w F(z) with the
    principal branch of the power, so the conjugate of eta^r is eta^(-r).
    """

    exponent: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % 24)

    @classmethod
    def trivial(cls) -> "MultiplierSystem":
        return cls(0)

    @classmethod
    def eta_power(cls, r: int) -> "MultiplierSystem":
        return cls(r)

    @classmethod
    def from_kappa(cls, kappa: Fraction) -> "MultiplierSystem":
        scaled = Fraction(kappa) * 24
        require(scaled.denominator == 1, f"kappa {kappa} is not a multiple of 1/24", DomainError)
        return cls(int(scaled))

    @property
    def kind(self) -> MultiplierKind:
        return MultiplierKind.TRIVIAL if self.exponent == 0 else MultiplierKind.ETA_POWER

    @property
    def kappa(self) -> Fraction:
        return Fraction(self.exponent, 24)

    @property
    def lam(self) -> int:
        return 1

    @property
    def natural_weight(self) -> Fraction:
        return Fraction(self.exponent, 2)

    def conjugate(self) -> "MultiplierSystem":
        return MultiplierSystem(-self.exponent)

    def __mul__(self, other: "MultiplierSystem") -> "MultiplierSystem":
        return MultiplierSystem(self.exponent + other.exponent)

    def __call__(self, gamma: GroupElement) -> complex:
        return chi(self, gamma)

    def __str__(self) -> str:
        return "trivial" if self.exponent == 0 else f"eta^{self.exponent}"

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "exponent": self.exponent, "kappa": str(self.kappa)}


TRIVIAL = MultiplierSystem(0)


def _eta_phase(gamma: GroupElement) -> Fraction:
    # eta multiplier phase in units of pi, normal form c > 0
    a, c, d = gamma.a, gamma.c, gamma.d
    return Fraction(a + d, 12 * c) - dedekind_sum(d, c) - Fraction(1, 4)


def chi_phase(ms: MultiplierSystem, gamma: GroupElement) -> Fraction:
    """Exact phase p in [0, 2) with chi(gamma) = exp(i pi p)"""
    r = ms.exponent
    if r == 0:
        return Fraction(0)
    w = ms.natural_weight
    if gamma.c > 0:
        phase = r * _eta_phase(gamma)
    elif gamma.c < 0:
        phase = r * _eta_phase(-gamma) + w
    elif gamma.d == 1:
        phase = Fraction(r * gamma.b, 12)
    else:
        phase = Fraction(-r * gamma.b, 12) - w
    return phase % 2


def chi(ms: MultiplierSystem, gamma: GroupElement) -> complex:
    """Multiplier value chi(gamma) on the unit circle"""
    return complex(np.exp(1j * np.pi * float(chi_phase(ms, gamma))))


def consistency_defect(
    ms: MultiplierSystem, weight, g1: GroupElement, g2: GroupElement, z: complex
) -> float:
    """|chi(g1 g2) j(g1 g2, z)^w - chi(g1) chi(g2) j(g1, g2 z)^w j(g2, z)^w| relative to max(1, |lhs|)"""
    w = float(weight)
    lhs = chi(ms, g1 @ g2) * complex((g1 @ g2).j(z)) ** w
    rhs = chi(ms, g1) * chi(ms, g2) * complex(g1.j(g2.act(z))) ** w * complex(g2.j(z)) ** w
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def enumerate_cosets(c_max: int) -> List[GroupElement]:
    """One representative per lower row up to sign, sorted by c then d"""
    require(c_max >= 0, "c_max must be non-negative", DomainError)
    reps = [IDENTITY]
    for c in range(1, c_max + 1):
        for d in range(c):
            if gcd(c, d) == 1:
                reps.append(complete_lower_row(c, d))
    return reps


def cplus_set(c_max: int, lam: int = 1) -> List[GroupElement]:
    """Elements with 0 < c <= c_max, 0 <= a < c and d the inverse of a mod c in (-c, 0]"""
    require(lam == 1, "only lambda = 1 is supported", DomainError)
    elements = []
    for c in range(1, c_max + 1):
        for a in range(c):
            if gcd(a, c) != 1:
                continue
            d = pow(a, -1, c) % c if c > 1 else 0
            if d:
                d -= c
            elements.append(GroupElement(a, (a * d - 1) // c, c, d))
    return elements
