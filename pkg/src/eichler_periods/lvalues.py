"""
Twisted critical L-values through moment integrals along the ray -d/c + it
"""

from dataclasses import dataclass
from math import comb, factorial, gcd
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from .eichler import cusp_terms, integral_weight
from .errors import DomainError, NonCoprimeError, ToleranceError, require
from .modgroup import GroupElement, chi, complete_lower_row
from .models import GrowthClass
from .qseries import FourierExpansion, tail_bound
from .specialfn import upper_incomplete_gamma


@dataclass(frozen=True)
class TwistSpec:
    """Twist by zeta_c^(-d) attached to the lower row (c, d)"""

    c: int
    d: int

    def __post_init__(self):
        require(self.c > 0, "twist needs c > 0", DomainError)
        if gcd(self.c, self.d) != 1:
            raise NonCoprimeError("non-coprime pair")

    @classmethod
    def from_gamma(cls, gamma: GroupElement) -> "TwistSpec":
        require(gamma.c != 0, "twist needs a lower row with c != 0", DomainError)
        if gamma.c < 0:
            gamma = -gamma
        return cls(gamma.c, gamma.d)

    @property
    def zeta(self) -> complex:
        return complex(np.exp(2j * np.pi / self.c))

    @property
    def gamma(self) -> GroupElement:
        return complete_lower_row(self.c, self.d)

    @property
    def cusp(self) -> float:
        """gamma^{-1}(i oo) = -d/c"""
        return -self.d / self.c


def twisted_moments(f: FourierExpansion, twist: TwistSpec, tol: Optional[float] = None) -> np.ndarray:
    """
    M_n = int_0^oo f(it - d/c) t^n dt for n = 0..k-2.

    The ray is split at t0 = 1/c. Above t0 the q-expansion is integrated
    termwise; below t0 the transformation of f under gamma = (a b; c d)
    moves the segment to the ray a/c + iu, u >= 1/c, integrated the same way.
    """
    k = integral_weight(f)
    require(k > 2, "moments need weight k > 2", DomainError)
    mus, coeffs = cusp_terms(f)
    moments = np.zeros(k - 1, dtype=complex)
    if len(mus) == 0:
        return moments
    c, d = twist.c, twist.d
    gamma = twist.gamma
    if tol is not None:
        bound = tail_bound(f, 1.0 / c, GrowthClass.CUSP)
        if bound > tol:
            raise ToleranceError(
                f"expansion truncated at {f.n_max} is too short on the ray (tail {bound:.2e})",
                achieved=bound,
            )
    x = 2 * np.pi * mus / c
    upper_phase = coeffs * np.exp(-2j * np.pi * mus * d / c)
    lower_phase = coeffs * np.exp(2j * np.pi * mus * gamma.a / c)
    chibar = np.conj(chi(f.multiplier, gamma))
    for n in range(k - 1):
        upper = np.sum(upper_phase * (2 * np.pi * mus) ** (-n - 1) * upper_incomplete_gamma(n + 1, x))
        lower = np.sum(
            lower_phase * (2 * np.pi * mus) ** (-(k - n - 1)) * upper_incomplete_gamma(k - n - 1, x)
        )
        moments[n] = upper + chibar * (1j) ** (-k) * float(c) ** (k - 2 * n - 2) * lower
    return moments


def twisted_lvalue(f: FourierExpansion, twist: TwistSpec, s: int, tol: Optional[float] = None) -> complex:
    """L(f, zeta_c^(-d), s) = (2 pi)^s / Gamma(s) M_{s-1} for 1 <= s <= k-1"""
    k = integral_weight(f)
    require(1 <= s <= k - 1, f"s={s} outside the critical strip 1..{k - 1}", DomainError)
    moments = twisted_moments(f, twist, tol)
    return complex((2 * np.pi) ** s / factorial(s - 1) * moments[s - 1])


def lvalue_vector(f: FourierExpansion, twist: TwistSpec, tol: Optional[float] = None) -> np.ndarray:
    """L(f, zeta_c^(-d), s) for s = 1..k-1"""
    k = integral_weight(f)
    moments = twisted_moments(f, twist, tol)
    scale = np.array([(2 * np.pi) ** s / factorial(s - 1) for s in range(1, k)])
    return scale * moments


def dirichlet_partial_sum(f: FourierExpansion, twist: TwistSpec, s: int) -> complex:
    """sum b_n zeta_c^(-d (n + kappa)) / (n + kappa)^s over the stored coefficients"""
    mus, coeffs = cusp_terms(f)
    if len(mus) == 0:
        return 0j
    return complex(np.sum(coeffs * np.exp(-2j * np.pi * mus * twist.d / twist.c) / mus ** s))


def lvalue_polynomial(f: FourierExpansion, twist: TwistSpec, tol: Optional[float] = None) -> np.ndarray:
    """
    Coefficients (constant first) of
    sum_{n=0}^{k-2} L(f, zeta_c^(-d), n+1) / (k-2-n)! (2 pi i (z + d/c))^(k-2-n)
    """
    k = integral_weight(f)
    values = lvalue_vector(f, twist, tol)
    shift = np.array([twist.d / twist.c, 1.0], dtype=complex)
    out = np.zeros(k - 1, dtype=complex)
    for n in range(k - 1):
        m = k - 2 - n
        term = npoly.polypow(shift, m) * (2j * np.pi) ** m * values[n] / factorial(m)
        out[: len(term)] += term
    return out


def lvalue_display(f: FourierExpansion, twist: TwistSpec, z, tol: Optional[float] = None):
    """The L-value sum above evaluated directly at z"""
    k = integral_weight(f)
    values = lvalue_vector(f, twist, tol)
    w = 2j * np.pi * (np.asarray(z, dtype=complex) + twist.d / twist.c)
    total = sum(values[n] / factorial(k - 2 - n) * w ** (k - 2 - n) for n in range(k - 1))
    return complex(total) if np.ndim(total) == 0 else total


def moments_to_polynomial(moments: np.ndarray, twist: TwistSpec) -> np.ndarray:
    """sum_n i^(1-n) C(k-2, n) M_n (z + d/c)^(k-2-n) as coefficients, constant first"""
    k = len(moments) + 1
    shift = np.array([twist.d / twist.c, 1.0], dtype=complex)
    out = np.zeros(k - 1, dtype=complex)
    for n in range(k - 1):
        term = npoly.polypow(shift, k - 2 - n) * (1j) ** (1 - n) * comb(k - 2, n) * moments[n]
        out[: len(term)] += term
    return out
