"""
Eichler integrals: formal, quadrature, non-holomorphic and Lehner-corrected
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Optional, Tuple

import numpy as np

from .config import settings
from .errors import ConstantChannelError, DomainError, RouteDisagreementError, require
from .modgroup import chi, cplus_set
from .models import Estimate
from .qseries import FourierExpansion
from .quadrature import checked_quad, ray_cutoff
from .specialfn import scaled_upper_incomplete_gamma, upper_incomplete_gamma


@dataclass(frozen=True)
class EichlerConstants:
    """Normalizing constants attached to weight k and offset kappa"""

    k: int
    kappa: Fraction = Fraction(0)

    @property
    def c_k(self) -> complex:
        return -factorial(self.k - 2) / (2j * np.pi) ** (self.k - 1)

    @property
    def delta_kappa0(self) -> int:
        return 1 if self.kappa == 0 else 0

    @property
    def shadow_scale(self) -> float:
        """Gamma(k-1) / (-4 pi)^(k-1), the factor relating h* to D^(k-1) of the holomorphic part"""
        return factorial(self.k - 2) / (-4 * np.pi) ** (self.k - 1)


def eichler_constants(k: int, kappa=0) -> EichlerConstants:
    require(k > 2, "Eichler integrals need weight k > 2", DomainError)
    return EichlerConstants(int(k), Fraction(kappa))


def integral_weight(f: FourierExpansion) -> int:
    require(f.weight.denominator == 1, "expected an integral weight", DomainError)
    return int(f.weight)


def cusp_terms(f: FourierExpansion) -> Tuple[np.ndarray, np.ndarray]:
    """Exponents n + kappa and coefficients of a cusp form as float/complex arrays"""
    items = f.nonzero_items()
    require(
        all(n + f.kappa > 0 for n, _ in items),
        "expected a cusp form (only n + kappa > 0 channels)",
        DomainError,
    )
    mus = np.array([float(n + f.kappa) for n, _ in items])
    coeffs = np.array([complex(a) for _, a in items])
    return mus, coeffs


def formal_eichler(f: FourierExpansion) -> FourierExpansion:
    """a_n -> a_n (n + kappa)^(1 - k), dropping n + kappa = 0, weight k -> 2 - k"""
    k = integral_weight(f)
    kappa = f.kappa

    def term(n, a):
        mu = n + kappa
        if mu == 0:
            return 0
        return a * mu ** (1 - k)

    return f.map_coefficients(term).with_weight(2 - k)


def eichler_quadrature(
    f: FourierExpansion,
    z: complex,
    tol: Optional[float] = None,
    evaluator: Optional[Callable[[complex], complex]] = None,
) -> complex:
    """(1/c_k) int_z^{i oo} f(tau) (z - tau)^(k-2) d tau along the vertical ray from z"""
    tol = tol or settings.tol
    k = integral_weight(f)
    ck = eichler_constants(k).c_k
    mus, coeffs = cusp_terms(f)
    if len(mus) == 0:
        return 0j
    evaluator = evaluator or f
    z = complex(z)
    T = ray_cutoff(mus.min(), tol)

    def integrand(t):
        return evaluator(z + 1j * t) * (-1j * t) ** (k - 2) * 1j

    finite = checked_quad(integrand, 0.0, T, tol, scale=abs(ck))
    tail = np.sum(
        coeffs
        * np.exp(2j * np.pi * mus * z)
        * (-1j) ** (k - 2)
        * 1j
        * (2 * np.pi * mus) ** (1 - k)
        * upper_incomplete_gamma(k - 1, 2 * np.pi * mus * T)
    )
    return complex((finite + tail) / ck)


def nonholo_eichler(
    f: FourierExpansion,
    z,
    tol: Optional[float] = None,
    validate: bool = False,
):
    """
    (1/c_k) conj(int_z^{i oo} f(tau) (conj z - tau)^(k-2) d tau) by termwise integration.

    Each coefficient b_n with mu = n + kappa contributes
    conj(b_n) (-i^(k-1)) (2 pi mu)^(1-k) e^X Gamma(k-1, X) e^(-X/2) e^(-2 pi i mu x)
    with X = 4 pi mu y. With ``validate`` the value is checked against quadrature.
    """
    k = integral_weight(f)
    ck = eichler_constants(k).c_k
    mus, coeffs = cusp_terms(f)
    z_arr = np.asarray(z, dtype=complex)
    if len(mus) == 0:
        return 0j if z_arr.ndim == 0 else np.zeros_like(z_arr)
    x = np.real(z_arr)
    y = np.imag(z_arr)
    require(np.all(y > 0), "evaluation point must lie in the upper half plane", DomainError)
    X = 4 * np.pi * np.multiply.outer(y, mus)
    terms = (
        np.conj(coeffs)
        * (-(1j ** (k - 1)))
        * (2 * np.pi * mus) ** (1 - k)
        * scaled_upper_incomplete_gamma(k - 1, X)
        * np.exp(-X / 2)
        * np.exp(-2j * np.pi * np.multiply.outer(x, mus))
    )
    value = terms.sum(axis=-1) / ck
    if z_arr.ndim == 0:
        value = complex(value)
        if validate:
            tol = tol or settings.tol
            point = complex(z)
            check = nonholo_eichler_quadrature(f, point, tol)
            if abs(value - check) > tol * max(1.0, abs(value)):
                raise RouteDisagreementError(
                    f"series and quadrature disagree for the non-holomorphic Eichler integral at {point}",
                    value,
                    check,
                )
    return value


def nonholo_eichler_quadrature(f: FourierExpansion, z: complex, tol: Optional[float] = None) -> complex:
    """Direct quadrature of the defining integral of the non-holomorphic Eichler integral"""
    tol = tol or settings.tol
    k = integral_weight(f)
    ck = eichler_constants(k).c_k
    mus, coeffs = cusp_terms(f)
    if len(mus) == 0:
        return 0j
    z = complex(z)
    y = z.imag
    T = ray_cutoff(mus.min(), tol)

    def integrand(t):
        return f(z + 1j * t) * (-1j * (2 * y + t)) ** (k - 2) * 1j

    finite = checked_quad(integrand, 0.0, T, tol, scale=abs(ck))
    tail = np.sum(
        coeffs
        * np.exp(2j * np.pi * mus * z)
        * (-1j) ** (k - 2)
        * 1j
        * np.exp(-2 * np.pi * mus * T)
        * (2 * np.pi * mus) ** (1 - k)
        * scaled_upper_incomplete_gamma(k - 1, 2 * np.pi * mus * (2 * y + T))
    )
    return complex(np.conj(finite + tail) / ck)


def lehner_constant(f: FourierExpansion, c_max: Optional[int] = None) -> Estimate:
    """
    Constant term c_f of the Eichler integral of f from its principal part.

    c_f = 1/(k-1)! sum_{l<0} sum_{C+} a_l (-2 pi i / c)^k conj(chi(gamma)) e^(2 pi i l a / c),
    truncated at c <= c_max. The reported error is the heuristic C c_max^(2-k).
    """
    c_max = c_max or settings.lehner_cmax
    if f.kappa != 0:
        raise ConstantChannelError("no constant channel")
    k = integral_weight(f)
    require(k > 2, "the Lehner sum needs weight k > 2", DomainError)
    principal = [(l, a) for l, a in f.nonzero_items() if l < 0]
    if not principal:
        return Estimate(0j, 0.0, c_max)
    ls = np.array([l for l, _ in principal], dtype=float)
    als = np.array([complex(a) for _, a in principal])

    by_c: dict = {}
    for gamma in cplus_set(c_max):
        by_c.setdefault(gamma.c, []).append(gamma)

    total = 0j
    for c in sorted(by_c):
        gammas = by_c[c]
        a_vals = np.array([g.a for g in gammas], dtype=float)
        chibar = np.conj(np.array([chi(f.multiplier, g) for g in gammas]))
        phases = np.exp(2j * np.pi * np.outer(ls, a_vals) / c)
        inner = als @ (phases @ chibar)
        total += (-2j * np.pi / c) ** k * inner
    value = total / factorial(k - 1)
    tail = (2 * np.pi) ** k * float(np.abs(als).sum()) / factorial(k - 1) * c_max ** (2 - k) / (k - 2)
    return Estimate(complex(value), tail, c_max)


def eh_eichler(f: FourierExpansion, z, c_max: Optional[int] = None):
    """Formal Eichler integral plus delta_{kappa,0} c_f"""
    value = formal_eichler(f)(z)
    if f.kappa == 0:
        value = value + lehner_constant(f, c_max).value
    return value
