"""
Period polynomials r, r^N, r^H, the mock period function and the W-space relations
"""

from typing import Callable, List, Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .config import settings
from .eichler import (
    cusp_terms,
    eh_eichler,
    eichler_constants,
    formal_eichler,
    integral_weight,
    lehner_constant,
    nonholo_eichler,
)
from .errors import DomainError, require
from .lvalues import TwistSpec, lvalue_polynomial, moments_to_polynomial, twisted_moments
from .modgroup import S, U, GroupElement, MultiplierSystem, chi
from .qseries import FourierExpansion
from .quadrature import checked_quad, ray_cutoff
from .specialfn import upper_incomplete_gamma


class PeriodPolynomial:
    """Polynomial of degree <= k-2, coefficients constant term first"""

    def __init__(self, k: int, coeffs=()):
        coeffs = np.asarray(coeffs, dtype=complex).ravel()
        require(len(coeffs) <= k - 1, f"too many coefficients for weight {k}", DomainError)
        self.k = int(k)
        self.coeffs = np.zeros(k - 1, dtype=complex)
        self.coeffs[: len(coeffs)] = coeffs

    @classmethod
    def zero(cls, k: int) -> "PeriodPolynomial":
        return cls(k)

    def __call__(self, z):
        return npoly.polyval(z, self.coeffs)

    def __add__(self, other: "PeriodPolynomial") -> "PeriodPolynomial":
        require(self.k == other.k, "period polynomials of different weight", DomainError)
        return PeriodPolynomial(self.k, self.coeffs + other.coeffs)

    def __sub__(self, other: "PeriodPolynomial") -> "PeriodPolynomial":
        return self + other.scale(-1)

    def __neg__(self) -> "PeriodPolynomial":
        return self.scale(-1)

    def scale(self, factor) -> "PeriodPolynomial":
        return PeriodPolynomial(self.k, self.coeffs * factor)

    __mul__ = scale
    __rmul__ = scale

    def __repr__(self) -> str:
        return f"PeriodPolynomial(k={self.k}, coeffs={self.coeffs.tolist()})"

    @property
    def degree(self) -> int:
        nonzero = np.nonzero(self.coeffs)[0]
        return int(nonzero[-1]) if len(nonzero) else -1

    def norm(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if len(self.coeffs) else 0.0

    def conjugate_reflect(self) -> "PeriodPolynomial":
        """P(z) -> conj(P(conj z)), i.e. conjugate every coefficient"""
        return PeriodPolynomial(self.k, np.conj(self.coeffs))

    def normalized(self, tiny: float = 1e-300) -> "PeriodPolynomial":
        """Divide by the highest coefficient that is not negligible"""
        scale = self.norm()
        if scale <= tiny:
            return self
        significant = np.nonzero(np.abs(self.coeffs) > 1e-12 * scale)[0]
        return self.scale(1 / self.coeffs[significant[-1]])

    def max_deviation(self, other: "PeriodPolynomial") -> float:
        return (self - other).norm()

    def relative_deviation(self, other: "PeriodPolynomial") -> float:
        """Deviation after normalizing both leading coefficients to 1"""
        return self.normalized().max_deviation(other.normalized())

    def proportionality(self, other: "PeriodPolynomial") -> Tuple[complex, float]:
        """Least-squares scalar s with self ~ s * other and the residual relative to |self|"""
        denom = np.vdot(other.coeffs, other.coeffs)
        if abs(denom) == 0:
            return 0j, self.norm()
        s = np.vdot(other.coeffs, self.coeffs) / denom
        residual = (self - other.scale(s)).norm() / max(self.norm(), 1e-300)
        return complex(s), float(residual)

    def to_list(self) -> List[List[float]]:
        return [[float(c.real), float(c.imag)] for c in self.coeffs]


def _normalized_row(gamma: GroupElement) -> GroupElement:
    return -gamma if gamma.c < 0 else gamma


def slash_poly(P: PeriodPolynomial, gamma: GroupElement, ms: MultiplierSystem) -> PeriodPolynomial:
    """conj(chi(gamma)) (cz+d)^(k-2) P(gamma z) at weight 2-k, expanded exactly"""
    k = P.k
    num = np.array([gamma.b, gamma.a], dtype=complex)
    den = np.array([gamma.d, gamma.c], dtype=complex)
    out = np.zeros(k - 1, dtype=complex)
    for j, p in enumerate(P.coeffs):
        if p == 0:
            continue
        term = npoly.polymul(npoly.polypow(num, j), npoly.polypow(den, k - 2 - j)) * p
        out[: len(term)] += term[: k - 1]
    return PeriodPolynomial(k, np.conj(chi(ms, gamma)) * out)


def delta_correction(k: int, gamma: GroupElement, ms: MultiplierSystem, constant: complex) -> PeriodPolynomial:
    """c_k C (1 - conj(chi(gamma)) (cz+d)^(k-2)): the period of a constant C"""
    ck = eichler_constants(k).c_k
    one = PeriodPolynomial(k, [1.0])
    return (one - slash_poly(one, gamma, ms)).scale(ck * constant)


def period_from_moments(f: FourierExpansion, gamma: GroupElement, tol: Optional[float] = None) -> PeriodPolynomial:
    """r(f, gamma; z) from the closed-form moment integrals"""
    k = integral_weight(f)
    if gamma.c == 0:
        return PeriodPolynomial.zero(k)
    twist = TwistSpec.from_gamma(gamma)
    return PeriodPolynomial(k, moments_to_polynomial(twisted_moments(f, twist, tol), twist))


def period_from_lvalues(f: FourierExpansion, gamma: GroupElement, tol: Optional[float] = None) -> PeriodPolynomial:
    """r(f, gamma; z) = c_k sum_n L(f, zeta_c^(-d), n+1)/(k-2-n)! (2 pi i (z + d/c))^(k-2-n)"""
    k = integral_weight(f)
    if gamma.c == 0:
        return PeriodPolynomial.zero(k)
    twist = TwistSpec.from_gamma(gamma)
    ck = eichler_constants(k).c_k
    return PeriodPolynomial(k, ck * lvalue_polynomial(f, twist, tol))


def _quadrature_moments(f: FourierExpansion, gamma: GroupElement, tol: float) -> np.ndarray:
    k = integral_weight(f)
    mus, coeffs = cusp_terms(f)
    moments = np.zeros(k - 1, dtype=complex)
    if len(mus) == 0:
        return moments
    gamma = _normalized_row(gamma)
    a, c, d = gamma.a, gamma.c, gamma.d
    t0 = 1.0 / c
    T = t0 + ray_cutoff(mus.min(), tol)
    chibar = np.conj(chi(f.multiplier, gamma))
    for n in range(k - 1):
        # segment t >= t0 on the ray -d/c + it
        upper = checked_quad(lambda t: f(-d / c + 1j * t) * t ** n, t0, T, tol)
        upper += np.sum(
            coeffs
            * np.exp(-2j * np.pi * mus * d / c)
            * (2 * np.pi * mus) ** (-n - 1)
            * upper_incomplete_gamma(n + 1, 2 * np.pi * mus * T)
        )
        # segment t <= t0 carried by gamma to the ray a/c + iu, u >= 1/c
        lower = checked_quad(lambda u: f(a / c + 1j * u) * u ** (k - n - 2), t0, T, tol)
        lower += np.sum(
            coeffs
            * np.exp(2j * np.pi * mus * a / c)
            * (2 * np.pi * mus) ** (-(k - n - 1))
            * upper_incomplete_gamma(k - n - 1, 2 * np.pi * mus * T)
        )
        moments[n] = upper + chibar * (1j) ** (-k) * float(c) ** (k - 2 * n - 2) * lower
    return moments


def period_quadrature(f: FourierExpansion, gamma: GroupElement, tol: Optional[float] = None) -> PeriodPolynomial:
    """r(f, gamma; z) = int_{-d/c}^{i oo} f(tau)(z - tau)^(k-2) d tau by adaptive quadrature"""
    tol = tol or settings.tol
    k = integral_weight(f)
    if gamma.c == 0:
        return PeriodPolynomial.zero(k)
    twist = TwistSpec.from_gamma(gamma)
    return PeriodPolynomial(k, moments_to_polynomial(_quadrature_moments(f, gamma, tol), twist))


def period_rN(f: FourierExpansion, gamma: GroupElement, tol: Optional[float] = None) -> PeriodPolynomial:
    """r^N(f, gamma; z) = conj(r(f, gamma; conj z))"""
    return period_quadrature(f, gamma, tol).conjugate_reflect()


def eichler_period_value(
    evaluator: Callable, gamma: GroupElement, ms: MultiplierSystem, k: int, z
):
    """c_k (E - E|_{2-k, ms} gamma)(z) for an Eichler integral E of weight 2-k"""
    ck = eichler_constants(k).c_k
    z = np.asarray(z, dtype=complex)
    slashed = np.conj(chi(ms, gamma)) * gamma.j(z) ** (k - 2) * evaluator(gamma.act(z))
    value = ck * (evaluator(z) - slashed)
    return complex(value) if np.ndim(value) == 0 else value


def sample_points(gamma: GroupElement, count: int) -> np.ndarray:
    """Points z with |cz + d| = 1, so Im z = Im(gamma z) >= sin(pi/5)/c"""
    gamma = _normalized_row(gamma)
    theta = np.linspace(np.pi / 5, 4 * np.pi / 5, count)
    return (-gamma.d + np.exp(1j * theta)) / gamma.c


def period_from_samples(
    evaluator: Callable, gamma: GroupElement, ms: MultiplierSystem, k: int
) -> PeriodPolynomial:
    """Fit the period polynomial of any Eichler-integral evaluator by least squares"""
    if gamma.c == 0:
        return PeriodPolynomial.zero(k)
    points = sample_points(gamma, k + 3)
    values = eichler_period_value(evaluator, gamma, ms, k, points)
    vander = npoly.polyvander(points, k - 2)
    coeffs, *_ = np.linalg.lstsq(vander, values, rcond=None)
    return PeriodPolynomial(k, coeffs)


def period_polynomial(f: FourierExpansion, gamma: GroupElement, tol: Optional[float] = None) -> PeriodPolynomial:
    """r(f, gamma): moment route for cusp forms, sampled formal Eichler integral otherwise"""
    k = integral_weight(f)
    if all(n + f.kappa > 0 for n, _ in f.nonzero_items()):
        return period_from_moments(f, gamma, tol)
    return period_from_samples(formal_eichler(f), gamma, f.multiplier, k)


def period_rH(f: FourierExpansion, gamma: GroupElement, c_max: Optional[int] = None) -> PeriodPolynomial:
    """r^H = r + delta_{kappa,0} c_f c_k (1 - conj(chi(gamma)) (cz+d)^(k-2))"""
    k = integral_weight(f)
    if gamma.c == 0:
        return PeriodPolynomial.zero(k)
    r = period_polynomial(f, gamma)
    if f.kappa != 0:
        return r
    c_f = lehner_constant(f, c_max).value
    return r + delta_correction(k, gamma, f.multiplier, c_f)


def period_rH_value(f: FourierExpansion, gamma: GroupElement, z, c_max: Optional[int] = None):
    """c_k (E^H_f - E^H_f|gamma)(z) evaluated pointwise"""
    k = integral_weight(f)
    return eichler_period_value(lambda w: eh_eichler(f, w, c_max), gamma, f.multiplier, k, z)


def mock_period(h: FourierExpansion, gamma: GroupElement, z, tol: Optional[float] = None):
    """
    Mock period P(F+, gamma; z) of the form F with xi(F) = h.

    Equal to (-1)^(k-1) (E^N_h - E^N_h|_{2-k} gamma)(z), where the slash uses
    the conjugate of the character of h.
    """
    k = integral_weight(h)
    z = np.asarray(z, dtype=complex)
    gz = gamma.act(z)
    require(np.all(np.imag(z) > 0) and np.all(np.imag(gz) > 0), "points must lie in the upper half plane", DomainError)
    slashed = chi(h.multiplier, gamma) * gamma.j(z) ** (k - 2) * nonholo_eichler(h, gz, tol)
    value = (-1) ** (k - 1) * (nonholo_eichler(h, z, tol) - slashed)
    return complex(value) if np.ndim(value) == 0 else value


def w_space_check(P: PeriodPolynomial, ms: MultiplierSystem) -> Tuple[float, float]:
    """Largest coefficients of P + P|S and of P + P|U + P|U^2"""
    res_s = (P + slash_poly(P, S, ms)).norm()
    res_u = (P + slash_poly(P, U, ms) + slash_poly(P, U @ U, ms)).norm()
    return res_s, res_u


def cocycle_defect(
    period: Callable[[GroupElement], PeriodPolynomial],
    g1: GroupElement,
    g2: GroupElement,
    ms: MultiplierSystem,
) -> float:
    """|r(g1 g2) - r(g2) - r(g1)|g2| for a period map gamma -> r(gamma)"""
    return (period(g1 @ g2) - period(g2) - slash_poly(period(g1), g2, ms)).norm()


def example_polynomial(k: int) -> PeriodPolynomial:
    """
    Reference polynomial for eta^(2k), k = 3, 4, 5, in the W-space of the
    conjugate character, constant term first.
    """
    if k == 3:
        return PeriodPolynomial(3, [1j, 1])
    if k == 4:
        return PeriodPolynomial(4, [-1, np.sqrt(3) * 1j, 1])
    if k == 5:
        alpha = (3 + np.sqrt(3)) / 2
        return PeriodPolynomial(5, [-1j, -alpha, alpha * 1j, 1])
    raise DomainError(f"no reference polynomial for weight {k}")
