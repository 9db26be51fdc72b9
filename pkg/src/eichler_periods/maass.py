"""
Harmonic weak Maass forms of weight 2 - k built from a shadow, the xi and
Laplace operators, and numerical checks of the period theorems
"""

from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .config import settings
from .eichler import eichler_constants, formal_eichler, integral_weight, lehner_constant
from .errors import DomainError, require
from .lvalues import TwistSpec, lvalue_display
from .modgroup import GroupElement, MultiplierSystem, chi
from .models import VerificationReport
from .periods import (
    eichler_period_value,
    mock_period,
    period_from_samples,
    period_polynomial,
    period_quadrature,
)
from .poincare import SupplementaryForm, supplementary_coefficients
from .qseries import (
    FourierExpansion,
    bol_derivative,
    eisenstein,
    inverse_delta_expansion,
    power,
    product,
)
from .specialfn import H_kernel


class NonHolomorphicPart:
    """
    sum_{n + kappa < 0} A_n H(2 pi (n + kappa) y) e^(2 pi i (n + kappa) x) + a0 y^(k-1)
    for a form of weight 2 - k with multiplier ms.
    """

    def __init__(self, k: int, ms: MultiplierSystem, coeffs: Optional[Dict[int, complex]] = None, a0: complex = 0j):
        self.k = k
        self.ms = ms
        self.coeffs = dict(coeffs or {})
        self.a0 = complex(a0)
        for n in self.coeffs:
            require(n + ms.kappa < 0, f"index {n} is a holomorphic channel", DomainError)
        require(self.a0 == 0 or ms.kappa == 0, "no constant channel", DomainError)

    @classmethod
    def from_shadow(cls, h: FourierExpansion) -> "NonHolomorphicPart":
        """-E^N_h: the channel of b at mu = n + kappa_h sits at n' + kappa' = -mu"""
        k = integral_weight(h)
        ck = eichler_constants(k).c_k
        shift = 1 if h.kappa > 0 else 0
        coeffs = {}
        for n, b in h.nonzero_items():
            mu = float(n + h.kappa)
            require(mu > 0, "shadow must be a cusp form", DomainError)
            coeffs[-n - shift] = (1j) ** (k - 1) * np.conj(complex(b)) * (2 * np.pi * mu) ** (1 - k) / ck
        return cls(k, h.multiplier.conjugate(), coeffs)

    @property
    def weight(self) -> int:
        return 2 - self.k

    def is_zero(self) -> bool:
        return self.a0 == 0 and all(a == 0 for a in self.coeffs.values())

    def scaled(self, factor: complex) -> "NonHolomorphicPart":
        return NonHolomorphicPart(
            self.k, self.ms, {n: factor * a for n, a in self.coeffs.items()}, factor * self.a0
        )

    def __call__(self, z):
        z_arr = np.asarray(z, dtype=complex)
        x, y = z_arr.real, z_arr.imag
        require(np.all(y > 0), "evaluation point must lie in the upper half plane", DomainError)
        value = self.a0 * y ** (self.k - 1) + 0j
        for n, A in sorted(self.coeffs.items()):
            nu = float(n + self.ms.kappa)
            value = value + A * H_kernel(2 * np.pi * nu * y, self.weight) * np.exp(2j * np.pi * nu * x)
        return complex(value) if z_arr.ndim == 0 else value

    def xi_expansion(self) -> FourierExpansion:
        """Termwise xi_{2-k}: A at nu < 0 goes to -(4 pi |nu|)^(k-1) conj(A) at |nu|, a0 y^(k-1) to (k-1) conj(a0)"""
        k = self.k
        target = self.ms.conjugate()
        shift = 1 if self.ms.kappa > 0 else 0
        items = {}
        for n, A in self.coeffs.items():
            mu = -float(n + self.ms.kappa)
            items[-n - shift] = -((4 * np.pi * mu) ** (k - 1)) * np.conj(A)
        if self.a0:
            items[0] = (k - 1) * np.conj(self.a0)
        if not items:
            return FourierExpansion((), 1, k, target)
        n_min, n_max = min(items), max(items)
        coeffs = [complex(items.get(n, 0j)) for n in range(n_min, n_max + 1)]
        return FourierExpansion(coeffs, n_min, k, target)


class HarmonicMaassForm:
    """H = H+ + H- of weight 2 - k with multiplier ms; the shadow lives in S_{k, conj(ms)}"""

    def __init__(
        self,
        k: int,
        ms: MultiplierSystem,
        holo: FourierExpansion,
        nonholo: NonHolomorphicPart,
        shadow: Optional[FourierExpansion] = None,
        G: Optional[FourierExpansion] = None,
        supplementary: Optional[SupplementaryForm] = None,
        hstar: Optional[FourierExpansion] = None,
    ):
        self.k = k
        self.ms = ms
        self.holo = holo
        self.nonholo = nonholo
        self.shadow = shadow
        self.G = G
        self.supplementary = supplementary
        self.hstar = hstar

    @property
    def weight(self) -> int:
        return 2 - self.k

    def holomorphic_part(self, z):
        return self.holo(z)

    def nonholomorphic_part(self, z):
        return self.nonholo(z)

    def __call__(self, z):
        return self.holo(z) + self.nonholo(z)

    def scaled(self, factor: complex) -> "HarmonicMaassForm":
        """factor * H, whose shadow is conj(factor) times the old one"""
        shadow = self.shadow.scale(np.conj(factor)) if self.shadow is not None else None
        G = self.G.scale(factor) if self.G is not None else None
        return HarmonicMaassForm(
            self.k,
            self.ms,
            self.holo.scale(factor),
            self.nonholo.scaled(factor),
            shadow,
            G,
            self.supplementary,
            self.hstar,
        )


def assemble_from_shadow(
    h: FourierExpansion,
    G: Optional[FourierExpansion] = None,
    N: Optional[int] = None,
    c_max: Optional[int] = None,
    cache=None,
) -> HarmonicMaassForm:
    """
    H+ = E^H_{h*} + G and H- = -E^N_h.

    h* comes from the supplementary Poincare combination; its expansion
    through index N uses the Kloosterman route.
    """
    N = N or settings.qseries_n
    k = integral_weight(h)
    eichler_constants(k)
    ms = h.multiplier.conjugate()
    if G is not None:
        require(G.weight == 2 - k, "G must have weight 2 - k", DomainError)
        require(G.kappa == ms.kappa, "G must carry the conjugate character of the shadow", DomainError)

    supplementary = None
    hstar = None
    if h.is_zero():
        holo = FourierExpansion.zero(N, 2 - k, ms)
    else:
        supplementary = supplementary_coefficients(h, c_max)
        hstar = supplementary.expansion(N, c_max, cache)
        holo = formal_eichler(hstar)
        if hstar.kappa == 0:
            holo = holo + lehner_constant(hstar).value
    if G is not None:
        holo = holo + G
    return HarmonicMaassForm(k, ms, holo, NonHolomorphicPart.from_shadow(h), h, G, supplementary, hstar)


def xi_expansion(H: HarmonicMaassForm) -> FourierExpansion:
    """xi_{2-k} H; holomorphic channels lie in the kernel"""
    return H.nonholo.xi_expansion()


def xi(H: HarmonicMaassForm, z):
    return xi_expansion(H)(z)


def _partial_derivatives(func: Callable, z: complex, step: float):
    fx = (func(z + step) - func(z - step)) / (2 * step)
    fy = (func(z + 1j * step) - func(z - 1j * step)) / (2 * step)
    return fx, fy


def richardson(estimate: Callable[[float], complex], step: float, order: int = 2) -> complex:
    """Combine step and step/2 for a method of the given order"""
    coarse = estimate(step)
    fine = estimate(step / 2)
    return (2 ** order * fine - coarse) / (2 ** order - 1)


def xi_finite_difference(H: HarmonicMaassForm, z: complex, step: Optional[float] = None) -> complex:
    """2i y^(2-k) conj(dH/d zbar) with dH/d zbar = (H_x + i H_y)/2 from central differences"""
    step = step or settings.fd_step
    z = complex(z)
    require(z.imag > 2 * step, "point too close to the real axis for the stencil", DomainError)

    def dzbar(h):
        fx, fy = _partial_derivatives(H, z, h)
        return (fx + 1j * fy) / 2

    derivative = richardson(dzbar, step)
    return complex(2j * z.imag ** (2 - H.k) * np.conj(derivative))


def laplacian(func: Callable, weight: float, z: complex, step: float) -> complex:
    """Delta_w = -y^2 (d_xx + d_yy) + i w y (d_x + i d_y) by central differences"""
    f0 = func(z)
    fxx = (func(z + step) - 2 * f0 + func(z - step)) / step ** 2
    fyy = (func(z + 1j * step) - 2 * f0 + func(z - 1j * step)) / step ** 2
    fx, fy = _partial_derivatives(func, z, step)
    y = z.imag
    return -(y ** 2) * (fxx + fyy) + 1j * weight * y * (fx + 1j * fy)


def laplacian_residual(H, z: complex, step: Optional[float] = None, weight: Optional[float] = None) -> float:
    """|Delta_{2-k} H(z)| / max(1, |H(z)|) with one Richardson step"""
    step = step or settings.fd_step
    z = complex(z)
    require(z.imag > 2 * step, "point too close to the real axis for the stencil", DomainError)
    if weight is None:
        weight = H.weight
    residual = abs(richardson(lambda h: laplacian(H, weight, z, h), step))
    return float(residual / max(1.0, abs(H(z))))


def modularity_defect(H, gamma: GroupElement, z, ms: Optional[MultiplierSystem] = None, weight=None):
    """|conj(chi(gamma)) (cz+d)^(-w) H(gamma z) - H(z)| at weight w"""
    ms = ms or H.ms
    weight = float(H.weight if weight is None else weight)
    z = np.asarray(z, dtype=complex)
    slashed = np.conj(chi(ms, gamma)) * gamma.j(z) ** (-weight) * H(gamma.act(z))
    defect = np.abs(slashed - H(z))
    return float(defect) if defect.ndim == 0 else defect


def invariance_defect(H: HarmonicMaassForm, gamma: GroupElement, z, tol: Optional[float] = None):
    """
    |(H|gamma - H)(z)| without evaluating any Poincare series.

    H-|gamma - H- is slashed directly; the holomorphic increment
    H+|gamma - H+ = -(-1)^(k-1) conj(r(h, gamma; conj z) / c_k) comes from the
    quadrature period of the shadow.
    """
    require(H.shadow is not None, "invariance check needs the shadow", DomainError)
    k = H.k
    z = np.asarray(z, dtype=complex)
    slashed = np.conj(chi(H.ms, gamma)) * gamma.j(z) ** (k - 2) * H.nonholo(gamma.act(z))
    nonholo_increment = slashed - H.nonholo(z)
    ck = eichler_constants(k).c_k
    period = period_quadrature(H.shadow, gamma, tol)
    holo_increment = -((-1) ** (k - 1)) * np.conj(period(np.conj(z)) / ck)
    defect = np.abs(nonholo_increment + holo_increment)
    return float(defect) if defect.ndim == 0 else defect


def weakly_holomorphic_with_constant(k: int, N: int) -> FourierExpansion:
    """
    A form E4^a E6^b / Delta^j of weight 2 - k with nonzero constant term.

    For k = 12 this is E4^2 E6 / Delta^2 with constant term -196560.
    """
    k = int(k)
    require(k > 2 and k % 2 == 0, "needs even k > 2 and the trivial character", DomainError)
    w = 2 - k
    for j in range(1, 8):
        target = w + 12 * j
        for b in range(target // 6 + 1):
            rest = target - 6 * b
            if rest < 0 or rest % 4:
                continue
            a = rest // 4
            M = N + 2 * j
            factors = [power(eisenstein(4, M), a, N=M)] if a else []
            if b:
                factors.append(power(eisenstein(6, M), b, N=M))
            form = power(inverse_delta_expansion(M), j, N=M - j)
            for factor in factors:
                form = product(factor, form)
            form = form.truncate(N).with_weight(w)
            if form.coefficient(0) != 0:
                return form
    raise DomainError(f"no Eisenstein quotient with nonzero constant term for weight {w}")


# Verifiers


def default_points(count: int = 10) -> List[complex]:
    """Points in the standard fundamental domain"""
    xs = np.linspace(-0.45, 0.45, (count + 1) // 2)
    points = [complex(x, 1.05) for x in xs] + [complex(x, 1.45) for x in xs]
    return points[:count]


def pointwise_deviation(first: np.ndarray, second: np.ndarray) -> float:
    """Largest pointwise gap relative to the largest value on either side"""
    first = np.asarray(first, dtype=complex)
    second = np.asarray(second, dtype=complex)
    gap = float(np.max(np.abs(first - second), initial=0.0))
    scale = max(float(np.max(np.abs(first), initial=0.0)), float(np.max(np.abs(second), initial=0.0)))
    return gap / scale if scale > 0 else gap


def verify_theorem1(
    h: FourierExpansion,
    G: Optional[FourierExpansion] = None,
    points: Optional[Sequence[complex]] = None,
    N: Optional[int] = None,
    c_max: Optional[int] = None,
    tol: Optional[float] = None,
) -> VerificationReport:
    """
    D^(k-1) of the holomorphic part minus D^(k-1) G equals Gamma(k-1)/(-4 pi)^(k-1) h*.

    The left side comes from the Kloosterman expansion of h*, the right side
    from direct evaluation of the Poincare series.
    """
    N = N or settings.qseries_n
    k = integral_weight(h)
    points = list(points or default_points(3))
    s = eichler_constants(k).shadow_scale
    H = assemble_from_shadow(h, G, N=N, c_max=c_max)
    z = np.array(points)
    lhs = s * bol_derivative(H.holo, k - 1)(z)
    if G is not None:
        lhs = lhs - s * bol_derivative(G, k - 1)(z)
    if H.supplementary is None:
        rhs = np.zeros_like(z)
        truncation_error = 0.0
    else:
        estimate = H.supplementary.eval(z)
        rhs = s * estimate.value
        truncation_error = abs(s) * estimate.error
    tol = tol or 1e-3
    return VerificationReport(
        "thm1",
        None,
        points,
        deviations={"holomorphic_part": pointwise_deviation(lhs, rhs)},
        tolerances={"default": tol},
        truncations={"N": N, "c_max": c_max or settings.kloosterman_cmax, "poincare_cmax": settings.poincare_cmax},
        details={"shadow_scale": s, "poincare_error_heuristic": truncation_error},
    )


def verify_theorem2(
    h: FourierExpansion,
    gamma: GroupElement,
    points: Optional[Sequence[complex]] = None,
    tol: Optional[float] = None,
) -> VerificationReport:
    """Mock period against the conjugated quadrature period and the L-value display"""
    require(gamma.c != 0, "the mock period theorem needs c != 0", DomainError)
    k = integral_weight(h)
    ck = eichler_constants(k).c_k
    points = list(points or default_points(10))
    w = np.array(points)
    twist = TwistSpec.from_gamma(gamma)
    mock = np.array([mock_period(h, gamma, p) for p in w])
    quad = np.conj(period_quadrature(h, gamma)(np.conj(w)) / ck)
    lvals = np.conj(lvalue_display(h, twist, np.conj(w)))
    tol = tol or 1e-6
    return VerificationReport(
        "thm2",
        str(gamma),
        points,
        deviations={
            "mock_vs_quadrature": pointwise_deviation(mock, quad),
            "mock_vs_lvalues": pointwise_deviation(mock, lvals),
            "quadrature_vs_lvalues": pointwise_deviation(quad, lvals),
        },
        tolerances={"default": tol},
        truncations={"N": h.n_max},
    )


def _formal_period(expansion: FourierExpansion, gamma: GroupElement, k: int, constant: complex = 0j):
    """Pointwise c_k (E - E|gamma) for E the formal Eichler integral of expansion plus a constant"""
    E = formal_eichler(expansion)

    def evaluator(z):
        return E(z) + constant

    return lambda w: eichler_period_value(evaluator, gamma, expansion.multiplier, k, w), evaluator


def verify_theorem3(
    h: FourierExpansion,
    gamma: GroupElement,
    points: Optional[Sequence[complex]] = None,
    N: Optional[int] = None,
    c_max: Optional[int] = None,
    tol: Optional[float] = None,
) -> VerificationReport:
    """
    r(h, gamma; conj w) against conj(r^H(h*, gamma; w)).

    When kappa = 0 the constant c_{h*} enters through the Lehner sum; the
    same identity is then rechecked after subtracting (c_{h*}/d) D^(k-1) Hw
    for a weakly holomorphic Hw with constant term d, which removes the
    constant channel altogether.
    """
    N = N or settings.qseries_n
    k = integral_weight(h)
    points = list(points or default_points(5))
    w = np.array(points)
    lhs_poly = period_polynomial(h, gamma)
    lhs = lhs_poly(np.conj(w))

    if h.is_zero():
        hstar = FourierExpansion.zero(N, k, h.multiplier.conjugate())
    else:
        hstar = supplementary_coefficients(h, c_max).expansion(N, c_max)
    c_hstar = lehner_constant(hstar).value if hstar.kappa == 0 else 0j

    corrected_value, corrected_eval = _formal_period(hstar, gamma, k, c_hstar)
    bare_value, _ = _formal_period(hstar, gamma, k)
    rhs = np.conj(corrected_value(w))
    uncorrected = np.conj(bare_value(w))

    fitted = period_from_samples(corrected_eval, gamma, hstar.multiplier, k).conjugate_reflect()

    deviations = {
        "pointwise": pointwise_deviation(lhs, rhs),
        "coefficients": pointwise_deviation(lhs_poly.coeffs, fitted.coeffs),
    }
    details = {
        "c_hstar": [c_hstar.real, c_hstar.imag],
        "constant_channel_magnitude": float(np.max(np.abs(lhs - uncorrected))),
    }
    if hstar.kappa == 0 and c_hstar != 0:
        Hw = weakly_holomorphic_with_constant(k, N)
        d = complex(Hw.coefficient(0))
        shifted = bol_derivative(Hw, k - 1)
        hat_value, _ = _formal_period(shifted, gamma, k)
        hat_rhs = np.conj(bare_value(w) - c_hstar / d * hat_value(w))
        deviations["corrected_form"] = pointwise_deviation(lhs, hat_rhs)
        details["weakly_holomorphic_constant"] = d.real
    # the Lehner constant stacks a second truncation on the kappa = 0 path
    tol = tol or (1e-2 if hstar.kappa == 0 else 1e-3)
    return VerificationReport(
        "thm3",
        str(gamma),
        points,
        deviations=deviations,
        tolerances={"default": tol},
        truncations={"N": N, "c_max": c_max or settings.kloosterman_cmax, "lehner_cmax": settings.lehner_cmax},
        details=details,
    )
