"""
Poincare series g_m(z, chi), their Fourier coefficients and supplementary functions
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from .config import settings
from .errors import DomainError, SingularSystemError, require
from .modgroup import MultiplierSystem, chi, enumerate_cosets
from .models import Estimate
from .qseries import FourierExpansion


@dataclass(frozen=True)
class PoincareSpec:
    """g_m(z, chi) of weight k truncated to lower rows with 1 <= c <= c_max, |d| <= c_max"""

    m: int
    k: int
    ms: MultiplierSystem = field(default_factory=MultiplierSystem)
    c_max: Optional[int] = None

    def __post_init__(self):
        require(int(self.k) == self.k and self.k > 2, "Poincare series need integral weight k > 2", DomainError)
        if self.c_max is None:
            object.__setattr__(self, "c_max", settings.poincare_cmax)
        require(self.c_max >= 0, "c_max must be non-negative", DomainError)

    @property
    def kappa(self) -> Fraction:
        return self.ms.kappa

    @property
    def mu(self) -> float:
        return float(self.m + self.ms.kappa)

    def with_cmax(self, c_max: int) -> "PoincareSpec":
        return PoincareSpec(self.m, self.k, self.ms, c_max)


@lru_cache(maxsize=16)
def _coset_reps(c_max: int, exponent: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(c, d0, a0, chi(gamma0)) for every lower row with 0 <= d0 < c <= c_max"""
    ms = MultiplierSystem(exponent)
    reps = enumerate_cosets(c_max)[1:]
    cs = np.array([g.c for g in reps], dtype=np.int64)
    ds = np.array([g.d for g in reps], dtype=np.int64)
    as_ = np.array([g.a for g in reps], dtype=np.int64)
    chis = np.array([chi(ms, g) for g in reps], dtype=complex)
    return cs, ds, as_, chis


@lru_cache(maxsize=16)
def _box_table(c_max: int, exponent: int) -> Tuple[np.ndarray, ...]:
    """Flat arrays (a, c, d, chi) over the box, each rep translated by T^l"""
    cs, ds, as_, chis = _coset_reps(c_max, exponent)
    kappa = exponent / 24
    out_a, out_c, out_d, out_chi = [], [], [], []
    for c, d0, a0, chi0 in zip(cs, ds, as_, chis):
        lo = -((c_max + d0) // c)
        hi = (c_max - d0) // c
        shifts = np.arange(lo, hi + 1)
        out_a.append(np.full(len(shifts), a0))
        out_c.append(np.full(len(shifts), c))
        out_d.append(d0 + c * shifts)
        # chi(gamma0 T^l) = chi(gamma0) e^(2 pi i kappa l)
        out_chi.append(chi0 * np.exp(2j * np.pi * kappa * shifts))
    if not out_a:
        empty = np.zeros(0)
        return empty, empty, empty, empty.astype(complex)
    return (
        np.concatenate(out_a).astype(float),
        np.concatenate(out_c).astype(float),
        np.concatenate(out_d).astype(float),
        np.concatenate(out_chi),
    )


def _coset_sum(spec: PoincareSpec, z: complex) -> complex:
    a, c, d, chis = _box_table(spec.c_max, spec.ms.exponent)
    if len(c) == 0:
        return 0j
    cz_d = c * z + d
    gz = a / c - 1.0 / (c * cz_d)
    return complex(np.sum(np.exp(2j * np.pi * spec.mu * gz) / (chis * cz_d ** spec.k)))


def truncation_heuristic(spec: PoincareSpec, y: float) -> float:
    """Size of the omitted rows, ~ y^(1-k) c_max^(2-k)"""
    c_max = max(spec.c_max, 1)
    growth = np.exp(2 * np.pi * max(-spec.mu, 0.0) / (c_max ** 2 * y))
    return float(8 * y ** (1 - spec.k) * c_max ** (2 - spec.k) / (spec.k - 2) * growth)


def poincare_eval(spec: PoincareSpec, z) -> Estimate:
    """
    g_m(z, chi) = sum over lower rows +-(c, d) of e^(2 pi i (m + kappa) gamma z) / (chi(gamma) (cz + d)^k).

    Both signs of each row contribute equally, so the identity rows give the
    seed 2 e^(2 pi i (m + kappa) z). Accepts a scalar or an array of points.
    """
    z_arr = np.asarray(z, dtype=complex)
    require(np.all(z_arr.imag > 0), "evaluation point must lie in the upper half plane", DomainError)
    flat = z_arr.ravel()
    values = np.array([2 * np.exp(2j * np.pi * spec.mu * w) + 2 * _coset_sum(spec, w) for w in flat])
    error = truncation_heuristic(spec, float(flat.imag.min()))
    if z_arr.ndim == 0:
        return Estimate(complex(values[0]), error, spec.c_max)
    return Estimate(values.reshape(z_arr.shape), error, spec.c_max)


def poincare_coefficient(spec: PoincareSpec, n: int, y: float = 1.0, points: Optional[int] = None) -> complex:
    """Coefficient of e^(2 pi i (n + kappa) z) by the trapezoid rule on the horizontal line at height y"""
    points = points or settings.trapezoid_points
    require(points >= 8, "trapezoid rule needs at least 8 points", DomainError)
    require(y > 0, "contour height must be positive", DomainError)
    x = np.arange(points) / points
    z = x + 1j * y
    values = poincare_eval(spec, z).value
    nu = float(n + spec.kappa)
    return complex(np.mean(values * np.exp(-2j * np.pi * nu * z)))


def kloosterman_sum(mu: float, nu: float, c_max: int, ms: MultiplierSystem) -> Tuple[np.ndarray, np.ndarray]:
    """K(mu, nu, c) = sum over d0 mod c of conj(chi(gamma0)) e^(2 pi i (mu a + nu d0) / c), for c = 1..c_max"""
    cs, ds, as_, chis = _coset_reps(c_max, ms.exponent)
    phases = np.conj(chis) * np.exp(2j * np.pi * (mu * as_ + nu * ds) / cs)
    real = np.bincount(cs, weights=phases.real, minlength=c_max + 1)
    imag = np.bincount(cs, weights=phases.imag, minlength=c_max + 1)
    c_values = np.arange(1, c_max + 1)
    return c_values, (real + 1j * imag)[1:]


def kloosterman_coefficient(spec: PoincareSpec, n: int, c_max: Optional[int] = None) -> Estimate:
    """
    a_n(m, chi) from the Kloosterman-Bessel series, truncated at c <= c_max.

    g_m = 2 e^(2 pi i (m + kappa) z) + 2 sum a_n(m, chi) e^(2 pi i (n + kappa) z),
    with a_n = 0 whenever n + kappa <= 0.
    """
    c_max = c_max or settings.kloosterman_cmax
    k = spec.k
    mu = spec.mu
    nu = float(n + spec.kappa)
    if nu <= 0:
        return Estimate(0j, 0.0, c_max)
    c, K = kloosterman_sum(mu, nu, c_max, spec.ms)
    c = c.astype(float)
    if mu == 0:
        terms = K * c ** (-k) * (2 * np.pi) ** k * (1j) ** (-k) * nu ** (k - 1) / factorial(k - 1)
    else:
        arg = 4 * np.pi * np.sqrt(abs(mu) * nu) / c
        bessel = special.jv(k - 1, arg) if mu > 0 else special.iv(k - 1, arg)
        terms = 2 * np.pi * (1j) ** (-k) / c * K * (nu / abs(mu)) ** ((k - 1) / 2) * bessel
    # the terms decay like c^(1-k) on average
    error = float(np.abs(terms[-1])) * c_max / (k - 2) if len(terms) else 0.0
    return Estimate(complex(terms.sum()), error, c_max)


def poincare_expansion(spec: PoincareSpec, N: int, c_max: Optional[int] = None, cache=None) -> FourierExpansion:
    """Fourier expansion of g_m through index N from the Kloosterman route"""
    c_max = c_max or settings.kloosterman_cmax
    n_min = min(spec.m, 0)
    key = None
    if cache is not None:
        key = cache.make_key(str(spec.ms), spec.k, spec.m, c_max)
        stored = cache.get(key)
        if stored is not None and len(stored) >= N - n_min + 1:
            coeffs = [complex(re, im) for re, im in stored[: N - n_min + 1]]
            return FourierExpansion(coeffs, n_min, spec.k, spec.ms)
    coeffs = []
    for n in range(n_min, N + 1):
        value = 2 * kloosterman_coefficient(spec, n, c_max).value
        if n == spec.m:
            value += 2
        coeffs.append(complex(value))
    if cache is not None:
        cache.put(key, [[c.real, c.imag] for c in coeffs])
    return FourierExpansion(coeffs, n_min, spec.k, spec.ms)


def richardson_extrapolate(samples: Sequence[Tuple[int, complex]], rate: float) -> complex:
    """
    Limit c_max -> oo of values with error ~ A c_max^(-rate) + B c_max^(-rate-1) + ...

    ``samples`` are (c_max, value) pairs; one correction term per extra sample.
    """
    require(len(samples) >= 2, "extrapolation needs at least two samples", DomainError)
    cs = np.array([float(c) for c, _ in samples])
    values = np.array([complex(v) for _, v in samples])
    columns = [np.ones_like(cs)] + [cs ** -(rate + j) for j in range(len(samples) - 1)]
    matrix = np.stack(columns, axis=1)
    solution, *_ = np.linalg.lstsq(matrix.astype(complex), values, rcond=None)
    return complex(solution[0])


# Supplementary functions


def _dim_modular(weight: int) -> int:
    if weight < 0 or weight % 2 or weight == 2:
        return 0
    return weight // 12 + (0 if weight % 12 == 2 else 1)


def cusp_dimension(k: int, ms: MultiplierSystem) -> int:
    """dim S_{k,chi} on SL2(Z) for chi an eta power, via division by eta^r"""
    r = ms.exponent
    if r == 0:
        return max(_dim_modular(k) - 1, 0)
    # eta^r times M_{k - r/2}; consistency forces k - r/2 to be an even integer
    reduced = Fraction(k) - Fraction(r, 2)
    if reduced.denominator != 1:
        return 0
    return _dim_modular(int(reduced))


def basis_indices(k: int, ms: MultiplierSystem) -> List[int]:
    """Seeds m_1 < ... < m_s: the first s indices with n + kappa > 0"""
    s = cusp_dimension(k, ms)
    start = 1 if ms.kappa == 0 else 0
    return list(range(start, start + s))


def dual_index(m: int, kappa) -> int:
    """m' = -m when kappa = 0, otherwise -1 - m"""
    return -m if kappa == 0 else -1 - m


class SupplementaryForm:
    """f* = sum conj(b_i) g_{m_i'}(z, conj(chi)) attached to a cusp form f = sum b_i g_{m_i}(z, chi)"""

    def __init__(self, k: int, ms: MultiplierSystem, indices: Sequence[int], b: Sequence[complex], c_max: int):
        self.k = k
        self.ms = ms
        self.indices = list(indices)
        self.b = np.asarray(b, dtype=complex)
        self.c_max = c_max

    @property
    def dual_ms(self) -> MultiplierSystem:
        return self.ms.conjugate()

    @property
    def dual_indices(self) -> List[int]:
        return [dual_index(m, self.ms.kappa) for m in self.indices]

    def specs(self, c_max: Optional[int] = None) -> List[PoincareSpec]:
        return [PoincareSpec(m, self.k, self.dual_ms, c_max or self.c_max) for m in self.dual_indices]

    def eval(self, z, c_max: Optional[int] = None) -> Estimate:
        value = 0j
        error = 0.0
        for b, spec in zip(self.b, self.specs(c_max)):
            estimate = poincare_eval(spec, z)
            value = value + np.conj(b) * estimate.value
            error += abs(b) * estimate.error
        return Estimate(value, error, c_max or self.c_max)

    def __call__(self, z):
        return self.eval(z).value

    def principal_part(self) -> FourierExpansion:
        """2 sum conj(b_i) e^(2 pi i (m_i' + kappa') z)"""
        if not self.indices:
            return FourierExpansion((), 0, self.k, self.dual_ms)
        n_min = min(self.dual_indices)
        n_max = max(self.dual_indices)
        coeffs = [0j] * (n_max - n_min + 1)
        for b, m in zip(self.b, self.dual_indices):
            coeffs[m - n_min] += 2 * np.conj(b)
        return FourierExpansion(coeffs, n_min, self.k, self.dual_ms)

    def expansion(self, N: int, c_max: Optional[int] = None, cache=None) -> FourierExpansion:
        total = None
        for b, spec in zip(self.b, self.specs()):
            part = poincare_expansion(spec, N, c_max, cache).scale(np.conj(b))
            total = part if total is None else total + part
        if total is None:
            return FourierExpansion.zero(N, self.k, self.dual_ms)
        return total

    def to_dict(self):
        return {
            "k": self.k,
            "multiplier": self.ms.to_dict(),
            "indices": self.indices,
            "dual_indices": self.dual_indices,
            "b": [[float(b.real), float(b.imag)] for b in self.b],
            "c_max": self.c_max,
        }


def supplementary_coefficients(f: FourierExpansion, c_max: Optional[int] = None) -> SupplementaryForm:
    """
    Solve f = sum b_i g_{m_i}(z, chi) from the coefficients at the seeds m_j.

    A[j][i] is the coefficient of g_{m_i} at n = m_j, which is
    2 delta_{ij} + 2 a_{m_j}(m_i, chi) from the Kloosterman route.
    """
    c_max = c_max or settings.kloosterman_cmax
    require(f.weight.denominator == 1, "supplementary functions need integral weight", DomainError)
    k = int(f.weight)
    ms = f.multiplier
    require(
        all(n + f.kappa > 0 for n, _ in f.nonzero_items()),
        "supplementary functions are attached to cusp forms",
        DomainError,
    )
    indices = basis_indices(k, ms)
    if f.is_zero() or not indices:
        return SupplementaryForm(k, ms, indices, np.zeros(len(indices)), c_max)
    s = len(indices)
    A = np.zeros((s, s), dtype=complex)
    for i, m_i in enumerate(indices):
        spec = PoincareSpec(m_i, k, ms, c_max)
        for j, m_j in enumerate(indices):
            A[j, i] = 2 * kloosterman_coefficient(spec, m_j, c_max).value + (2 if i == j else 0)
    rhs = np.array([complex(f.coefficient(m)) for m in indices])
    if abs(np.linalg.det(A)) < 1e-12 * max(1.0, float(np.abs(A).max()) ** s):
        raise SingularSystemError("coefficient system for the Poincare basis is singular")
    b = np.linalg.solve(A, rhs)
    return SupplementaryForm(k, ms, indices, b, c_max)


def supplementary_eval(f: FourierExpansion, z, c_max: Optional[int] = None) -> Estimate:
    return supplementary_coefficients(f, c_max).eval(z)


def supplementary_principal_part(f: FourierExpansion, c_max: Optional[int] = None) -> FourierExpansion:
    return supplementary_coefficients(f, c_max).principal_part()


def supplementary_expansion(f: FourierExpansion, N: int, c_max: Optional[int] = None, cache=None) -> FourierExpansion:
    """f* through index N, coefficients from the Kloosterman route"""
    return supplementary_coefficients(f, c_max).expansion(N, c_max, cache)
