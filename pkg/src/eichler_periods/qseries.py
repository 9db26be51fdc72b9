"""
Truncated Fourier expansions sum a_n exp(2 pi i (n + kappa) z) with exact offsets
"""

from fractions import Fraction
from math import floor
from numbers import Number
from typing import Any, Dict, Iterable, List, Optional, Tuple

import mpmath
import numpy as np

from .errors import DomainError, TruncationError, require
from .modgroup import TRIVIAL, MultiplierSystem
from .models import Estimate, GrowthClass


def _as_weight(weight) -> Fraction:
    return Fraction(weight)


def _is_zero(value) -> bool:
    return value == 0


def _to_complex_pair(value) -> List[float]:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def _from_pair(re: float, im: float):
    if im == 0:
        if float(re).is_integer():
            return int(re)
        return float(re)
    return complex(re, im)


class FourierExpansion:
    """
    Coefficients a_n for n_min <= n <= n_max of a q-series with offset kappa.

    The series is known exactly through n_max; nothing below n_min is nonzero.
    Coefficients are ints, Fractions or complex numbers.
    """

    def __init__(
        self,
        coeffs: Iterable[Any],
        n_min: int = 0,
        weight=0,
        multiplier: MultiplierSystem = TRIVIAL,
    ):
        self.coeffs: Tuple[Any, ...] = tuple(coeffs)
        self.n_min = int(n_min)
        self.weight = _as_weight(weight)
        self.multiplier = multiplier

    # Basic shape

    @property
    def kappa(self) -> Fraction:
        return self.multiplier.kappa

    @property
    def lam(self) -> int:
        return self.multiplier.lam

    @property
    def n_max(self) -> int:
        return self.n_min + len(self.coeffs) - 1

    def indices(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def coefficient(self, n: int):
        if n < self.n_min:
            return 0
        require(n <= self.n_max, f"coefficient {n} beyond truncation {self.n_max}", TruncationError)
        return self.coeffs[n - self.n_min]

    def items(self) -> List[Tuple[int, Any]]:
        return list(zip(self.indices(), self.coeffs))

    def nonzero_items(self) -> List[Tuple[int, Any]]:
        return [(n, a) for n, a in self.items() if not _is_zero(a)]

    def is_zero(self) -> bool:
        return all(_is_zero(a) for a in self.coeffs)

    def exponent(self, n: int) -> Fraction:
        return n + self.kappa

    def __repr__(self) -> str:
        return (
            f"FourierExpansion(weight={self.weight}, kappa={self.kappa}, "
            f"n={self.n_min}..{self.n_max})"
        )

    @classmethod
    def zero(cls, n_max: int, weight=0, multiplier: MultiplierSystem = TRIVIAL, n_min: int = 0):
        return cls([0] * (n_max - n_min + 1), n_min, weight, multiplier)

    @classmethod
    def monomial(cls, n: int, value=1, weight=0, multiplier: MultiplierSystem = TRIVIAL, n_max: Optional[int] = None):
        n_max = n if n_max is None else n_max
        coeffs = [0] * (n_max - n + 1)
        coeffs[0] = value
        return cls(coeffs, n, weight, multiplier)

    # Reshaping

    def truncate(self, n_max: int) -> "FourierExpansion":
        require(
            n_max <= self.n_max,
            f"cannot extend expansion to {n_max}, known through {self.n_max}",
            TruncationError,
        )
        return FourierExpansion(self.coeffs[: n_max - self.n_min + 1], self.n_min, self.weight, self.multiplier)

    def stripped(self) -> "FourierExpansion":
        """Drop leading zero coefficients"""
        for i, a in enumerate(self.coeffs):
            if not _is_zero(a):
                return FourierExpansion(self.coeffs[i:], self.n_min + i, self.weight, self.multiplier)
        return FourierExpansion((), self.n_max + 1, self.weight, self.multiplier)

    def extended_down(self, n_min: int) -> "FourierExpansion":
        if n_min >= self.n_min:
            return self
        pad = [0] * (self.n_min - n_min)
        return FourierExpansion(pad + list(self.coeffs), n_min, self.weight, self.multiplier)

    def with_weight(self, weight) -> "FourierExpansion":
        return FourierExpansion(self.coeffs, self.n_min, weight, self.multiplier)

    def map_coefficients(self, fn) -> "FourierExpansion":
        return FourierExpansion([fn(n, a) for n, a in self.items()], self.n_min, self.weight, self.multiplier)

    def principal_part(self) -> "FourierExpansion":
        """Terms with n + kappa < 0"""
        keep = [(n, a) for n, a in self.items() if n + self.kappa < 0]
        if not keep:
            return FourierExpansion((), self.n_min, self.weight, self.multiplier)
        return FourierExpansion([a for _, a in keep], keep[0][0], self.weight, self.multiplier)

    def conjugate(self) -> "FourierExpansion":
        """Coefficient conjugate; this is the expansion of conj(F(-conj z))"""
        return FourierExpansion(
            [a.conjugate() if isinstance(a, complex) else a for a in self.coeffs],
            self.n_min,
            self.weight,
            self.multiplier,
        )

    # Arithmetic

    def _check_compatible(self, other: "FourierExpansion"):
        require(self.kappa == other.kappa, "expansions have different kappa", DomainError)
        require(self.weight == other.weight, "expansions have different weight", DomainError)

    def __add__(self, other: "FourierExpansion") -> "FourierExpansion":
        if isinstance(other, Number):
            if other == 0:
                return self
            require(self.kappa == 0, "a constant needs the kappa = 0 channel", DomainError)
            return self + constant(other, self.n_max, self.weight, self.multiplier)
        self._check_compatible(other)
        lo = min(self.n_min, other.n_min)
        hi = min(self.n_max, other.n_max)
        coeffs = [self.coefficient(n) + other.coefficient(n) for n in range(lo, hi + 1)]
        return FourierExpansion(coeffs, lo, self.weight, self.multiplier)

    __radd__ = __add__

    def __neg__(self) -> "FourierExpansion":
        return self.scale(-1)

    def __sub__(self, other) -> "FourierExpansion":
        return self + (-other)

    def scale(self, factor) -> "FourierExpansion":
        return FourierExpansion([factor * a for a in self.coeffs], self.n_min, self.weight, self.multiplier)

    def __mul__(self, other) -> "FourierExpansion":
        if isinstance(other, FourierExpansion):
            return product(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "FourierExpansion":
        return power(self, m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourierExpansion):
            return NotImplemented
        return (
            self.kappa == other.kappa
            and self.weight == other.weight
            and self.stripped().items() == other.stripped().items()
        )

    __hash__ = None

    # Evaluation

    def __call__(self, z):
        """Sum of the stored terms at z (scalar or numpy array)"""
        z = np.asarray(z, dtype=complex)
        items = self.nonzero_items()
        if not items:
            return np.zeros_like(z) if z.ndim else 0j
        exps = np.array([float(n + self.kappa) for n, _ in items])
        coeffs = np.array([complex(a) for _, a in items])
        terms = np.exp(2j * np.pi * np.multiply.outer(z, exps))
        value = terms @ coeffs
        return complex(value) if z.ndim == 0 else value

    # Interchange format

    def to_dict(self) -> Dict[str, Any]:
        return {
            "weight": str(self.weight) if self.weight.denominator != 1 else int(self.weight),
            "kappa": f"{self.kappa.numerator}/{self.kappa.denominator}",
            "lambda": self.lam,
            "coeffs": [[n] + _to_complex_pair(a) for n, a in self.items()],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FourierExpansion":
        require(int(data.get("lambda", 1)) == 1, "only lambda = 1 is supported", DomainError)
        multiplier = MultiplierSystem.from_kappa(Fraction(str(data["kappa"])))
        rows = sorted(data["coeffs"], key=lambda row: row[0])
        if not rows:
            return cls((), 0, Fraction(str(data["weight"])), multiplier)
        n_min = int(rows[0][0])
        n_max = int(rows[-1][0])
        coeffs = [0] * (n_max - n_min + 1)
        for n, re, im in rows:
            coeffs[int(n) - n_min] = _from_pair(re, im)
        return cls(coeffs, n_min, Fraction(str(data["weight"])), multiplier)


def constant(value, n_max: int = 0, weight=0, multiplier: MultiplierSystem = TRIVIAL) -> FourierExpansion:
    return FourierExpansion.monomial(0, value, weight, multiplier, n_max=n_max)


def product(F: FourierExpansion, G: FourierExpansion) -> FourierExpansion:
    """Cauchy product; kappa offsets add with the integer overflow folded into the index"""
    total = F.kappa + G.kappa
    shift = floor(total)
    multiplier = F.multiplier * G.multiplier
    n_min = F.n_min + G.n_min + shift
    n_max = min(F.n_max + G.n_min, G.n_max + F.n_min) + shift
    length = n_max - n_min + 1
    coeffs: List[Any] = [0] * max(length, 0)
    f_items = F.nonzero_items()
    g_items = G.nonzero_items()
    for n, a in f_items:
        for m, b in g_items:
            p = n + m + shift
            if p > n_max:
                break
            coeffs[p - n_min] += a * b
    return FourierExpansion(coeffs, n_min, F.weight + G.weight, multiplier)


def power(F: FourierExpansion, m: int, N: Optional[int] = None) -> FourierExpansion:
    """m-fold product by binary exponentiation, optionally truncated at N"""
    require(m >= 1, "power needs a positive exponent", DomainError)
    result: Optional[FourierExpansion] = None
    base = F
    e = m
    while e:
        if e & 1:
            result = base if result is None else product(result, base)
        e >>= 1
        if e:
            base = product(base, base)
    if N is not None:
        if N > result.n_max:
            raise TruncationError(
                f"power reaches order {result.n_max}, requested {N}", achieved=result.n_max
            )
        result = result.truncate(N)
    return result


def invert(F: FourierExpansion, N: Optional[int] = None) -> FourierExpansion:
    """Series G with F G = 1 through the achievable order (or N)"""
    F = F.stripped()
    require(len(F.coeffs) > 0, "cannot invert: zero leading coefficient", DomainError)
    a0 = F.coeffs[0]
    n0 = F.n_min
    kappa = F.kappa
    n_prime = -n0 - (1 if kappa > 0 else 0)
    count = len(F.coeffs)
    inv_a0 = Fraction(1, a0) if isinstance(a0, int) else 1 / a0
    g: List[Any] = [inv_a0]
    for j in range(1, count):
        acc = 0
        for i in range(1, j + 1):
            acc += F.coeffs[i] * g[j - i]
        g.append(-inv_a0 * acc)
    g = [int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in g]
    G = FourierExpansion(g, n_prime, -F.weight, F.multiplier.conjugate())
    if N is not None:
        if N > G.n_max:
            raise TruncationError(f"inverse reaches order {G.n_max}, requested {N}", achieved=G.n_max)
        G = G.truncate(N)
    return G


# Named forms


def eta_expansion(N: int) -> FourierExpansion:
    """prod (1 - q^n) through q^N, carried with kappa = 1/24 and weight 1/2"""
    require(N >= 1, "eta_expansion needs N >= 1", DomainError)
    coeffs = [0] * (N + 1)
    k = 0
    while True:
        hit = False
        for j in (k, -k) if k else (0,):
            n = j * (3 * j - 1) // 2
            if n <= N:
                coeffs[n] = (-1) ** (j % 2)
                hit = True
        if not hit:
            break
        k += 1
    return FourierExpansion(coeffs, 0, Fraction(1, 2), MultiplierSystem.eta_power(1))


def eta_power_expansion(r: int, N: int) -> FourierExpansion:
    """eta^r complete through index N"""
    require(r >= 1, "eta power must be positive", DomainError)
    # each factor adds at most one index of shift
    base = eta_expansion(N + 1)
    return power(base, r, N=N) if r > 1 else base.truncate(N)


def delta_expansion(N: int) -> FourierExpansion:
    """Delta = eta^24 = q - 24 q^2 + ... through q^N"""
    require(N >= 1, "delta_expansion needs N >= 1", DomainError)
    return eta_power_expansion(24, N)


def inverse_delta_expansion(N: int) -> FourierExpansion:
    """1/Delta = q^-1 + 24 + 324 q + ... through q^N"""
    return invert(delta_expansion(N + 2), N)


def divisor_sum(n: int, power_: int) -> int:
    return sum(d ** power_ for d in range(1, n + 1) if n % d == 0)


def eisenstein(weight: int, N: int) -> FourierExpansion:
    """E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n through q^N"""
    require(
        isinstance(weight, int) and weight >= 4 and weight % 2 == 0,
        f"no holomorphic Eisenstein series of weight {weight}",
        DomainError,
    )
    numerator, denominator = mpmath.bernfrac(weight)
    factor = Fraction(-2 * weight * int(denominator), int(numerator))
    coeffs = [1] + [factor * divisor_sum(n, weight - 1) for n in range(1, N + 1)]
    coeffs = [int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in coeffs]
    return FourierExpansion(coeffs, 0, weight, TRIVIAL)


def j_expansion(N: int, constant_term: int = 744) -> FourierExpansion:
    """E4^3 / Delta through q^N, with its constant term replaced by ``constant_term``"""
    e4_cubed = power(eisenstein(4, N + 1), 3)
    j = product(e4_cubed, inverse_delta_expansion(N + 1)).truncate(N)
    j = j.with_weight(0)
    return j + constant(constant_term - 744, N, 0, j.multiplier)


# Operators


def bol_derivative(F: FourierExpansion, m: int) -> FourierExpansion:
    """D^m with D = (1/2 pi i) d/dz: a_n -> a_n (n + kappa)^m, weight + 2m"""
    require(m >= 0, "derivative order must be non-negative", DomainError)
    kappa = F.kappa
    out = F.map_coefficients(lambda n, a: a * (n + kappa) ** m if m else a)
    return out.with_weight(F.weight + 2 * m)


# Tail bounds


def _growth(growth: GrowthClass, weight: Fraction, C: float):
    w = float(weight)
    if growth == GrowthClass.CUSP:
        return lambda x: x ** (w / 2)
    if growth == GrowthClass.HOLOMORPHIC:
        return lambda x: x ** max(w - 1, 0.0)
    return lambda x: np.exp(C * np.sqrt(x))


def tail_bound(F: FourierExpansion, y: float, growth: GrowthClass) -> float:
    """
    Geometric bound on sum_{n > n_max} |a_n| e^{-2 pi (n + kappa) y}.

    |a_n| <= A g(n + kappa) with A fitted on the upper half of the stored
    coefficients and g the growth profile of the class.
    """
    kappa = float(F.kappa)
    C = 0.0
    if growth == GrowthClass.WEAKLY_HOLOMORPHIC:
        principal = F.principal_part().stripped()
        lowest = principal.n_min + kappa if principal.coeffs else -1.0
        C = 4 * np.pi * np.sqrt(abs(lowest))
    g = _growth(growth, F.weight, C)
    upper = [(n, a) for n, a in F.items() if n >= (F.n_min + F.n_max) / 2 and n + kappa > 0]
    if not upper:
        return 0.0
    A = max(abs(complex(a)) / g(n + kappa) for n, a in upper)
    if A == 0:
        return 0.0
    first = F.n_max + 1 + kappa
    t1 = A * g(first) * np.exp(-2 * np.pi * first * y)
    ratio = g(first + 1) / g(first) * np.exp(-2 * np.pi * y)
    if ratio >= 1:
        return float("inf")
    return float(t1 / (1 - ratio))


def evaluate(
    F: FourierExpansion,
    z,
    growth: GrowthClass = GrowthClass.CUSP,
    tol: Optional[float] = None,
) -> Estimate:
    """Value of the truncated series at z together with its tail bound"""
    y = float(np.min(np.imag(z)))
    require(y > 0, "evaluation point must lie in the upper half plane", DomainError)
    tail = tail_bound(F, y, growth)
    if tol is not None and tail > tol:
        raise TruncationError(f"tail bound {tail:.3e} exceeds tolerance {tol:.1e}", achieved=tail)
    return Estimate(F(z), tail, F.n_max)


def duality_pairing(F: FourierExpansion, G: FourierExpansion):
    """sum_n a_n b_{-n} for F of weight 2 and G of weight 0, both with trivial character"""
    require(F.kappa == 0 and G.kappa == 0, "duality pairing needs trivial characters", DomainError)
    require(F.weight == 2 and G.weight == 0, "duality pairing needs weights 2 and 0", DomainError)
    if F.n_max < -G.n_min or G.n_max < -F.n_min:
        raise TruncationError(
            "insufficient truncation for duality pairing",
            achieved=min(F.n_max + G.n_min, G.n_max + F.n_min),
        )
    total = 0
    for n, a in F.nonzero_items():
        total += a * G.coefficient(-n)
    return total
