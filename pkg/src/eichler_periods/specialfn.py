"""
Upper incomplete gamma functions of integer order and the non-holomorphic kernel H
"""

import sys
import warnings
from math import factorial

import numpy as np
from scipy import special

from .errors import DomainError, HolomorphicChannelError, ToleranceError, PrecisionWarning, require

# Below this argument the downward recurrence loses noticeable precision
PRECISION_THRESHOLD = 0.05


def _positive_order_scaled(a: int, x):
    # e^x Gamma(a, x) = (a-1)! sum_{j<a} x^j / j!
    total = np.zeros_like(x, dtype=float)
    term = np.ones_like(x, dtype=float)
    for j in range(a):
        total = total + term
        term = term * x / (j + 1)
    return factorial(a - 1) * total


def _continued_fraction_scaled(a: int, x: float, accuracy: float = 1.0e-15, max_iteration: int = 500) -> float:
    """e^x Gamma(a, x) by the modified Lentz continued fraction, valid for x > a + 1"""
    tiny = sys.float_info.min / sys.float_info.epsilon
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, max_iteration + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < accuracy:
            return x ** a * h
    raise ToleranceError("continued fraction for the incomplete gamma did not converge", achieved=abs(delta - 1.0))


def _nonpositive_order_scaled(a: int, x: float) -> float:
    if x >= 1.0:
        return _continued_fraction_scaled(a, x)
    if x < PRECISION_THRESHOLD and a < 0:
        warnings.warn(
            f"incomplete gamma of order {a} at x={x:.3g} loses precision in the downward recurrence",
            PrecisionWarning,
            stacklevel=3,
        )
    # seed Gamma(0, x) = E1(x), then Gamma(s, x) = (Gamma(s+1, x) - x^s e^-x) / s
    value = float(np.exp(x) * special.exp1(x))
    for s in range(-1, a - 1, -1):
        value = (value - x ** s) / s
    return value


def scaled_upper_incomplete_gamma(a: int, x):
    """e^x Gamma(a, x) for integer a; accepts numpy arrays of x"""
    a = int(a)
    x_arr = np.asarray(x, dtype=float)
    if a >= 1:
        require(np.all(x_arr >= 0), "incomplete gamma needs x >= 0", DomainError)
        out = _positive_order_scaled(a, x_arr)
    else:
        require(np.all(x_arr > 0), f"Gamma({a}, x) diverges for x <= 0", DomainError)
        out = np.vectorize(lambda t: _nonpositive_order_scaled(a, float(t)), otypes=[float])(x_arr)
    return float(out) if np.ndim(out) == 0 else out


def upper_incomplete_gamma(a: int, x):
    """Gamma(a, x) = int_x^inf e^-t t^(a-1) dt for integer a"""
    x_arr = np.asarray(x, dtype=float)
    out = np.exp(-x_arr) * scaled_upper_incomplete_gamma(a, x_arr)
    return float(out) if np.ndim(out) == 0 else out


def H_kernel(w, weight: int):
    """
    e^{-w} Gamma(1 - weight, -2w) for w < 0.

    This is the profile of the non-holomorphic channels of a harmonic form
    of the given weight; evaluated through the scaled gamma to avoid overflow.
    """
    w_arr = np.asarray(w, dtype=float)
    if np.any(w_arr >= 0):
        raise HolomorphicChannelError("holomorphic channel")
    out = np.exp(w_arr) * scaled_upper_incomplete_gamma(1 - int(weight), -2 * w_arr)
    return float(out) if np.ndim(out) == 0 else out
