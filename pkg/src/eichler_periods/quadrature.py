"""
Adaptive quadrature of complex integrands on finite segments
"""

from typing import Callable, Optional, Tuple

import numpy as np
from scipy import integrate

from .config import settings
from .errors import ToleranceError


def complex_quad(
    func: Callable[[float], complex],
    a: float,
    b: float,
    epsabs: float = 1e-13,
    epsrel: float = 1e-13,
    limit: Optional[int] = None,
) -> Tuple[complex, float]:
    """Integrate a complex function of a real variable, real and imaginary parts separately"""
    limit = limit or settings.quad_limit
    re, re_err = integrate.quad(
        lambda t: complex(func(t)).real, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit
    )
    im, im_err = integrate.quad(
        lambda t: complex(func(t)).imag, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit
    )
    return complex(re, im), float(np.hypot(re_err, im_err))


def checked_quad(
    func: Callable[[float], complex],
    a: float,
    b: float,
    tol: float,
    scale: float = 1.0,
    limit: Optional[int] = None,
) -> complex:
    """complex_quad whose error estimate, divided by ``scale``, must stay below tol"""
    value, err = complex_quad(func, a, b, epsabs=tol * scale / 10, limit=limit)
    if err / scale > tol:
        raise ToleranceError(
            f"quadrature error {err / scale:.3e} exceeds tolerance {tol:.1e}", achieved=err / scale
        )
    return value


def ray_cutoff(mu_min: float, tol: float) -> float:
    """Length of the vertical segment treated numerically before the termwise tail"""
    return max(2.0, float(np.log(1.0 / tol)) / (2 * np.pi * mu_min))
