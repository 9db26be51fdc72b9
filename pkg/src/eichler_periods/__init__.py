"""
Eichler Periods

Period polynomials, Eichler integrals, twisted L-values and Poincare series
for harmonic weak Maass forms on SL2(Z) with eta-power multipliers.
"""

__version__ = "0.1.0"
__description__ = "Numerical period polynomials of Eichler integrals and harmonic Maass forms"
