"""
Tests for twisted moments and critical L-values
"""

import numpy as np
import pytest
from numpy.polynomial import polynomial as npoly

from eichler_periods.errors import DomainError, NonCoprimeError, ToleranceError
from eichler_periods.lvalues import (
    TwistSpec,
    dirichlet_partial_sum,
    lvalue_display,
    lvalue_polynomial,
    lvalue_vector,
    twisted_lvalue,
    twisted_moments,
)
from eichler_periods.modgroup import GroupElement, S
from eichler_periods.qseries import FourierExpansion, delta_expansion, eta_power_expansion


class TestTwistSpec:
    def test_from_gamma(self):
        twist = TwistSpec.from_gamma(GroupElement(1, 0, -2, 1))
        assert (twist.c, twist.d) == (2, -1)
        assert twist.gamma.lower_row == (2, -1)
        assert twist.cusp == pytest.approx(0.5)
        assert TwistSpec.from_gamma(S) == TwistSpec(1, 0)

    def test_invalid(self):
        with pytest.raises(NonCoprimeError):
            TwistSpec(2, 2)
        with pytest.raises(DomainError):
            TwistSpec(0, 1)
        with pytest.raises(DomainError):
            TwistSpec.from_gamma(GroupElement(1, 1, 0, 1))

    def test_zeta(self):
        assert TwistSpec(4, 1).zeta == pytest.approx(1j)


class TestLValues:
    def test_dirichlet_series_at_s11(self):
        delta = delta_expansion(200)
        twist = TwistSpec(1, 0)
        assert twisted_lvalue(delta, twist, 11) == pytest.approx(
            dirichlet_partial_sum(delta, twist, 11), abs=1e-8
        )

    def test_twisted_dirichlet_series(self):
        delta = delta_expansion(200)
        twist = TwistSpec(3, 1)
        assert twisted_lvalue(delta, twist, 11) == pytest.approx(
            dirichlet_partial_sum(delta, twist, 11), abs=1e-8
        )

    def test_critical_strip(self, delta):
        with pytest.raises(DomainError):
            twisted_lvalue(delta, TwistSpec(1, 0), 0)
        with pytest.raises(DomainError):
            twisted_lvalue(delta, TwistSpec(1, 0), 12)

    def test_vector_matches_single_values(self, eta6):
        twist = TwistSpec(2, 1)
        values = lvalue_vector(eta6, twist)
        assert len(values) == 2
        assert values[1] == pytest.approx(twisted_lvalue(eta6, twist, 2))

    def test_zero_form(self):
        zero = FourierExpansion.zero(10, 6)
        assert np.all(twisted_moments(zero, TwistSpec(1, 0)) == 0)

    def test_truncation_checked(self):
        short = eta_power_expansion(6, 3)
        with pytest.raises(ToleranceError):
            twisted_moments(short, TwistSpec(5, 1), tol=1e-12)


class TestLValuePolynomial:
    def test_display_matches_polynomial(self, eta8):
        twist = TwistSpec(2, 1)
        coeffs = lvalue_polynomial(eta8, twist)
        z = np.array([0.3 + 0.4j, -1.0 + 2j])
        np.testing.assert_allclose(lvalue_display(eta8, twist, z), npoly.polyval(z, coeffs), rtol=1e-12)

    def test_degree(self, delta):
        coeffs = lvalue_polynomial(delta, TwistSpec(1, 0))
        assert len(coeffs) == 11
        assert abs(coeffs[-1]) > 0


class TestTwistSymmetries:
    @pytest.mark.parametrize(
        "fixture, c, d, shifted",
        [("eta6", 2, 1, 9), ("eta8", 2, 1, 7), ("delta", 3, 1, 4)],
    )
    def test_periodic_in_d(self, fixture, c, d, shifted, request):
        # shifting d by c times the denominator of kappa leaves the twist unchanged
        f = request.getfixturevalue(fixture)
        for s in range(1, int(f.weight)):
            base = twisted_lvalue(f, TwistSpec(c, d), s)
            assert twisted_lvalue(f, TwistSpec(c, shifted), s) == pytest.approx(base, rel=1e-10)

    @pytest.mark.parametrize("s", range(1, 12))
    def test_untwisted_delta_is_real(self, delta, s):
        value = twisted_lvalue(delta, TwistSpec(1, 0), s)
        assert abs(value.imag) <= 1e-10 * abs(value)
        assert value.real > 0
