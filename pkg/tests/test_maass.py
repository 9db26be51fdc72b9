"""
Tests for harmonic Maass forms, the xi operator and the period theorems
"""

from math import factorial

import numpy as np
import pytest

from eichler_periods.eichler import nonholo_eichler
from eichler_periods.errors import DomainError
from eichler_periods.maass import (
    HarmonicMaassForm,
    NonHolomorphicPart,
    assemble_from_shadow,
    default_points,
    invariance_defect,
    laplacian_residual,
    modularity_defect,
    pointwise_deviation,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
    weakly_holomorphic_with_constant,
    xi,
    xi_expansion,
    xi_finite_difference,
)
from eichler_periods.modgroup import S, T, U, GroupElement, MultiplierSystem
from eichler_periods.qseries import FourierExpansion


def maass_from_shadow(h):
    """H with zero holomorphic part and H- = -E^N_h"""
    k = int(h.weight)
    ms = h.multiplier.conjugate()
    return HarmonicMaassForm(k, ms, FourierExpansion.zero(10, 2 - k, ms), NonHolomorphicPart.from_shadow(h), h)


@pytest.fixture(scope="module", params=["eta6", "eta8", "delta"])
def assembled(request):
    h = request.getfixturevalue(request.param)
    return assemble_from_shadow(h, N=30, c_max=100)


class TestNonHolomorphicPart:
    def test_matches_nonholomorphic_eichler_integral(self, eta6):
        part = NonHolomorphicPart.from_shadow(eta6)
        z = 0.15 + 1.1j
        assert part(z) == pytest.approx(-nonholo_eichler(eta6, z), rel=1e-9)

    def test_channels_are_negative(self, eta6):
        part = NonHolomorphicPart.from_shadow(eta6)
        assert part.ms == eta6.multiplier.conjugate()
        assert all(n + part.ms.kappa < 0 for n in part.coeffs)
        assert set(part.coeffs) == {-n - 1 for n, _ in eta6.nonzero_items()}

    def test_rejects_holomorphic_channel(self):
        with pytest.raises(DomainError):
            NonHolomorphicPart(12, MultiplierSystem.trivial(), {1: 1.0})
        with pytest.raises(DomainError):
            NonHolomorphicPart(3, MultiplierSystem.eta_power(18), a0=1.0)

    def test_constant_channel(self):
        part = NonHolomorphicPart(12, MultiplierSystem.trivial(), a0=2.0)
        assert part(0.3 + 2j) == pytest.approx(2.0 * 2 ** 11)
        assert part.xi_expansion().coefficient(0) == pytest.approx(22)

    def test_vectorized(self, eta6):
        part = NonHolomorphicPart.from_shadow(eta6)
        z = np.array([0.1 + 1j, -0.3 + 1.4j])
        assert part(z)[1] == pytest.approx(part(z[1]))


class TestXiOperator:
    @pytest.mark.parametrize("fixture", ["eta6", "eta8", "delta"])
    def test_xi_recovers_shadow(self, fixture, request):
        h = request.getfixturevalue(fixture)
        k = int(h.weight)
        H = maass_from_shadow(h)
        image = xi_expansion(H)
        assert image.multiplier == h.multiplier
        scale = (-4 * np.pi) ** (k - 1) / factorial(k - 2)
        for n in range(0, 6):
            expected = scale * complex(h.coefficient(n))
            assert complex(image.coefficient(n)) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_finite_difference(self, eta6):
        H = maass_from_shadow(eta6)
        z = 0.1 + 1.1j
        assert xi_finite_difference(H, z) == pytest.approx(xi(H, z), rel=1e-6)

    def test_stencil_needs_room(self, eta6):
        with pytest.raises(DomainError):
            xi_finite_difference(maass_from_shadow(eta6), 0.1 + 1e-3j, step=1e-3)


class TestLaplacian:
    def test_nonholomorphic_part_is_harmonic(self, eta8):
        part = NonHolomorphicPart.from_shadow(eta8)
        z = 0.2 + 1.2j
        assert laplacian_residual(part, z) < 1e-6

    def test_holomorphic_form_is_harmonic(self, inv_delta):
        z = 0.1 + 1.1j
        assert laplacian_residual(inv_delta, z, weight=-12.0) < 1e-5

    def test_assembled_forms_are_harmonic(self, assembled):
        for z in default_points(5):
            assert laplacian_residual(assembled, z) < 1e-5


class TestWeaklyHolomorphic:
    def test_weight_minus_ten(self):
        form = weakly_holomorphic_with_constant(12, 10)
        assert form.weight == -10
        assert complex(form.coefficient(-2)) == pytest.approx(1)
        assert complex(form.coefficient(0)) == pytest.approx(-196560)

    def test_weight_minus_two(self):
        form = weakly_holomorphic_with_constant(4, 5)
        assert complex(form.coefficient(0)) == pytest.approx(-240)

    def test_odd_weight_rejected(self):
        with pytest.raises(DomainError):
            weakly_holomorphic_with_constant(5, 10)

    def test_modular(self):
        form = weakly_holomorphic_with_constant(12, 30)
        z = 0.2 + 1.05j
        defect = modularity_defect(form, S, z, ms=MultiplierSystem.trivial(), weight=form.weight)
        assert defect < 1e-8 * abs(form(z))


class TestAssembly:
    def test_zero_shadow(self):
        zero = FourierExpansion.zero(10, 12)
        H = assemble_from_shadow(zero, N=10)
        assert H.nonholo.is_zero()
        assert H.holo.is_zero()
        assert H.supplementary is None

    def test_weight_and_character(self, eta6):
        H = assemble_from_shadow(eta6, N=20, c_max=30)
        assert H.weight == -1
        assert H.ms == eta6.multiplier.conjugate()
        assert H.holo.multiplier == H.ms
        assert H.hstar is not None

    def test_conjugate_linear_in_shadow(self, eta6):
        base = assemble_from_shadow(eta6, N=20, c_max=30)
        scaled = assemble_from_shadow(eta6.scale(2j), N=20, c_max=30)
        z = 0.1 + 1.2j
        assert scaled.nonholo(z) == pytest.approx(-2j * base.nonholo(z))
        assert complex(scaled.holo.coefficient(-1)) == pytest.approx(-2j * complex(base.holo.coefficient(-1)))

    def test_scaled_form(self, eta6):
        H = assemble_from_shadow(eta6, N=20, c_max=30)
        doubled = H.scaled(2j)
        z = 0.1 + 1.2j
        assert doubled(z) == pytest.approx(2j * H(z))
        assert complex(doubled.shadow.coefficient(0)) == pytest.approx(-2j * complex(eta6.coefficient(0)))

    def test_g_weight_checked(self, eta6):
        wrong = FourierExpansion.zero(5, 3, eta6.multiplier.conjugate())
        with pytest.raises(DomainError):
            assemble_from_shadow(eta6, G=wrong, N=10, c_max=10)


class TestAssembledInvariance:
    def test_translation(self, assembled):
        for z in default_points(5):
            assert modularity_defect(assembled, T, z) < 1e-8 * max(1.0, abs(assembled(z)))

    @pytest.mark.parametrize("gamma", [S, U], ids=["S", "U"])
    def test_period_route(self, assembled, gamma):
        z = np.array(default_points(5))
        defect = invariance_defect(assembled, gamma, z)
        assert np.all(defect < 1e-6 * np.maximum(1.0, np.abs(assembled(z))))

    @pytest.mark.parametrize("gamma", [S, U], ids=["S", "U"])
    def test_direct_slash(self, assembled, gamma):
        for z in default_points(5):
            assert modularity_defect(assembled, gamma, z) < 1e-3 * abs(assembled(z))

    def test_needs_shadow(self, inv_delta):
        ms = MultiplierSystem.trivial()
        H = HarmonicMaassForm(12, ms, inv_delta.with_weight(-10), NonHolomorphicPart(12, ms))
        with pytest.raises(DomainError):
            invariance_defect(H, S, 0.1 + 1.2j)


class TestPointwiseDeviation:
    def test_small_values_stay_relative(self):
        assert pointwise_deviation([1e-3], [1e-3 + 1e-6]) == pytest.approx(1e-3, rel=1e-2)

    def test_scale_is_larger_side(self):
        assert pointwise_deviation([2.0, 0.5], [1.0, 0.5]) == pytest.approx(0.5)

    def test_zero(self):
        assert pointwise_deviation([0j, 0j], [0j, 0j]) == 0


class TestTheorems:
    def test_default_points_in_fundamental_domain(self):
        points = default_points(10)
        assert len(points) == 10
        assert all(abs(p) > 1 and abs(p.real) <= 0.5 for p in points)

    def test_theorem1_zero_shadow(self):
        report = verify_theorem1(FourierExpansion.zero(10, 12), N=10)
        assert report.passed
        assert report.max_deviation == 0

    def test_theorem1_delta(self, delta):
        report = verify_theorem1(delta, N=30, c_max=100)
        assert report.passed, report.deviations
        assert report.tolerances["default"] == 1e-3

    def test_theorem2_eta6(self, eta6):
        report = verify_theorem2(eta6, S)
        assert report.passed, report.deviations

    def test_theorem2_eta8_level_two_row(self, eta8):
        report = verify_theorem2(eta8, GroupElement(1, 0, 2, 1))
        assert report.passed, report.deviations

    def test_theorem2_needs_lower_left_entry(self, eta6):
        with pytest.raises(DomainError):
            verify_theorem2(eta6, T)

    def test_theorem3_eta6(self, eta6):
        report = verify_theorem3(eta6, S, N=30, c_max=100)
        assert report.passed, report.deviations
        assert report.tolerances["default"] == 1e-3
        assert report.details["c_hstar"] == [0.0, 0.0]

    def test_theorem3_delta(self, delta):
        report = verify_theorem3(delta, S, N=30, c_max=100)
        assert report.passed, report.deviations
        assert "corrected_form" in report.deviations
        assert report.details["weakly_holomorphic_constant"] == pytest.approx(-196560)
