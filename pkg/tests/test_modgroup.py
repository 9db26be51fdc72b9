"""
Tests for SL2(Z) elements, Dedekind sums and eta multipliers
"""

from fractions import Fraction
from math import gcd

import numpy as np
import pytest

from eichler_periods.errors import DomainError, NonCoprimeError
from eichler_periods.modgroup import (
    IDENTITY,
    TRIVIAL,
    GroupElement,
    MultiplierSystem,
    S,
    T,
    U,
    chi,
    chi_phase,
    complete_lower_row,
    consistency_defect,
    cplus_set,
    dedekind_sum,
    enumerate_cosets,
    kappa_prime,
)
from eichler_periods.models import MultiplierKind


class TestGroupElement:
    def test_generator_relations(self):
        assert S @ S == -IDENTITY
        assert U @ U @ U == -IDENTITY
        assert T @ S == GroupElement(1, -1, 1, 0)

    def test_inverse(self):
        g = GroupElement(2, 1, 5, 3)
        assert g @ g.inverse() == IDENTITY
        assert g ** -2 @ g ** 2 == IDENTITY

    def test_determinant_checked(self):
        with pytest.raises(DomainError):
            GroupElement(1, 1, 1, 1)

    def test_parse(self):
        assert GroupElement.from_string("ST") == S @ T
        assert GroupElement.from_string("1,0,2,1") == GroupElement(1, 0, 2, 1)
        with pytest.raises(DomainError):
            GroupElement.from_string("X")

    def test_action_on_arrays(self):
        z = np.array([1j, 0.5 + 2j])
        np.testing.assert_allclose(S.act(z), -1 / z)
        np.testing.assert_allclose(S.j(z), z)

    def test_complete_lower_row(self):
        g = complete_lower_row(5, 3)
        assert g.lower_row == (5, 3)
        with pytest.raises(NonCoprimeError):
            complete_lower_row(4, 2)


class TestDedekindSums:
    def test_small_values(self):
        assert dedekind_sum(1, 3) == Fraction(1, 18)
        assert dedekind_sum(0, 1) == 0
        assert dedekind_sum(2, 3) == -Fraction(1, 18)

    def test_reciprocity(self):
        pairs = [(d, c) for c in range(1, 51) for d in range(1, 51) if gcd(c, d) == 1]
        assert len(pairs) > 1500
        for d, c in pairs:
            lhs = dedekind_sum(d, c) + dedekind_sum(c, d)
            rhs = Fraction(-1, 4) + (Fraction(d, c) + Fraction(c, d) + Fraction(1, c * d)) / 12
            assert lhs == rhs

    def test_requires_positive_modulus(self):
        with pytest.raises(DomainError):
            dedekind_sum(1, 0)


class TestMultiplierSystem:
    def test_kappa_and_kind(self, eta_multiplier):
        assert eta_multiplier.kappa == Fraction(1, 24)
        assert eta_multiplier.kind == MultiplierKind.ETA_POWER
        assert MultiplierSystem(24) == TRIVIAL
        assert TRIVIAL.kind == MultiplierKind.TRIVIAL

    def test_conjugate(self):
        ms = MultiplierSystem.eta_power(6)
        assert ms.conjugate().kappa == Fraction(3, 4)
        assert kappa_prime(ms.kappa) == ms.conjugate().kappa
        assert kappa_prime(Fraction(0)) == 0

    def test_eta_values(self, eta_multiplier):
        assert chi(eta_multiplier, T) == pytest.approx(np.exp(1j * np.pi / 12))
        assert chi(eta_multiplier, S) == pytest.approx(np.exp(-1j * np.pi / 4))
        eta8 = MultiplierSystem.eta_power(8)
        assert chi(eta8, U) == pytest.approx(np.exp(2j * np.pi / 3))
        assert chi(eta8, S) == pytest.approx(1)

    def test_phase_range(self, eta_multiplier):
        for g in [S, T, U, GroupElement(2, 1, 5, 3), -GroupElement(2, 1, 5, 3)]:
            phase = chi_phase(eta_multiplier, g)
            assert 0 <= phase < 2

    @pytest.mark.parametrize("r, weight", [(1, Fraction(1, 2)), (6, 3), (8, 4), (10, 5), (24, 12)])
    def test_consistency(self, r, weight):
        ms = MultiplierSystem(r)
        z = 0.3 + 1.2j
        elements = [S, T, U, GroupElement(2, 1, 5, 3), GroupElement(1, 0, -3, 1)]
        for g1 in elements:
            for g2 in elements:
                assert consistency_defect(ms, weight, g1, g2, z) < 1e-10

    @pytest.mark.parametrize("k", [3, 4, 5, 12])
    def test_minus_identity_matches_weight(self, k):
        ms = MultiplierSystem.eta_power(2 * k)
        assert chi(ms, -IDENTITY) * (-1) ** k == pytest.approx(1)

    def test_trivial_character(self):
        assert chi(TRIVIAL, GroupElement(2, 1, 5, 3)) == pytest.approx(1)


class TestCosets:
    def test_enumerate(self):
        reps = enumerate_cosets(3)
        assert reps[0] == IDENTITY
        assert [g.lower_row for g in reps[1:]] == [(1, 0), (2, 1), (3, 1), (3, 2)]

    def test_negative_cmax(self):
        with pytest.raises(DomainError):
            enumerate_cosets(-1)

    def test_cplus_set(self):
        elements = cplus_set(2)
        assert elements == [GroupElement(0, -1, 1, 0), GroupElement(1, -1, 2, -1)]
        for g in cplus_set(12):
            assert 0 <= g.a < g.c
            assert -g.c < g.d <= 0
