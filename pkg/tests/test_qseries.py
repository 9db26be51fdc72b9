"""
Tests for q-expansion arithmetic and the named forms
"""

from fractions import Fraction

import numpy as np
import pytest

from eichler_periods.eichler import formal_eichler
from eichler_periods.errors import DomainError, TruncationError
from eichler_periods.modgroup import TRIVIAL, MultiplierSystem, S
from eichler_periods.models import GrowthClass
from eichler_periods.qseries import (
    FourierExpansion,
    bol_derivative,
    constant,
    delta_expansion,
    divisor_sum,
    duality_pairing,
    eisenstein,
    eta_expansion,
    eta_power_expansion,
    evaluate,
    inverse_delta_expansion,
    invert,
    j_expansion,
    power,
    product,
    tail_bound,
)


class TestNamedForms:
    def test_eta(self):
        eta = eta_expansion(8)
        assert eta.kappa == Fraction(1, 24)
        assert eta.weight == Fraction(1, 2)
        # pentagonal numbers 0, 1, 2, 5, 7
        assert [eta.coefficient(n) for n in range(9)] == [1, -1, -1, 0, 0, 1, 0, 1, 0]

    def test_eta_sixth_power(self, eta6):
        assert eta6.kappa == Fraction(1, 4)
        assert eta6.weight == 3
        assert [eta6.coefficient(n) for n in range(4)] == [1, -6, 9, 10]

    def test_delta(self):
        delta = delta_expansion(5)
        assert delta.kappa == 0
        assert delta.multiplier == TRIVIAL
        assert [delta.coefficient(n) for n in range(1, 6)] == [1, -24, 252, -1472, 4830]
        assert delta.coefficient(0) == 0

    def test_inverse_delta(self):
        inv = inverse_delta_expansion(3)
        assert inv.weight == -12
        assert [inv.coefficient(n) for n in range(-1, 4)] == [1, 24, 324, 3200, 25650]

    def test_eisenstein(self):
        e4 = eisenstein(4, 3)
        e6 = eisenstein(6, 2)
        assert [e4.coefficient(n) for n in range(4)] == [1, 240, 2160, 6720]
        assert [e6.coefficient(n) for n in range(3)] == [1, -504, -16632]
        with pytest.raises(DomainError):
            eisenstein(2, 3)

    def test_j(self):
        j = j_expansion(2)
        assert [j.coefficient(n) for n in range(-1, 3)] == [1, 744, 196884, 21493760]
        assert j_expansion(2, constant_term=0).coefficient(0) == 0

    def test_divisor_sum(self):
        assert divisor_sum(6, 1) == 12
        assert divisor_sum(4, 3) == 73


class TestArithmetic:
    def test_product_with_offsets(self):
        eta = eta_expansion(30)
        squared = product(eta, eta)
        assert squared.kappa == Fraction(1, 12)
        assert squared == eta_power_expansion(2, squared.n_max)

    def test_power_reaches_delta(self):
        assert power(eta_expansion(10), 24).truncate(5) == delta_expansion(5)

    def test_invert(self):
        delta = delta_expansion(12)
        inv = invert(delta)
        unit = product(delta, inv)
        assert unit.kappa == 0
        assert unit.coefficient(0) == 1
        assert all(unit.coefficient(n) == 0 for n in range(1, unit.n_max + 1))

    def test_linear_operations(self, delta):
        doubled = delta + delta
        assert doubled.coefficient(2) == -48
        assert (doubled - delta) == delta
        assert (-delta).coefficient(1) == -1
        assert delta.scale(3).coefficient(3) == 756

    def test_constant_added(self, inv_delta):
        shifted = inv_delta + (-24)
        assert shifted.coefficient(0) == 0
        assert shifted.coefficient(-1) == 1

    def test_constant_needs_integral_channel(self, eta6):
        with pytest.raises(DomainError):
            eta6 + 1
        with pytest.raises(DomainError):
            2.5 + eta6
        assert (eta6 + 0) == eta6
        assert sum([eta6, eta6]) == eta6.scale(2)

    def test_incompatible_offsets(self, delta, eta6):
        with pytest.raises(DomainError):
            delta + eta6

    def test_truncation(self, delta):
        with pytest.raises(TruncationError):
            delta.coefficient(delta.n_max + 1)
        with pytest.raises(TruncationError):
            delta.truncate(delta.n_max + 5)
        assert delta.coefficient(-3) == 0

    def test_principal_part(self):
        j = j_expansion(5)
        principal = j.principal_part()
        assert principal.nonzero_items() == [(-1, 1)]

    def test_conjugate(self):
        F = FourierExpansion([1j, 2 - 1j], 1, 12, TRIVIAL)
        assert F.conjugate().coefficient(1) == -1j
        assert F.conjugate().multiplier == F.multiplier


class TestOperators:
    def test_bol_derivative_inverts_formal_eichler(self, delta):
        integral = formal_eichler(delta)
        assert integral.weight == -10
        assert integral.coefficient(2) == Fraction(-3, 256)
        assert bol_derivative(integral, 11) == delta

    def test_bol_identity_on_weakly_holomorphic_form(self):
        # D^11 of a weight -10 form is modular of weight 12
        e4 = eisenstein(4, 44)
        e6 = eisenstein(6, 44)
        form = product(product(power(e4, 2, N=44), e6), power(inverse_delta_expansion(44), 2, N=42))
        derived = bol_derivative(form.truncate(40).with_weight(-10), 11)
        z = 0.2 + 1.15j
        lhs = derived(S.act(z))
        rhs = z ** 12 * derived(z)
        assert abs(lhs - rhs) / abs(rhs) < 1e-8

    def test_duality_pairing(self):
        j0 = j_expansion(30, constant_term=0)
        derivative = bol_derivative(j0, 1)
        assert derivative.weight == 2
        assert duality_pairing(derivative, constant(1, 30)) == 0
        assert duality_pairing(derivative, j0) == 0

    def test_duality_pairing_truncation(self):
        derivative = bol_derivative(j_expansion(0, constant_term=0), 1)
        G = FourierExpansion([1, 0, 0], -2, 0, TRIVIAL)
        with pytest.raises(TruncationError):
            duality_pairing(derivative, G)


class TestEvaluation:
    def test_eta_modularity(self):
        eta = eta_expansion(60)
        z = 0.1 + 1.2j
        # eta(-1/z) = sqrt(-iz) eta(z)
        assert eta(S.act(z)) == pytest.approx(np.sqrt(-1j * z) * eta(z), rel=1e-12)

    def test_vectorized(self, eta6):
        z = np.array([0.1 + 1j, 0.3 + 0.8j])
        values = eta6(z)
        assert values.shape == (2,)
        assert values[0] == pytest.approx(eta6(z[0]))

    def test_tail_bound_and_evaluate(self, delta):
        bound = tail_bound(delta, 1.0, GrowthClass.CUSP)
        assert 0 < bound < 1e-90
        estimate = evaluate(delta, 0.5 + 1j, tol=1e-20)
        assert estimate.truncation == delta.n_max
        with pytest.raises(TruncationError):
            evaluate(delta_expansion(3), 0.01j, tol=1e-10)
        with pytest.raises(DomainError):
            evaluate(delta, -1j)


class TestInterchange:
    def test_roundtrip(self, eta6):
        data = eta6.truncate(5).to_dict()
        assert data["kappa"] == "1/4"
        assert data["weight"] == 3
        assert data["coeffs"][1] == [1, -6.0, 0.0]
        assert FourierExpansion.from_dict(data) == eta6.truncate(5)

    def test_multiplier_from_kappa(self):
        data = {"weight": "1/2", "kappa": "1/24", "lambda": 1, "coeffs": [[0, 1.0, 0.0]]}
        F = FourierExpansion.from_dict(data)
        assert F.multiplier == MultiplierSystem.eta_power(1)
