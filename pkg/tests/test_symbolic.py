from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jacobi_mv.errors import UnsupportedParameterError
from jacobi_mv.symbolic import ONE, GammaProduct


def test_gamma_reduction_to_core():
    # Gamma(7/2) = (5/2)(3/2)(1/2) Gamma(1/2) = 15/8 pi^(1/2)
    g = GammaProduct.gamma(Fraction(7, 2))
    assert g.rational == Fraction(15, 8)
    assert g.pi_pow == Fraction(1, 2)
    assert g.gammas == ()


def test_gamma_of_integer_is_factorial():
    assert GammaProduct.gamma(5) == 24
    assert GammaProduct.gamma(1) == 1


def test_two_power_integer_part_folds_into_rational():
    g = GammaProduct.two_power(Fraction(7, 2))
    assert g.rational == 8
    assert g.two_pow == Fraction(1, 2)


def test_nonpositive_gamma_argument_rejected():
    with pytest.raises(UnsupportedParameterError):
        GammaProduct.gamma(0)
    with pytest.raises(UnsupportedParameterError):
        GammaProduct.gamma(Fraction(-1, 2))
    with pytest.raises(UnsupportedParameterError):
        GammaProduct.gamma(0.5)


def test_mul_div_cancellation():
    a = GammaProduct.gamma(Fraction(1, 3))
    b = GammaProduct.gamma(Fraction(4, 3))  # = (1/3) Gamma(1/3)
    ratio = b / a
    assert ratio.is_rational()
    assert ratio.rational_value() == Fraction(1, 3)


def test_pow():
    g = GammaProduct.gamma(Fraction(1, 2))
    assert (g**2) == GammaProduct.pi_power(1)
    assert (g**-2) == GammaProduct.pi_power(-1)
    with pytest.raises(TypeError):
        g ** Fraction(1, 2)


def test_rational_interop():
    assert GammaProduct.from_rational(Fraction(3, 4)) == Fraction(3, 4)
    assert 2 * GammaProduct.from_rational(3) == 6
    assert (GammaProduct.from_rational(3) / 2).rational_value() == Fraction(3, 2)


def test_rational_and_irrational_parts():
    g = GammaProduct(rational=Fraction(3, 8), pi_pow=1)
    assert g.rational_part() == Fraction(3, 8)
    assert g.irrational_part() == GammaProduct.pi_power(1)
    assert g.rational_part() * g.irrational_part() == g


def test_compact_str():
    assert ONE.compact_str() == "1"
    assert GammaProduct.pi_power(1).compact_str() == "pi^(1)"
    g = GammaProduct(rational=Fraction(1, 2), two_pow=Fraction(1, 2), gammas={Fraction(1, 4): 2})
    assert g.compact_str() == "1/2*2^(1/2)*gamma(1/4)^2"


def test_json_round_trip():
    g = GammaProduct(rational=2, pi_pow=Fraction(1, 2), gammas={Fraction(3, 4): 1})
    doc = g.to_json_dict()
    assert doc["rational"] == "2"
    assert doc["gamma"] == [["3/4", 1]]
    assert GammaProduct.from_json_dict(doc) == g


def test_float_value():
    g = GammaProduct.gamma(Fraction(7, 2))
    assert math.isclose(float(g), math.gamma(3.5), rel_tol=1e-12)


_args = st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8)


@given(_args, _args)
def test_recurrence_identity(x, y):
    # Gamma(x+1) = x Gamma(x) holds structurally after reduction
    assert GammaProduct.gamma(x + 1) == GammaProduct.from_rational(x) * GammaProduct.gamma(x)
    assert GammaProduct.gamma(x) * GammaProduct.gamma(y) == GammaProduct.gamma(y) * GammaProduct.gamma(x)


@given(_args)
def test_division_is_inverse_of_multiplication(x):
    g = GammaProduct.gamma(x) * GammaProduct.pi_power(Fraction(1, 2))
    assert (g / g).is_rational() and (g / g).rational_value() == 1
