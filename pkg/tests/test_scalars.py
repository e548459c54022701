from fractions import Fraction

import pytest

from facering.scalars import FieldError, PrimeField, QQ, field_from_name


def test_rationals():
    assert QQ.parse("3/2") == Fraction(3, 2)
    assert QQ.format(Fraction(-1, 3)) == "-1/3"
    assert QQ.binomial(4, 2) == 6
    assert QQ.char == 0


def test_prime_field_arithmetic():
    F5 = PrimeField(5)
    a, b = F5.from_int(3), F5.from_int(4)
    assert (a + b).val == 2
    assert (a * b).val == 2
    assert (a - b).val == 4
    assert (-a).val == 2
    assert (a / b) * b == a
    assert bool(F5.zero) is False and bool(F5.one) is True
    with pytest.raises(ZeroDivisionError):
        a / F5.zero


def test_binomial_reduction_mod_p():
    F2 = PrimeField(2)
    assert not F2.binomial(2, 1)
    assert F2.binomial(3, 1) == F2.one


def test_field_from_name():
    assert field_from_name("Q") is QQ
    assert field_from_name("F7").p == 7
    assert field_from_name("Fp", prime=11).p == 11
    with pytest.raises(FieldError):
        field_from_name("F4")
    with pytest.raises(FieldError):
        field_from_name("Fp")
    with pytest.raises(FieldError):
        field_from_name("R")
