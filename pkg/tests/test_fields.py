import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from novikov.errors import DivisionByZero, FieldMismatch
from novikov.fields import QQ, Fp, parse_field, prime_field


def test_rational_basics():
    assert QQ.parse("1/2") + QQ.parse("1/3") == Fraction(5, 6)
    assert QQ.scalar(3) * QQ.zero == 0
    assert QQ.parse("-3/7") == Fraction(-3, 7)


def test_fp_inverse_matches_extended_euclid():
    F5 = prime_field(5)

    def euclid_inverse(a, p):
        # brute oracle: extended Euclid
        old_r, r = a, p
        old_s, s = 1, 0
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
        assert old_r == 1
        return old_s % p

    for a in range(1, 5):
        assert Fp(a, 5).inverse() == Fp(euclid_inverse(a, 5), 5)
    assert Fp(2, 5).inverse() == Fp(3, 5)


def test_fp_arithmetic_and_errors():
    F7 = prime_field(7)
    a, b = F7.from_int(3), F7.from_int(5)
    assert a + b == Fp(1, 7)
    assert a - b == Fp(5, 7)
    assert a * b == Fp(1, 7)
    assert (a / b) * b == a
    with pytest.raises(DivisionByZero):
        a / F7.zero
    with pytest.raises(FieldMismatch):
        a + Fp(1, 5)
    with pytest.raises(FieldMismatch):
        a + Fraction(1, 2)


def test_field_parsing_and_small_characteristic_guard():
    assert parse_field("Q") is QQ
    assert parse_field("F5").characteristic == 5
    with pytest.raises(ValueError):
        prime_field(4)
    with pytest.raises(ValueError):
        prime_field(2)  # needs the explicit opt-in
    assert prime_field(2, allow_small_char=True).characteristic == 2


@given(
    st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=10**6),
    st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=10**6),
)
def test_fraction_canonicality(x, y):
    for value in (x + y, x - y, x * y) + ((x / y,) if y else ()):
        assert value.denominator > 0
        assert math.gcd(abs(value.numerator), value.denominator) == 1


@given(st.integers(), st.integers())
def test_fp_residues_stay_canonical(a, b):
    F = prime_field(11)
    x, y = F.from_int(a), F.from_int(b)
    for value in (x + y, x - y, x * y, -x):
        assert 0 <= value.val < 11


def test_fp_scalar_from_fraction():
    F5 = prime_field(5)
    assert F5.scalar(Fraction(1, 2)) == Fp(3, 5)  # 2^{-1} = 3 mod 5
    assert F5.parse("7/3") == Fp(4, 5)
