from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckepoly.errors import ValidationError
from heckepoly.laurent import (FracScaled, LaurentHalf, PrimeFieldWithV,
                               RationalWithV, validate_sqrt)

laurents = st.dictionaries(st.integers(-6, 6), st.integers(-50, 50),
                           max_size=6).map(LaurentHalf)

F11 = PrimeFieldWithV(11, 4, 5)
RAT = RationalWithV(Fraction(3, 2))


def test_defining_relation_v_squared_is_q():
    v = LaurentHalf.v_power(1)
    assert v * v == LaurentHalf.v_power(2)


def test_difference_of_squares():
    v = LaurentHalf.v_power(1)
    vinv = LaurentHalf.v_power(-1)
    assert (v - vinv) * (v + vinv) == LaurentHalf({2: 1, -2: -1})


def test_expansion():
    one_plus_v = LaurentHalf({0: 1, 1: 1})
    assert one_plus_v * one_plus_v == LaurentHalf({0: 1, 1: 2, 2: 1})


@given(laurents, laurents, laurents)
@settings(max_examples=200)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a * LaurentHalf.from_int(1) == a
    assert a + LaurentHalf.zero() == a
    assert a - a == LaurentHalf.zero()


@given(laurents)
def test_serialize_parse_roundtrip(a):
    assert LaurentHalf.parse(a.serialize()) == a


def test_serialization_is_sorted_by_exponent():
    x = LaurentHalf({3: 1, -2: 5, 0: -1})
    assert x.serialize() == "5*v^-2+-1*v^0+1*v^3"


@given(laurents, laurents)
@settings(max_examples=200)
def test_reduce_is_a_homomorphism(a, b):
    for dom in (F11, RAT):
        assert dom.reduce(a * b) == dom.mul(dom.reduce(a), dom.reduce(b))
        assert dom.reduce(a + b) == dom.add(dom.reduce(a), dom.reduce(b))


def test_reduce_examples_mod_11():
    # 4^2 = 16 = 5 mod 11, checked below by squaring all residues
    assert F11.reduce(LaurentHalf.v_power(2)) == 5
    assert F11.reduce(LaurentHalf.from_int(1)) == 1
    # v^-1 -> inverse of 4; extended-Euclid oracle
    inv = next(x for x in range(1, 11) if (4 * x) % 11 == 1)
    assert inv == 3
    assert F11.reduce(LaurentHalf.v_power(-1)) == 3


def test_validate_sqrt_against_exhaustive_squaring():
    squares = {(x * x) % 11 for x in range(1, 11)}
    assert 5 in squares
    assert validate_sqrt(11, 5, 4) is True
    assert validate_sqrt(11, 5, 7) is True
    assert validate_sqrt(11, 5, 1) is False
    for x in range(1, 11):
        assert validate_sqrt(11, 5, x) == ((x * x) % 11 == 5)


def test_validate_sqrt_rejects_composite_modulus():
    with pytest.raises(ValidationError):
        validate_sqrt(12, 5, 4)


def test_prime_field_rejects_wrong_sqrt():
    with pytest.raises(ValidationError):
        PrimeFieldWithV(11, 4, 3)


def test_ell_7_with_q_2():
    # 3^2 = 9 = 2 mod 7
    dom = PrimeFieldWithV(7, 3, 2)
    assert dom.reduce(LaurentHalf.v_power(2)) == 2


def test_monomial_inverse():
    x = LaurentHalf.v_power(3, -1)
    assert x * x.monomial_inverse() == LaurentHalf.from_int(1)
    with pytest.raises(ValidationError):
        LaurentHalf({0: 2}).monomial_inverse()
    with pytest.raises(ValidationError):
        LaurentHalf({0: 1, 1: 1}).monomial_inverse()


def test_negative_powers():
    x = LaurentHalf.v_power(2)
    assert x ** -2 == LaurentHalf.v_power(-4)


def test_rational_domain():
    dom = RationalWithV(3)
    assert dom.reduce(LaurentHalf.v_power(2)) == 9
    assert dom.inv(Fraction(3)) == Fraction(1, 3)
    with pytest.raises(ValidationError):
        RationalWithV(0)


def test_frac_scaled():
    num = LaurentHalf.from_int(6)
    fs = FracScaled(num, LaurentHalf.from_int(1))
    assert fs.is_trivial() and fs.reduce() == num
    fs2 = FracScaled(num, LaurentHalf({0: 1, 2: 1}))
    assert not fs2.is_trivial()
    with pytest.raises(ValidationError):
        fs2.reduce()
    with pytest.raises(ValidationError):
        FracScaled(num, LaurentHalf.zero())


def test_scalar_string_roundtrip():
    assert F11.parse_scalar(F11.scalar_str(9)) == 9
    x = Fraction(-7, 3)
    assert RAT.parse_scalar(RAT.scalar_str(x)) == x
