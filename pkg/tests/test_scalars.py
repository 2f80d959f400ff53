from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qnca.scalars import (LaurentScalar, QPower, laurent_divmod, laurent_exact_div,
                          laurent_gcd, parse_scalar, scalar_to_text)


def scal(items):
    return LaurentScalar({e: Fraction(c) for e, c in items.items()})


scalars = st.dictionaries(
    st.integers(min_value=-6, max_value=6),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    max_size=5,
).map(scal)


def test_inverse_powers_cancel():
    assert LaurentScalar.v_power(2) * LaurentScalar.v_power(-2) == LaurentScalar.one()


def test_difference_of_squares():
    qdiff = scal({2: 1, -2: -1})       # q - q^-1
    qsum = scal({2: 1, -2: 1})         # q + q^-1
    assert qdiff * qsum == scal({4: 1, -4: -1})


def test_cancellation_to_canonical_zero():
    total = LaurentScalar.one() + LaurentScalar.rational(-1)
    assert total.is_zero()
    assert total == LaurentScalar.zero()
    assert not total.items()


@settings(max_examples=80, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(scalars)
def test_normalization_idempotent(a):
    again = LaurentScalar(dict(a.items()))
    assert again == a
    assert LaurentScalar(dict(again.items())) == again


@settings(max_examples=60, deadline=None)
@given(scalars)
def test_render_parse_round_trip(a):
    assert parse_scalar(scalar_to_text(a)) == a


def test_render_matches_documented_shape():
    s = scal({-4: Fraction(3, 2), 2: 1})
    assert scalar_to_text(s) == "3/2*v^-4 + v^2"
    assert scalar_to_text(LaurentScalar.zero()) == "0"
    assert scalar_to_text(scal({2: 1, -2: -1})) == "-v^-2 + v^2"


def test_parse_accepts_q_powers():
    assert parse_scalar("q") == LaurentScalar.v_power(2)
    assert parse_scalar("q^-1") == LaurentScalar.v_power(-2)
    assert parse_scalar("3/2*q^2 + v^-1") == scal({4: Fraction(3, 2), -1: 1})
    assert parse_scalar("-q + q") == LaurentScalar.zero()


def test_unit_arithmetic():
    u = scal({3: Fraction(2, 5)})
    assert u.is_unit()
    assert u * u.inverse() == LaurentScalar.one()
    with pytest.raises(ValueError):
        (u + LaurentScalar.one()).inverse()


def test_powers():
    v = LaurentScalar.v_power(1)
    assert v ** 5 == LaurentScalar.v_power(5)
    assert v ** 0 == LaurentScalar.one()
    assert v ** -3 == LaurentScalar.v_power(-3)
    two_terms = scal({0: 1, 1: 1})
    assert two_terms ** 2 == scal({0: 1, 1: 2, 2: 1})


@settings(max_examples=60, deadline=None)
@given(scalars, scalars)
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    quo, rem = laurent_divmod(a, b)
    assert quo * b + rem == a


def test_exact_division():
    qdiff = scal({2: 1, -2: -1})
    qminus1 = scal({2: 1, 0: -1})
    quotient = laurent_exact_div(qdiff, qminus1)
    assert quotient is not None
    assert quotient * qminus1 == qdiff
    assert laurent_exact_div(LaurentScalar.one(), qminus1) is None


def test_gcd_is_canonical():
    a = scal({2: 1, 0: -1})            # v^2 - 1
    b = scal({3: 1, 1: -1})            # v(v^2 - 1)
    g = laurent_gcd(a, b)
    assert g == scal({2: 1, 0: -1})
    assert laurent_gcd(a, LaurentScalar.one()).is_one()


def test_qpower_group():
    q = QPower(2)
    assert (q * q).vexp == 4
    assert (q / q).is_one()
    assert q.inverse().vexp == -2
    assert (q ** 3).vexp == 6
    assert q.to_scalar() == LaurentScalar.v_power(2)
