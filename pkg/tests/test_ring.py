from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2su3 import ring
from g2su3.ring import Laurent, T

laurents = st.dictionaries(st.integers(-4, 4), st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)),
                           max_size=4).map(Laurent.make)


def test_constants_collapse_to_fractions():
    assert Laurent.make({0: 3}) == 3
    assert isinstance(Laurent.make({0: Fraction(1, 2)}), Fraction)
    assert T * ring.inverse(T) == 1


def test_monomial_and_powers():
    assert T ** 3 == Laurent.monomial(3)
    assert Laurent.monomial(-2, 5) == 5 * T ** -2
    assert ring.is_monomial(Laurent.monomial(-2, 5))
    assert not ring.is_monomial(T + 1)


def test_diff_and_evaluate():
    x = 3 * T ** 2 - T ** -1
    assert ring.diff(x) == 6 * T + T ** -2
    assert ring.evaluate(x, Fraction(2)) == Fraction(23, 2)
    with pytest.raises(ring.RingError):
        ring.evaluate(x, 0)


def test_inverse_requires_monomial():
    with pytest.raises(ring.RingError):
        ring.inverse(T + 1)


def test_json_round_trip():
    x = Fraction(-3, 7) * T ** -2 + 2
    assert ring.from_json(ring.to_json(x)) == x
    assert ring.to_json(Fraction(1, 3)) == "1/3"


def test_rational_sqrt():
    assert ring.rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert ring.rational_sqrt(Fraction(2)) is None


@settings(max_examples=100)
@given(laurents, laurents, laurents)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=100)
@given(laurents, laurents)
def test_leibniz(a, b):
    assert ring.diff(a * b) == ring.diff(a) * b + a * ring.diff(b)
