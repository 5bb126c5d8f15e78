from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2su3 import exalg
from g2su3.exalg import Form, contract, hodge, wedge
from strategies import FRAME7, forms


def e(*idx, frame=FRAME7):
    return Form.basis(frame, *idx)


def test_contraction_convention():
    assert contract(e(1, 2), e(1, 2, 3, 4, 5)) == e(3, 4, 5)
    assert contract(e(2), e(1, 2, 3)) == -e(1, 3)


def test_blade_sign_and_parse():
    assert exalg.parse_blade("e21") == (-1, (1, 2))
    assert exalg.parse_blade("e120") == (1, (0, 1, 2))
    assert Form(FRAME7, 2, {(2, 1): 3}) == e(1, 2) * -3
    with pytest.raises(ValueError):
        exalg.parse_blade("e11")


def test_degree_mismatch_rejected():
    with pytest.raises(exalg.DimensionError):
        Form(FRAME7, 2, {(1, 2, 3): 1})
    with pytest.raises(ValueError):
        e(1) + e(1, 2)


def test_hodge_of_basis():
    assert hodge(e(1, 2, 7)) == e(3, 4, 5, 6)
    assert hodge(Form.scalar(FRAME7)) == exalg.volume(FRAME7)
    assert exalg.top_coefficient(exalg.volume(FRAME7) * 3) == 3


def test_to_and_from_vector():
    a = e(1, 2) * Fraction(1, 2) - e(3, 7)
    basis = exalg.blades(FRAME7, 2)
    assert exalg.from_vector(FRAME7, 2, exalg.to_vector(a, basis), basis) == a


@settings(max_examples=150)
@given(forms(max_degree=3), forms(max_degree=3), forms(max_degree=3))
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=150)
@given(forms(max_degree=4), forms(max_degree=4))
def test_graded_commutativity(a, b):
    assert wedge(a, b) == wedge(b, a) * (-1) ** (a.degree * b.degree)


@settings(max_examples=150)
@given(forms(max_degree=3), st.integers(0, 3), st.data())
def test_distributive(a, k, data):
    b, c = data.draw(forms(degree=k)), data.draw(forms(degree=k))
    assert wedge(a, b + c) == wedge(a, b) + wedge(a, c)


@settings(max_examples=150)
@given(forms())
def test_hodge_involution(a):
    k = a.degree
    assert hodge(hodge(a)) == a * (-1) ** (k * (7 - k))


@settings(max_examples=150)
@given(forms(max_degree=3), st.data())
def test_contraction_is_adjoint_of_wedge(x, data):
    b = data.draw(forms(max_degree=7 - x.degree))
    a = data.draw(forms(degree=x.degree + b.degree))
    assert exalg.inner(contract(x, a), b) == exalg.inner(a, wedge(x, b))


@settings(max_examples=150)
@given(forms(max_degree=7))
def test_norm_is_hodge_pairing(a):
    assert exalg.top_coefficient(wedge(a, hodge(a))) == exalg.norm2(a)
