from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2su3.exalg import wedge
from g2su3.model import FrameModel, JacobiError, ModelError, from_constants
from g2su3.ring import Laurent, T
from strategies import FRAME6, forms

NIL3 = from_constants(6, {3: {(2, 5): 1}, 6: {(1, 4): 1, (2, 3): -1}})


def test_structure_equations():
    assert NIL3.d(NIL3.e(3)) == NIL3.e(2, 5)
    assert NIL3.d(NIL3.e(6)) == NIL3.e(1, 4) - NIL3.e(2, 3)
    assert not NIL3.d(NIL3.e(1))


def test_jacobi_failure_is_reported():
    with pytest.raises(JacobiError):
        from_constants(6, {5: {(1, 2): 1}, 6: {(3, 5): 1}})


def test_bad_warp_rejected():
    with pytest.raises(ModelError):
        FrameModel(6, warps={1: T + 1})
    with pytest.raises(ModelError):
        FrameModel(6, time=9)


def test_time_must_be_closed():
    with pytest.raises(ModelError):
        from_constants(6, {3: {(2, 5): 1}}, time=3)


def test_dt_slot_and_t_derivative():
    m = FrameModel(6, dt_slot=True)
    a = m.e(1, 2, coeff=T ** 3)
    assert m.d(a) == m.e(0, 1, 2, coeff=3 * T ** 2)
    assert not m.d(a, hat=True)


def test_warps_orthonormal_round_trip():
    m = FrameModel(6, dt_slot=True, warps={1: T, 5: Laurent.monomial(-1), 0: T ** 2})
    a = m.e(1, 5) + m.e(0, 2, coeff=3)
    o = m.to_orthonormal(a)
    assert o == m.e(1, 5) + m.e(0, 2, coeff=3 * T ** -2)
    assert m.from_orthonormal(o) == a


@settings(max_examples=100)
@given(forms(FRAME6, max_degree=4))
def test_d_squared_vanishes(a):
    assert not NIL3.d(NIL3.d(a))


@settings(max_examples=100)
@given(forms(FRAME6, max_degree=3), forms(FRAME6, max_degree=3))
def test_leibniz_rule(a, b):
    lhs = NIL3.d(wedge(a, b))
    assert lhs == wedge(NIL3.d(a), b) + wedge(a, NIL3.d(b)) * (-1) ** a.degree


@settings(max_examples=100)
@given(forms(FRAME6, max_degree=3), st.integers(-3, 3))
def test_leibniz_with_laurent_coefficients(a, k):
    m = from_constants(6, {3: {(2, 5): 1}}, dt_slot=True)
    x = a.embed(m.frame) * (T ** k + Fraction(1, 2))
    assert not m.d(m.d(x))
