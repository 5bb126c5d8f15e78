from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2su3 import linalg
from g2su3.exalg import Form, wedge
from g2su3.stable import NotStableError, quartic_invariant, stable_data
from g2su3.su3 import standard_forms
from strategies import FRAME6

OM, PP, PM = standard_forms()


def test_recovers_standard_psi_minus():
    sd = stable_data(PP)
    assert sd.exact and sd.lam == -4
    assert sd.psi_minus == PM
    assert linalg.matmul(sd.J, sd.J) == [[-1 if i == j else 0 for j in range(6)] for i in range(6)]


def test_j_matrix_orientation():
    sd = stable_data(PP)
    # column 1 of J is J(e_1), which is e_2 on vectors
    assert [row[0] for row in sd.J] == [0, 1, 0, 0, 0, 0]


def test_rotation_property():
    a, b = Fraction(3, 5), Fraction(4, 5)
    assert stable_data(PP * a + PM * b).psi_minus == PP * (-b) + PM * a


def test_scaling_of_invariant():
    assert quartic_invariant(PP * 2) == -64


@pytest.mark.parametrize("blade", [(1, 2, 3), (1, 2, 4)])
def test_decomposable_rejected(blade):
    with pytest.raises(NotStableError):
        stable_data(Form.basis(FRAME6, *blade))


def test_real_split_type_rejected():
    # e123 + e456 has positive invariant (SL(3,R) x SL(3,R) type)
    with pytest.raises(NotStableError):
        stable_data(Form.basis(FRAME6, 1, 2, 3) + Form.basis(FRAME6, 4, 5, 6))


@settings(max_examples=60, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5))
def test_rotations_of_psi_plus(p, q):
    if p == 0 and q == 0:
        return
    # rescale (p, q) onto the unit circle only when rational: use (p^2 - q^2, 2pq)/(p^2 + q^2)
    n = p * p + q * q
    a, b = Fraction(p * p - q * q, n), Fraction(2 * p * q, n)
    sd = stable_data(PP * a + PM * b)
    assert sd.psi_minus == PP * (-b) + PM * a
    assert wedge(PP * a + PM * b, sd.psi_minus) == wedge(PP, PM)
