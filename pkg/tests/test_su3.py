from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2su3 import su3
from g2su3.correspond import standard_algebras
from g2su3.exalg import Form, contract, wedge
from g2su3.model import FrameModel, ModelError, from_constants
from g2su3.su3 import (NormalizationError, SU3Structure, SU3ValidationError, conformal_rescale, rotate_B,
                       standard_structure, torsion, torsion_from_derivatives)
from strategies import FRAME6, forms, so6

ALG, _ = standard_algebras()


def e(*idx):
    return Form.basis(FRAME6, *idx)


def random_derivs(matrices):
    out = [Form.zero(FRAME6, 3), Form.zero(FRAME6, 4), Form.zero(FRAME6, 4)]
    from g2su3 import exalg
    for i, a in zip(FRAME6, matrices):
        images = {k: exalg.from_vector(FRAME6, 1, a[r], [(j,) for j in FRAME6]) for r, k in enumerate(FRAME6)}
        for n, f in enumerate((ALG.omega, ALG.psi_plus, ALG.psi_minus)):
            out[n] = out[n] + wedge(e(i), exalg.apply_linear(f, images, derivation=True))
    return out


def test_complex_structure_conventions():
    assert ALG.J(e(1)) == -e(2)
    assert ALG.J(e(2)) == e(1)
    assert ALG.J_squared_is_minus_one()
    assert ALG.J(ALG.psi_plus) == ALG.psi_minus


def test_compatibility_of_standard_forms():
    assert su3.check_triple(ALG.omega, ALG.psi_plus, ALG.psi_minus) == []
    assert not wedge(ALG.omega, ALG.psi_plus)
    assert wedge(ALG.psi_plus, ALG.psi_minus) == wedge(wedge(ALG.omega, ALG.omega), ALG.omega) * Fraction(2, 3)


def test_bad_triple_rejected():
    m = FrameModel(6)
    with pytest.raises(SU3ValidationError):
        SU3Structure(m, e(1, 2) + e(3, 4) + e(5, 6), ALG.psi_plus, ALG.psi_minus * 2)


@settings(max_examples=100)
@given(forms(FRAME6))
def test_type_split_reconstructs(a):
    parts = ALG.type_split(a)
    total = Form.zero(FRAME6, a.degree)
    for re, _ in parts.values():
        total = total + re
    assert total == a


@settings(max_examples=100)
@given(forms(FRAME6, max_degree=4))
def test_primitive_decomposition(a):
    a0, b = ALG.primitive_decompose(a)
    assert ALG.is_primitive(a0)
    if b is not None:
        assert a0 + wedge(ALG.omega, b) == a


def test_definition_example_w4_w5():
    r = torsion_from_derivatives(ALG, wedge(ALG.omega, e(1)), wedge(ALG.psi_plus, e(1)), wedge(ALG.psi_minus, e(1)))
    assert r.W4 == e(1) and r.W5 == e(1)
    assert set(r.classes) == {"W4", "W5"}


def test_calibrated_nilmanifold_classes():
    m = from_constants(6, {3: {(2, 5): 1}, 6: {(2, 4): -1}})
    r = torsion(standard_structure(m))
    assert r.classes == ("W2-",)
    assert r.half_flat and r.rank_w12 == 1
    assert r.d_psi_minus == e(1, 2, 3, 4) - e(1, 2, 5, 6)


def test_rotation():
    s = standard_structure(FrameModel(6))
    r = rotate_B(s, Fraction(3, 5), Fraction(4, 5))
    assert r.psi_plus == s.psi_plus * Fraction(3, 5) + s.psi_minus * Fraction(4, 5)
    with pytest.raises(NormalizationError):
        rotate_B(s, 1, 1)


def test_conformal_rescale_rejects_dt_slot():
    s = standard_structure(FrameModel(6, dt_slot=True))
    with pytest.raises(ModelError):
        conformal_rescale(s, 1)


@pytest.mark.parametrize("k", [1, 2, 3, -1])
def test_conformal_rescale_keeps_3w4_plus_2w5(k):
    m = from_constants(6, {3: {(2, 5): 1}, 6: {(1, 4): 1, (2, 3): -1}})
    s = standard_structure(m)
    r0 = torsion(s)
    t = conformal_rescale(s, k)
    r = torsion(t)
    after = t.model.from_orthonormal((r.W4 * 3 + r.W5 * 2).embed(t.model.frame))
    assert after == (r0.W4 * 3 + r0.W5 * 2)


@settings(max_examples=30, deadline=None)
@given(st.lists(so6(), min_size=6, max_size=6))
def test_swap_and_derivation_identities(matrices):
    _, dpp, dpm = random_derivs(matrices)
    lhs, rhs = su3.swap_identity(ALG, dpp, dpm)
    assert lhs == rhs
    lhs, rhs = su3.derivation_identity(ALG, dpp, dpm)
    assert lhs == rhs
    assert bool(ALG.real_type(dpp, 2)) == bool(ALG.real_type(dpm, 2))


@pytest.mark.parametrize("name", ["nil-calibrated", "iwasawa-variant", "nil2step", "nil3step"])
def test_half_flat_entries_have_rank_one_and_no_w4_w5(name):
    from g2su3 import catalog
    r = torsion(catalog.get_example(name).su3)
    assert r.half_flat
    assert r.rank_w12 <= 1 and not r.W4 and not r.W5
    assert r.in_class("W1-", "W2-", "W3")


def test_w5_from_contraction():
    r = torsion_from_derivatives(ALG, Form.zero(FRAME6, 3), wedge(ALG.psi_plus, e(3)), wedge(ALG.psi_minus, e(3)))
    assert r.W5 == contract(ALG.psi_plus, wedge(ALG.psi_plus, e(3))) * Fraction(1, 2)
