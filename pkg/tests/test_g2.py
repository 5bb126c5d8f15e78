from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from g2su3 import exalg, linalg
from g2su3.correspond import g2_derivatives, standard_algebras
from g2su3.exalg import Form, hodge, wedge
from g2su3.g2 import MODULES, G2Structure, G2ValidationError, g2_algebra, standard_g2_forms, torsion_from_derivatives
from g2su3.model import FrameModel
from g2su3.structfile import parse_form
from strategies import FRAME7, forms

SU, G = standard_algebras()
RANKS = {2: {"7": 7, "14": 14}, 3: {"1": 1, "7": 7, "27": 27}, 4: {"1": 1, "7": 7, "27": 27}, 5: {"7": 7, "14": 14}}


def f7(text):
    return parse_form(text, FRAME7)


def test_phi_and_starphi():
    phi, starphi = standard_g2_forms()
    assert phi == f7("e127 + e347 + e567 + e135 - e146 - e236 - e245")
    assert starphi == f7("e1367 + e1457 + e2357 - e2467 + e3456 + e1256 + e1234")
    assert hodge(phi) == starphi
    assert wedge(phi, starphi) == exalg.volume(FRAME7) * 7


def test_hodge_of_psi_minus_sign():
    # with the sorted orientation e1234567, *psi- = -psi+ ^ alpha
    assert hodge(G.psi_minus) == -wedge(G.psi_plus, G.alpha)
    assert hodge(wedge(G.omega, G.alpha)) == exalg.power(G.omega, 2) * Fraction(1, 2)


@pytest.mark.parametrize("degree", [2, 3, 4, 5])
@pytest.mark.parametrize("alpha_label", [7, 0])
def test_projector_ranks(degree, alpha_label):
    g = G if alpha_label == 7 else standard_algebras(0)[1]
    for name in MODULES[degree]:
        assert linalg.rank(g.projector(degree, name)) == RANKS[degree][name]


def test_sympy_eigenvalue_oracle_on_two_forms():
    """beta -> *(phi ^ beta) has eigenvalue 2 on the 7-part and -1 on the 14-part."""
    m = exalg.matrix_of(lambda b: hodge(wedge(G.phi, b)), FRAME7, 2, 2)
    sm = sympy.Matrix(m)
    ev = sm.eigenvals()
    assert ev == {2: 7, -1: 14}
    p7 = sympy.Matrix(G.projector(2, "7"))
    p14 = sympy.Matrix(G.projector(2, "14"))
    assert sm * p7 == 2 * p7
    assert sm * p14 == -p14


@pytest.mark.parametrize("degree", [2, 3, 4, 5])
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_projection_complete_and_orthogonal(degree, data):
    a = data.draw(forms(FRAME7, degree=degree))
    parts = G.irrep_project(a)
    total = Form.zero(FRAME7, degree)
    for v in parts.values():
        total = total + v
    assert total == a
    vals = list(parts.items())
    for i, (name, v) in enumerate(vals):
        assert G.irrep_project(v)[name] == v
        for _, w in vals[i + 1:]:
            assert exalg.inner(v, w) == 0


@pytest.mark.parametrize("form, module", [
    ("e136 + e145 + e235 - e246", "7"),
    ("3*e135 - 3*e146 - 3*e236 - 3*e245 - 4*e127 - 4*e347 - 4*e567", "27"),
    ("e1357 - e1467 - e2367 - e2457", "7"),
    ("3*e1367 + 3*e1457 + 3*e2357 - 3*e2467 - 4*e1234 - 4*e1256 - 4*e3456", "27"),
    ("e1347 + e1567 - e1236 - e1245", "7"),
    ("e1347 + e1567 + e1236 + e1245", "27"),
    ("e13456 + e12357 - e12467", "7"),
    ("2*e13456 - e12357 + e12467", "14"),
])
def test_membership(form, module):
    a = f7(form)
    parts = G.irrep_project(a)
    assert parts[module] == a
    assert all(not v for k, v in parts.items() if k != module)


def test_membership_forms_are_the_invariant_combinations():
    om, pp, pm, al = G.omega, G.psi_plus, G.psi_minus, G.alpha
    assert f7("e136 + e145 + e235 - e246") == pm
    assert f7("e1357 - e1467 - e2367 - e2457") == wedge(pp, al)
    assert f7("3*e1367 + 3*e1457 + 3*e2357 - 3*e2467 - 4*e1234 - 4*e1256 - 4*e3456") == \
        wedge(pm, al) * 3 - exalg.power(om, 2) * 2


def test_diagnostic_samples():
    e1 = Form.basis(SU.frame, 1)
    z = Form.zero(SU.frame, 4)
    om, pp, pm = SU.omega, SU.psi_plus, SU.psi_minus
    _, ds = g2_derivatives(G, wedge(om, e1), z, wedge(pm, e1), None)
    assert ds == f7("2*e13456 - e12357 + e12467")
    r = torsion_from_derivatives(G, Form.zero(FRAME7, 4), ds)
    assert "X4" not in r.classes
    _, ds = g2_derivatives(G, wedge(om, e1) * Fraction(1, 2), z, -wedge(pm, e1), None)
    assert ds == f7("e13456 + e12357 - e12467")
    dp, _ = g2_derivatives(G, wedge(om, e1), -wedge(pp, e1), z, None)
    assert dp == f7("e1347 + e1567 - e1236 - e1245")


def test_nearly_parallel_flag():
    r = torsion_from_derivatives(G, G.starphi * 4, Form.zero(FRAME7, 5))
    assert r.nearly_parallel and r.classes == ("X1",)
    r = torsion_from_derivatives(G, Form.zero(FRAME7, 4), Form.zero(FRAME7, 5))
    assert r.torsion_free and not r.nearly_parallel


def test_invalid_structure_rejected():
    m = FrameModel(7)
    om, pp, pm = (f.embed(FRAME7) for f in (SU.omega, SU.psi_plus, SU.psi_minus))
    with pytest.raises(G2ValidationError):
        G2Structure(m, 7, om, pp, pm * 2)
    with pytest.raises(G2ValidationError):
        G2Structure(m, 7, om + Form.basis(FRAME7, 1, 7), pp, pm)


def test_cached_algebra_is_shared():
    a = g2_algebra(FRAME7, 7, G.omega, G.psi_plus, G.psi_minus)
    assert a is G
