import pytest

from g2su3 import catalog, ring
from g2su3.construct import (CurvatureNotClosedError, build_circle_extension, build_cone, build_product,
                             cone_forms)
from g2su3.exalg import wedge
from g2su3.g2 import symbolic_verify_closed, torsion
from g2su3.model import FrameModel, ModelError, from_constants
from g2su3.structfile import parse_form
from g2su3.su3 import standard_structure

T = ring.T


def test_product_of_calibrated_nilmanifold():
    s = catalog.get_example("nil-calibrated").su3
    g = build_product(s)
    assert not g.model.d(g.phi)
    r = torsion(g)
    assert r.calibrated and r.classes == ("X2",)


def test_swapped_product_is_cocalibrated_in_x3():
    s = catalog.get_example("nil-calibrated").su3
    g = build_product(s, swap=True)
    r = torsion(g)
    assert r.cocalibrated and not r.calibrated and r.classes == ("X3",)
    assert r.dphi_27 == r.d_phi


def test_circle_extension_equations():
    base = from_constants(6, {3: {(2, 5): 1}, 6: {(2, 4): -1}})
    s = standard_structure(base)
    rho = parse_form("e12 + e45", base.frame)
    g = build_circle_extension(s, rho)
    assert g.model.d(g.model.e(7)) == rho.embed(g.model.frame)


def test_curvature_must_be_closed():
    base = from_constants(6, {3: {(2, 5): 1}, 6: {(2, 4): -1}})
    s = standard_structure(base)
    with pytest.raises(CurvatureNotClosedError):
        build_circle_extension(s, parse_form("e13", base.frame))


def test_circle_extension_needs_static_base():
    s = catalog.get_example("iwasawa-variant").su3
    with pytest.raises(ModelError):
        build_circle_extension(s, parse_form("e12", tuple(range(7))).restrict(s.model.frame))


def test_cone_over_flat_torus():
    s = standard_structure(FrameModel(6))
    m, phi, starphi = cone_forms(s)
    dt = m.e(0)
    om, pp = (f.embed(m.frame) for f in (s.omega, s.psi_plus))
    assert m.d(phi) == wedge(dt, pp) * (3 * T ** 2)
    assert m.d(starphi) == wedge(dt, wedge(om, om)) * (2 * T ** 3)
    g = build_cone(s)
    assert g.phi == phi


def test_warped_iwasawa_product_is_closed():
    g = catalog.get_example("iwasawa-variant").g2["product"]
    closed, dphi, dstar = symbolic_verify_closed(g)
    assert closed and not dphi and not dstar
