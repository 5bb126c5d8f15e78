"""Passing from six to seven dimensions: products, circle extensions, cones."""

from __future__ import annotations

from fractions import Fraction

from . import ring
from .exalg import Form, wedge
from .g2 import G2Structure
from .model import FrameModel, ModelError
from .su3 import SU3Structure


class CurvatureNotClosedError(ValueError):
    pass


class ConstructionError(AssertionError):
    """An identity that must hold by construction failed (internal fault)."""


def _move(f: Form, frame) -> Form:
    return f.embed(frame) if set(f.frame) <= set(frame) else f.restrict(frame)


def build_product(s: SU3Structure, *, swap: bool = False, label: str = "") -> G2Structure:
    """Riemannian product with a line, alpha = dt (the dt slot, label 0).

    ``swap=True`` exchanges the roles of psi+ and psi-, i.e. uses the
    structure (omega, psi-, -psi+).
    """
    base = s.model
    if base.dt_slot:
        m7 = base
    else:
        if base.time is not None:
            raise ModelError("product needs a base without its own time function")
        m7 = base.replace(dt_slot=True, name=f"{base.name}xR")
    om, pp, pm = (_move(f, m7.frame) for f in (s.omega, s.psi_plus, s.psi_minus))
    if swap:
        pp, pm = pm, -pp
        s = s.with_forms(psi_plus=s.psi_minus, psi_minus=-s.psi_plus)
    g = G2Structure(m7, 0, om, pp, pm, base=s, rho=None, label=label or f"{s.label}xR")
    _check_ddd(g, s, None)
    return g


def build_circle_extension(s: SU3Structure, rho: Form, *, label: str = "") -> G2Structure:
    """Circle bundle with connection form alpha = e7 and d e7 = rho."""
    base = s.model
    if base.dt_slot or base.warps or base.time is not None:
        raise ModelError("circle extensions need an unwarped base without dt slot")
    rho = base.check_form(rho)
    if rho.degree != 2 and rho:
        raise ModelError("rho must be a 2-form")
    if any(not ring.is_constant(c) for _, c in rho.items()):
        raise ModelError("rho must have constant coefficients")
    if base.d(rho):
        raise CurvatureNotClosedError(f"d rho = {base.d(rho)}")
    frame7 = tuple(range(1, 8))
    structure = {i: f.embed(frame7) for i, f in base.structure.items()}
    if rho:
        structure[7] = rho.embed(frame7)
    m7 = FrameModel(7, structure, name=f"{base.name}+S1")
    om, pp, pm = (f.embed(frame7) for f in (s.omega, s.psi_plus, s.psi_minus))
    g = G2Structure(m7, 7, om, pp, pm, base=s, rho=rho, label=label or f"{s.label}+S1")
    _check_ddd(g, s, rho)
    return g


def _check_ddd(g: G2Structure, s: SU3Structure, rho: Form | None):
    """d phi = d omega ^ alpha + d psi+ + omega ^ rho and d *phi = d psi- ^ alpha + omega ^ d omega - psi- ^ rho."""
    m = g.model
    if m.warps:
        return
    fr = m.frame
    d6 = [s.d(f) for f in (s.omega, s.psi_plus, s.psi_minus)]
    d_om, d_pp, d_pm = (_move(f, fr) for f in d6)
    a = g.alpha
    om, pm = g.omega, g.psi_minus
    r = rho.embed(fr) if rho is not None else Form.zero(fr, 2)
    ok1 = m.d(g.phi) == wedge(d_om, a) + d_pp + wedge(om, r)
    ok2 = m.d(g.starphi) == wedge(d_pm, a) + wedge(om, d_om) - wedge(pm, r)
    if not (ok1 and ok2):
        raise ConstructionError("structure equations of the extension do not hold")


def _cone_model(base: FrameModel) -> FrameModel:
    if base.dt_slot or base.warps or base.time is not None:
        raise ModelError("the cone needs an unwarped base")
    return base.replace(dt_slot=True, warps={i: ring.T for i in base.generators}, name=f"C({base.name})")


def build_cone(s: SU3Structure, *, label: str = "") -> G2Structure:
    """Conical metric t^2 g + dt^2 with omega = t^2 omega^ and psi = t^3 psi^."""
    m7 = _cone_model(s.model)
    t2, t3 = ring.Laurent.monomial(2), ring.Laurent.monomial(3)
    om, pp, pm = (_move(f, m7.frame) * w for f, w in ((s.omega, t2), (s.psi_plus, t3), (s.psi_minus, t3)))
    return G2Structure(m7, 0, om, pp, pm, base=s, label=label or f"C({s.label})")


def cone_forms(s: SU3Structure, psi_power: int = 3):
    """(model, phi, *phi) of the cone with psi scaled by t^psi_power instead of t^3."""
    m7 = _cone_model(s.model)
    om = _move(s.omega, m7.frame) * ring.Laurent.monomial(2)
    w = ring.Laurent.monomial(psi_power)
    pp, pm = (_move(f, m7.frame) * w for f in (s.psi_plus, s.psi_minus))
    dt = m7.e(0)
    return m7, wedge(om, dt) + pp, wedge(pm, dt) + wedge(om, om) * Fraction(1, 2)
