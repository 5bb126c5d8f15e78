"""Named frame models and structures, checked against their stated torsion on load."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from . import g2 as g2mod
from . import ring
from .construct import build_circle_extension, build_product
from .exalg import Form, wedge
from .g2 import G2Structure
from .model import FrameModel, from_constants
from .stable import half_flat_check
from .structfile import dumps, parse_form
from .su3 import SU3Structure, standard_structure, torsion

L = ring.Laurent.monomial


class UnknownExampleError(LookupError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown example {name!r}; available: {', '.join(names())}")


class CatalogMismatchError(AssertionError):
    pass


@dataclass
class CatalogEntry:
    """A model with its structure and the facts it is expected to satisfy.

    ``expected`` holds fragments of the SU(3) torsion report (``classes``,
    ``half_flat``); ``g2_expected`` maps a key of ``g2`` to fragments of its
    G2 report.  ``identities`` are named (computed, expected) form pairs.
    """

    name: str
    model: FrameModel
    structure: SU3Structure | G2Structure
    expected: Dict[str, object] = field(default_factory=dict)
    g2: Dict[str, G2Structure] = field(default_factory=dict)
    g2_expected: Dict[str, Dict[str, object]] = field(default_factory=dict)
    identities: List[Tuple[str, Callable[[], Tuple[Form, Form]]]] = field(default_factory=list)
    note: str = ""

    @property
    def su3(self) -> Optional[SU3Structure]:
        return self.structure if isinstance(self.structure, SU3Structure) else None

    def g2_structure(self) -> Optional[G2Structure]:
        """The G2-structure most naturally attached to the entry."""
        if isinstance(self.structure, G2Structure):
            return self.structure
        return self.g2.get("product")

    def checks(self) -> List[Tuple[str, bool, str]]:
        """(name, ok, detail) for every expectation of the entry."""
        out = []
        if self.su3 is not None:
            rep = torsion(self.su3)
            for key, want in self.expected.items():
                got = tuple(rep.classes) if key == "classes" else getattr(rep, key)
                out.append((f"{self.name}: {key}", got == want, f"expected {want}, got {got}"))
        for gkey, frag in self.g2_expected.items():
            rep = g2mod.torsion(self.g2[gkey])
            for key, want in frag.items():
                got = tuple(rep.classes) if key == "classes" else getattr(rep, key)
                out.append((f"{self.name}/{gkey}: {key}", got == want, f"expected {want}, got {got}"))
        for label, fn in self.identities:
            lhs, rhs = fn()
            out.append((f"{self.name}: {label}", lhs == rhs, f"{lhs} != {rhs}"))
        return out

    def verify(self) -> "CatalogEntry":
        for label, ok, detail in self.checks():
            if not ok:
                raise CatalogMismatchError(f"{label}: {detail}")
        return self

    def export(self) -> str:
        """The entry in structure-file syntax."""
        if isinstance(self.structure, G2Structure):
            g = self.structure
            forms = {"omega": g.omega, "psi+": g.psi_plus, "psi-": g.psi_minus}
            if g.rho is not None and g.rho:
                forms["rho"] = g.rho
            base = g.base.model if g.base is not None else g.model
            return dumps(base, forms, alpha=g.alpha_label, name=self.name)
        s = self.structure
        return dumps(s.model, {"omega": s.omega, "psi+": s.psi_plus, "psi-": s.psi_minus}, name=self.name)


def _f(model: FrameModel, text: str) -> Form:
    return parse_form(text, model.frame)


def _products(s: SU3Structure) -> Dict[str, G2Structure]:
    return {"product": build_product(s), "swapped": build_product(s, swap=True)}


# builders ----------------------------------------------------------------

def _torus6() -> CatalogEntry:
    m = FrameModel(6, name="torus6")
    s = standard_structure(m, "torus6")
    return CatalogEntry("torus6", m, s, {"classes": (), "half_flat": True}, _products(s),
                        {"product": {"torsion_free": True}},
                        note="flat torus with the standard constant structure")


def _nil_calibrated() -> CatalogEntry:
    m = from_constants(6, {3: {(2, 5): 1}, 6: {(2, 4): -1}}, name="nil-calibrated")
    s = standard_structure(m, "nil-calibrated")
    ids = [
        ("d omega = 0", lambda: (s.d(s.omega), m.zero(3))),
        ("d psi+ = 0", lambda: (s.d(s.psi_plus), m.zero(4))),
        ("d psi- = e1234 - e1256", lambda: (s.d(s.psi_minus), _f(m, "e1234 - e1256"))),
    ]
    return CatalogEntry("nil-calibrated", m, s, {"classes": ("W2-",), "half_flat": True}, _products(s),
                        {"product": {"calibrated": True, "cocalibrated": False},
                         "swapped": {"calibrated": False, "cocalibrated": True, "classes": ("X3",)}},
                        ids, note="nilpotent algebra de3 = e25, de6 = -e24 (calibrated product)")


def _iwasawa_model(name="iwasawa-variant") -> FrameModel:
    return from_constants(6, {5: {(1, 4): -1, (2, 3): -1}, 6: {(1, 3): -1, (4, 2): -1}}, dt_slot=True,
                          warps={1: L(1), 2: L(1), 3: L(1), 4: L(1), 5: L(-1), 6: L(-1), 0: L(2)}, name=name)


def _iwasawa() -> CatalogEntry:
    m = _iwasawa_model()
    s = standard_structure(m, "iwasawa-variant")
    prod = build_product(s)
    ids = [
        ("omega = t^2(e12 + e34) + t^-2 e56", lambda: (s.omega, _f(m, "t^2*e12 + t^2*e34 + t^-2*e56"))),
        ("psi+ = t(e135 - e146 - e236 - e245)", lambda: (s.psi_plus, _f(m, "t*e135 - t*e146 - t*e236 - t*e245"))),
        ("dhat omega = t^-3 psi+", lambda: (s.d(s.omega), s.psi_plus * L(-3))),
        ("dhat psi- = -4t e1234", lambda: (s.d(s.psi_minus), _f(m, "-4*t*e1234"))),
        ("half-flat", lambda: (half_flat_check(s), True)),
    ]
    return CatalogEntry("iwasawa-variant", m, s, {"classes": ("W1-", "W2-"), "half_flat": True},
                        {"product": prod}, {"product": {"torsion_free": True}}, ids,
                        note="Iwasawa-type algebra with conical warping and lapse t^2")


def _nil2step() -> CatalogEntry:
    m = from_constants(6, {5: {(1, 4): -1, (2, 3): -1}, 6: {(2, 4): 1}}, dt_slot=True,
                       warps={1: L(1), 2: L(2), 3: L(1), 4: L(2), 5: L(-2), 6: L(-1), 0: L(4, 2)}, name="nil2step")
    s = standard_structure(m, "nil2step")
    g = build_product(s)
    phi = _f(m, "2*t^7*e120 + 2*t^7*e340 + 2*t*e560 + e135 - t^2*e146 - t^2*e236 - t^2*e245")
    starphi = _f(m, "-2*t^7*e2460 + 2*t^5*e1450 + 2*t^5*e1360 + 2*t^5*e2350 + e1256 + e3456 + t^6*e1234")
    ids = [
        ("omega = t^3(e12 + e34) + t^-3 e56", lambda: (s.omega, _f(m, "t^3*e12 + t^3*e34 + t^-3*e56"))),
        ("phi matches the closed form", lambda: (g.phi, phi)),
        ("*phi matches the closed form", lambda: (g.starphi, starphi)),
        ("d phi = 0", lambda: (m.d(phi), m.zero(4))),
        ("d *phi = 0", lambda: (m.d(starphi), m.zero(5))),
    ]
    return CatalogEntry("nil2step", m, s, {"half_flat": True}, {"product": g},
                        {"product": {"torsion_free": True}}, ids,
                        note="2-step nilpotent algebra de5 = -e14 - e23, de6 = e24 with t-dependent coframe")


def _nil3step() -> CatalogEntry:
    m = from_constants(6, {3: {(2, 5): 1}, 6: {(1, 4): 1, (2, 3): -1}}, name="nil3step")
    s = standard_structure(m, "nil3step")
    ids = [
        ("omega ^ d omega = 0", lambda: (wedge(s.omega, s.d(s.omega)), m.zero(5))),
        ("d psi+ = 0", lambda: (s.d(s.psi_plus), m.zero(4))),
        ("d psi- = -e1256", lambda: (s.d(s.psi_minus), _f(m, "-e1256"))),
        ("half-flat", lambda: (half_flat_check(s), True)),
    ]
    return CatalogEntry("nil3step", m, s, {"half_flat": True}, _products(s), {}, ids,
                        note="3-step nilpotent algebra de3 = e25, de6 = e14 - e23 (half-flat)")


_RHOS = {
    "torus-circle-rho0": ("e12 + e34 + e56", {"calibrated": False, "cocalibrated": True}),
    "torus-circle-rho1": ("e12 - e34", {"calibrated": False, "cocalibrated": True}),
    "torus-circle-rho2": ("e13 - e24", {"calibrated": False, "cocalibrated": False}),
    "torus-circle-mixed": ("2*e12 + e13 - e24 + e56", {"calibrated": False, "cocalibrated": False}),
}


def _torus_circle(name: str) -> CatalogEntry:
    text, frag = _RHOS[name]
    base = FrameModel(6, name="torus6")
    s = standard_structure(base, "torus6")
    rho = parse_form(text, base.frame)
    g = build_circle_extension(s, rho, label=name)
    return CatalogEntry(name, g.model, g, {}, {"circle": g}, {"circle": frag},
                        note=f"circle bundle over the flat torus with curvature {text}")


_BUILDERS: Dict[str, Callable[[], CatalogEntry]] = {
    "torus6": _torus6,
    "nil-calibrated": _nil_calibrated,
    "iwasawa-variant": _iwasawa,
    "nil2step": _nil2step,
    "nil3step": _nil3step,
    **{n: (lambda n=n: _torus_circle(n)) for n in _RHOS},
}

_CACHE: Dict[str, CatalogEntry] = {}


def names() -> List[str]:
    return list(_BUILDERS)


def get_example(name: str, *, verify: bool = True) -> CatalogEntry:
    if name not in _BUILDERS:
        raise UnknownExampleError(name)
    if name not in _CACHE:
        entry = _BUILDERS[name]()
        if verify:
            entry.verify()
        _CACHE[name] = entry
    return _CACHE[name]


def six_dimensional() -> List[CatalogEntry]:
    return [get_example(n) for n in names() if get_example(n).su3 is not None]
