"""G2-structures built from an SU(3)-structure and a unit 1-form.

phi = omega ^ alpha + psi+ and *phi = psi- ^ alpha + omega^2 / 2.  The
irreducible projections are exact orthogonal projections in the orthonormal
coframe; each G2 component is further split into SU(3)-pieces so that it can
be compared with the six-dimensional torsion.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from . import exalg, linalg, ring
from .exalg import Form, blades, contract, hodge, wedge
from .model import FrameModel, ModelError
from .su3 import SU3Algebra, SU3Structure, su3_algebra

MODULES = {2: ("7", "14"), 3: ("1", "7", "27"), 4: ("1", "7", "27"), 5: ("7", "14")}


class G2ValidationError(ValueError):
    pass


class _Span:
    """Linear parametrization ``coeffs -> sum c_k images[k]`` with exact inverse on its image."""

    def __init__(self, images: Sequence[Form], degree: int, frame):
        self.images = list(images)
        self.frame = tuple(frame)
        self.degree = degree
        self.basis = blades(self.frame, degree)
        cols = [exalg.to_vector(f, self.basis) for f in self.images]
        self.matrix = linalg.transpose(cols)
        gram = linalg.matmul(cols, self.matrix)
        self.pinv = linalg.matmul(linalg.inverse(gram), cols)
        self.projector = linalg.matmul(self.matrix, self.pinv)

    def project(self, a: Form) -> Form:
        return exalg.apply_matrix(self.projector, a, self.degree)

    def coords(self, a: Form) -> list:
        return linalg.matvec(self.pinv, exalg.to_vector(a, self.basis))

    def combine(self, coeffs, forms: Sequence[Form]) -> Form:
        out = Form.zero(forms[0].frame, forms[0].degree)
        for c, f in zip(coeffs, forms):
            if c != 0:
                out = out + f * c
        return out


def _independent(forms: Sequence[Form], degree: int, frame) -> List[Form]:
    basis = blades(tuple(frame), degree)
    rows = linalg.row_space_basis([exalg.to_vector(f, basis) for f in forms])
    return [exalg.from_vector(frame, degree, r, basis) for r in rows]


class G2Algebra:
    """Pointwise G2 linear algebra for a rational split (alpha, omega, psi+-)."""

    def __init__(self, frame, alpha_label: int, omega: Form, psi_plus: Form, psi_minus: Form):
        self.frame = tuple(frame)
        if len(self.frame) != 7:
            raise G2ValidationError("a G2 algebra needs 7 labels")
        self.alpha_label = alpha_label
        self.space = tuple(i for i in self.frame if i != alpha_label)
        fr = self.frame
        self.alpha = Form.basis(fr, alpha_label)
        self.omega = omega.embed(fr)
        self.psi_plus = psi_plus.embed(fr)
        self.psi_minus = psi_minus.embed(fr)
        self.su3: SU3Algebra = su3_algebra(omega.restrict(self.space), psi_plus.restrict(self.space),
                                           psi_minus.restrict(self.space))
        self.phi = wedge(self.omega, self.alpha) + self.psi_plus
        self.starphi = wedge(self.psi_minus, self.alpha) + exalg.power(self.omega, 2) * Fraction(1, 2)
        self.vol = exalg.volume(fr)
        e = [Form.basis(fr, i) for i in fr]
        n = {k: len(blades(fr, k)) for k in range(8)}
        self._spans: Dict[Tuple[int, str], _Span] = {}
        self._spans[(2, "7")] = _Span([contract(x, self.phi) for x in e], 2, fr)
        self._spans[(3, "1")] = _Span([self.phi], 3, fr)
        self._spans[(3, "7")] = _Span([hodge(wedge(x, self.phi)) for x in e], 3, fr)
        self._spans[(4, "1")] = _Span([self.starphi], 4, fr)
        self._spans[(4, "7")] = _Span([wedge(x, self.phi) for x in e], 4, fr)
        self._spans[(5, "7")] = _Span([wedge(x, self.starphi) for x in e], 5, fr)
        self._proj: Dict[Tuple[int, str], list] = {}
        for (k, name), sp in self._spans.items():
            self._proj[(k, name)] = sp.projector
        for k, names in MODULES.items():
            rest = linalg.identity(n[k])
            for name in names[:-1]:
                rest = linalg.matsub(rest, self._proj[(k, name)])
            self._proj[(k, names[-1])] = rest
        self._build_refinements()

    # projections -----------------------------------------------------------

    def projector(self, degree: int, name: str) -> list:
        return self._proj[(degree, name)]

    def irrep_project(self, a: Form) -> Dict[str, Form]:
        if a.degree not in MODULES:
            raise exalg.DegreeError(f"irreducible projection needs degree 2..5, got {a.degree}")
        a = a.embed(self.frame) if a.frame != self.frame else a
        return {name: exalg.apply_matrix(self._proj[(a.degree, name)], a, a.degree) for name in MODULES[a.degree]}

    # SU(3) refinement ------------------------------------------------------

    def _build_refinements(self):
        fr, sp, su = self.frame, self.space, self.su3
        om, pp, pm, al = self.omega, self.psi_plus, self.psi_minus, self.alpha
        ys = [Form.basis(fr, i) for i in sp]
        # [Lambda^{1,1}_0] and [[Lambda^{2,1}_0]] on the six-dimensional factor
        p11 = [su.primitive_decompose(su.real_type(Form.basis(sp, *b), 0))[0] for b in blades(sp, 2)]
        self.lam11_0 = [f.embed(fr) for f in _independent(p11, 2, sp)]
        p21 = [su.primitive_decompose(su.real_type(Form.basis(sp, *b), 1))[0] for b in blades(sp, 3)]
        self.lam21_0 = [f.embed(fr) for f in _independent(p21, 3, sp)]
        self.horizontal = ys
        self.inv4 = wedge(pm, al) * 3 - exalg.power(om, 2) * 2
        eta_core = wedge(om, al) - pp
        theta_core = exalg.power(om, 2) - wedge(pm, al)
        self.refine = {
            "4.27.R": _Span([self.inv4], 4, fr),
            "4.27.T": _Span([wedge(y, eta_core) for y in ys], 4, fr),
            "4.27.su3": _Span([wedge(b, om) for b in self.lam11_0], 4, fr),
            "4.27.S20": _Span([wedge(g, al) for g in self.lam21_0], 4, fr),
            "5.14.T": _Span([wedge(y, theta_core) for y in ys], 5, fr),
            "5.14.su3": _Span([wedge(wedge(b, om), al) for b in self.lam11_0], 5, fr),
            "4.7": self._spans[(4, "7")],
            "5.7": self._spans[(5, "7")],
        }

    def eta(self, y: Form) -> Form:
        """T-piece of the 27-module in degree 4 attached to a horizontal 1-form."""
        return wedge(y.embed(self.frame), wedge(self.omega, self.alpha) - self.psi_plus)

    def theta(self, y: Form) -> Form:
        """T-piece of the 14-module in degree 5 attached to a horizontal 1-form."""
        y = y.embed(self.frame)
        return wedge(y, exalg.power(self.omega, 2) * Fraction(3, 2) - self.starphi)

    def _vector(self, key: str, a: Form) -> Form:
        sp = self.refine[key]
        c = sp.coords(a)
        return exalg.from_vector(self.frame, 1, c, [(i,) for i in self.frame]) if key in ("4.7", "5.7") else \
            sp.combine(c, self.horizontal)

    def refine_4_27(self, a: Form) -> Dict[str, object]:
        """SU(3)-pieces of a 27-component in degree 4.

        Returns the scalar multiple of ``3 psi- ^ alpha - 2 omega^2``, the
        horizontal 1-form ``Y`` of the ``Y ^ (omega ^ alpha - psi+)`` piece, the
        primitive (1,1)-form ``b`` of the ``b ^ omega`` piece and the primitive
        (2,1)-form ``g`` of the ``g ^ alpha`` piece.
        """
        r = self.refine
        beta = r["4.27.su3"].combine(r["4.27.su3"].coords(a), self.lam11_0)
        gamma = r["4.27.S20"].combine(r["4.27.S20"].coords(a), self.lam21_0)
        return {"R": r["4.27.R"].coords(a)[0], "T": self._vector("4.27.T", a), "su3": beta, "S20": gamma}

    def refine_5_14(self, a: Form) -> Dict[str, object]:
        r = self.refine
        beta = r["5.14.su3"].combine(r["5.14.su3"].coords(a), self.lam11_0)
        return {"T": self._vector("5.14.T", a), "su3": beta}

    def vector_4_7(self, a: Form) -> Form:
        """X with X ^ phi equal to the 7-component ``a``."""
        return self._vector("4.7", a)

    def vector_5_7(self, a: Form) -> Form:
        """X with X ^ *phi equal to the 7-component ``a``."""
        return self._vector("5.7", a)

    def split_vector(self, x: Form):
        """(alpha-coefficient, horizontal part) of a 1-form."""
        c = x.coeff((self.alpha_label,))
        return c, x - self.alpha * c


@lru_cache(maxsize=32)
def g2_algebra(frame, alpha_label, omega, psi_plus, psi_minus) -> G2Algebra:
    return G2Algebra(frame, alpha_label, omega, psi_plus, psi_minus)


def standard_g2_forms(frame=(1, 2, 3, 4, 5, 6, 7), alpha_label=7):
    """(phi, *phi) of the standard split with ``alpha = e^alpha_label``."""
    from .su3 import standard_forms

    space = tuple(i for i in frame if i != alpha_label)
    om, pp, pm = (f.embed(frame) for f in standard_forms(space))
    a = Form.basis(frame, alpha_label)
    return wedge(om, a) + pp, wedge(pm, a) + exalg.power(om, 2) * Fraction(1, 2)


class G2Structure:
    """(alpha, omega, psi+, psi-) on a model whose frame has seven labels.

    ``alpha_label`` names the generator along which the unit 1-form points
    (``0`` for the dt slot).  The base-frame alpha is ``w e^label`` where
    ``w`` is that generator's warp.  ``base`` records the SU(3)-structure
    the G2-structure was assembled from, and ``rho`` the curvature 2-form of
    a circle extension.
    """

    def __init__(self, model: FrameModel, alpha_label: int, omega: Form, psi_plus: Form, psi_minus: Form,
                 *, base: SU3Structure | None = None, rho: Form | None = None, label: str = ""):
        if len(model.frame) != 7:
            raise ModelError("a G2-structure needs a model with 7 frame labels")
        if alpha_label not in model.frame:
            raise ModelError(f"alpha label {alpha_label} not in frame")
        self.model, self.alpha_label, self.base, self.label = model, alpha_label, base, label
        self.rho = rho
        self.space = tuple(i for i in model.frame if i != alpha_label)
        self.omega = model.check_form(omega)
        self.psi_plus = model.check_form(psi_plus)
        self.psi_minus = model.check_form(psi_minus)
        self.alpha = model.from_orthonormal(model.e(alpha_label))
        self.phi = wedge(self.omega, self.alpha) + self.psi_plus
        self.starphi = wedge(self.psi_minus, self.alpha) + exalg.power(self.omega, 2) * Fraction(1, 2)
        o = [model.to_orthonormal(f) for f in (self.omega, self.psi_plus, self.psi_minus)]
        for name, f in zip(("omega", "psi+", "psi-"), o):
            if any(not ring.is_constant(c) for _, c in f.items()):
                raise G2ValidationError(f"{name} must have constant orthonormal coefficients")
            if any(alpha_label in b for b in f.terms):
                raise G2ValidationError(f"{name} may not involve alpha")
        self.o_omega, self.o_psi_plus, self.o_psi_minus = o
        self._check()

    def _check(self):
        alg = self.algebra
        if not alg.su3.J_squared_is_minus_one() or alg.su3.J(alg.su3.psi_plus) != alg.su3.psi_minus:
            raise G2ValidationError("horizontal forms are not an SU(3)-structure")
        if hodge(alg.phi) != alg.starphi:
            raise G2ValidationError("*phi does not match the Hodge dual of phi")
        if wedge(alg.phi, alg.starphi) != alg.vol * 7:
            raise G2ValidationError("phi ^ *phi != 7 vol")

    @property
    def algebra(self) -> G2Algebra:
        return g2_algebra(self.model.frame, self.alpha_label, self.o_omega, self.o_psi_plus, self.o_psi_minus)

    def derivatives(self) -> Tuple[Form, Form]:
        """Orthonormal-frame (d phi, d *phi) including any dt-terms."""
        m = self.model
        return m.to_orthonormal(m.d(self.phi)), m.to_orthonormal(m.d(self.starphi))

    def fingerprint(self) -> str:
        base = self.base.fingerprint() if self.base is not None else ""
        parts = [base, str(self.rho), repr(sorted((i, str(f)) for i, f in self.model.structure.items())),
                 repr(sorted((i, str(w)) for i, w in self.model.warps.items())), str(self.phi)]
        return hashlib.sha256("|".join(parts).encode()).hexdigest()[:16]

    def __repr__(self):
        return f"G2Structure({self.label or self.model.name})"


def irrep_project(a: Form, g: G2Structure) -> Dict[str, Form]:
    """Irreducible components of an orthonormal-frame form of degree 2..5."""
    return g.algebra.irrep_project(a)


@dataclass
class G2TorsionReport:
    dphi_1: object
    dphi_7: Form
    dphi_27: Form
    dstarphi_7: Form
    dstarphi_14: Form
    X1: object
    X4vec: Form
    calibrated: bool
    cocalibrated: bool
    nearly_parallel: bool
    torsion_free: bool
    classes: Tuple[str, ...]
    d_phi: Form
    d_starphi: Form
    pieces: Dict[str, object] = field(default_factory=dict)
    source: str = ""
    label: str = ""

    def in_class(self, *names: str) -> bool:
        return set(self.classes) <= set(names)


def torsion_from_derivatives(alg: G2Algebra, d_phi: Form, d_starphi: Form, *, source: str = "",
                             label: str = "") -> G2TorsionReport:
    """G2 torsion report from pointwise orthonormal d phi and d *phi."""
    p4 = alg.irrep_project(d_phi)
    p5 = alg.irrep_project(d_starphi)
    c = alg._spans[(4, "1")].coords(d_phi)[0]
    X1 = exalg.top_coefficient(wedge(d_phi, alg.phi))
    X4vec = hodge(wedge(hodge(d_starphi), alg.starphi))
    classes = []
    if c != 0:
        classes.append("X1")
    if p5["14"]:
        classes.append("X2")
    if p4["27"]:
        classes.append("X3")
    if p4["7"] or p5["7"]:
        classes.append("X4")
    pieces: Dict[str, object] = {}
    r27 = alg.refine_4_27(p4["27"])
    r14 = alg.refine_5_14(p5["14"])
    x4a, x4h = alg.split_vector(X4vec)
    pieces.update({
        "X1": X1, "dphi_1": c,
        "X3.R": r27["R"], "X3.T": r27["T"], "X3.su3": r27["su3"], "X3.S20": r27["S20"],
        "X2.T": r14["T"], "X2.su3": r14["su3"],
        "X4.R": x4a, "X4.T": x4h,
        "dphi_7.vec": alg.vector_4_7(p4["7"]), "dstarphi_7.vec": alg.vector_5_7(p5["7"]),
    })
    calibrated, cocalibrated = not d_phi, not d_starphi
    nearly_parallel = cocalibrated and c != 0 and d_phi == alg.starphi * c
    return G2TorsionReport(
        dphi_1=c, dphi_7=p4["7"], dphi_27=p4["27"], dstarphi_7=p5["7"], dstarphi_14=p5["14"],
        X1=X1, X4vec=X4vec, calibrated=calibrated, cocalibrated=cocalibrated,
        nearly_parallel=nearly_parallel, torsion_free=calibrated and cocalibrated,
        classes=tuple(classes), d_phi=d_phi, d_starphi=d_starphi, pieces=pieces, source=source, label=label,
    )


def source_tag(fingerprint: str, rho: Form | None = None) -> str:
    """Provenance string of a G2 report: the SU(3) fingerprint plus the curvature."""
    if rho is None or not rho:
        return fingerprint
    return fingerprint + "+" + hashlib.sha256(str(rho).encode()).hexdigest()[:8]


def torsion(g: G2Structure) -> G2TorsionReport:
    src = source_tag(g.base.fingerprint(), g.rho) if g.base is not None else g.fingerprint()
    return torsion_from_derivatives(g.algebra, *g.derivatives(), source=src, label=g.label)


def symbolic_verify_closed(g: G2Structure):
    """(closed?, d phi, d *phi) computed in the Laurent ring, dt-terms included."""
    dphi = g.model.d(g.phi)
    dstar = g.model.d(g.starphi)
    return (not dphi and not dstar), dphi, dstar
