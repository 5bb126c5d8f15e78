"""SU(3)-structures in six dimensions and their intrinsic torsion.

All algebra happens in the orthonormal coframe, where the defining forms must
have rational coefficients; derivatives may carry Laurent coefficients.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from . import exalg, linalg, ring
from .exalg import Form, apply_matrix, blades, contract, matrix_of, power, wedge
from .model import FrameModel, ModelError

CLASS_NAMES = ("W1+", "W1-", "W2+", "W2-", "W3", "W4", "W5")


class SU3ValidationError(ValueError):
    pass


class NormalizationError(ValueError):
    pass


def standard_forms(frame=(1, 2, 3, 4, 5, 6)) -> Tuple[Form, Form, Form]:
    """omega, psi+, psi- from Psi = (e1 + i e2)(e3 + i e4)(e5 + i e6)."""
    a, b, c, d, e, f = frame
    omega = Form(frame, 2, {(a, b): 1, (c, d): 1, (e, f): 1})
    psi_p = Form(frame, 3, {(a, c, e): 1, (a, d, f): -1, (b, c, f): -1, (b, d, e): -1})
    psi_m = Form(frame, 3, {(a, c, f): 1, (a, d, e): 1, (b, c, e): 1, (b, d, f): -1})
    return omega, psi_p, psi_m


def _is_rational(a: Form) -> bool:
    return all(ring.is_constant(c) for _, c in a.items())


def _possible_m(k: int):
    return sorted({abs(2 * p - k) for p in range(0, 4) if 0 <= k - p <= 3})


class SU3Algebra:
    """Pointwise linear algebra attached to a rational SU(3) triple on a 6-frame."""

    def __init__(self, omega: Form, psi_plus: Form, psi_minus: Form):
        self.frame = omega.frame
        if len(self.frame) != 6:
            raise SU3ValidationError("SU(3) algebra needs a 6-dimensional coframe")
        self.omega, self.psi_plus, self.psi_minus = omega, psi_plus, psi_minus
        fr = self.frame
        # J e^i = -(e^i _| omega); the standard omega gives J e1 = -e2, J e2 = e1.
        self.J1: Dict[int, Form] = {i: -contract(Form.basis(fr, i), omega) for i in fr}
        self._D = {k: matrix_of(self.derivation, fr, k, k) for k in range(7)}
        self._proj: Dict[Tuple[int, int], list] = {}
        for k in range(7):
            d2 = linalg.matmul(self._D[k], self._D[k])
            ms = _possible_m(k)
            n = len(blades(fr, k))
            for m in ms:
                p = linalg.identity(n)
                for m2 in ms:
                    if m2 == m:
                        continue
                    shifted = [[d2[i][j] + (m2 * m2 if i == j else 0) for j in range(n)] for i in range(n)]
                    p = linalg.matmul(p, [[x / (m2 * m2 - m * m) for x in row] for row in shifted])
                self._proj[(k, m)] = p
        # Lefschetz L_k : Lambda^k -> Lambda^{k+2}
        self._L = {k: matrix_of(lambda a: wedge(omega, a), fr, k, k + 2) for k in range(0, 5)}
        self._Lpinv = {}
        for k in range(0, 3):
            lt = linalg.transpose(self._L[k])
            self._Lpinv[k] = linalg.matmul(linalg.inverse(linalg.matmul(lt, self._L[k])), lt)
        self.vol_coeff = exalg.top_coefficient(power(omega, 3))

    # J ---------------------------------------------------------------------

    def J(self, a: Form) -> Form:
        """Algebra action of J (e.g. J psi+ = psi-)."""
        return exalg.apply_linear(a, self.J1, derivation=False)

    def derivation(self, a: Form) -> Form:
        """Derivation action of J; eigenvalue i(p-q) on (p,q)-forms."""
        return exalg.apply_linear(a, self.J1, derivation=True)

    def J_squared_is_minus_one(self) -> bool:
        return all(self.J(self.J1[i]) == -Form.basis(self.frame, i) for i in self.frame)

    # types -----------------------------------------------------------------

    def real_type(self, a: Form, m: int) -> Form:
        """Real part of type |p - q| = m (e.g. m=0 on 4-forms gives [Lambda^{2,2}])."""
        key = (a.degree, m)
        if key not in self._proj:
            return Form.zero(self.frame, a.degree)
        return apply_matrix(self._proj[key], a, a.degree)

    def type_split(self, a: Form) -> Dict[Tuple[int, int], Tuple[Form, Form]]:
        """(p,q) -> (real, imaginary) parts of the complex (p,q)-component."""
        k = a.degree
        out = {}
        for m in _possible_m(k):
            pa = self.real_type(a, m)
            if m == 0:
                out[(k // 2, k // 2)] = (pa, Form.zero(self.frame, k))
                continue
            half = pa * Fraction(1, 2)
            im = apply_matrix(self._D[k], pa, k) * Fraction(1, 2 * m)
            p = (k + m) // 2
            out[(p, k - p)] = (half, -im)
            out[(k - p, p)] = (half, im)
        return out

    # Lefschetz -------------------------------------------------------------

    def lefschetz_preimage(self, a: Form) -> Form:
        """``b`` with ``omega ^ b`` the orthogonal projection of ``a`` onto omega ^ Lambda."""
        k = a.degree - 2
        if k < 0:
            raise exalg.DegreeError("no Lefschetz preimage below degree 2")
        if k > 2:
            raise exalg.DegreeError("Lefschetz preimage only defined up to degree 4")
        return apply_matrix(self._Lpinv[k], a, k)

    def primitive_decompose(self, a: Form) -> Tuple[Form, Optional[Form]]:
        """``a = a0 + omega ^ b`` with ``a0`` primitive; ``b`` is None below degree 2."""
        if a.degree > 4:
            raise exalg.DegreeError("primitive decomposition needs degree <= 4")
        if a.degree < 2:
            return a, None
        b = self.lefschetz_preimage(a)
        return a - wedge(self.omega, b), b

    def is_primitive(self, a: Form) -> bool:
        if a.degree < 2:
            return True
        return not contract(self.omega, a)

    def top(self, a: Form):
        """``a / omega^3`` for a 6-form."""
        return exalg.top_coefficient(a) * (1 / self.vol_coeff)


@lru_cache(maxsize=64)
def su3_algebra(omega: Form, psi_plus: Form, psi_minus: Form) -> SU3Algebra:
    return SU3Algebra(omega, psi_plus, psi_minus)


def check_triple(omega: Form, psi_plus: Form, psi_minus: Form) -> list:
    """Failed identities (empty list when the triple is a valid SU(3)-structure)."""
    bad = []
    if (omega.degree, psi_plus.degree, psi_minus.degree) != (2, 3, 3):
        return ["degrees must be (2, 3, 3)"]
    if wedge(omega, psi_plus):
        bad.append("omega ^ psi+ != 0")
    if wedge(omega, psi_minus):
        bad.append("omega ^ psi- != 0")
    w3 = power(omega, 3)
    if not w3:
        bad.append("omega^3 == 0")
    if wedge(psi_plus, psi_minus) != w3 * Fraction(2, 3):
        bad.append("psi+ ^ psi- != 2/3 omega^3")
    if bad:
        return bad
    alg = su3_algebra(omega, psi_plus, psi_minus)
    if not alg.J_squared_is_minus_one():
        bad.append("J^2 != -1 (omega not compatible with the metric)")
    elif alg.J(psi_plus) != psi_minus:
        bad.append("psi- != J psi+")
    return bad


class SU3Structure:
    """(omega, psi+, psi-) on a six-dimensional frame model.

    Forms are given in the model's unwarped frame.  If ``psi_minus`` is
    omitted it is recovered from ``psi_plus`` by the stable-form construction.
    """

    def __init__(self, model: FrameModel, omega: Form, psi_plus: Form, psi_minus: Form | None = None,
                 *, validate: bool = True, label: str = ""):
        if model.n != 6:
            raise ModelError("an SU(3)-structure needs a 6-dimensional model")
        self.model = model
        self.label = label
        self.space = model.generators
        self.omega = model.check_form(omega)
        self.psi_plus = model.check_form(psi_plus)
        o_pp = self._ortho(psi_plus)
        if psi_minus is None:
            from .stable import stable_data

            psi_minus = model.from_orthonormal(stable_data(o_pp).psi_minus.embed(model.frame))
        self.psi_minus = model.check_form(psi_minus)
        self.o_omega = self._ortho(omega)
        self.o_psi_plus = o_pp
        self.o_psi_minus = self._ortho(self.psi_minus)
        if validate:
            for name, f in (("omega", self.o_omega), ("psi+", self.o_psi_plus), ("psi-", self.o_psi_minus)):
                if not _is_rational(f):
                    raise SU3ValidationError(f"{name} must have constant coefficients in the orthonormal frame")
            bad = check_triple(self.o_omega, self.o_psi_plus, self.o_psi_minus)
            if bad:
                raise SU3ValidationError("; ".join(bad))

    def _ortho(self, a: Form) -> Form:
        try:
            return self.model.to_orthonormal(a).restrict(self.space)
        except exalg.DimensionError as exc:
            raise SU3ValidationError(f"SU(3) forms may not involve dt: {exc}") from None

    @property
    def algebra(self) -> SU3Algebra:
        return su3_algebra(self.o_omega, self.o_psi_plus, self.o_psi_minus)

    def d(self, a: Form) -> Form:
        """Exterior derivative on M (the dt part is dropped on models with a dt slot)."""
        return self.model.d(a, hat=self.model.dt_slot)

    def derivatives(self) -> Tuple[Form, Form, Form]:
        """Orthonormal-frame (d omega, d psi+, d psi-)."""
        return tuple(self._ortho(self.d(f)) for f in (self.omega, self.psi_plus, self.psi_minus))

    def fingerprint(self) -> str:
        parts = [repr(sorted((i, str(f)) for i, f in self.model.structure.items())),
                 repr(sorted((i, str(w)) for i, w in self.model.warps.items())), str(self.model.time),
                 str(self.omega), str(self.psi_plus), str(self.psi_minus)]
        return hashlib.sha256("|".join(parts).encode()).hexdigest()[:16]

    def with_forms(self, omega=None, psi_plus=None, psi_minus=None) -> "SU3Structure":
        return SU3Structure(self.model, omega if omega is not None else self.omega,
                            psi_plus if psi_plus is not None else self.psi_plus,
                            psi_minus if psi_minus is not None else self.psi_minus, label=self.label)

    def __repr__(self):
        return f"SU3Structure({self.label or self.model.name})"


def standard_structure(model: FrameModel, label: str = "") -> SU3Structure:
    """The (wpm) forms, declared in the orthonormal coframe of ``model``."""
    o = standard_forms(model.generators)
    return SU3Structure(model, *(model.from_orthonormal(f.embed(model.frame)) for f in o), label=label)


# torsion -----------------------------------------------------------------

@dataclass
class SU3TorsionReport:
    W1p: object
    W1m: object
    W2p: Form
    W2m: Form
    W3: Form
    W4: Form
    W5: Form
    rank_w12: int
    classes: Tuple[str, ...]
    half_flat: bool
    self_dual: bool
    anti_self_dual: bool
    d_omega: Form
    d_psi_plus: Form
    d_psi_minus: Form
    fingerprint: str = ""
    label: str = ""
    extra: Dict[str, object] = field(default_factory=dict)

    def component(self, name: str):
        return {"W1+": self.W1p, "W1-": self.W1m, "W2+": self.W2p, "W2-": self.W2m,
                "W3": self.W3, "W4": self.W4, "W5": self.W5}[name]

    def in_class(self, *names: str) -> bool:
        """True when every nonzero component lies among ``names``."""
        return set(self.classes) <= set(names)


def torsion_from_derivatives(alg: SU3Algebra, d_omega: Form, d_psi_plus: Form, d_psi_minus: Form,
                             *, fingerprint: str = "", label: str = "") -> SU3TorsionReport:
    """Intrinsic torsion components from pointwise values of d omega, d psi+-."""
    om, pp = alg.omega, alg.psi_plus
    W1p = alg.top(wedge(d_psi_plus, om))
    W1m = alg.top(wedge(d_psi_minus, om))
    b_plus = alg.lefschetz_preimage(alg.real_type(d_psi_plus, 0))
    b_minus = alg.lefschetz_preimage(alg.real_type(d_psi_minus, 0))
    W2p = b_plus - om * W1p
    W2m = b_minus - om * W1m
    W3, _ = alg.primitive_decompose(alg.real_type(d_omega, 1))
    W4 = contract(om, d_omega) * Fraction(1, 2)
    W5 = contract(pp, d_psi_plus) * Fraction(1, 2)
    basis2 = blades(alg.frame, 2)
    rows = [[W1p] + exalg.to_vector(W2p, basis2), [W1m] + exalg.to_vector(W2m, basis2)]
    rank = linalg.rank(rows)
    values = {"W1+": W1p, "W1-": W1m, "W2+": W2p, "W2-": W2m, "W3": W3, "W4": W4, "W5": W5}
    classes = tuple(n for n in CLASS_NAMES if (values[n] != 0 if not isinstance(values[n], Form) else bool(values[n])))
    half_flat = not d_psi_plus and not wedge(om, d_omega)
    return SU3TorsionReport(
        W1p=W1p, W1m=W1m, W2p=W2p, W2m=W2m, W3=W3, W4=W4, W5=W5, rank_w12=rank, classes=classes,
        half_flat=half_flat,
        self_dual=not alg.real_type(d_psi_minus, 0),
        anti_self_dual=not alg.real_type(d_psi_plus, 0),
        d_omega=d_omega, d_psi_plus=d_psi_plus, d_psi_minus=d_psi_minus,
        fingerprint=fingerprint, label=label,
    )


def torsion(s: SU3Structure) -> SU3TorsionReport:
    return torsion_from_derivatives(s.algebra, *s.derivatives(), fingerprint=s.fingerprint(), label=s.label)


def type_split(a: Form, s: SU3Structure):
    return s.algebra.type_split(s._ortho(a))


def primitive_decompose(a: Form, s: SU3Structure):
    return s.algebra.primitive_decompose(s._ortho(a))


# transformations ---------------------------------------------------------

def rotate_B(s: SU3Structure, a, b) -> SU3Structure:
    """psi+ -> a psi+ + b psi-, psi- -> -b psi+ + a psi-, for a^2 + b^2 = 1."""
    a, b = Fraction(a), Fraction(b)
    if a * a + b * b != 1:
        raise NormalizationError(f"a^2 + b^2 = {a * a + b * b}, expected 1")
    return s.with_forms(psi_plus=s.psi_plus * a + s.psi_minus * b,
                        psi_minus=s.psi_plus * (-b) + s.psi_minus * a)


def conformal_rescale(s: SU3Structure, k: int, time: Optional[int] = None) -> SU3Structure:
    """Rescale the metric by t^(2k), where t is a local function with dt a closed generator.

    The coframe ``e^i`` becomes ``t^k e^i`` (declared orthonormal); the forms
    scale by t^(2k) and t^(3k).  ``time`` picks the generator playing the role
    of dt (default: the model's existing time label, else the first closed one).
    """
    m = s.model
    if m.dt_slot:
        raise ModelError("conformal rescaling needs t to be a function on M, not the dt slot")
    if k == 0:
        return s
    if time is None:
        time = m.time
    if time is None:
        closed = [i for i in m.generators if i not in m.structure]
        if not closed:
            raise ModelError("no closed generator available to serve as dt")
        time = closed[0]
    f = ring.Laurent.monomial(k)
    warps = {i: m.warps.get(i, Fraction(1)) * f for i in m.generators}
    new_model = m.replace(time=time, warps=warps, name=f"{m.name}*t^{k}")
    f2, f3 = ring.Laurent.monomial(2 * k), ring.Laurent.monomial(3 * k)
    return SU3Structure(new_model, s.omega * f2, s.psi_plus * f3, s.psi_minus * f3, label=f"{s.label}*t^{k}")


# identities --------------------------------------------------------------

def swap_identity(alg: SU3Algebra, d_psi_plus: Form, d_psi_minus: Form) -> Tuple[Form, Form]:
    """(psi+ _| d psi-, J(psi+ _| d psi+)); the two agree for every SU(3)-structure."""
    return contract(alg.psi_plus, d_psi_minus), alg.J(contract(alg.psi_plus, d_psi_plus))


def derivation_identity(alg: SU3Algebra, d_psi_plus: Form, d_psi_minus: Form) -> Tuple[Form, Form]:
    """Real form of (d psi+)^(3,1) = i (d psi-)^(3,1).

    On the (3,1)+(1,3) part the derivation D acts as 2i on (3,1), so the
    complex identity reads [[d psi+]] = D [[d psi-]] / 2.
    """
    return alg.real_type(d_psi_plus, 2), alg.derivation(alg.real_type(d_psi_minus, 2)) * Fraction(1, 2)
