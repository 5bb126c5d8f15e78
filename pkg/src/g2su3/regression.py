"""The reference checks behind ``verify-paper``: twelve numbered criteria.

Each ``criterion_N`` returns a :class:`CriterionResult`.  Everything is exact
except the flow criterion, which compares floats against closed forms.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np

from . import catalog, exalg, flow, linalg
from .construct import build_circle_extension, build_product
from .correspond import random_derivatives, split_rho, standard_algebras
from .exalg import Form, blades, hodge, wedge
from .g2 import MODULES, standard_g2_forms, symbolic_verify_closed
from .g2 import torsion as g2_torsion
from .model import FrameModel
from .stable import half_flat_check, stable_data
from .su3 import (check_triple, conformal_rescale, derivation_identity, rotate_B, standard_forms,
                  standard_structure, swap_identity, torsion, torsion_from_derivatives)

FRAME6 = (1, 2, 3, 4, 5, 6)
FRAME7 = (1, 2, 3, 4, 5, 6, 7)


@dataclass
class CriterionResult:
    number: int
    title: str
    failures: List[str] = field(default_factory=list)
    info: Dict[str, object] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.failures[0]})" if self.failures else ""
        return f"[{status}] criterion {self.number:2d}: {self.title}{extra} [{self.elapsed:.2f}s]"


class _Collector:
    def __init__(self, result: CriterionResult):
        self.r = result

    def check(self, cond, label: str):
        if not cond:
            self.r.failures.append(label)


def _run(number: int, title: str, body: Callable[[_Collector], None]) -> CriterionResult:
    res = CriterionResult(number, title)
    t = time.perf_counter()
    try:
        body(_Collector(res))
    except Exception as exc:  # a crash is a failure of the criterion, reported by name
        res.failures.append(f"{type(exc).__name__}: {exc}")
    res.elapsed = time.perf_counter() - t
    return res


def f6(text: str) -> Form:
    from .structfile import parse_form
    return parse_form(text, FRAME6)


def f7(text: str) -> Form:
    from .structfile import parse_form
    return parse_form(text, FRAME7)


# 1 -------------------------------------------------------------------------

def criterion_1() -> CriterionResult:
    def body(c):
        om, pp, pm = standard_forms()
        c.check(om == f6("e12 + e34 + e56"), "omega differs from its standard form")
        c.check(pp == f6("e135 - e146 - e236 - e245"), "psi+ differs from its standard form")
        c.check(pm == f6("e136 + e145 + e235 - e246"), "psi- differs from its standard form")
        c.check(not check_triple(om, pp, pm), "compatibility relations fail")
        phi, starphi = standard_g2_forms()
        c.check(phi == f7("e127 + e347 + e567 + e135 - e146 - e236 - e245"), "phi differs from its standard form")
        c.check(starphi == f7("e1367 + e1457 + e2357 - e2467 + e3456 + e1256 + e1234"),
                "*phi differs from its standard form")
        c.check(hodge(phi) == starphi, "*phi != hodge(phi)")
        c.check(wedge(phi, starphi) == exalg.volume(FRAME7) * 7, "phi ^ *phi != 7 vol")
    return _run(1, "canonical identities", body)


# 2 -------------------------------------------------------------------------

def criterion_2() -> CriterionResult:
    def body(c):
        su, _ = standard_algebras()
        e1 = Form.basis(FRAME6, 1)
        rep = torsion_from_derivatives(su, wedge(su.omega, e1), wedge(su.psi_plus, e1), wedge(su.psi_minus, e1))
        c.check(rep.W4 == e1, f"W4 = {rep.W4}, expected e1")
        c.check(rep.W5 == e1, f"W5 = {rep.W5}, expected e1")
    return _run(2, "W4 = e1 = W5 for d omega = omega^e1, d psi+ = psi+^e1", body)


# 3 -------------------------------------------------------------------------

def criterion_3() -> CriterionResult:
    def body(c):
        e = catalog.get_example("nil-calibrated")
        rep = torsion(e.su3)
        c.check(rep.classes == ("W2-",), f"classes {rep.classes}, expected (W2-,)")
        g = build_product(e.su3)
        c.check(not g.model.d(g.phi), "product: d phi != 0")
        gs = build_product(e.su3, swap=True)
        c.check(not gs.model.d(gs.starphi), "swapped product: d *phi != 0")
        dphi, _ = gs.derivatives()
        parts = gs.algebra.irrep_project(dphi)
        c.check(bool(dphi), "swapped product: d phi vanishes")
        c.check(not parts["1"] and not parts["7"] and parts["27"] == dphi,
                "swapped product: d phi is not purely in the 27-part")
    return _run(3, "calibrated nilmanifold and its swapped product", body)


# 4 -------------------------------------------------------------------------

def criterion_4() -> CriterionResult:
    def body(c):
        _, g = standard_algebras()
        om, pp, pm, al = g.omega, g.psi_plus, g.psi_minus, g.alpha
        claims = [
            ("psi- in 7", pm, "7"),
            ("3 psi+ - 4 omega^alpha in 27", pp * 3 - wedge(om, al) * 4, "27"),
            ("psi+^alpha in 7", wedge(pp, al), "7"),
            ("3 psi-^alpha - 2 omega^2 in 27", wedge(pm, al) * 3 - exalg.power(om, 2) * 2, "27"),
            ("zeta in 7", f7("e1347 + e1567 - e1236 - e1245"), "7"),
            ("eta in 27", f7("e1347 + e1567 + e1236 + e1245"), "27"),
            ("xi in 7", f7("e13456 + e12357 - e12467"), "7"),
            ("theta in 14", f7("2*e13456 - e12357 + e12467"), "14"),
        ]
        for label, form, module in claims:
            parts = g.irrep_project(form)
            c.check(parts[module] == form and all(not v for k, v in parts.items() if k != module), label)
        e1 = Form.basis(FRAME7, 1)
        phi = g.phi
        c.check(f7("e1347 + e1567 - e1236 - e1245") == wedge(e1, phi), "zeta != e1 ^ phi")
        c.check(f7("e13456 + e12357 - e12467") == wedge(e1, g.starphi), "xi != e1 ^ *phi")
    return _run(4, "module membership of invariant and diagnostic forms", body)


# 5 -------------------------------------------------------------------------

def _unwarped_base(s) -> FrameModel:
    m = s.model
    return FrameModel(6, {i: f.restrict(m.generators) for i, f in m.structure.items()}, name=m.name)


def criterion_5() -> CriterionResult:
    def body(c):
        for e in catalog.six_dimensional():
            base = standard_structure(_unwarped_base(e.su3), e.name)
            r0 = torsion(base)
            before = base.model.from_orthonormal((r0.W4 * 3 + r0.W5 * 2).embed(base.model.frame))
            for k in (1, 2, 3):
                s = conformal_rescale(base, k)
                r = torsion(s)
                after = s.model.from_orthonormal((r.W4 * 3 + r.W5 * 2).embed(s.model.frame))
                c.check(after == before, f"{e.name}, k={k}: 3W4+2W5 changed")
        c.r.info["models"] = len(catalog.six_dimensional())
    return _run(5, "3W4 + 2W5 invariant under conformal rescaling", body)


# 6 -------------------------------------------------------------------------

def criterion_6() -> CriterionResult:
    def body(c):
        e = catalog.get_example("iwasawa-variant")
        s = e.su3
        ok, dphi, dstar = symbolic_verify_closed(e.g2["product"])
        c.check(not dphi, f"d phi = {dphi}")
        c.check(not dstar, f"d *phi = {dstar}")
        c.check(s.d(s.omega) == s.psi_plus * flow.ring.Laurent.monomial(-3), "dhat omega != t^-3 psi+")
        c.check(s.d(s.psi_minus) == e.model.e(1, 2, 3, 4, coeff=flow.ring.Laurent.monomial(1, -4)),
                "dhat psi- != -4t e1234")
    return _run(6, "warped Iwasawa-type example is torsion-free", body)


# 7 -------------------------------------------------------------------------

def criterion_7() -> CriterionResult:
    def body(c):
        e = catalog.get_example("nil2step")
        for label, ok, detail in e.checks():
            c.check(ok, f"{label}: {detail}")
    return _run(7, "2-step example: displayed phi and *phi are closed", body)


# 8 -------------------------------------------------------------------------

def criterion_8() -> CriterionResult:
    def body(c):
        e = catalog.get_example("nil3step")
        s = e.su3
        c.check(half_flat_check(s), "not half-flat")
        c.check(s.d(s.psi_minus) == e.model.e(1, 2, 5, 6, coeff=-1), f"d psi- = {s.d(s.psi_minus)}")
    return _run(8, "3-step example is half-flat with d psi- = -e1256", body)


# 9 -------------------------------------------------------------------------

FLOW_T0, FLOW_T1, FLOW_DT = 1, Fraction(6, 5), Fraction(1, 1000)


def criterion_9() -> CriterionResult:
    def body(c):
        s = catalog.get_example("iwasawa-variant").su3
        tensors = flow.FlowTensors(s.model)
        t = time.perf_counter()
        res = flow.flow_run(s, FLOW_T0, FLOW_T1, FLOW_DT, tensors=tensors, dtype=np.longdouble)
        err = res.compare(s)
        half = flow.flow_run(s, FLOW_T0, FLOW_T1, FLOW_DT / 2, tensors=tensors, dtype=np.longdouble)
        elapsed = time.perf_counter() - t
        ratio = res.terminal_error(s) / max(half.terminal_error(s), 1e-300)
        compat = max(max(r.max_residual("omega^psi+"), r.max_residual("psi+^psi- - 2/3 omega^3"))
                     for r in (res, half))
        c.r.info.update(max_error=err, terminal_error=res.terminal_error(s),
                        terminal_error_half=half.terminal_error(s), ratio=ratio, compat=compat, runtime=elapsed)
        c.check(err <= 1e-6, f"max error {err:.3e} > 1e-6")
        c.check(ratio >= 8, f"halving dt improved the terminal error by {ratio:.2f} < 8")
        c.check(compat <= 1e-8, f"compatibility residual {compat:.3e} > 1e-8")
        c.check(elapsed < 10, f"runtime {elapsed:.1f}s >= 10s")
    return _run(9, "flow reproduces the closed-form Iwasawa family", body)


# 10 ------------------------------------------------------------------------

def rho_grid() -> List[Form]:
    """20 constant curvature forms: zero, pure rho0, rho1, rho2 and mixtures."""
    om = f6("e12 + e34 + e56")
    r1 = [f6(x) for x in ("e12 - e34", "e34 - e56", "e13 + e24", "e14 - e23", "e15 + e26", "e36 - e45")]
    r2 = [f6(x) for x in ("e13 - e24", "e14 + e23", "e15 - e26", "e35 - e46")]
    grid = [Form.zero(FRAME6, 2), om, om * Fraction(-5, 2)] + r1 + r2
    grid += [om + r1[0], om * 2 - r1[2] * 3, r1[1] + r2[0], om + r2[1], om - r1[3] + r2[2] * Fraction(1, 2),
             r2[0] + r2[3] * 2, r1[4] * 3 + r1[5]]
    return grid


def criterion_10() -> CriterionResult:
    def body(c):
        s = catalog.get_example("torus6").su3
        grid = rho_grid()
        kinds = {"zero": 0, "rho0": 0, "rho1": 0, "rho2": 0, "mixed": 0}
        for n, rho in enumerate(grid):
            g = build_circle_extension(s, rho)
            rep = g2_torsion(g)
            sp = split_rho(s.algebra, rho)
            nz = [bool(sp.rho0), bool(sp.rho1), bool(sp.rho2)]
            kinds[["zero", "rho0", "rho1", "rho2"][nz.index(True) + 1] if sum(nz) == 1 else
                  ("zero" if not any(nz) else "mixed")] += 1
            c.check(rep.calibrated == (not rho), f"sample {n}: calibrated={rep.calibrated} for rho={rho}")
            c.check(rep.cocalibrated == (not sp.rho2), f"sample {n}: cocalibrated={rep.cocalibrated} for rho={rho}")
        c.r.info.update(samples=len(grid), **kinds)
        c.check(len(grid) == 20 and all(kinds[k] for k in kinds), f"grid composition {kinds}")
    return _run(10, "flat torus circle bundles: calibrated iff rho = 0, cocalibrated iff rho2 = 0", body)


# 11 ------------------------------------------------------------------------

def criterion_11() -> CriterionResult:
    def body(c):
        om, pp, pm = standard_forms()
        sd = stable_data(pp)
        c.check(sd.psi_minus == pm, "psi- not recovered exactly")
        c.check(sd.exact and sd.lam == -4, f"quartic invariant {sd.lam}")
        j2 = linalg.matmul(sd.J, sd.J)
        c.check(j2 == [[-1 if i == j else 0 for j in range(6)] for i in range(6)], "J^2 != -1")
        a, b = Fraction(3, 5), Fraction(4, 5)
        rot = stable_data(pp * a + pm * b).psi_minus
        c.check(rot == pp * (-b) + pm * a, "rotation property fails")
        s = rotate_B(standard_structure(FrameModel(6)), a, b)
        c.check(s.psi_minus == pp * (-b) + pm * a, "rotate_B disagrees")
        try:
            stable_data(Form.basis(FRAME6, 1, 2, 3))
            c.check(False, "e123 accepted as stable")
        except ValueError:
            pass
    return _run(11, "stable-form recovery of psi-", body)


# 12 ------------------------------------------------------------------------

def random_form(rng: random.Random, frame, k: int, bound: int = 3, density: float = 0.6) -> Form:
    return Form(frame, k, {b: Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
                           for b in blades(frame, k) if rng.random() < density})


EXPECTED_RANKS = {2: {"7": 7, "14": 14}, 3: {"1": 1, "7": 7, "27": 27}, 4: {"1": 1, "7": 7, "27": 27},
                  5: {"7": 7, "14": 14}}


def exalg_laws(rng: random.Random, cases: int = 100) -> List[str]:
    bad = []
    fr = FRAME7
    m = catalog.get_example("nil3step").model
    for n in range(cases):
        k, l, p = rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 2)
        a, b, c2 = random_form(rng, fr, k), random_form(rng, fr, l), random_form(rng, fr, p)
        b2 = random_form(rng, fr, l)
        if wedge(wedge(a, b), c2) != wedge(a, wedge(b, c2)):
            bad.append(f"associativity case {n}")
        if wedge(a, b) != wedge(b, a) * (-1) ** (k * l):
            bad.append(f"graded commutativity case {n}")
        if wedge(a, b + b2) != wedge(a, b) + wedge(a, b2):
            bad.append(f"distributivity case {n}")
        if hodge(hodge(a)) != a * (-1) ** (k * (7 - k)):
            bad.append(f"hodge involution case {n}")
        big = random_form(rng, fr, min(k + p, 7))
        if k + p <= 7 and exalg.inner(exalg.contract(a, big), c2) != exalg.inner(big, wedge(a, c2)):
            bad.append(f"contraction adjointness case {n}")
        x, y = random_form(rng, FRAME6, k), random_form(rng, FRAME6, l)
        if m.d(wedge(x, y)) != wedge(m.d(x), y) + wedge(x, m.d(y)) * (-1) ** k:
            bad.append(f"Leibniz rule case {n}")
        if m.d(m.d(x)):
            bad.append(f"d^2 = 0 case {n}")
    return bad


def projection_checks(rng: random.Random, per_degree: int = 200) -> List[str]:
    _, g = standard_algebras()
    bad = []
    for k, names in MODULES.items():
        for name in names:
            r = linalg.rank(g.projector(k, name))
            if r != EXPECTED_RANKS[k][name]:
                bad.append(f"rank of {name} in degree {k} is {r}")
        for n in range(per_degree):
            a = random_form(rng, g.frame, k)
            parts = g.irrep_project(a)
            total = Form.zero(g.frame, k)
            for v in parts.values():
                total = total + v
            if total != a:
                bad.append(f"completeness, degree {k} case {n}")
            vals = list(parts.values())
            for i in range(len(vals)):
                if g.irrep_project(vals[i])[names[i]] != vals[i]:
                    bad.append(f"idempotence, degree {k} case {n}")
                for j in range(i + 1, len(vals)):
                    if exalg.inner(vals[i], vals[j]) != 0:
                        bad.append(f"orthogonality, degree {k} case {n}")
    return bad


def identity_checks(rng: random.Random, samples: int = 20) -> List[str]:
    bad = []
    data = []
    for e in catalog.six_dimensional():
        s = e.su3
        _, dpp, dpm = s.derivatives()
        data.append((e.name, s.algebra, dpp, dpm))
    su, _ = standard_algebras()
    for n in range(samples):
        _, dpp, dpm = random_derivatives(su, rng)
        data.append((f"random sample {n}", su, dpp, dpm))
    for label, alg, dpp, dpm in data:
        for fn, name in ((swap_identity, "swap"), (derivation_identity, "derivation")):
            lhs, rhs = fn(alg, dpp, dpm)
            if lhs != rhs:
                bad.append(f"{name} identity on {label}")
    return bad


def criterion_12(seed: int = 12) -> CriterionResult:
    def body(c):
        rng = random.Random(seed)
        for label, bad in (("exalg laws", exalg_laws(rng)), ("projections", projection_checks(rng)),
                           ("identities", identity_checks(rng))):
            c.r.info[label] = len(bad)
            for b in bad:
                c.check(False, f"{label}: {b}")
    return _run(12, "algebra laws, projection completeness, swap and derivation identities", body)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


def run_all(only=None) -> List[CriterionResult]:
    return [fn() for n, fn in enumerate(CRITERIA, start=1) if only is None or n in only]
