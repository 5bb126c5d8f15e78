"""Exact comparison of six-dimensional torsion with the induced G2 torsion.

Each SU(3)-piece of the G2 torsion is a fixed linear combination of the
SU(3) torsion components and of the pieces of the curvature 2-form rho.  The
coefficients are found by exact least squares over random genuine torsion
samples and stored in a versioned JSON file inside the package.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional, Tuple

from . import exalg, linalg
from .exalg import Form, blades, wedge
from .g2 import G2Algebra, G2TorsionReport, g2_algebra, source_tag
from .g2 import torsion_from_derivatives as g2_torsion_from_derivatives
from .su3 import SU3Algebra, SU3TorsionReport, standard_forms, su3_algebra
from .su3 import torsion_from_derivatives as su3_torsion_from_derivatives

CONSTANTS_VERSION = 1
CONSTANTS_FILE = "correspondence_constants.json"

# which SU(3) data may enter each piece, keyed by kind of piece
VARIABLES = {
    "R": ("W1+", "W1-", "rho0"),
    "T": ("W4", "JW4", "W5", "JW5", "rho2", "Jrho2"),
    "su3": ("W2+", "W2-", "rho1"),
    "S20": ("W3", "JW3"),
    "vec": ("X4vec",),
}
PIECES = {
    "X1": "R", "dphi_1": "R", "X3.R": "R", "X4.R": "R",
    "X2.T": "T", "X3.T": "T", "X4.T": "T",
    "X2.su3": "su3", "X3.su3": "su3",
    "X3.S20": "S20",
    "dphi_7.vec": "vec", "dstarphi_7.vec": "vec",
}
# SU(3) quantities each G2 piece is allowed to depend on (variables -> component names)
TABLE = {
    "X1": {"W1+", "rho0"},
    "X2.su3": {"W2-"}, "X2.T": {"W4", "W5", "rho2"},
    "X3.R": {"W1+", "rho0"}, "X3.su3": {"W2+", "rho1"}, "X3.S20": {"W3"}, "X3.T": {"W4", "W5", "rho2"},
    "X4.R": {"W1-"}, "X4.T": {"W4", "W5", "rho2"},
}


class SampleNotGenericError(ArithmeticError):
    pass


class ProvenanceError(ValueError):
    pass


# rho ---------------------------------------------------------------------

@dataclass
class RhoSplit:
    rho0: Fraction
    rho1: Form
    rho2: Form
    rho: Form

    def is_zero(self) -> bool:
        return not self.rho


def split_rho(alg: SU3Algebra, rho: Optional[Form]) -> RhoSplit:
    """rho = rho0 omega + rho1 + rho2 with rho1 primitive (1,1) and rho2 of type (2,0)+(0,2)."""
    fr = alg.frame
    if rho is None:
        z = Form.zero(fr, 2)
        return RhoSplit(Fraction(0), z, z, z)
    rho = rho.restrict(fr) if rho.frame != fr else rho
    r0 = exalg.inner(rho, alg.omega) / 3
    r11 = alg.real_type(rho, 0)
    return RhoSplit(r0, r11 - alg.omega * r0, alg.real_type(rho, 2), rho)


def rho2_vector(alg: SU3Algebra, rho2: Form) -> Form:
    """The 1-form u with ``u _| psi- = rho2`` (equivalently ``-J v`` where ``v _| psi+ = rho2``)."""
    span = _psi_contractions(alg)
    c = linalg.matvec(span[1], exalg.to_vector(rho2, blades(alg.frame, 2)))
    return -alg.J(exalg.from_vector(alg.frame, 1, c, [(i,) for i in alg.frame]))


_PC: Dict[SU3Algebra, tuple] = {}


def _psi_contractions(alg: SU3Algebra):
    hit = _PC.get(alg)
    if hit is None:
        cols = [exalg.to_vector(exalg.contract(Form.basis(alg.frame, i), alg.psi_plus), blades(alg.frame, 2))
                for i in alg.frame]
        pinv = linalg.matmul(linalg.inverse(linalg.matmul(cols, linalg.transpose(cols))), cols)
        hit = _PC[alg] = (cols, pinv)
    return hit


# variables -------------------------------------------------------------------

def su3_variables(alg: SU3Algebra, ws: SU3TorsionReport, rs: RhoSplit) -> Dict[str, object]:
    """Values of every admissible variable on the six-dimensional frame."""
    r2 = rho2_vector(alg, rs.rho2)
    return {
        "W1+": ws.W1p, "W1-": ws.W1m, "rho0": rs.rho0,
        "W4": ws.W4, "JW4": alg.J(ws.W4), "W5": ws.W5, "JW5": alg.J(ws.W5),
        "rho2": r2, "Jrho2": alg.J(r2),
        "W2+": ws.W2p, "W2-": ws.W2m, "rho1": rs.rho1,
        "W3": ws.W3, "JW3": alg.derivation(ws.W3),
    }


def _coords(x, frame) -> list:
    """Scalar or form -> coordinate list (forms are taken on ``frame``)."""
    if isinstance(x, Form):
        if x.frame != frame:
            x = x.embed(frame) if set(x.frame) <= set(frame) else x.restrict(frame)
        return exalg.to_vector(x, blades(frame, x.degree))
    return [x]


# samples ---------------------------------------------------------------------

@dataclass
class Sample:
    su3: SU3TorsionReport
    g2: G2TorsionReport
    rho: RhoSplit
    variables: Dict[str, object] = field(default_factory=dict)


def standard_algebras(alpha_label: int = 7):
    frame7 = tuple(sorted(set(range(1, 7)) | {alpha_label}))
    om, pp, pm = standard_forms()
    return su3_algebra(om, pp, pm), g2_algebra(frame7, alpha_label, om.embed(frame7), pp.embed(frame7),
                                               pm.embed(frame7))


def random_so6(rng: random.Random, bound: int = 3) -> List[List[Fraction]]:
    a = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(i + 1, 6):
            v = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
            a[i][j], a[j][i] = v, -v
    return a


def random_derivatives(alg: SU3Algebra, rng: random.Random):
    """(d omega, d psi+, d psi-) of a random intrinsic torsion at a point.

    With the Levi-Civita connection written as nabla_i = (SU(3)-connection) +
    A_i, A_i in so(6), every parallel-for-SU(3) form satisfies
    d a = sum_i e^i ^ (A_i . a).  Only the su(3)-complement of each A_i
    contributes, so generic A_i give generic torsion.
    """
    fr = alg.frame
    outs = [Form.zero(fr, 3), Form.zero(fr, 4), Form.zero(fr, 4)]
    for pos, i in enumerate(fr):
        a = random_so6(rng)
        images = {k: exalg.from_vector(fr, 1, a[r], [(j,) for j in fr]) for r, k in enumerate(fr)}
        ei = Form.basis(fr, i)
        for n, f in enumerate((alg.omega, alg.psi_plus, alg.psi_minus)):
            outs[n] = outs[n] + wedge(ei, exalg.apply_linear(f, images, derivation=True))
    return tuple(outs)


def random_rho(fr, rng: random.Random, bound: int = 3) -> Form:
    return Form(fr, 2, {b: Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for b in blades(fr, 2)})


def g2_derivatives(g2: G2Algebra, d_omega: Form, d_psi_plus: Form, d_psi_minus: Form, rho: Optional[Form]):
    """Pointwise d phi, d *phi of the circle extension (rho = None: product)."""
    fr = g2.frame
    dom, dpp, dpm = (f.embed(fr) for f in (d_omega, d_psi_plus, d_psi_minus))
    r = rho.embed(fr) if rho is not None else Form.zero(fr, 2)
    a = g2.alpha
    dphi = wedge(dom, a) + dpp + wedge(g2.omega, r)
    dstar = wedge(dpm, a) + wedge(g2.omega, dom) - wedge(g2.psi_minus, r)
    return dphi, dstar


def make_sample(derivs, rho: Optional[Form] = None, algs=None) -> Sample:
    su, g2 = algs or standard_algebras()
    ws = su3_torsion_from_derivatives(su, *derivs, fingerprint=_data_fingerprint(derivs, rho))
    gs = g2_torsion_from_derivatives(g2, *g2_derivatives(g2, *derivs, rho), source=source_tag(ws.fingerprint, rho))
    rs = split_rho(su, rho)
    return Sample(ws, gs, rs, su3_variables(su, ws, rs))


def _data_fingerprint(derivs, rho) -> str:
    import hashlib

    return hashlib.sha256("|".join(str(f) for f in (*derivs, rho)).encode()).hexdigest()[:16]


def random_sample(rng: random.Random, with_rho: bool = True) -> Sample:
    su, g2 = standard_algebras()
    derivs = random_derivatives(su, rng)
    rho = random_rho(su.frame, rng) if with_rho else None
    return make_sample(derivs, rho, (su, g2))


# freezing ----------------------------------------------------------------------

def fit_piece(samples: List[Sample], piece: str) -> Dict[str, Fraction]:
    """Exact coefficients expressing a G2 piece through its admissible variables."""
    kind = PIECES[piece]
    names = VARIABLES[kind]
    rows: List[list] = []
    rhs: List[Fraction] = []
    for s in samples:
        target = s.g2.pieces[piece]
        if kind == "vec":
            values = [s.g2.X4vec]
        else:
            values = [s.variables[n] for n in names]
        fr = target.frame if isinstance(target, Form) else None
        cols = [_coords(v, fr) for v in values]
        tv = _coords(target, fr)
        for k in range(len(tv)):
            rows.append([c[k] for c in cols])
            rhs.append(tv[k])
    if linalg.rank(rows) < len(names):
        raise SampleNotGenericError(f"variables for {piece} are not independent on this sample")
    x, resid = linalg.least_squares(rows, rhs)
    if any(r != 0 for r in resid):
        raise SampleNotGenericError(f"{piece} is not a combination of {names}")
    return {n: c for n, c in zip(names, x)}


def proportionality_freeze(seed: int = 2001, n_samples: int = 3) -> dict:
    """Compute the constants table from random samples (product and circle cases together)."""
    rng = random.Random(seed)
    samples = [random_sample(rng, with_rho=True) for _ in range(n_samples)]
    table = {piece: {k: str(v) for k, v in fit_piece(samples, piece).items()} for piece in PIECES}
    return {"version": CONSTANTS_VERSION, "seed": seed, "samples": n_samples, "pieces": table}


def dump_constants(table: dict) -> str:
    return json.dumps(table, indent=2, sort_keys=True) + "\n"


def load_constants() -> dict:
    text = resources.files("g2su3").joinpath("data", CONSTANTS_FILE).read_text()
    data = json.loads(text)
    if data.get("version") != CONSTANTS_VERSION:
        raise ValueError(f"constants file version {data.get('version')} != {CONSTANTS_VERSION}")
    return data


def constants() -> Dict[str, Dict[str, Fraction]]:
    return {p: {k: Fraction(v) for k, v in c.items()} for p, c in load_constants()["pieces"].items()}


def dependencies(consts=None) -> Dict[str, set]:
    """Component names each G2 piece actually depends on, after merging J-partners."""
    consts = consts or constants()
    out = {}
    for piece, cs in consts.items():
        deps = set()
        for name, c in cs.items():
            if c != 0:
                deps.add(name[1:] if name.startswith("J") else name)
        out[piece] = deps
    return out


def table_mismatches(consts=None) -> List[str]:
    """Pieces whose dependencies differ from the correspondence table."""
    deps = dependencies(consts)
    return [f"{p}: expected {sorted(TABLE[p])}, frozen {sorted(deps[p])}" for p in TABLE if deps[p] != TABLE[p]]


# verification ------------------------------------------------------------------

def predict(piece: str, variables: Dict[str, object], consts) -> object:
    out = None
    for name, c in consts[piece].items():
        if c == 0:
            continue
        term = variables[name] * c
        out = term if out is None else out + term
    return out


@dataclass
class CorrespondenceReport:
    checks: List[Tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.checks)

    def first_failure(self) -> Optional[str]:
        for name, p, detail in self.checks:
            if not p:
                return f"{name}: {detail}" if detail else name
        return None


def _is_zero(x) -> bool:
    return (not x) if isinstance(x, Form) else x == 0


def verify_correspondence(ws: SU3TorsionReport, rho: RhoSplit, gs: G2TorsionReport, *, su: SU3Algebra = None,
                          consts=None) -> CorrespondenceReport:
    """Check the G2 torsion against the SU(3) torsion and the pieces of rho."""
    if gs.source != source_tag(ws.fingerprint, rho.rho):
        raise ProvenanceError("G2 report was not built from this SU(3) structure")
    consts = consts or constants()
    su = su or standard_algebras()[0]
    fr = su.frame
    if ws.d_omega.frame != fr:
        raise ProvenanceError("report frame differs from the algebra frame")
    variables = su3_variables(su, ws, rho)
    variables["X4vec"] = gs.X4vec
    checks: List[Tuple[str, bool, str]] = []
    for piece in PIECES:
        expected = predict(piece, variables, consts)
        actual = gs.pieces[piece]
        if expected is None:
            ok = _is_zero(actual)
        elif isinstance(actual, Form):
            ok = actual == _reframe(expected, actual.frame)
        else:
            ok = actual == expected
        checks.append((f"piece {piece}", ok, "" if ok else f"got {actual}, predicted {expected}"))
    for piece in TABLE:
        if all(_is_zero(variables[n]) for n, c in consts[piece].items() if c != 0):
            ok = _is_zero(gs.pieces[piece])
            checks.append((f"vanishing {piece}", ok, ""))
    # direct consequences of the structure equations
    if gs.calibrated:
        ok = not ws.d_omega and (ws.d_psi_plus + wedge(su.omega, rho.rho.restrict(fr) if rho.rho.frame != fr
                                                        else rho.rho)).is_zero()
        checks.append(("calibrated implies d omega = 0 and d psi+ = -omega ^ rho", ok, ""))
    if gs.cocalibrated:
        checks.append(("cocalibrated implies d psi- = 0", not ws.d_psi_minus, ""))
    if gs.torsion_free:
        ok = ws.in_class("W2+") and not rho.rho2 and rho.rho0 == 0
        checks.append(("torsion-free implies tau1 in W2+ and rho = rho1", ok, ""))
    if rho.is_zero():
        checks.append(("product: calibrated iff tau1 in W2-", gs.calibrated == ws.in_class("W2-"), ""))
        checks.append(("product: cocalibrated iff tau1 in W1+ + W2+ + W3",
                       gs.cocalibrated == ws.in_class("W1+", "W2+", "W3"), ""))
    if not ws.classes:
        checks.append(("flat base: calibrated iff rho = 0", gs.calibrated == rho.is_zero(), ""))
        checks.append(("flat base: cocalibrated iff rho2 = 0", gs.cocalibrated == (not rho.rho2), ""))
    return CorrespondenceReport(checks)


def _reframe(x: Form, frame) -> Form:
    if x.frame == frame:
        return x
    return x.embed(frame) if set(x.frame) <= set(frame) else x.restrict(frame)


def main(argv=None):
    """Regenerate the constants file: ``python -m g2su3.correspond out.json``."""
    import argparse

    ap = argparse.ArgumentParser(description="recompute correspondence constants")
    ap.add_argument("out", nargs="?", help="output path (default: stdout)")
    ap.add_argument("--seed", type=int, default=2001)
    ap.add_argument("--samples", type=int, default=3)
    args = ap.parse_args(argv)
    text = dump_constants(proportionality_freeze(args.seed, args.samples))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")


if __name__ == "__main__":
    main()
