"""Line-oriented structure files.

Example::

    # Iwasawa-type algebra with a conical warping
    dim 6
    param t
    d e5 = -e14 - e23
    d e6 = -e13 - e42
    warp e1 = t
    warp dt = t^2
    omega = t^2*e12 + t^2*e34 + t^-2*e56
    psi+ = t*e135 - t*e146 - t*e236 - t*e245

Blades are written ``e<digits>``; the digit 0 stands for ``dt`` and ``dt``
itself is accepted as a 1-form.  Coefficients are products of rationals and
powers of ``t``.  Other keys: ``time e<i>`` (a closed generator equal to dt),
``psi- = ...``, ``alpha = e7``, ``rho = ...`` and ``name <text>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import exalg, ring
from .exalg import Form
from .model import FrameModel, JacobiError, ModelError


class StructFileError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {message}")


@dataclass
class StructFile:
    model: FrameModel
    forms: Dict[str, Form] = field(default_factory=dict)
    alpha: Optional[int] = None
    name: str = ""

    @property
    def omega(self):
        return self.forms.get("omega")

    @property
    def psi_plus(self):
        return self.forms.get("psi+")

    @property
    def psi_minus(self):
        return self.forms.get("psi-")

    @property
    def rho(self):
        return self.forms.get("rho")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<t>t(?:\^(?P<exp>-?\d+))?(?![A-Za-z0-9]))"
                    r"|(?P<blade>e\d+|dt)(?![A-Za-z0-9])|(?P<op>[-+*]))")
FORM_KEYS = ("omega", "psi+", "psi-", "rho")


def _tokens(text: str, line: int, col0: int):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise StructFileError(f"unexpected {text[pos:].strip()[:10]!r}", line, col0 + pos + skip + 1)
        kind = next(k for k in ("num", "t", "blade", "op") if m.group(k) is not None)
        out.append((kind, m.group(kind), m.group("exp"), col0 + m.start(kind) + 1))
        pos = m.end()
    return out


def _parse_sum(text: str, line: int, col0: int, *, with_blades: bool, uses_t: bool):
    """List of (coefficient, blade-or-None) terms."""
    toks = _tokens(text, line, col0)
    if not toks:
        raise StructFileError("empty expression", line, col0 + 1)
    terms = []
    i = 0
    first = True
    while i < len(toks):
        sign = 1
        if toks[i][0] == "op" and toks[i][1] in "+-":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise StructFileError("expected + or -", line, toks[i][3])
        first = False
        coeff: object = Fraction(sign)
        blade = None
        expect_factor = True
        while i < len(toks):
            kind, val, exp, col = toks[i]
            if expect_factor:
                if kind == "num":
                    coeff = coeff * Fraction(val)
                elif kind == "t":
                    if not uses_t:
                        raise StructFileError("t used without 'param t'", line, col)
                    coeff = coeff * ring.Laurent.monomial(int(exp) if exp else 1)
                elif kind == "blade":
                    if blade is not None:
                        raise StructFileError("one blade per term", line, col)
                    if not with_blades:
                        raise StructFileError("blade not allowed here", line, col)
                    blade = (0,) if val == "dt" else _blade(val, line, col)
                    if val != "dt":
                        s, b = blade
                        coeff, blade = coeff * s, b
                else:
                    raise StructFileError(f"unexpected {val!r}", line, col)
                expect_factor = False
                i += 1
            elif kind == "op" and val == "*":
                expect_factor = True
                i += 1
            else:
                break
        if expect_factor:
            raise StructFileError("incomplete term", line, toks[min(i, len(toks) - 1)][3])
        if with_blades and blade is None:
            if coeff == 0:
                continue
            raise StructFileError("term without a blade", line, toks[i - 1][3])
        terms.append((coeff, blade))
    return terms


def _blade(name: str, line: int, col: int):
    try:
        return exalg.parse_blade(name)
    except ValueError as exc:
        raise StructFileError(str(exc), line, col) from None


def parse(text: str) -> StructFile:
    dim: Optional[int] = None
    uses_t = False
    structure_terms: Dict[int, list] = {}
    warps: Dict[int, object] = {}
    forms_terms: Dict[str, list] = {}
    alpha = None
    time = None
    name = ""
    lines: Dict[str, int] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        if body.startswith("dim"):
            m = re.fullmatch(r"dim\s+(\d+)", body)
            if not m:
                raise StructFileError("expected 'dim <n>'", ln, indent + 1)
            if dim is not None:
                raise StructFileError("duplicate dim", ln, indent + 1)
            dim = int(m.group(1))
            if dim not in (6, 7):
                raise StructFileError("dim must be 6 or 7", ln, indent + 5)
            continue
        if body == "param t":
            uses_t = True
            continue
        if body.startswith("name"):
            name = body[4:].strip()
            continue
        if dim is None:
            raise StructFileError("'dim <n>' must come first", ln, indent + 1)
        m = re.fullmatch(r"time\s+e(\d)", body)
        if m:
            time = int(m.group(1))
            continue
        if "=" not in body:
            raise StructFileError("expected '='", ln, indent + 1)
        lhs, rhs = body.split("=", 1)
        rcol = indent + len(lhs) + 1
        key = lhs.strip()
        m = re.fullmatch(r"d\s+e(\d)", key)
        if m:
            i = int(m.group(1))
            if not 1 <= i <= dim:
                raise StructFileError(f"no generator e{i}", ln, indent + 1)
            if i in structure_terms:
                raise StructFileError(f"duplicate d e{i}", ln, indent + 1)
            structure_terms[i] = (_parse_sum(rhs, ln, rcol, with_blades=True, uses_t=uses_t), ln)
            continue
        m = re.fullmatch(r"warp\s+(e(\d)|dt)", key)
        if m:
            label = 0 if m.group(1) == "dt" else int(m.group(2))
            terms = _parse_sum(rhs, ln, rcol, with_blades=False, uses_t=uses_t)
            value = sum((c for c, _ in terms), Fraction(0))
            if not ring.is_monomial(value):
                raise StructFileError("warp must be a single monomial", ln, rcol + 1)
            warps[label] = value
            continue
        if key == "alpha":
            m2 = re.fullmatch(r"\s*e(\d)\s*", rhs)
            if not m2:
                raise StructFileError("alpha must be a single generator", ln, rcol + 1)
            alpha = int(m2.group(1))
            continue
        if key in FORM_KEYS:
            forms_terms[key] = _parse_sum(rhs, ln, rcol, with_blades=True, uses_t=uses_t)
            lines[key] = ln
            continue
        raise StructFileError(f"unknown key {key!r}", ln, indent + 1)
    if dim is None:
        raise StructFileError("missing 'dim <n>'", 1, 1)
    dt_slot = 0 in warps or any(b and 0 in b for ts in forms_terms.values() for _, b in ts)
    frame = ((0,) if dt_slot else ()) + tuple(range(1, dim + 1))
    structure = {}
    for i, (terms, ln) in structure_terms.items():
        structure[i] = _assemble(frame, 2, terms, ln)
    try:
        model = FrameModel(dim, structure, dt_slot=dt_slot, time=time, warps=warps, name=name)
    except JacobiError:
        raise
    except ModelError as exc:
        raise StructFileError(str(exc), 1, 1) from None
    forms = {k: _assemble(frame, None, ts, lines[k]) for k, ts in forms_terms.items()}
    return StructFile(model, forms, alpha, name)


def _assemble(frame, degree, terms, ln) -> Form:
    if not terms:
        return Form.zero(frame, degree or 0)
    degs = {len(b) for _, b in terms}
    if len(degs) != 1:
        raise StructFileError("mixed degrees in one form", ln, 1)
    deg = degs.pop()
    if degree is not None and deg != degree:
        raise StructFileError(f"expected a {degree}-form", ln, 1)
    out: Dict[tuple, object] = {}
    for c, b in terms:
        if not set(b) <= set(frame):
            raise StructFileError(f"blade {exalg.blade_name(b)} outside the frame", ln, 1)
        out[b] = out.get(b, 0) + c
    return Form(frame, deg, out)


def load(path: str) -> StructFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# writing ---------------------------------------------------------------------

def _coeff_text(q: Fraction, k: int) -> str:
    parts = []
    if q != 1:
        parts.append(str(q))
    if k == 1:
        parts.append("t")
    elif k != 0:
        parts.append(f"t^{k}")
    return "*".join(parts)


def format_sum(a: Form) -> str:
    pieces: List[Tuple[int, str]] = []
    for b, c in a.items():
        for k, q in sorted(ring.coeffs(c).items()):
            sign = -1 if q < 0 else 1
            ct = _coeff_text(abs(q), k)
            bt = "e" + "".join(str(i) for i in b)
            pieces.append((sign, f"{ct}*{bt}" if ct else bt))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] < 0 else "") + pieces[0][1]
    for s, p in pieces[1:]:
        out += (" - " if s < 0 else " + ") + p
    return out


def dumps(model: FrameModel, forms: Dict[str, Form] | None = None, alpha: int | None = None,
          name: str | None = None) -> str:
    forms = forms or {}
    uses_t = bool(model.warps) or any(not ring.is_constant(c) for f in forms.values() for _, c in f.items())
    lines = []
    nm = name if name is not None else model.name
    if nm:
        lines.append(f"name {nm}")
    lines.append(f"dim {model.n}")
    if uses_t:
        lines.append("param t")
    if model.time is not None and not model.dt_slot:
        lines.append(f"time e{model.time}")
    for i in sorted(model.structure):
        lines.append(f"d e{i} = {format_sum(model.structure[i])}")
    if model.dt_slot and 0 not in model.warps:
        lines.append("warp dt = 1")
    for i in sorted(model.warps):
        label = "dt" if i == 0 else f"e{i}"
        (k, q), = ring.coeffs(model.warps[i]).items()
        lines.append(f"warp {label} = {_coeff_text(q, k) or '1'}")
    for key in FORM_KEYS:
        if key in forms and forms[key] is not None:
            lines.append(f"{key} = {format_sum(forms[key])}")
    if alpha is not None:
        lines.append(f"alpha = e{alpha}")
    return "\n".join(lines) + "\n"


def parse_form(text: str, frame, *, degree: int | None = None) -> Form:
    """A single form written in the right-hand-side syntax, e.g. ``2*t^3*e12 - e340``."""
    return _assemble(tuple(frame), degree, _parse_sum(text, 1, 0, with_blades=True, uses_t=True), 1)
