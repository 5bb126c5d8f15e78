"""Graded exterior algebra over an orthonormal coframe.

A coframe is a sorted tuple of integer labels.  Label ``0`` is reserved for the
``dt`` slot of warped models so that it always sorts first; labels ``1..7``
are the ``e^i``.  Basis k-forms are strictly increasing label tuples.
Coefficients are any exact scalar from :mod:`g2su3.ring` (floats also work,
which the numeric flow relies on for a few helpers).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from . import ring

Blade = Tuple[int, ...]
Frame = Tuple[int, ...]


class DimensionError(ValueError):
    """Forms on different coframes were combined."""


class DegreeError(ValueError):
    """An operation received a form of unsupported degree."""


# blade combinatorics ------------------------------------------------------

def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if it has repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def blade_product(a: Blade, b: Blade) -> Tuple[int, Blade]:
    """``e^a ^ e^b = sign * e^c``; sign 0 when the blades share an index."""
    if set(a) & set(b):
        return 0, ()
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(a + b))


@lru_cache(maxsize=None)
def blade_contract(a: Blade, b: Blade) -> Tuple[int, Blade]:
    """``e^a _| e^b``: the sign ``s`` with ``e^b = s * e^a ^ e^c``, and ``c``."""
    if not set(a) <= set(b):
        return 0, ()
    rest = tuple(i for i in b if i not in a)
    sign, _ = blade_product(a, rest)
    return sign, rest


@lru_cache(maxsize=None)
def blades(frame: Frame, k: int) -> Tuple[Blade, ...]:
    return tuple(combinations(frame, k))


def blade_name(b: Blade) -> str:
    return "e" + "".join(str(i) for i in b) if b else "1"


# forms -------------------------------------------------------------------

def _norm_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class Form:
    """Homogeneous exterior form with canonical (sorted, zero-free) storage."""

    __slots__ = ("frame", "degree", "_terms", "_hash")

    def __init__(self, frame: Iterable[int], degree: int, terms: Mapping[Blade, object] | None = None):
        self.frame: Frame = tuple(sorted(frame))
        self.degree = int(degree)
        fs = set(self.frame)
        out: Dict[Blade, object] = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            sign = permutation_sign(key)
            if sign == 0:
                continue
            if len(key) != self.degree or not set(key) <= fs:
                raise DimensionError(f"blade {key} does not fit degree {self.degree} on frame {self.frame}")
            k = tuple(sorted(key))
            c = _norm_coeff(c)
            out[k] = out.get(k, 0) + (c if sign > 0 else -c)
        self._terms = {k: v for k, v in sorted(out.items()) if v != 0}
        self._hash = None

    # constructors ----------------------------------------------------------

    @classmethod
    def _raw(cls, frame: Frame, degree: int, terms: Dict[Blade, object]) -> "Form":
        obj = cls.__new__(cls)
        obj.frame = frame
        obj.degree = degree
        obj._terms = {k: terms[k] for k in sorted(terms) if terms[k] != 0}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, frame: Iterable[int], degree: int) -> "Form":
        return cls(frame, degree)

    @classmethod
    def scalar(cls, frame: Iterable[int], c=1) -> "Form":
        return cls(frame, 0, {(): c})

    @classmethod
    def basis(cls, frame: Iterable[int], *indices: int, coeff=1) -> "Form":
        return cls(frame, len(indices), {tuple(indices): coeff})

    # access ----------------------------------------------------------------

    @property
    def terms(self) -> Dict[Blade, object]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Blade, object]]:
        return iter(self._terms.items())

    def coeff(self, blade: Sequence[int]):
        key = tuple(blade)
        sign = permutation_sign(key)
        if sign == 0:
            return Fraction(0)
        c = self._terms.get(tuple(sorted(key)), Fraction(0))
        return c if sign > 0 else -c

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # linear structure ------------------------------------------------------

    def _check(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.frame != self.frame:
            raise DimensionError(f"frames differ: {self.frame} vs {other.frame}")

    def __add__(self, other: "Form") -> "Form":
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        if other.degree != self.degree:
            if not other:
                return self
            if not self:
                return other
            raise DegreeError(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return Form._raw(self.frame, self.degree, out)

    __radd__ = __add__

    def __neg__(self) -> "Form":
        return Form._raw(self.frame, self.degree, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, c) -> "Form":
        if isinstance(c, Form):
            return NotImplemented
        c = _norm_coeff(c)
        return Form._raw(self.frame, self.degree, {k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Form":
        inv = ring.inverse(c) if isinstance(c, ring.Laurent) else 1 / _norm_coeff(c)
        return self * inv

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def map_coeffs(self, f: Callable) -> "Form":
        return Form._raw(self.frame, self.degree, {k: f(v) for k, v in self._terms.items()})

    # comparison ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.frame != other.frame:
            return False
        if not self._terms and not other._terms:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.frame, self.degree if self._terms else -1, tuple(self._terms.items())))
        return self._hash

    # frames ----------------------------------------------------------------

    def embed(self, frame: Iterable[int]) -> "Form":
        frame = tuple(sorted(frame))
        if not set(self.frame) <= set(frame):
            raise DimensionError(f"cannot embed {self.frame} into {frame}")
        return Form._raw(frame, self.degree, dict(self._terms))

    def restrict(self, frame: Iterable[int]) -> "Form":
        """Same form on a smaller coframe; all blades must lie in it."""
        frame = tuple(sorted(frame))
        fs = set(frame)
        for k in self._terms:
            if not set(k) <= fs:
                raise DimensionError(f"term {blade_name(k)} lies outside frame {frame}")
        return Form._raw(frame, self.degree, dict(self._terms))

    def __repr__(self):
        return f"Form({format_form(self)})"

    def __str__(self):
        return format_form(self)


def format_form(a: Form) -> str:
    if not a._terms:
        return "0"
    out = []
    for k, c in a._terms.items():
        name = blade_name(k)
        coeffs = ring.coeffs(c) if not isinstance(c, float) else None
        if coeffs is not None and len(coeffs) == 1 and 0 in coeffs:
            q = coeffs[0]
            if q == 1:
                s = ("+", name)
            elif q == -1:
                s = ("-", name)
            else:
                s = ("-" if q < 0 else "+", f"{abs(q)}*{name}")
        else:
            s = ("+", f"({c})*{name}")
        out.append(s)
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sgn, body in out[1:]:
        text += f" {sgn} {body}"
    return text


# products ------------------------------------------------------------------

def wedge(a: Form, b: Form) -> Form:
    """Exterior product; zero when the degree exceeds the coframe size."""
    a._check(b)
    deg = a.degree + b.degree
    out: Dict[Blade, object] = {}
    for ka, va in a._terms.items():
        for kb, vb in b._terms.items():
            sign, kc = blade_product(ka, kb)
            if sign == 0:
                continue
            p = va * vb
            out[kc] = out.get(kc, 0) + (p if sign > 0 else -p)
    return Form._raw(a.frame, deg, out)


def wedge_all(*forms: Form) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def power(a: Form, n: int) -> Form:
    out = Form.scalar(a.frame, 1)
    for _ in range(n):
        out = wedge(out, a)
    return out


def contract(a: Form, b: Form) -> Form:
    """Metric contraction ``a _| b`` (adjoint of ``a ^ .``), e.g. e12 _| e12345 = e345."""
    a._check(b)
    if a.degree > b.degree:
        raise DegreeError(f"cannot contract degree {a.degree} into degree {b.degree}")
    out: Dict[Blade, object] = {}
    for ka, va in a._terms.items():
        for kb, vb in b._terms.items():
            sign, kc = blade_contract(ka, kb)
            if sign == 0:
                continue
            p = va * vb
            out[kc] = out.get(kc, 0) + (p if sign > 0 else -p)
    return Form._raw(a.frame, b.degree - a.degree, out)


def inner(a: Form, b: Form):
    """Pointwise inner product with orthonormal blades."""
    a._check(b)
    if a.degree != b.degree and a and b:
        return Fraction(0)
    total = Fraction(0)
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    for k, v in small._terms.items():
        w = big._terms.get(k)
        if w is not None:
            total = total + v * w
    return total


def norm2(a: Form):
    return inner(a, a)


def volume(frame: Iterable[int], orientation: Sequence[int] | None = None) -> Form:
    frame = tuple(sorted(frame))
    if orientation is None:
        return Form.basis(frame, *frame)
    if sorted(orientation) != list(frame):
        raise DimensionError(f"orientation {tuple(orientation)} is not a full blade of {frame}")
    return Form(frame, len(frame), {tuple(orientation): 1})


def hodge(a: Form, orientation: Sequence[int] | None = None) -> Form:
    """Hodge star for the orthonormal metric: ``b ^ *a = <b, a> vol``."""
    vol = volume(a.frame, orientation)
    (full, vsign), = vol.items()
    out: Dict[Blade, object] = {}
    for k, v in a._terms.items():
        rest = tuple(i for i in full if i not in k)
        sign, _ = blade_product(k, rest)
        s = sign * vsign
        out[rest] = v if s > 0 else -v
    return Form._raw(a.frame, len(full) - a.degree, out)


def top_coefficient(a: Form, orientation: Sequence[int] | None = None):
    """Coefficient ``c`` with ``a = c * vol`` for a top-degree form."""
    vol = volume(a.frame, orientation)
    if a.degree != len(a.frame):
        raise DegreeError("top_coefficient needs a top-degree form")
    (full, vsign), = vol.items()
    c = a._terms.get(full, Fraction(0))
    return c if vsign > 0 else -c


def apply_linear(a: Form, images: Mapping[int, Form], derivation: bool = False) -> Form:
    """Extend a map on 1-forms (``e^i -> images[i]``) to ``a``.

    ``derivation=False`` extends it as an algebra map (pullback-style action);
    ``derivation=True`` extends it as a derivation (Lie-algebra action).
    Labels absent from ``images`` map to themselves (resp. to zero).
    """
    frame = a.frame

    def img(i: int) -> Form:
        if i in images:
            return images[i]
        return Form.basis(frame, i) if not derivation else Form.zero(frame, 1)

    out = Form.zero(frame, a.degree)
    for k, v in a._terms.items():
        if derivation:
            for pos in range(len(k)):
                pieces = [Form.basis(frame, i) if j != pos else img(i) for j, i in enumerate(k)]
                out = out + wedge_all(Form.scalar(frame, v), *pieces)
        else:
            out = out + wedge_all(Form.scalar(frame, v), *[img(i) for i in k])
    return out


# coordinates ----------------------------------------------------------------

def to_vector(a: Form, basis: Sequence[Blade]) -> list:
    return [a._terms.get(b, Fraction(0)) for b in basis]


def from_vector(frame: Iterable[int], degree: int, vec: Sequence, basis: Sequence[Blade]) -> Form:
    frame = tuple(sorted(frame))
    return Form._raw(frame, degree, {b: _norm_coeff(v) for b, v in zip(basis, vec)})


def parse_blade(name: str) -> Tuple[int, Blade]:
    """``"e42"`` -> ``(-1, (2, 4))``; digit 0 stands for ``dt``."""
    if not name.startswith("e") or not name[1:].isdigit():
        raise ValueError(f"bad blade name {name!r}")
    idx = tuple(int(ch) for ch in name[1:])
    sign = permutation_sign(idx)
    if sign == 0:
        raise ValueError(f"repeated index in blade {name!r}")
    return sign, tuple(sorted(idx))


def matrix_of(f: Callable[[Form], Form], frame: Frame, k_in: int, k_out: int) -> list:
    """Matrix (rows: output blades, columns: input blades) of a linear map."""
    frame = tuple(sorted(frame))
    src, dst = blades(frame, k_in), blades(frame, k_out)
    cols = [to_vector(f(Form._raw(frame, k_in, {b: Fraction(1)})), dst) for b in src]
    return [list(row) for row in zip(*cols)] if cols else [[] for _ in dst]


def apply_matrix(m: Sequence[Sequence], a: Form, k_out: int) -> Form:
    from .linalg import matvec

    vec = to_vector(a, blades(a.frame, a.degree))
    return from_vector(a.frame, k_out, matvec(m, vec), blades(a.frame, k_out))
