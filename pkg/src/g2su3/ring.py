"""Exact scalars: rationals and Laurent polynomials in a single parameter ``t``.

Constants are always represented by :class:`fractions.Fraction`; a
:class:`Laurent` instance is never constant, so equality between the two
kinds is unambiguous and hashing stays consistent.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Mapping, Union

Scalar = Union[Fraction, "Laurent"]


class RingError(ArithmeticError):
    """Operation outside the exact ring contract (e.g. non-monomial division)."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Laurent:
    """Finite sum ``sum q_k t**k`` with rational ``q_k`` and integer ``k``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object]):
        c = {}
        for k, v in coeffs.items():
            v = _frac(v)
            if v:
                c[int(k)] = v
        self._c: Dict[int, Fraction] = dict(sorted(c.items()))
        self._hash = None

    # construction -------------------------------------------------------

    @staticmethod
    def make(coeffs: Mapping[int, object]) -> Scalar:
        """Canonical element: a Fraction when constant, else a Laurent."""
        obj = Laurent(coeffs)
        if not obj._c:
            return Fraction(0)
        if len(obj._c) == 1 and 0 in obj._c:
            return obj._c[0]
        return obj

    @staticmethod
    def monomial(k: int, q=1) -> Scalar:
        return Laurent.make({k: q})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        oc = _coeffs_of(other)
        if oc is None:
            return NotImplemented
        out = dict(self._c)
        for k, v in oc.items():
            out[k] = out.get(k, 0) + v
        return Laurent.make(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent.make({k: -v for k, v in self._c.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        oc = _coeffs_of(other)
        if oc is None:
            return NotImplemented
        out = dict(self._c)
        for k, v in oc.items():
            out[k] = out.get(k, 0) - v
        return Laurent.make(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        oc = _coeffs_of(other)
        if oc is None:
            return NotImplemented
        out: Dict[int, Fraction] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in oc.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return Laurent.make(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * inverse(other)

    def __rtruediv__(self, other):
        return inverse(self) * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return inverse(self) ** (-n)
        out: Scalar = Fraction(1)
        for _ in range(n):
            out = out * self
        return out

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Laurent({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def _coeffs_of(x) -> Dict[int, Fraction] | None:
    if isinstance(x, Laurent):
        return x._c
    if isinstance(x, (int, Fraction)):
        return {0: Fraction(x)} if x else {}
    return None


T = Laurent({1: 1})


def as_scalar(x) -> Scalar:
    if isinstance(x, Laurent):
        return x
    return _frac(x)


def coeffs(x) -> Dict[int, Fraction]:
    """Exponent -> coefficient map of any exact scalar (empty for zero)."""
    c = _coeffs_of(x)
    if c is None:
        raise TypeError(f"not an exact scalar: {x!r}")
    return dict(c)


def is_constant(x) -> bool:
    return not isinstance(x, Laurent)


def is_monomial(x) -> bool:
    return len(coeffs(x)) == 1


def inverse(x) -> Scalar:
    """Inverse of a nonzero monomial ``q t**k``."""
    c = coeffs(x)
    if len(c) != 1:
        raise RingError(f"can only invert monomials, got {format_scalar(x)}")
    (k, q), = c.items()
    return Laurent.make({-k: 1 / q})


def diff(x) -> Scalar:
    """Formal derivative d/dt."""
    if not isinstance(x, Laurent):
        return Fraction(0)
    return Laurent.make({k - 1: k * v for k, v in x._c.items() if k})


def evaluate(x, t):
    """Value at ``t > 0``; exact for rational ``t``, float otherwise."""
    if not isinstance(x, Laurent):
        return x if isinstance(t, (int, Fraction)) else float(x)
    if t <= 0:
        raise RingError("evaluation requires t > 0")
    if isinstance(t, (int, Fraction)):
        t = Fraction(t)
    return sum((v * t**k for k, v in x._c.items()), Fraction(0) if isinstance(t, Fraction) else 0.0)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None when irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def format_scalar(x) -> str:
    """Human-readable rendering, e.g. ``2*t^3 - 1/2*t^-1``."""
    c = coeffs(x)
    if not c:
        return "0"
    parts = []
    for k in sorted(c, reverse=True):
        v = c[k]
        sign = "-" if v < 0 else "+"
        a = abs(v)
        if k == 0:
            body = str(a)
        else:
            mono = "t" if k == 1 else f"t^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    s0, b0 = parts[0]
    out = ("-" if s0 == "-" else "") + b0
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


def to_json(x):
    """Rationals as ``"p/q"`` strings, Laurent elements as ``{"k": "p/q"}``."""
    if isinstance(x, Laurent):
        return {str(k): str(v) for k, v in x._c.items()}
    return str(_frac(x))


def from_json(obj) -> Scalar:
    if isinstance(obj, dict):
        return Laurent.make({int(k): Fraction(v) for k, v in obj.items()})
    return Fraction(obj)
