"""Frame models: structure constants over a declared-orthonormal coframe.

A model fixes ``d e^i`` for generators ``1..n`` and, optionally, a ``dt`` slot
(label 0).  Warped models declare the orthonormal coframe to be
``E^i = w_i(t) e^i`` for Laurent monomials ``w_i``; forms are always stored in
the unwarped frame ``e^i`` and converted when a metric operation needs them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence

from . import exalg, ring
from .exalg import Blade, Form


class JacobiError(ValueError):
    """Structure constants with ``d(d e^i) != 0``."""

    def __init__(self, failures: Mapping[int, Form]):
        self.failures = dict(failures)
        detail = "; ".join(f"d(d e{i}) = {f}" for i, f in sorted(self.failures.items()))
        super().__init__(f"Jacobi identity fails: {detail}")


class ModelError(ValueError):
    pass


class FrameModel:
    """Structure equations ``d e^i = sum c^i_jk e^jk`` plus optional warping.

    Parameters
    ----------
    n:
        Number of generators ``e^1..e^n``.
    structure:
        Map ``i -> d e^i`` (a 2-form on the model's frame); omitted
        generators are closed.
    dt_slot:
        Add a ``dt`` generator (label 0) with ``d(dt) = 0``.
    time:
        Label of the 1-form that equals ``dt``.  Defaults to 0 when the dt
        slot exists; otherwise coefficients are treated as t-independent
        unless a closed generator is named here.
    warps:
        Label -> Laurent monomial; ``w_i e^i`` is declared orthonormal.
    """

    def __init__(
        self,
        n: int,
        structure: Mapping[int, Form] | None = None,
        *,
        dt_slot: bool = False,
        time: Optional[int] = None,
        warps: Mapping[int, object] | None = None,
        name: str = "",
        check: bool = True,
    ):
        if not 1 <= n <= 7:
            raise ModelError(f"frame dimension must be 1..7, got {n}")
        self.n = n
        self.name = name
        self.dt_slot = dt_slot
        self.generators = tuple(range(1, n + 1))
        self.frame = ((0,) if dt_slot else ()) + self.generators
        if time is None and dt_slot:
            time = 0
        self.time = time
        self.structure: Dict[int, Form] = {}
        for i, f in (structure or {}).items():
            if i not in self.generators:
                raise ModelError(f"no generator e{i} in a {n}-dimensional model")
            if f.frame != self.frame:
                f = f.embed(self.frame) if set(f.frame) <= set(self.frame) else f.restrict(self.frame)
            if f and f.degree != 2:
                raise ModelError(f"d e{i} must be a 2-form")
            if f:
                self.structure[i] = f
        self.warps: Dict[int, object] = {}
        for i, w in (warps or {}).items():
            if i not in self.frame:
                raise ModelError(f"warp on unknown label {i}")
            w = ring.as_scalar(w)
            if not ring.is_monomial(w):
                raise ModelError(f"warp of e{i} must be a nonzero Laurent monomial, got {w}")
            if w != 1:
                self.warps[i] = w
        if time is not None:
            if time not in self.frame:
                raise ModelError(f"time label {time} not in frame")
            if time in self.structure:
                raise ModelError(f"time 1-form e{time} must be closed")
        self._dcache: Dict[Blade, Form] = {}
        if check:
            failures = self.jacobi_check()
            if failures:
                raise JacobiError(failures)

    # basic ----------------------------------------------------------------

    @property
    def warped(self) -> bool:
        return bool(self.warps) or self.time is not None

    def e(self, *indices: int, coeff=1) -> Form:
        return Form.basis(self.frame, *indices, coeff=coeff)

    def form(self, degree: int, terms: Mapping[Blade, object]) -> Form:
        return Form(self.frame, degree, terms)

    def zero(self, degree: int) -> Form:
        return Form.zero(self.frame, degree)

    def check_form(self, a: Form) -> Form:
        if a.frame != self.frame:
            raise exalg.DimensionError(f"form on frame {a.frame} is not bound to model frame {self.frame}")
        return a

    def de(self, i: int) -> Form:
        return self.structure.get(i, self.zero(2))

    def replace(self, **changes) -> "FrameModel":
        kw = dict(n=self.n, structure=self.structure, dt_slot=self.dt_slot, time=self.time,
                  warps=self.warps, name=self.name)
        kw.update(changes)
        n = kw.pop("n")
        return FrameModel(n, **kw)

    def __repr__(self):
        eqs = ", ".join(f"de{i}={f}" for i, f in sorted(self.structure.items())) or "abelian"
        return f"FrameModel({self.name or self.n}: {eqs})"

    # differential ---------------------------------------------------------

    def _d_blade(self, b: Blade) -> Form:
        hit = self._dcache.get(b)
        if hit is not None:
            return hit
        out = self.zero(len(b) + 1)
        for pos, i in enumerate(b):
            di = self.structure.get(i)
            if di is None:
                continue
            left = Form.basis(self.frame, *b[:pos])
            right = Form.basis(self.frame, *b[pos + 1:])
            term = exalg.wedge_all(left, di, right)
            out = out - term if pos % 2 else out + term
        self._dcache[b] = out
        return out

    def d(self, a: Form, hat: bool = False) -> Form:
        """Exterior derivative; ``hat=True`` drops the ``dt ^ d/dt`` part."""
        self.check_form(a)
        out = self.zero(a.degree + 1)
        tform = None if (hat or self.time is None) else self.e(self.time)
        for b, c in a.items():
            db = self._d_blade(b)
            if db:
                out = out + db * c
            if tform is not None:
                dc = ring.diff(c)
                if dc != 0:
                    out = out + exalg.wedge(tform, Form.basis(self.frame, *b)) * dc
        return out

    def jacobi_check(self) -> Dict[int, Form]:
        """Generators with ``d(d e^i) != 0`` (empty means the model is valid)."""
        bad = {}
        for i, di in self.structure.items():
            dd = self.d(di)
            if dd:
                bad[i] = dd
        return bad

    # metric ---------------------------------------------------------------

    def weight(self, b: Blade):
        w: object = Fraction(1)
        for i in b:
            if i in self.warps:
                w = w * self.warps[i]
        return w

    def to_orthonormal(self, a: Form) -> Form:
        """Coefficients relative to the orthonormal coframe ``E^i = w_i e^i``."""
        if not self.warps:
            return a
        self.check_form(a)
        return Form._raw(a.frame, a.degree, {b: c * ring.inverse(self.weight(b)) for b, c in a.items()})

    def from_orthonormal(self, a: Form) -> Form:
        if not self.warps:
            return a
        self.check_form(a)
        return Form._raw(a.frame, a.degree, {b: c * self.weight(b) for b, c in a.items()})

    def hodge(self, a: Form) -> Form:
        return self.from_orthonormal(exalg.hodge(self.to_orthonormal(a)))

    def inner(self, a: Form, b: Form):
        return exalg.inner(self.to_orthonormal(a), self.to_orthonormal(b))

    def contract(self, a: Form, b: Form) -> Form:
        return self.from_orthonormal(exalg.contract(self.to_orthonormal(a), self.to_orthonormal(b)))


def jacobi_check(m: FrameModel) -> Dict[int, Form]:
    return m.jacobi_check()


def differential(m: FrameModel, a: Form, hat: bool = False) -> Form:
    return m.d(a, hat=hat)


def from_constants(n: int, constants: Mapping[int, Mapping[Sequence[int], object]], **kw) -> FrameModel:
    """Build a model from ``{i: {(j, k): c}}`` dictionaries."""
    frame = ((0,) if kw.get("dt_slot") else ()) + tuple(range(1, n + 1))
    structure = {i: Form(frame, 2, {tuple(jk): c for jk, c in terms.items()}) for i, terms in constants.items()}
    return FrameModel(n, structure, **kw)


def closed_generators(m: FrameModel) -> Iterable[int]:
    return [i for i in m.generators if i not in m.structure]
