"""Numerical half-flat evolution with a classical fixed-step Runge-Kutta scheme.

The evolving pair is (omega, psi+) in the unwarped coframe of a
six-dimensional model.  With lapse ``N`` (the coefficient of dt in the
orthonormal coframe of the seven-dimensional metric) the equations are::

    d psi+ / dt = N * dhat omega
    d omega / dt = -N * L_omega^{-1}(dhat psi-)

where ``L_omega(b) = omega ^ b`` and psi- is recovered from psi+ as a stable
form.  All tensors are precomputed exactly and then converted to floats.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from . import exalg, ring
from .exalg import Form, blades, wedge
from .model import FrameModel
from .stable import half_flat_check
from .su3 import SU3Structure


class FlowError(RuntimeError):
    pass


class DegenerateStructureError(FlowError):
    pass


class StabilityLossError(FlowError):
    pass


class NotHalfFlatError(ValueError):
    pass


def _wedge_tensor(frame, k: int, l: int) -> np.ndarray:
    bk, bl, bo = blades(frame, k), blades(frame, l), blades(frame, k + l)
    idx = {b: n for n, b in enumerate(bo)}
    out = np.zeros((len(bk), len(bl), len(bo)))
    for a, x in enumerate(bk):
        for b, y in enumerate(bl):
            s, z = exalg.blade_product(x, y)
            if s:
                out[a, b, idx[z]] = s
    return out


class FlowTensors:
    """Float tensors for wedge products, d-hat, K and the J-derivation on a 6-model."""

    def __init__(self, model: FrameModel):
        self.model = model
        fr = self.frame = model.generators
        self.b = {k: blades(fr, k) for k in range(7)}

        def dhat(k):
            def f(a: Form) -> Form:
                out = model.d(a.embed(model.frame), hat=True)
                return out.restrict(fr)
            return np.array(exalg.matrix_of(f, fr, k, k + 1), dtype=float)

        self.d2, self.d3 = dhat(2), dhat(3)
        self.w22 = _wedge_tensor(fr, 2, 2)
        self.w23 = _wedge_tensor(fr, 2, 3)
        self.w33 = _wedge_tensor(fr, 3, 3)
        self.w42 = _wedge_tensor(fr, 4, 2)
        # K[j, i] = sum_{I,J} kt[j, i, I, J] psi_I psi_J
        b3 = self.b[3]
        vol = exalg.volume(fr)
        slots = []
        for j in fr:
            (bb, s), = exalg.contract(Form.basis(fr, j), vol).items()
            slots.append((bb, s))
        kt = np.zeros((6, 6, len(b3), len(b3)))
        for i_pos, i in enumerate(fr):
            for I, bi in enumerate(b3):
                c = exalg.contract(Form.basis(fr, i), Form.basis(fr, *bi))
                if not c:
                    continue
                for Jn, bj in enumerate(b3):
                    five = wedge(c, Form.basis(fr, *bj))
                    for j_pos, (bb, s) in enumerate(slots):
                        v = five.coeff(bb)
                        if v:
                            kt[j_pos, i_pos, I, Jn] = float(v * s)
        self.kt = kt
        # derivation of the elementary map e^i -> e^j on 3-forms
        dt = np.zeros((6, 6, len(b3), len(b3)))
        idx = {b: n for n, b in enumerate(b3)}
        for I, bi in enumerate(b3):
            for pos, i in enumerate(bi):
                for j_pos, j in enumerate(fr):
                    rep = list(bi)
                    rep[pos] = j
                    s = exalg.permutation_sign(rep)
                    if s:
                        dt[fr.index(i), j_pos, I, idx[tuple(sorted(rep))]] += s
        self.dt = dt

    def vec(self, a: Form) -> np.ndarray:
        a = a.restrict(self.frame) if a.frame != self.frame else a
        return np.array([float(c) for c in exalg.to_vector(a, self.b[a.degree])])

    def form(self, v: np.ndarray, k: int) -> Form:
        return Form._raw(self.frame, k, {b: float(x) for b, x in zip(self.b[k], v) if x != 0.0})

    def residuals(self, omega, psi, pm) -> Dict[str, float]:
        wp = np.einsum("a,b,abc->c", omega, psi, self.w23)
        pp_pm = np.einsum("a,b,abc->c", psi, pm, self.w33)
        w2 = np.einsum("a,b,abc->c", omega, omega, self.w22)
        w3 = np.einsum("a,b,abc->c", w2, omega, self.w42)
        return {
            "omega^psi+": float(np.max(np.abs(wp))),
            "psi+^psi- - 2/3 omega^3": float(np.max(np.abs(pp_pm - 2.0 / 3.0 * w3))),
            "d psi+": float(np.max(np.abs(self.d3 @ psi))),
            "d omega^2": float(np.max(np.abs(self.d_4(w2)))),
        }

    def d_4(self, w2: np.ndarray) -> np.ndarray:
        if not hasattr(self, "_d4"):
            model, fr = self.model, self.frame

            def f(a: Form) -> Form:
                return model.d(a.embed(model.frame), hat=True).restrict(fr)
            self._d4 = np.array(exalg.matrix_of(f, fr, 4, 5), dtype=float)
        return self._d4 @ w2


@dataclass
class FlowState:
    t: float
    omega: np.ndarray
    psi_plus: np.ndarray
    psi_minus: np.ndarray
    diagnostics: Dict[str, float] = field(default_factory=dict)
    exact_t: Optional[Fraction] = None


@dataclass
class FlowResult:
    states: List[FlowState]
    tensors: FlowTensors
    lapse: Optional[object] = None
    dtype: type = np.float64

    def max_residual(self, key: str) -> float:
        return max(s.diagnostics[key] for s in self.states)

    def _error(self, st: FlowState, reference: SU3Structure) -> float:
        t = st.exact_t if st.exact_t is not None else st.t
        om = exact_vector(self.tensors, evaluate_form(reference.omega, t), self.dtype)
        pp = exact_vector(self.tensors, evaluate_form(reference.psi_plus, t), self.dtype)
        return float(max(np.max(np.abs(om - st.omega)), np.max(np.abs(pp - st.psi_plus))))

    def compare(self, reference: SU3Structure) -> float:
        """Max coefficient error against a structure with t-dependent coefficients."""
        return max(self._error(st, reference) for st in self.states)

    def terminal_error(self, reference: SU3Structure) -> float:
        return self._error(self.states[-1], reference)

    def write_csv(self, path: str) -> None:
        b = self.tensors.b
        keys = list(self.states[0].diagnostics)
        header = ["t"] + [f"omega_{exalg.blade_name(x)}" for x in b[2]] + \
                 [f"psi+_{exalg.blade_name(x)}" for x in b[3]] + keys
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for st in self.states:
                w.writerow([f"{st.t:.12g}"] + [f"{float(x):.15g}" for x in st.omega] +
                           [f"{float(x):.15g}" for x in st.psi_plus] + [f"{st.diagnostics[k]:.6e}" for k in keys])


def evaluate_form(a: Form, t) -> Form:
    return a.map_coeffs(lambda c: ring.evaluate(c, t))


def _to_dtype(x, dtype):
    if isinstance(x, Fraction) and dtype is not np.float64:
        return dtype(x.numerator) / dtype(x.denominator)
    return dtype(x)


def exact_vector(tensors: FlowTensors, a: Form, dtype=np.float64) -> np.ndarray:
    """Coefficient vector of ``a``, rounded once from exact values into ``dtype``."""
    a = a.restrict(tensors.frame) if a.frame != tensors.frame else a
    return np.array([_to_dtype(c, dtype) for c in exalg.to_vector(a, tensors.b[a.degree])], dtype=dtype)


def _solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting; keeps extended precision."""
    if a.dtype == np.float64:
        return np.linalg.solve(a, b)
    a, b = a.copy(), b.copy()
    n = len(b)
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0:
            raise np.linalg.LinAlgError("singular matrix")
        if p != k:
            a[[k, p]], b[[k, p]] = a[[p, k]], b[[p, k]]
        f = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(f, a[k, k:])
        b[k + 1:] -= f * b[k]
    x = np.zeros_like(b)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


def default_lapse(model: FrameModel):
    """Coefficient of dt in the orthonormal coframe (1 without a dt slot)."""
    return model.warps.get(0, Fraction(1)) if model.dt_slot else Fraction(1)


def flow_run(s: SU3Structure, t0, t1, dt=1e-3, *, lapse=None, check_half_flat: bool = True,
             tensors: FlowTensors | None = None, dtype=np.float64) -> FlowResult:
    """Integrate from the structure's data at ``t0`` to ``t1`` with fixed step ``dt``.

    ``dtype=np.longdouble`` runs the same scheme in extended precision, which
    pushes round-off below the truncation error of small steps.
    """
    t0q, t1q, dtq = (Fraction(repr(x)) if isinstance(x, float) else Fraction(x) for x in (t0, t1, dt))
    if dtq <= 0:
        raise ValueError("dt must be positive")
    n = (t1q - t0q) / dtq
    if n <= 0 or n.denominator != 1:
        raise ValueError("t1 - t0 must be a positive multiple of dt")
    n = int(n)
    if check_half_flat and not half_flat_check(s):
        raise NotHalfFlatError("initial structure is not half-flat")
    tensors = tensors or FlowTensors(s.model)
    lapse = default_lapse(s.model) if lapse is None else lapse
    if callable(lapse):
        def N(tq):
            return dtype(lapse(float(tq)))
    else:
        def N(tq):
            return _to_dtype(ring.evaluate(lapse, tq), dtype)
    cast = {k: getattr(tensors, k).astype(dtype) for k in ("d2", "d3", "w22", "kt", "dt", "w23", "w33", "w42")}
    h = _to_dtype(dtq, dtype)
    om = exact_vector(tensors, evaluate_form(s.omega, t0q), dtype)
    pp = exact_vector(tensors, evaluate_form(s.psi_plus, t0q), dtype)

    def psi_minus(psi):
        k = np.einsum("jiIJ,I,J->ji", cast["kt"], psi, psi)
        lam = np.trace(k @ k) / 6
        if lam >= 0:
            raise StabilityLossError(f"quartic invariant {float(lam):.3e} >= 0")
        J = k / np.sqrt(-lam)
        pm = -np.einsum("ij,ijIO,I->O", J, cast["dt"], psi) / 3
        if np.einsum("a,b,abc->c", psi, pm, cast["w33"])[0] < 0:
            pm = -pm
        return pm

    def rhs(tq, om, pp):
        pm = psi_minus(pp)
        L = np.einsum("a,abc->cb", om, cast["w22"])
        try:
            dom = -_solve(L, cast["d3"] @ pm)
        except np.linalg.LinAlgError as exc:
            raise DegenerateStructureError("omega ^ . is singular") from exc
        lap = N(tq)
        return lap * dom, lap * (cast["d2"] @ om)

    def state(tq, om, pp):
        pm = psi_minus(pp)
        diag = tensors.residuals(*(x.astype(np.float64) for x in (om, pp, pm)))
        return FlowState(float(tq), om.copy(), pp.copy(), pm, diag, tq)

    states = [state(t0q, om, pp)]
    half = dtq / 2
    for k in range(n):
        tq = t0q + k * dtq
        k1 = rhs(tq, om, pp)
        k2 = rhs(tq + half, om + h / 2 * k1[0], pp + h / 2 * k1[1])
        k3 = rhs(tq + half, om + h / 2 * k2[0], pp + h / 2 * k2[1])
        k4 = rhs(tq + dtq, om + h * k3[0], pp + h * k3[1])
        om = om + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        pp = pp + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        states.append(state(tq + dtq, om, pp))
    return FlowResult(states, tensors, lapse, dtype)
