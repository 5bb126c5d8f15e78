"""Stable 3-forms in six dimensions: recovering J and psi- from psi+.

For a 3-form ``psi`` on a 6-dimensional coframe with fixed volume
``vol = e^{1..6}`` define ``K`` on vectors by ``K(X) _| vol = (X _| psi) ^ psi``.
Then ``K^2 = lam * 1`` with ``lam = tr(K^2) / 6``.  When ``lam < 0`` the form
is stable of SL(3,C) type, ``J = K / sqrt(-lam)`` is a complex structure and
``psi-(X, Y, Z) = -psi(JX, Y, Z)``.  The square root sign is chosen so that
``psi ^ psi-`` is a positive multiple of ``vol``; with this normalization the
standard ``psi+`` returns the standard ``psi-`` (no further constant needed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from . import exalg, linalg, ring
from .exalg import Form, contract, wedge
from .su3 import SU3Structure


class NotStableError(ValueError):
    """The 3-form is not stable of SL(3,C) type (lam >= 0)."""


class StableConsistencyError(ArithmeticError):
    """psi- failed the slot-independence check (internal fault)."""


@dataclass
class StableData:
    lam: object
    K: List[list]
    J: List[list]
    psi_minus: Form
    exact: bool


def k_matrix(psi: Form) -> List[list]:
    """Volume-trivialized K as a matrix (column i is K(e_i))."""
    fr = psi.frame
    if len(fr) != 6 or psi.degree != 3:
        raise exalg.DimensionError("stable_data needs a 3-form on a 6-dimensional coframe")
    vol = exalg.volume(fr)
    slots = []
    for j in fr:
        (b, s), = contract(Form.basis(fr, j), vol).items()
        slots.append((b, s))
    cols = []
    for i in fr:
        five = wedge(contract(Form.basis(fr, i), psi), psi)
        cols.append([five.coeff(b) * s for b, s in slots])
    return linalg.transpose(cols)


def quartic_invariant(psi: Form):
    k = k_matrix(psi)
    k2 = linalg.matmul(k, k)
    return sum(k2[i][i] for i in range(6)) / 6


def stable_data(psi: Form) -> StableData:
    k = k_matrix(psi)
    k2 = linalg.matmul(k, k)
    lam = sum(k2[i][i] for i in range(6)) / 6
    if not ring.is_constant(lam):
        raise NotStableError("stable_data needs constant coefficients")
    if lam >= 0:
        raise NotStableError(f"quartic invariant {lam} >= 0: not stable of SL(3,C) type")
    root = ring.rational_sqrt(-lam)
    exact = root is not None
    if root is None:
        root = math.sqrt(float(-lam))
    J = [[x / root for x in row] for row in k]
    psi_minus = _psi_minus(psi, J)
    top = exalg.top_coefficient(wedge(psi, psi_minus))
    if top < 0:
        J = [[-x for x in row] for row in J]
        psi_minus = -psi_minus
    return StableData(lam, k, J, psi_minus, exact)


def _dual_images(fr, J) -> dict:
    # (J* e^i)(X) = e^i(J X), so J* e^i = sum_j J[i][j] e^j
    return {i: exalg.from_vector(fr, 1, J[r], [(j,) for j in fr]) for r, i in enumerate(fr)}


def _psi_minus(psi: Form, J) -> Form:
    fr = psi.frame
    images = _dual_images(fr, J)
    d1 = exalg.apply_linear(psi, images, derivation=True)
    d2 = exalg.apply_linear(d1, images, derivation=True)
    # type (3,0)+(0,3) means D^2 psi = -9 psi; this makes psi(JX,Y,Z) slot-independent
    resid = d2 + psi * 9
    if any(abs(c) > 1e-9 for _, c in resid.items()):
        raise StableConsistencyError("psi(JX, Y, Z) depends on the slot")
    return d1 * Fraction(-1, 3)


def half_flat_check(s: SU3Structure) -> bool:
    """d psi+ = 0 and omega ^ d omega = 0."""
    return not s.d(s.psi_plus) and not wedge(s.omega, s.d(s.omega))
