"""Deterministic JSON for forms and reports.

Rationals become ``"p/q"`` strings and Laurent coefficients ``{"k": "p/q"}``
maps, so every exact report has a single byte-exact encoding.
"""

from __future__ import annotations

import json
from typing import Any, Dict

from . import ring
from .exalg import Form, blade_name
from .g2 import G2TorsionReport
from .su3 import SU3TorsionReport


def scalar(x):
    if isinstance(x, float):
        return x
    return ring.to_json(x)


def form(a: Form) -> Dict[str, Any]:
    return {blade_name(b): scalar(c) for b, c in a.items()}


def value(x):
    if isinstance(x, Form):
        return form(x)
    if isinstance(x, dict):
        return {str(k): value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [value(v) for v in x]
    if isinstance(x, (bool, str, int)) or x is None:
        return x
    return scalar(x)


def su3_report(r: SU3TorsionReport) -> Dict[str, Any]:
    return {
        "label": r.label,
        "fingerprint": r.fingerprint,
        "classes": list(r.classes),
        "flags": {name: name in r.classes for name in ("W1+", "W1-", "W2+", "W2-", "W3", "W4", "W5")},
        "half_flat": r.half_flat,
        "self_dual": r.self_dual,
        "anti_self_dual": r.anti_self_dual,
        "rank_w12": r.rank_w12,
        "components": {k: value(r.component(k)) for k in ("W1+", "W1-", "W2+", "W2-", "W3", "W4", "W5")},
        "d_omega": form(r.d_omega),
        "d_psi_plus": form(r.d_psi_plus),
        "d_psi_minus": form(r.d_psi_minus),
    }


def g2_report(r: G2TorsionReport) -> Dict[str, Any]:
    return {
        "label": r.label,
        "source": r.source,
        "classes": list(r.classes),
        "calibrated": r.calibrated,
        "cocalibrated": r.cocalibrated,
        "nearly_parallel": r.nearly_parallel,
        "torsion_free": r.torsion_free,
        "dphi_1": scalar(r.dphi_1),
        "dphi_7": form(r.dphi_7),
        "dphi_27": form(r.dphi_27),
        "dstarphi_7": form(r.dstarphi_7),
        "dstarphi_14": form(r.dstarphi_14),
        "d_phi": form(r.d_phi),
        "d_starphi": form(r.d_starphi),
        "pieces": value(r.pieces),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"
