import pytest

from g2su3 import catalog, structfile
from g2su3.model import JacobiError
from g2su3.ring import T

IWA = """# Iwasawa-type algebra
dim 6
param t
d e5 = -e14 - e23
d e6 = -e13 - e42
warp e1 = t
warp dt = t^2
omega = t^2*e12 + t^2*e34 + t^-2*e56
psi+ = t*e135 - t*e146 - t*e236 - t*e245
"""


def test_parse_basic():
    f = structfile.parse(IWA)
    m = f.model
    assert m.dt_slot and m.warps[0] == T ** 2 and m.warps[1] == T
    assert m.d(m.e(6)) == -m.e(1, 3) + m.e(2, 4)
    assert f.omega.coeff((5, 6)) == T ** -2


def test_round_trip_is_exact():
    f = structfile.parse(IWA)
    text = structfile.dumps(f.model, f.forms, f.alpha, f.name)
    g = structfile.parse(text)
    assert structfile.dumps(g.model, g.forms, g.alpha, g.name) == text
    assert g.forms == f.forms


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_exports_round_trip(name):
    text = catalog.get_example(name).export()
    f = structfile.parse(text)
    assert structfile.dumps(f.model, f.forms, f.alpha, f.name) == text


@pytest.mark.parametrize("text, line, col", [
    ("dim 6\nd e5 = -e14 -* e23", 2, 14),
    ("dim 6\nd e5 = 2 e14", 2, 8),
    ("dim 6\nomega = t*e12", 2, 9),
    ("dim 6\nd e9 = e12", 2, 1),
    ("d e5 = e12", 1, 1),
    ("dim 6\nfoo = e1", 2, 1),
    ("dim 6\nd e5 = e12 + e123", 2, 1),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(structfile.StructFileError) as info:
        structfile.parse(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_jacobi_violation_propagates():
    with pytest.raises(JacobiError):
        structfile.parse("dim 6\nd e5 = e12\nd e6 = e35\n")


def test_parse_form_helper():
    a = structfile.parse_form("2*t^7*e120 - 1/2*e135", (0, 1, 2, 3, 4, 5, 6))
    assert a.coeff((0, 1, 2)) == 2 * T ** 7
