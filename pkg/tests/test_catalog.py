import pytest

from g2su3 import catalog
from g2su3.structfile import parse


@pytest.mark.parametrize("name", catalog.names())
def test_entry_checks_hold(name):
    e = catalog.get_example(name)
    checks = e.checks()
    assert checks
    assert all(ok for _, ok, _ in checks), [c for c in checks if not c[1]]


@pytest.mark.parametrize("name", catalog.names())
def test_export_reparses(name):
    e = catalog.get_example(name)
    sf = parse(e.export())
    assert sf.name == name


def test_unknown_name_lists_choices():
    with pytest.raises(catalog.UnknownExampleError) as err:
        catalog.get_example("nope")
    assert "nil-calibrated" in str(err.value)


def test_six_dimensional_entries():
    names = {e.name for e in catalog.six_dimensional()}
    assert {"torus6", "nil-calibrated", "iwasawa-variant", "nil2step", "nil3step"} == names


def test_mismatch_is_reported():
    e = catalog._nil_calibrated()
    e.expected = {"classes": ("W1+",)}
    with pytest.raises(catalog.CatalogMismatchError):
        e.verify()
