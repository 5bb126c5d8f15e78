import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2su3 import correspond
from g2su3.correspond import (ProvenanceError, constants, proportionality_freeze, random_sample,
                              table_mismatches, verify_correspondence)


def test_frozen_constants_reproduce_from_default_seed():
    assert proportionality_freeze(2001)["pieces"] == correspond.load_constants()["pieces"]


def test_frozen_constants_are_seed_independent():
    assert proportionality_freeze(7)["pieces"] == correspond.load_constants()["pieces"]


def test_dependencies_match_table():
    assert table_mismatches() == []


def test_selected_constants():
    c = constants()
    assert c["X1"]["W1+"] == 12 and c["X1"]["rho0"] == 6


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.booleans())
def test_random_samples_satisfy_correspondence(seed, with_rho):
    s = random_sample(random.Random(seed), with_rho=with_rho)
    rep = verify_correspondence(s.su3, s.rho, s.g2)
    assert rep.ok, rep.first_failure()


def test_rho_split_recombines():
    s = random_sample(random.Random(3))
    r = s.rho
    su, _ = correspond.standard_algebras()
    total = su.omega * r.rho0 + r.rho1 + r.rho2
    assert total == r.rho


def test_mismatched_reports_are_rejected():
    a = random_sample(random.Random(1))
    b = random_sample(random.Random(2))
    with pytest.raises(ProvenanceError):
        verify_correspondence(a.su3, a.rho, b.g2)


def test_altered_constants_are_detected():
    s = random_sample(random.Random(5))
    consts = constants()
    consts["X1"] = dict(consts["X1"], **{"W1+": Fraction(13)})
    assert not verify_correspondence(s.su3, s.rho, s.g2, consts=consts).ok
