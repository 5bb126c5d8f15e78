import csv

import numpy as np
import pytest

from g2su3 import catalog, flow
from g2su3.model import from_constants
from g2su3.su3 import standard_structure


@pytest.fixture(scope="module")
def iwasawa():
    return catalog.get_example("iwasawa-variant").su3


@pytest.fixture(scope="module")
def tensors(iwasawa):
    return flow.FlowTensors(iwasawa.model)


def test_short_run_tracks_closed_form(iwasawa, tensors):
    res = flow.flow_run(iwasawa, 1, 1.05, 0.01, tensors=tensors)
    assert len(res.states) == 6
    assert res.compare(iwasawa) < 1e-8
    assert res.max_residual("omega^psi+") < 1e-10
    assert res.max_residual("d psi+") < 1e-10


def test_fourth_order_convergence_in_extended_precision(iwasawa, tensors):
    a = flow.flow_run(iwasawa, 1, 1.2, 0.02, tensors=tensors, dtype=np.longdouble)
    b = flow.flow_run(iwasawa, 1, 1.2, 0.01, tensors=tensors, dtype=np.longdouble)
    ratio = a.terminal_error(iwasawa) / b.terminal_error(iwasawa)
    assert 12 < ratio < 20


def test_static_nilmanifold_residuals_stay_small():
    s = catalog.get_example("nil3step").su3
    res = flow.flow_run(s, 0, 0.1, 0.01)
    assert res.max_residual("psi+^psi- - 2/3 omega^3") < 1e-8


def test_not_half_flat_rejected():
    s = standard_structure(from_constants(6, {1: {(2, 3): 1}}))
    with pytest.raises(flow.NotHalfFlatError):
        flow.flow_run(s, 0, 0.1, 0.01)


@pytest.mark.parametrize("t1, dt", [(1.1, 0), (1.1, -0.01), (1.0, 0.01), (1.1, 0.03)])
def test_bad_step_arguments(iwasawa, tensors, t1, dt):
    with pytest.raises(ValueError):
        flow.flow_run(iwasawa, 1, t1, dt, tensors=tensors)


def test_csv_output(iwasawa, tensors, tmp_path):
    res = flow.flow_run(iwasawa, 1, 1.02, 0.01, tensors=tensors)
    path = tmp_path / "traj.csv"
    res.write_csv(str(path))
    rows = list(csv.reader(path.open()))
    assert rows[0][0] == "t" and "omega_e12" in rows[0] and "psi+_e135" in rows[0]
    assert len(rows) == 4
    assert float(rows[-1][0]) == pytest.approx(1.02)
