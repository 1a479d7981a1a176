import math

import numpy as np
import pytest

from temperlab.slitgreens import (SlitBox, fn_construction, laplacian_residual,
                                  slit_greens)


@pytest.fixture(scope="module")
def g128():
    return slit_greens(SlitBox(128))


def test_box_validation():
    with pytest.raises(ValueError):
        SlitBox(4)


def test_dirichlet_on_slit(g128):
    for k in range(1, 100):
        assert g128.at(-k, 0) == 0.0


def test_laplacian_residual_is_delta(g128):
    res = laplacian_residual(g128)
    m = g128.m
    assert res[m - 1, m - 1] == pytest.approx(1.0, abs=1e-9)
    mask = np.ones_like(res, dtype=bool)
    mask[m - 1, m - 1] = False
    assert np.abs(res[mask]).max() < 1e-9


def test_reflection_symmetry(g128):
    for (x, y) in [(3, 2), (10, 7), (-2, 5), (20, 1)]:
        assert g128.at(x, y) == pytest.approx(g128.at(x, -y), abs=1e-12)


def test_monotone_decay_on_axis(g128):
    vals = [g128.at(x, 0) for x in range(2, 60)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_positive(g128):
    assert g128.values.min() >= -1e-12


def test_assembled_matches_direct():
    box = SlitBox(128)
    g = slit_greens(box)
    _, _, ga, denom = fn_construction(16, box)
    inner = np.s_[2:-2, 2:-2]
    assert np.abs(ga.values[inner] - g.values[inner]).max() <= 1e-6
    assert denom > 0


def test_fn_maximum_principle():
    box = SlitBox(128)
    f_n, f_n1, _, _ = fn_construction(16, box)
    for arr in (f_n, f_n1):
        assert arr.min() >= -1e-12 and arr.max() <= 1 + 1e-12


def test_fn_kesten_scaling_trend():
    box = SlitBox(256)
    vals = []
    for n in (8, 16, 32):
        f_n, _, _, _ = fn_construction(n, box)
        vals.append(f_n[box.m, box.m] * math.sqrt(n))
    # stabilizing: successive changes shrink
    assert abs(vals[2] - vals[1]) < abs(vals[1] - vals[0])


def test_decay_plateau_m256():
    g = slit_greens(SlitBox(256))
    vals = [v for _, v in g.axis_decay(range(256 // 8, 256 // 4 + 1))]
    mean = sum(vals) / len(vals)
    assert max(abs(v - mean) / mean for v in vals) <= 0.10
