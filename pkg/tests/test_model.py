import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptsol.errors import AsymmetricGrid
from ptsol.model import (ModelSpec, PotentialParams1D, PotentialParams2D, check_pt_symmetry,
                         eval_potential_1d, eval_potential_2d, potential_on_grid)
from ptsol.spectral import Grid1D, Grid2D

finite = st.floats(-10, 10, allow_nan=False)


@given(finite, finite, finite, st.floats(0.05, 3.0))
def test_1d_potential_is_pt_symmetric(V0, V1, W0, a):
    spec = ModelSpec(1, 1, -1, PotentialParams1D(V0, V1, W0, a))
    v = check_pt_symmetry(spec, Grid1D(-8.0, 8.0, 64))
    assert v["even_violation"] <= 1e-12 * (1 + abs(V0) * 64)
    assert v["odd_violation"] <= 1e-12 * (1 + abs(W0))


@given(finite, finite, finite, finite, st.floats(0.05, 3.0))
def test_2d_potential_is_pt_symmetric(V0, V1, V2, W0, a):
    spec = ModelSpec(2, 2, -1, PotentialParams2D(V0, V1, V2, W0, a))
    v = check_pt_symmetry(spec, Grid2D.square(-6.0, 6.0, 16))
    assert v["even_violation"] <= 1e-11 * (1 + abs(V0) * 72)
    assert v["odd_violation"] <= 1e-12 * (1 + abs(W0))


def test_detects_broken_symmetry():
    spec = ModelSpec(1, 1, -1, PotentialParams1D(0.0, 1.0, 1.0, 0.5))
    v = check_pt_symmetry(spec, Grid1D(-4.0, 4.0, 32), potential=lambda x: (x, x ** 2))
    assert v["even_violation"] > 1 and v["odd_violation"] > 1


def test_unclosed_grid_rejected():
    spec = ModelSpec(1, 1, -1, PotentialParams1D(0.0, 1.0, 1.0, 0.5))
    with pytest.raises(AsymmetricGrid):
        check_pt_symmetry(spec, Grid1D(-4.0, 5.0, 32))


def test_pointwise_values():
    p = PotentialParams1D(V0=-0.25, V1=3.0, W0=0.2, a=0.5)
    V, W = eval_potential_1d(p, np.array([0.0, 2.0]))
    np.testing.assert_allclose(V, [3.0, -1.0 + 3.0 * np.exp(-2.0)])
    np.testing.assert_allclose(W, [0.0, 0.4 * np.exp(-1.0)])
    q = PotentialParams2D(V0=-0.25, V1=-3.0, V2=0.5, W0=0.1, a=0.5)
    V, W = eval_potential_2d(q, 0.0, 0.0)
    assert np.isclose(V, 3.0 + 1.0) and W == 0.0


def test_grid_sampling_shape():
    spec = ModelSpec(2, 1, -1, PotentialParams2D(-0.25, -3.0, 0.1, 0.1, 0.5))
    V, W = potential_on_grid(spec, Grid2D(Grid1D(-1.0, 1.0, 4), Grid1D(-2.0, 2.0, 6)))
    assert V.shape == W.shape == (4, 6)


@pytest.mark.parametrize("kw", [dict(V0=np.nan, V1=0, W0=0, a=1), dict(V0=0, V1=0, W0=0, a=0),
                                dict(V0=0, V1=np.inf, W0=0, a=1)])
def test_parameter_validation(kw):
    with pytest.raises(ValueError):
        PotentialParams1D(**kw)


def test_spec_validation():
    p1 = PotentialParams1D(0.0, 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        ModelSpec(1, 0, -1, p1)
    with pytest.raises(ValueError):
        ModelSpec(3, 1, -1, p1)
    with pytest.raises(TypeError):
        ModelSpec(2, 1, -1, p1)
