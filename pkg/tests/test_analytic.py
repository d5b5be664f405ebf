import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ptsol import analytic
from ptsol.errors import BoundaryLeak, SignConditionViolated
from ptsol.model import ModelSpec
from ptsol.spectral import Grid1D, Grid2D, quadrature

GRID = Grid1D(-20.0, 20.0, 512)


def mode(m, W0=0.2, sigma=-1, V1=3.0, a=0.5):
    return analytic.exact_mode(1, m, sigma, a, V1, W0)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_residual_vanishes(m):
    sol, spec = mode(m)
    assert analytic.residual_stationary(spec, analytic.sample(sol, GRID), sol.beta, GRID) < 1e-11


def test_residual_detects_wrong_beta_and_amplitude():
    sol, spec = mode(1)
    u = analytic.sample(sol, GRID)
    assert analytic.residual_stationary(spec, u, sol.beta + 0.01, GRID) > 1e-3
    assert analytic.residual_stationary(spec, 1.01 * u, sol.beta, GRID) > 1e-3


def test_slow_tail_raises_leak():
    sol, spec = mode(12)
    with pytest.raises(BoundaryLeak):
        analytic.residual_stationary(spec, analytic.sample(sol, GRID), sol.beta, GRID)


@given(st.integers(1, 3), st.floats(0.0, 0.6), st.floats(0.4, 0.8), st.floats(1.0, 5.0))
def test_residual_small_across_parameters(m, W0, a, V1):
    assume(analytic.phase_potential(m, a, W0) < V1)
    sol, spec = analytic.exact_mode(1, m, -1, a, V1, W0)
    g = Grid1D(-30.0, 30.0, 512)
    u = analytic.sample(sol, g)
    assert analytic.residual_stationary(spec, u, sol.beta, g) < 1e-9 * max(1.0, sol.phi0 ** (2 * m + 1))


def test_derived_constants():
    sol, spec = mode(2, W0=0.2)
    a, m, W0 = 0.5, 2, 0.2
    assert math.isclose(spec.potential.V0, -4 * a ** 4 / m ** 2)
    assert math.isclose(sol.beta, -2 * a ** 2 / m)
    V2 = m ** 2 * W0 ** 2 / (4 * a ** 4 * (m + 2) ** 2)
    assert math.isclose(-sol.phi0 ** (2 * m), V2 - 3.0)
    assert math.isclose(sol.phase_coeff, m * W0 * math.sqrt(math.pi) / (4 * a ** 3 * (m + 2)))


def test_sign_condition():
    with pytest.raises(SignConditionViolated):
        analytic.exact_mode(1, 1, 1, 0.5, 3.0, 0.2)
    with pytest.raises(SignConditionViolated):
        analytic.exact_mode(2, 1, -1, 0.5, 3.0, 0.1)
    # large W0 flips V2 - V1 positive: no defocusing mode
    with pytest.raises(SignConditionViolated):
        analytic.exact_mode(1, 12, -1, 0.5, 3.0, 1.2)


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_power_against_quadrature(m):
    sol, _ = mode(m)
    g = Grid1D(-40.0, 40.0, 1024)
    assert abs(analytic.power(sol) - quadrature(analytic.sample(sol, g), g)) < 1e-10


@pytest.mark.parametrize("m", [1, 2, 3])
def test_flow_density_against_spectral_derivative(m):
    sol, _ = mode(m, W0=0.3)
    u = analytic.sample(sol, GRID)
    S = analytic.flow_density_from_field(u, GRID)
    np.testing.assert_allclose(S, analytic.flow_density_1d(sol, GRID.x), atol=1e-11)
    assert np.all(analytic.flow_density_1d(sol, GRID.x) > 0)


def test_flow_point_value_quintic():
    sol, _ = mode(2, W0=0.2)
    expected = 2 * 0.2 * math.sqrt(2.96) / (2 * 0.25 * 4)
    assert abs(float(analytic.flow_density_1d(sol, 0.0)) - expected) < 1e-12
    # gradient oracle: central differences of the sampled field at the origin
    h = 1e-5
    xs = np.array([-h, 0.0, h])
    u = analytic.eval_soliton_1d(sol, xs)
    ux = (u[2] - u[0]) / (2 * h)
    fd = np.real(0.5j * (u[1] * np.conj(ux) - np.conj(u[1]) * ux))
    assert abs(fd - expected) < 1e-6


def test_zero_field_has_zero_residual():
    _, spec = mode(1)
    assert analytic.residual_stationary(spec, np.zeros(GRID.n), 0.3, GRID) == 0.0


def test_power_positive():
    for m in (1, 4, 9):
        assert analytic.power(mode(m)[0]) > 0


def test_flow_vanishes_without_gain_loss():
    sol, _ = mode(1, W0=0.0)
    assert np.all(analytic.flow_density_1d(sol, GRID.x) == 0)


def test_2d_mode_and_beta_oracle():
    g = Grid2D.square(-12.0, 12.0, 128)
    winner, table = analytic.resolve_beta_2d(1, -1, 0.5, -3.0, 0.1, g)
    assert winner == "derived"
    assert table["derived"][1] < 1e-9
    assert table["printed"][1] > 1e-3
    sol, spec = analytic.exact_mode(2, 1, -1, 0.5, -3.0, 0.1)
    u = analytic.sample(sol, g)
    assert abs(analytic.power(sol) - quadrature(u, g)) < 1e-9
    Sx, Sy = analytic.flow_density_from_field(u, g)
    X, Y = g.mesh
    ex, ey = analytic.flow_density_2d(sol, X, Y)
    np.testing.assert_allclose(Sx, ex, atol=1e-10)
    np.testing.assert_allclose(Sy, ey, atol=1e-10)
    assert np.all(ex > 0) and np.all(ey > 0)
    # on the axes the components reduce to the one-dimensional profile
    amp = sol.m * sol.W0 * sol.phi0 ** 2 / (2 * sol.a ** 2 * (sol.m + 2))
    x = g.gx.x
    np.testing.assert_allclose(analytic.flow_density_2d(sol, x, 0.0)[0],
                               amp * np.exp(-(sol.m + 2) / sol.m * sol.a ** 2 * x ** 2), rtol=1e-14)


def test_sample_is_pt_symmetric():
    sol, _ = mode(2)
    u = analytic.sample(sol, GRID)
    # phi(-x) = conj(phi(x)) on the interior nodes (node 0 has no mirror partner)
    np.testing.assert_allclose(u[1:][::-1], np.conj(u[1:]), atol=1e-15)
