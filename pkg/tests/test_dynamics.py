import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptsol import analytic
from ptsol.dynamics import (PropagationConfig, PropagationRecord, conservation_check_linear,
                            measure_growth_rate, propagate)
from ptsol.errors import BlowUp, BoundaryLeak, NoGrowthWindow
from ptsol.model import ModelSpec, PotentialParams1D
from ptsol.spectral import Grid1D, Grid2D

G = Grid1D(-20.0, 20.0, 256)


def baseline(W0=0.2, m=1):
    return analytic.exact_mode(1, m, -1, 0.5, 3.0, W0)


def lumpy(grid):
    return 1.3 * np.exp(-(grid.x - 0.7) ** 2 / 3) * np.exp(0.4j * grid.x)


def test_strang_is_second_order():
    sol, spec = baseline(0.4, m=2)
    u0 = lumpy(G)
    finals = []
    for dz in (0.02, 0.01, 0.005, 0.0025):
        rec = propagate(spec, u0, G, PropagationConfig(z_end=1.0, dz=dz, save_every=10 ** 6))
        finals.append(rec.final)
    e1 = np.linalg.norm(finals[0] - finals[1])
    e2 = np.linalg.norm(finals[1] - finals[2])
    e3 = np.linalg.norm(finals[2] - finals[3])
    assert 3.5 < e1 / e2 < 4.5
    assert 3.5 < e2 / e3 < 4.5


def test_power_conserved_without_gain_loss():
    spec = ModelSpec(1, 2, -1, PotentialParams1D(-0.0625, 3.0, 0.0, 0.5))
    rec = propagate(spec, lumpy(G), G, PropagationConfig(z_end=5.0, dz=1e-3, save_every=50))
    assert conservation_check_linear(rec) <= 1e-8


def test_linear_free_flow_matches_fourier_solution():
    spec = ModelSpec(1, 1, 0, PotentialParams1D(0.0, 0.0, 0.0, 1.0))
    u0 = np.exp(-G.x ** 2)
    rec = propagate(spec, u0, G, PropagationConfig(z_end=0.7, dz=0.07, save_every=1))
    exact = np.fft.ifft(np.exp(-1j * G.k ** 2 * 0.7) * np.fft.fft(u0))
    np.testing.assert_allclose(rec.final, exact, atol=1e-12)


def test_exact_mode_is_transported():
    sol, spec = baseline(0.2)
    g = Grid1D(-20.0, 20.0, 512)
    rec = propagate(spec, analytic.sample(sol, g), g, PropagationConfig(z_end=5.0, dz=1e-3))
    assert max(rec.deviation) < 1e-4
    z, P, peak, d = rec.arrays()
    assert np.all(P > 0)
    assert abs(P[-1] - P[0]) / P[0] < 1e-4


def test_sampling_schedule():
    sol, spec = baseline()
    cfg = PropagationConfig(z_end=0.5, dz=0.01, save_every=7, snapshot_z=(0.0, 0.25))
    rec = propagate(spec, analytic.sample(sol, G), G, cfg)
    assert rec.z[0] == 0 and np.isclose(rec.z[-1], 0.5)
    assert len(rec.z) == len(rec.power) == 50 // 7 + 2
    np.testing.assert_allclose(rec.snapshot_z, [0.0, 0.25])


def test_zero_length_run():
    sol, spec = baseline()
    rec = propagate(spec, analytic.sample(sol, G), G, PropagationConfig(z_end=0.0))
    assert rec.z == [0.0] and rec.deviation == [0.0]


def test_noise_is_seeded_and_reference_is_clean():
    sol, spec = baseline()
    u0 = analytic.sample(sol, G)
    cfg = PropagationConfig(z_end=0.1, dz=0.01, save_every=5, perturb_amplitude=1e-3, seed=4)
    a = propagate(spec, u0, G, cfg)
    b = propagate(spec, u0, G, cfg)
    np.testing.assert_array_equal(a.final, b.final)
    assert 1e-4 < a.deviation[0] < 1e-2
    c = propagate(spec, u0, G, PropagationConfig(z_end=0.1, dz=0.01, save_every=5,
                                                 perturb_amplitude=1e-3, seed=5))
    assert not np.array_equal(a.final, c.final)


def test_wide_field_is_rejected():
    sol, spec = baseline()
    with pytest.raises(BoundaryLeak):
        propagate(spec, np.ones(G.n), G, PropagationConfig(z_end=0.1, dz=0.01))


def test_runaway_gain_reports_blowup():
    # far above the PT-breaking point the linear problem amplifies without bound
    spec = ModelSpec(1, 1, 0, PotentialParams1D(0.0, 0.0, 20.0, 0.5))
    u0 = np.exp(-(G.x + 1.5) ** 2)
    with pytest.raises(BlowUp) as info:
        propagate(spec, u0, G, PropagationConfig(z_end=5.0, dz=1e-3))
    assert 0 < info.value.z < 5.0
    assert info.value.record.z[0] == 0.0


def synthetic(rate, noise=1e-7, n=400):
    z = np.linspace(0, 20, n)
    d = noise + 1e-6 * np.exp(rate * z)
    return PropagationRecord(z=list(z), power=[1.0] * n, peak_intensity=[1.0] * n, deviation=list(d))


@given(st.floats(0.5, 2.0))
def test_growth_rate_recovered_from_clean_exponential(rate):
    assert abs(measure_growth_rate(synthetic(rate)) - rate) < 0.05 * rate


def test_flat_deviation_has_no_window():
    with pytest.raises(NoGrowthWindow):
        measure_growth_rate(synthetic(0.0))
