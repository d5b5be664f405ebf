import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptsol.special import erf, erfc_positive

mpmath.mp.dps = 40


def oracle(x):
    return float(mpmath.erf(mpmath.mpf(x)))


@pytest.mark.parametrize("x", [0.0, 1e-300, 1e-8, 0.1, 0.5, 1.0, 2.0, 2.999, 3.0, 3.001, 4.5, 6.0, 27.0])
def test_matches_high_precision_oracle(x):
    assert abs(erf(x) - oracle(x)) <= 2e-15
    assert abs(erf(-x) + oracle(x)) <= 2e-15


@given(st.floats(-8, 8, allow_nan=False))
def test_random_points(x):
    assert abs(erf(x) - oracle(x)) <= 2e-15


def test_vectorised_and_odd():
    x = np.linspace(-7, 7, 1001)
    y = erf(x)
    assert y.shape == x.shape
    np.testing.assert_array_equal(y, -erf(-x))
    assert np.all(np.diff(y) >= 0)


def test_limits_and_nan():
    assert erf(np.inf) == 1.0
    assert erf(-np.inf) == -1.0
    assert math.isnan(erf(np.nan))


def test_erfc_tail_has_relative_accuracy():
    for x in (3.5, 5.0, 10.0, 20.0):
        ref = float(mpmath.erfc(x))
        assert abs(erfc_positive(x) - ref) <= 1e-14 * ref
