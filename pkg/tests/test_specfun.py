import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_array_equal

from fracspline.analysis import convergence_order
from fracspline.fractime import caputo_gmmp, gmmp_weights
from fracspline.specfun import ERFCX_ASYMPTOTIC, ERFCX_SMALL, MLParams, erfcx, heaviside, mittag_leffler


def mp_erfcx(z):
    with mpmath.workdps(40):
        z = mpmath.mpf(z)
        return float(mpmath.exp(z * z) * mpmath.erfc(z))


def mp_ml(alpha, z):
    # direct series; the digit budget covers the largest term ~ exp(|z|^(1/alpha))
    peak = abs(z) ** (1 / alpha)
    with mpmath.workdps(int(peak / 2.3) + 40):
        a, z = mpmath.mpf(alpha), mpmath.mpf(z)
        total, k = mpmath.mpf(1), 1
        while True:
            term = z**k / mpmath.gamma(a * k + 1)
            total += term
            if k > 2 * peak + 10 and abs(term) < mpmath.mpf(10) ** (-30) * abs(total):
                return float(total)
            k += 1


# -- erfcx ------------------------------------------------------------------------

def test_erfcx_examples():
    assert erfcx(0.0) == 1.0
    assert erfcx(1.0) == pytest.approx(0.4275836, abs=1e-7)
    assert erfcx(100.0) == pytest.approx(0.005641614, abs=1e-9)


def test_erfcx_large_argument_asymptotic_oracle():
    z = 100.0
    ref = 1 / (z * math.sqrt(math.pi)) * (1 - 1 / (2 * z**2) + 3 / (4 * z**4) - 15 / (8 * z**6))
    assert erfcx(z) == pytest.approx(ref, rel=1e-14)


@pytest.mark.parametrize(
    "z",
    np.concatenate([
        np.linspace(0.0, 10.0, 81),
        [ERFCX_SMALL - 1e-9, ERFCX_SMALL, ERFCX_ASYMPTOTIC - 1e-9, ERFCX_ASYMPTOTIC],
        np.linspace(10.0, 400.0, 40),
    ]),
)
def test_erfcx_high_precision_oracle(z):
    assert erfcx(z) == pytest.approx(mp_erfcx(z), rel=1e-12)


def test_erfcx_at_example_three_argument():
    z = 36 * math.pi**2 * math.sqrt(3.0)
    assert math.isfinite(erfcx(z))
    assert erfcx(z) == pytest.approx(mp_erfcx(z), rel=1e-12)


@pytest.mark.parametrize("z", [-1e-3, -1.0, float("nan")])
def test_erfcx_rejects_negative(z):
    with pytest.raises(ValueError):
        erfcx(z)


def test_erfcx_decreasing():
    z = np.linspace(0.0, 400.0, 4001)
    v = np.array([erfcx(x) for x in z])
    assert np.all(np.diff(v) < 0)


# -- Mittag-Leffler ------------------------------------------------------------------

def test_ml_examples():
    assert mittag_leffler(0.5, 0.0) == 1.0
    assert mittag_leffler(1.0, -1.0) == pytest.approx(math.exp(-1.0), rel=1e-15)
    assert mittag_leffler(0.5, -1.0) == pytest.approx(0.4275836, abs=1e-7)


@given(z=st.floats(0.0, 3.0))
@settings(max_examples=200, deadline=None)
def test_ml_half_equals_erfcx(z):
    assert mittag_leffler(0.5, -z) == pytest.approx(erfcx(z), rel=1e-10)


@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.5, 0.6, 0.9])
@pytest.mark.parametrize("z", [-0.3, -1.0, -2.0, -4.0, -5.0, -8.0, -20.0])
def test_ml_extended_precision_oracle(alpha, z):
    if abs(z) ** (1 / alpha) > 400:
        ref = float(mpmath.mp.quad(  # integral form for deep negative arguments
            lambda v: mpmath.exp(-((-z * v) ** (1 / mpmath.mpf(alpha))))
            / (v * v + 2 * v * mpmath.cos(alpha * mpmath.pi) + 1),
            [0, 1 / -z, 10 / -z, mpmath.inf],
        ) * mpmath.sin(alpha * mpmath.pi) / (alpha * mpmath.pi))
    else:
        ref = mp_ml(alpha, z)
    assert mittag_leffler(MLParams(alpha), z) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize(
    "alpha, z", [(0.1, 0.5), (0.1, 1.5), (0.3, 0.5), (0.3, 2.0), (0.3, 5.0), (0.6, 5.0), (0.9, 2.0)]
)
def test_ml_positive_arguments(alpha, z):
    assert mittag_leffler(MLParams(alpha), z) == pytest.approx(mp_ml(alpha, z), rel=1e-10)


@pytest.mark.parametrize("alpha", [0.3, 0.6, 0.9])
def test_ml_decay_is_decreasing(alpha):
    t = np.linspace(0.0, 3.0, 301)
    v = np.array([mittag_leffler(alpha, -(x**alpha)) for x in t])
    assert np.all(np.diff(v) < 0)


def test_ml_outside_region():
    with pytest.raises(ValueError):
        mittag_leffler(MLParams(0.5), 6.0)
    with pytest.raises(OverflowError):
        mittag_leffler(MLParams(0.1), 2.0)


@pytest.mark.parametrize(
    "kwargs", [dict(alpha=0.0), dict(alpha=1.2), dict(alpha=0.5, tol=1e-3), dict(alpha=0.5, series_radius=0.0)]
)
def test_ml_params_validation(kwargs):
    with pytest.raises(ValueError):
        MLParams(**kwargs)


@pytest.mark.parametrize("alpha", [0.4, 0.9])
def test_caputo_eigenfunction(alpha):
    # D^alpha E_alpha(-t^alpha) = -E_alpha(-t^alpha); check at t = 1
    u = lambda t: mittag_leffler(alpha, -(t**alpha)) if t > 0 else 1.0
    target = -u(1.0)
    pairs = []
    for n in (100, 200, 400, 800):
        tau = 1.0 / n
        samples = np.array([u(k * tau) for k in range(n + 1)])
        approx = caputo_gmmp(samples, 1.0, tau, gmmp_weights(alpha, n))
        pairs.append((tau, abs(approx - target)))
    assert pairs[-1][1] < 5e-3
    assert convergence_order(pairs) >= 0.8


# -- Heaviside ---------------------------------------------------------------------

@pytest.mark.parametrize("t, expected", [(-1.0, 0.0), (0.0, 1.0), (1e-300, 1.0), (-1e-300, 0.0)])
def test_heaviside(t, expected):
    assert heaviside(t) == expected


def test_heaviside_pulse_and_arrays():
    assert heaviside(0.3 - 0.2) - heaviside(0.3 - 0.6) == 1.0
    assert_array_equal(heaviside(np.array([-2.0, 0.0, 3.0])), [0.0, 1.0, 1.0])
