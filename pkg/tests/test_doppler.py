from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import wofz

from lics.doppler import ADAPTIVE, HERMITE, DopplerConfig, doppler_average, ladder_shifts
from lics.validation import doppler_limit_error, voigt_peak_error


def lorentz(Omega, width=1.0):
    return 1 / (1 + 1j * Omega / width)


def test_zero_width_is_identity():
    cfg = DopplerConfig(0.0, {"Omega": 1.0})
    assert doppler_average(lorentz, cfg, {"Omega": 0.3}) == lorentz(0.3)


def test_constant_response_is_preserved():
    cfg = DopplerConfig(5.0, {"Omega": 1.0})
    assert doppler_average(lambda Omega: 2.5 + 0 * Omega, cfg, {"Omega": 0.0}) == pytest.approx(2.5)


def test_hwhm_convention():
    assert DopplerConfig(1.0).e_width == pytest.approx(1 / math.sqrt(math.log(2)))


@given(st.floats(0.1, 50), st.floats(-20, 20))
def test_voigt_matches_faddeeva(ratio, detuning):
    cfg = DopplerConfig(ratio, {"Omega": 1.0})
    got = complex(doppler_average(lorentz, cfg, {"Omega": detuning}))
    s = cfg.e_width
    exact = np.conj(math.sqrt(math.pi) / s * wofz((detuning + 1j) / s))
    assert got == pytest.approx(exact, rel=1e-6)


def test_voigt_peak_vs_brute_force():
    trap, exact = voigt_peak_error(16.65)
    assert trap < 1e-6 and exact < 1e-6


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.5, 20))
def test_linearity(a, b, hwhm):
    cfg = DopplerConfig(hwhm, {"Omega": 1.0})
    f = lorentz
    g = lambda Omega: lorentz(Omega - 2.0, 3.0)  # noqa: E731
    lhs = doppler_average(lambda Omega: a * f(Omega) + b * g(Omega), cfg, {"Omega": 0.5})
    rhs = a * doppler_average(f, cfg, {"Omega": 0.5}) + b * doppler_average(g, cfg, {"Omega": 0.5})
    assert abs(lhs - rhs) <= 1e-6 * max(abs(a) + abs(b), 1e-12)


def test_narrow_distribution_recovers_homogeneous_spectrum():
    assert doppler_limit_error(1e-3) < 1e-4


def test_order_doubling_converges_at_default_order():
    # plain Gauss-Hermite is too coarse for a line much narrower than the
    # Doppler width; the default mode checks the doubling and falls back
    base = {"Omega": np.linspace(-40, 40, 9)}
    v64 = doppler_average(lorentz, DopplerConfig(16.65, {"Omega": 1.0}), base)
    v128 = doppler_average(lorentz, DopplerConfig(16.65, {"Omega": 1.0}, order=128), base)
    assert np.max(np.abs(v128 - v64)) / np.max(np.abs(v128)) < 1e-6
    wide = DopplerConfig(0.5, {"Omega": 1.0}, method=HERMITE)
    v = doppler_average(lorentz, wide, base)
    v2 = doppler_average(lorentz, DopplerConfig(0.5, {"Omega": 1.0}, order=128, method=HERMITE), base)
    assert np.max(np.abs(v2 - v)) / np.max(np.abs(v2)) < 1e-6


def test_adaptive_method_agrees():
    base = {"Omega": 0.7}
    a = doppler_average(lorentz, DopplerConfig(16.65, {"Omega": 1.0}, method=ADAPTIVE), base)
    h = doppler_average(lorentz, DopplerConfig(16.65, {"Omega": 1.0}), base)
    assert complex(a) == pytest.approx(complex(h), rel=1e-7)


def test_config_validation():
    with pytest.raises(ValueError):
        DopplerConfig(-1.0)
    with pytest.raises(ValueError):
        DopplerConfig(1.0, order=4)
    with pytest.raises(ValueError):
        DopplerConfig(1.0, method="simpson")


def test_ladder_shift_mapping():
    assert ladder_shifts(1.0, -0.9, -0.5, 0.6) == {"Omega1": 1.0, "Omega2": -0.9, "Omega_L": 1.1}
