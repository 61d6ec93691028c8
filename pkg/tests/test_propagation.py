from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lics.params import ParameterError
from lics.propagation import (PropagationSetup, conversion_rate_b, eta0_fano, eta_q,
                              eta_q_low_depletion, eta_q_scaled, first_maximum,
                              integrate_coupled_waves, locate_maximum, physical_coefficients)
from lics.sweep import SweepSpec, run_sweep
from lics.presets import Axis


@st.composite
def setups(draw):
    return PropagationSetup(draw(st.floats(0, 0.5)), draw(st.floats(0, 0.5)),
                            draw(st.floats(1e-6, 0.2)), draw(st.floats(0.1, 10)),
                            chi_phase=complex(np.exp(1j * draw(st.floats(0, 2 * math.pi)))))


@pytest.mark.parametrize("q,expected", [(0.0, 1.0), (-2.0, 5.0), (10.0, 101.0)])
def test_fano_enhancement(q, expected):
    assert eta0_fano(q) == expected


def test_conversion_rate_limits():
    s = PropagationSetup(0.3, 0.1, 0.0, 2.0)
    assert conversion_rate_b(s) == pytest.approx(-(0.3 - 0.2) ** 2 / 8)
    s = PropagationSetup(0.2, 0.1, 0.05, 2.0)
    assert conversion_rate_b(s) == pytest.approx(0.2)


def test_eta_trivial_limits():
    s = PropagationSetup(0.3, 0.01, 0.001, 1.0)
    assert eta_q(s, 0.0) == 0.0
    assert conversion_rate_b(s) < 0
    assert eta_q(s, 1e4) < 1e-100
    with pytest.raises(ParameterError):
        eta_q(s, -1.0)
    with pytest.raises(ParameterError):
        PropagationSetup(0.1, 0.1, 0.1, 0.0)


@given(setups())
def test_closed_form_matches_coupled_wave_ode(setup):
    z0 = np.linspace(0, 20, 101)
    kS, a1, aS = physical_coefficients(setup)
    waves = integrate_coupled_waves(z0, kS, a1, aS)
    closed = eta_q(setup, z0)
    assert np.max(np.abs(waves.eta - closed)) <= 1e-8 * max(closed.max(), 1e-300)


@given(setups())
def test_bounded_by_photon_conservation(setup):
    assert np.all(eta_q(setup, np.linspace(0, 50, 201)) <= 1 + 1e-12)


@given(st.floats(0.01, 2), st.floats(-1, 1))
def test_manley_rowe_lossless(kappa, phase):
    z = np.linspace(0, 20, 201)
    w = integrate_coupled_waves(z, kappa * np.exp(1j * phase), 0.0, 0.0)
    assert np.max(np.abs(w.eta + w.fundamental_fraction - 1)) < 1e-8


def test_no_coupling_gives_beer_law():
    z = np.linspace(0, 5, 11)
    w = integrate_coupled_waves(z, 0.0, 0.7, 0.2)
    assert np.all(w.a_S == 0)
    assert np.allclose(w.fundamental_fraction, np.exp(-0.7 * z), rtol=1e-10)


@given(st.floats(0.01, 1), st.floats(-2, 2), st.floats(0, 1), st.floats(0, 1))
def test_low_depletion_matches_ode_without_back_conversion(kappa, dk, a1, aS):
    z = np.linspace(0, 10, 51)
    w = integrate_coupled_waves(z, kappa, a1, aS, delta_k=dk, back_conversion=False)
    ref = eta_q_low_depletion(kappa ** 2, dk - 0.5j * (aS - a1), aS, z)
    assert np.max(np.abs(w.eta - ref)) <= 1e-8 * max(ref.max(), 1e-300)


def test_quadratic_small_signal_growth():
    z = np.array([0.0, 1e-3, 1.0, 3.0])
    assert np.allclose(eta_q_low_depletion(0.2, 0.0, 0.0, z), 0.2 * z ** 2)


def test_oscillation_period_of_sin_branch():
    C, e0 = 2.0, 0.05
    s = PropagationSetup(0.0, 0.0, e0, C)
    b = conversion_rate_b(s)
    period = math.pi / math.sqrt(b * C)
    zeros = period * np.arange(1, 5)
    assert np.all(eta_q(s, zeros) < 1e-25)
    assert np.all(eta_q(s, zeros - period / 2) > 0.1)


def test_continuity_across_zero_rate():
    z0 = 3.0
    base = dict(alpha1_bar=0.2, alphaS_bar=0.1, C=1.0)
    e_crit = (0.2 - 0.1) ** 2 / 16
    gaps = [abs(eta_q_scaled(eta_bar=e_crit * (1 + eps), **base, z0=z0)
                - eta_q_scaled(eta_bar=e_crit * (1 - eps), **base, z0=z0)) for eps in (1e-2, 1e-4, 1e-6)]
    # the gap closes linearly with the distance from b = 0
    assert gaps[1] < 2e-2 * gaps[0] and gaps[2] < 2e-2 * gaps[1] and gaps[2] < 1e-7


def test_growth_exponent_matches_ode_fit():
    s = PropagationSetup(0.2, 0.0, 0.001, 1.0)
    b = conversion_rate_b(s)
    assert b < 0
    z0 = np.linspace(0, 200, 401)
    kS, a1, aS = physical_coefficients(s)
    w = integrate_coupled_waves(z0, kS, a1, aS)
    slope = np.polyfit(z0[200:], np.log(w.eta[200:]), 1)[0]
    predicted = -(s.alpha1_bar + s.C * s.alphaS_bar) + 2 * math.sqrt(-b * s.C)
    assert slope == pytest.approx(predicted, rel=1e-6)


def test_fig4_rate_positive_on_finite_detuning_interval():
    spec = SweepSpec.from_preset("fig4", axes=(Axis("Omega_L/Gamma_gf", -3000, 3000, 601),),
                                 fixed={"z_alpha10": 4000.0}, outputs=("b_bar",))
    b = run_sweep(spec, refine=False).table.column("b_bar")
    pos = np.flatnonzero(b > 0)
    assert pos.size > 0 and pos[0] > 0 and pos[-1] < b.size - 1
    assert np.all(np.diff(pos) == 1)


def test_locate_and_first_maximum():
    def surface(d, z):
        return np.exp(-(d - 0.3) ** 2) * np.exp(-(z - 2.0) ** 2)
    m = locate_maximum(surface, np.linspace(-3, 3, 13), np.linspace(0, 5, 11))
    assert m.eta == pytest.approx(1.0, abs=1e-8)
    assert m.detuning == pytest.approx(0.3, abs=1e-4) and m.z0 == pytest.approx(2.0, abs=1e-4)
    assert m.optical_depth == pytest.approx(4.0, abs=1e-3)
    z = np.linspace(0, 10, 1001)
    v, at = first_maximum(np.sin(z) ** 2 * np.exp(-0.01 * z), z)
    assert at == pytest.approx(math.pi / 2, abs=0.02)
