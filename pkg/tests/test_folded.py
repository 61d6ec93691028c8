from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lics.folded import (CLOSED, GENERATED, OPEN, FoldedParams, closed_populations,
                         closed_populations_e1_off, dissociation_limits, folded_weak_coherences,
                         open_populations, open_populations_e3_off,
                         open_populations_no_discrete_field, populations, uniform_channels)
from lics.oracle import solve_folded_reduced
from lics.params import ParameterError
from lics.validation import random_folded

seeds = st.integers(0, 2 ** 32 - 1)
KEYS = ("r_m", "r_n", "r_f", "r_mn", "r_mf", "r_nf", "W", "W_balance")


def draw(seed, config=None):
    return random_folded(np.random.default_rng(seed), config)


def assert_states_close(a, b, rel, keys=KEYS):
    for k in keys:
        x, y = complex(getattr(a, k)), complex(getattr(b, k))
        assert abs(x - y) <= rel * max(abs(y), 1e-300) or abs(x - y) < 1e-300, (k, x, y)


def test_open_fields_off_is_pump_balance():
    p = FoldedParams.from_rates(0.5, 2.0, 3.0, config=OPEN, Q_m=1.0, Q_n=0.4, Q_f=0.9)
    s = open_populations(p)
    assert (s.r_m, s.r_n, s.r_f) == pytest.approx((2.0, 0.2, 0.3), rel=1e-14)
    assert s.W == 0


def test_closed_fields_off_stays_in_ground_level():
    s = closed_populations(FoldedParams.from_rates(0.5, 2.0, 3.0, config=CLOSED))
    assert (s.r_m, s.r_n, s.r_f, s.W) == (1.0, 0.0, 0.0, 0.0)


@given(seeds)
def test_e3_off_limit(seed):
    p = draw(seed, OPEN)
    s, ref = open_populations(p.e3_off()), open_populations_e3_off(p)
    assert_states_close(s, ref, 1e-8, ("r_m", "r_n", "r_f", "r_mn", "W"))
    assert ref.r_f == pytest.approx(p.Q_f / p.Gamma_f, rel=1e-14)
    assert ref.W == pytest.approx(2 * p.gamma_n.nn * ref.r_n, rel=1e-14)


@given(seeds)
def test_no_discrete_field_limit(seed):
    p = draw(seed, OPEN).with_(G_mn=0.0)
    ref = open_populations_no_discrete_field(p)
    assert_states_close(open_populations(p), ref, 1e-8, ("r_m", "r_n", "r_f", "r_nf", "W"))
    near = open_populations(p.with_(G_mn=1e-9 * p.Gamma_mn))
    assert_states_close(near, ref, 1e-6, ("r_m", "r_n", "r_f", "r_nf", "W"))


@given(seeds)
def test_e1_off_closed_limit(seed):
    p = draw(seed, CLOSED).with_(G_mn=0.0)
    assert_states_close(closed_populations(p), closed_populations_e1_off(p), 1e-12,
                        ("r_m", "r_n", "r_f", "r_nf", "W"))


@given(seeds)
def test_closed_conservation(seed):
    s = closed_populations(draw(seed, CLOSED))
    assert abs(s.r_m + s.r_n + s.r_f - 1) < 1e-12


@given(seeds)
def test_closed_forms_match_reduced_linear_solve(seed):
    p = draw(seed)
    assert_states_close(populations(p), solve_folded_reduced(p), 1e-9,
                        ("r_m", "r_n", "r_f", "r_mn", "r_mf", "r_nf"))


@given(seeds)
def test_uniform_channels_make_both_rates_equal(seed):
    s = populations(draw(seed))
    assert s.W == pytest.approx(s.W_balance, rel=1e-10)


@given(seeds)
def test_interference_off_switch(seed):
    p = draw(seed).no_interference()
    s = populations(p)
    assert s.r_mf == 0 or abs(s.r_mf) < 1e-300 or p.G_mn != 0
    two_rates = 2 * p.gamma_n.nn * s.r_n + 2 * p.gamma_f.ff * s.r_f
    assert s.W_balance == pytest.approx(two_rates, rel=1e-12)


def test_no_cross_channel_gives_no_nf_coherence():
    p = draw(4, OPEN).with_(G_mn=0.0).no_interference()
    assert open_populations_no_discrete_field(p).r_nf == 0


def test_generated_pump_feeds_n_only_through_interference():
    p = draw(5, OPEN).with_(G_mn=0.0, Q_n=0.0, w_nm=0.0)
    assert open_populations_no_discrete_field(p.no_interference()).r_n == 0
    assert open_populations_no_discrete_field(p).r_n != 0


def _single_channel(**kw):
    ch = uniform_channels(2.0, 0.0)
    return FoldedParams.from_rates(0.5, 2.0, 3.0, config=CLOSED, **ch, **kw)


def test_dissociation_limits():
    assert dissociation_limits(_single_channel(w_n=0.3).with_(
        gamma_n=uniform_channels(0.0, 0.0)["gamma_n"])).incoherent == 0
    big = dissociation_limits(_single_channel(w_n=1e12))
    assert big.incoherent == pytest.approx(2.0, rel=1e-10)
    p = _single_channel(w_n=0.3)
    assert closed_populations(p).W / 2 == pytest.approx(dissociation_limits(p).incoherent, rel=1e-12)
    p = _single_channel(w_n=0.3, G_mn=1.2)
    assert closed_populations(p).W / 2 == pytest.approx(dissociation_limits(p).two_photon, rel=1e-10)


def test_weak_coherences():
    p = FoldedParams.from_rates(0.5, 2.0, 3.0, **uniform_channels(1.0, 1.0, cross=1.0))
    no_cross = p.with_(gamma_m=p.gamma_m.__class__(1.0, 1.0, 0.0, 0.0))
    assert folded_weak_coherences(no_cross).cross == 0
    bare = FoldedParams.from_rates(0.5, 2.0, 3.0)
    assert folded_weak_coherences(bare, G_probe=0.1).driven == pytest.approx(0.1j / bare.Gamma_mn)
    assert folded_weak_coherences(bare, GENERATED).cross == 0
    with pytest.raises(ValueError):
        folded_weak_coherences(bare, "other")


def test_state_flags():
    s = populations(draw(1, OPEN))
    assert not s.negative_population
    assert bool(s.quasi_stationary(1e-6)) and not bool(s.quasi_stationary(1e9))


def test_configuration_checks():
    with pytest.raises(ParameterError):
        FoldedParams.from_rates(1, 1, 1, config=OPEN, w_n=0.1)
    with pytest.raises(ParameterError):
        FoldedParams.from_rates(1, 1, 1, config=CLOSED, Q_m=0.1)
    with pytest.raises(ParameterError):
        FoldedParams.from_rates(1, 1, 1, config="half")
    with pytest.raises(ParameterError):
        FoldedParams(1, 1, 1, 1, 1, 1, Omega_mn=1.0, Omega_nf=1.0, Omega_mf=3.0)
    with pytest.raises(ParameterError):
        open_populations_no_discrete_field(draw(2, CLOSED))
