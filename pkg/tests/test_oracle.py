from __future__ import annotations

import warnings

import numpy as np
import pytest

from lics.folded import CLOSED, OPEN, FoldedParams, open_populations_e3_off, populations, uniform_channels
from lics.oracle import continuum_for, integrate_folded_master, realized_params
from lics.validation import fig9_sample_points, ode_vs_closed, random_folded


def _prototype(config=CLOSED, **kw):
    ch = uniform_channels(3.0, 3.0, q_nn=0.2, q_ff=-0.5, q_nf=10.0)
    extra = dict(w_n=0.1 * 12 / 7) if config == CLOSED else dict(Q_m=1.0, Q_n=0.2, Q_f=0.1, w_nm=0.1)
    extra.update(kw)
    return FoldedParams.from_rates(2 / 7, 12 / 7, 12 / 7, G_mn=1.5, Omega_nf=2.0, config=config,
                                   **ch, **extra)


def test_realized_widths_match_targets():
    p = _prototype()
    r = realized_params(p, continuum_for(p))
    for name in ("gamma_m", "gamma_n", "gamma_f"):
        got, want = getattr(r, name), getattr(p, name)
        for k in ("nn", "ff", "nf"):
            assert getattr(got, k) == pytest.approx(getattr(want, k), rel=5e-3)


@pytest.mark.parametrize("config", [CLOSED, OPEN])
def test_ode_matches_closed_forms(config):
    p = _prototype(config)
    res = integrate_folded_master(p)
    assert res.steady
    ref = populations(res.realized)
    for k in ("r_m", "r_n", "r_f"):
        assert getattr(res.state, k) == pytest.approx(getattr(ref, k), rel=1e-2)
    assert res.state.W == pytest.approx(ref.W_balance, rel=1e-2)
    # against the target (not realized) widths the discretization error stays small too
    target = populations(p)
    for k in ("r_m", "r_n", "r_f"):
        assert getattr(res.state, k) == pytest.approx(getattr(target, k), rel=2e-2)


def test_open_probability_bookkeeping():
    res = integrate_folded_master(_prototype(OPEN))
    assert res.balance_error < 1e-6


def test_e3_off_dissociation_trace():
    p = _prototype(OPEN).e3_off()
    res = integrate_folded_master(p)
    ref = open_populations_e3_off(res.realized)
    assert res.W_trace[-1] == pytest.approx(2 * res.realized.gamma_n.nn * ref.r_n, rel=1e-2)


def test_weak_coupling_relaxes_to_pump_balance_quickly():
    ch = uniform_channels(1e-6, 1e-6)
    p = FoldedParams.from_rates(1.0, 1.5, 2.0, config=OPEN, Q_m=1.0, Q_n=0.5, Q_f=0.2, **ch)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = integrate_folded_master(p, t_end=20 / 1.0)
    assert (res.state.r_m, res.state.r_n, res.state.r_f) == pytest.approx((1.0, 1 / 3, 0.1), rel=1e-4)


def test_discretization_convergence():
    p = _prototype()
    c = continuum_for(p)
    coarse = integrate_folded_master(p, c).state
    fine = integrate_folded_master(p, continuum_for(p, bin_width=c.bin_width / 2)).state
    for k in ("r_m", "r_n", "r_f"):
        assert abs(getattr(fine, k) - getattr(coarse, k)) <= 2e-3 * abs(getattr(coarse, k))


def test_random_sets_and_fig9_points():
    rng = np.random.default_rng(21)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert max(ode_vs_closed(random_folded(rng)) for _ in range(3)) < 0.02
        assert max(ode_vs_closed(p) for p in fig9_sample_points(2, seed=1)) < 0.02
