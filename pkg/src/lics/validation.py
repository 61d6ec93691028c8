"""Acceptance checks: landmark reproduction and oracle comparisons.

Each check returns a CheckResult with the measured worst-case numbers so
that failures are reported rather than hidden. ``run_all`` is what the
``validate`` command prints.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import wofz

from .doppler import DopplerConfig, doppler_average
from .folded import (CLOSED, OPEN, FoldedParams, closed_populations, closed_populations_e1_off,
                     open_populations, open_populations_e3_off, open_populations_no_discrete_field,
                     populations, uniform_channels)
from .ladder import fs_forms, ladder_point, ladder_spectrum, three_level_F1
from .oracle import R_SET, r_SET, integrate_folded_master, solve_ladder_linear_system
from .params import FanoSet, LadderParams
from .presets import get_preset
from .propagation import PropagationSetup, eta_q, integrate_coupled_waves, physical_coefficients
from .sweep import SweepSpec, folded_params, resolve, run_sweep, FOLDED_POPULATION


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


# ------------------------------------------------------------------ landmarks

def _landmark_check(number, name, preset_id, time_limit: Optional[float] = None) -> CheckResult:
    t0 = time.perf_counter()
    result = run_sweep(SweepSpec.from_preset(preset_id))
    elapsed = time.perf_counter() - t0
    checks = result.landmarks
    ok = bool(checks) and all(c.passed for c in checks)
    detail = "; ".join(c.line() for c in checks)
    if time_limit is not None:
        ok = ok and elapsed < time_limit
        detail += f"; runtime {elapsed:.1f} s (limit {time_limit:g} s)"
    return CheckResult(number, name, ok, detail)


def check_fig4() -> CheckResult:
    return _landmark_check(1, "fig4 conversion maximum", "fig4", time_limit=10.0)


def check_fig5() -> CheckResult:
    return _landmark_check(2, "fig5 first maximum", "fig5")


def check_fig6() -> CheckResult:
    return _landmark_check(3, "fig6 first maximum", "fig6")


def check_folded_maxima() -> CheckResult:
    parts = [_landmark_check(4, "", pid) for pid in ("fig13a", "fig13b", "fig13c")]
    return CheckResult(4, "folded FWM maxima for q_nf = 100, 5, 0",
                       all(p.passed for p in parts),
                       " | ".join(f"fig13{s}: {p.detail}" for s, p in zip("abc", parts)))


def check_fig16() -> CheckResult:
    return _landmark_check(5, "fig16 maximum", "fig16")


# ------------------------------------------------------------- ladder oracle

def random_ladder(rng: np.random.Generator) -> LadderParams:
    """Random ladder parameters: finite widths, |q| <= 20, drives <= 1e4."""
    def logu(lo, hi):
        return float(10 ** rng.uniform(math.log10(lo), math.log10(hi)))

    Gm, Gn, Gf = logu(0.1, 100), logu(0.1, 100), logu(0.1, 100)
    q = rng.uniform(-20, 20, 5)
    fano = FanoSet(q_gn=q[0], q_gf=q[1], q_fn=q[2], q_nn=q[3], q_ff=q[4])
    scale = max(Gm, Gn, Gf)
    return LadderParams(Gamma_gm=Gm, Gamma_gn=Gn, Gamma_gf=Gf,
                        g_mn=logu(1e-3, 1e4), g_nn=logu(1e-3, 1e4), g_ff=logu(1e-3, 1e4),
                        Omega1=rng.uniform(-5, 5) * scale, Omega2=rng.uniform(-5, 5) * scale,
                        Omega_L=rng.uniform(-5, 5) * scale, fano=fano,
                        cross=float(rng.choice([1.0, -1.0, rng.uniform(-1, 1)])))


def ladder_oracle_errors(p: LadderParams):
    """Relative errors (F1, FS, chi3 ratio) and the FS three-form spread."""
    pt = ladder_point(p, check_forms=False)
    R = solve_ladder_linear_system(p, R_SET)
    r = solve_ladder_linear_system(p, r_SET)
    F1, FS = pt.F1.value, pt.FS.value
    e1 = abs(R.F1 - F1) / abs(F1)
    eS = abs(r.FS - FS) / abs(FS)
    eC = abs(R.chi3_S_ratio - pt.chi3_S_ratio) / abs(pt.chi3_S_ratio)
    a, b, c = fs_forms(p)
    spread = max(abs(b - a), abs(c - a)) / abs(a)
    return e1, eS, eC, spread


def check_ladder_oracle(draws: int = 10_000, seed: int = 1) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = np.zeros(4)
    for _ in range(draws):
        worst = np.maximum(worst, ladder_oracle_errors(random_ladder(rng)))
    ok = max(worst[:3]) < 1e-10 and worst[3] < 1e-12
    return CheckResult(6, "ladder closed forms vs direct linear solve", bool(ok),
                       f"{draws} draws: max rel err F1 {worst[0]:.2e}, FS {worst[1]:.2e}, "
                       f"chi3 ratio {worst[2]:.2e} (limit 1e-10); FS three-form spread "
                       f"{worst[3]:.2e} (limit 1e-12)")


# ------------------------------------------------------------- folded oracle

def random_folded(rng: np.random.Generator, config: Optional[str] = None) -> FoldedParams:
    """Random folded parameters in the regime where the ODE oracle is practical."""
    config = config or (OPEN if rng.random() < 0.5 else CLOSED)
    Gm, Gn, Gf = rng.uniform(0.2, 2.0, 3)
    ch = uniform_channels(rng.uniform(0.5, 4.0), rng.uniform(0.5, 4.0),
                          q_nn=rng.uniform(-1, 1), q_ff=rng.uniform(-1, 1),
                          q_nf=rng.uniform(-5, 5), cross=float(rng.choice([1.0, -1.0])))
    kw = dict(G_mn=rng.uniform(0, 3), Omega_mn=rng.uniform(-3, 3), Omega_nf=rng.uniform(-3, 3),
              config=config, **ch)
    if config == OPEN:
        kw.update(Q_m=rng.uniform(0.5, 1.5), Q_n=rng.uniform(0, 0.5), Q_f=rng.uniform(0, 0.5),
                  w_nm=rng.uniform(0, 0.5) * min(Gn, 1.0))
    else:
        kw.update(w_n=rng.uniform(0.05, 0.5), w_f=rng.uniform(0, 0.3))
    return FoldedParams.from_rates(Gm, Gn, Gf, **kw)


def fig9_sample_points(count: int = 20, seed: int = 9):
    """Parameter sets at random points of the fig9 (Omega_nf, G_mn) plane."""
    pr = get_preset("fig9a")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        block = dict(pr.values())
        block["Omega_nf/Gamma_mf"] = float(rng.uniform(-10, 10))
        block["G_mn/Gamma_mn"] = float(rng.uniform(0, 10))
        v = resolve(FOLDED_POPULATION, block)
        out.append(folded_params(v).with_(G_mn=float(v["G_mn"]), Omega_nf=float(v["Omega_nf"]),
                                          Omega_mn=float(v["Omega_mn"])))
    return out


def ode_vs_closed(p: FoldedParams) -> float:
    """Largest relative deviation of ODE steady state from the closed form.

    The closed form is evaluated with the widths and shifts the discretized
    continuum realizes. Populations are compared relative to the total bound
    population; the dissociation rate relative to itself.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = integrate_folded_master(p)
    cf = populations(res.realized)
    ode = res.state
    total = float(cf.r_m + cf.r_n + cf.r_f)
    errs = [abs(float(getattr(ode, k)) - float(getattr(cf, k))) / total
            for k in ("r_m", "r_n", "r_f")]
    errs.append(abs(float(ode.W) - float(cf.W_balance)) / max(abs(float(cf.W_balance)), 1e-300))
    if not res.steady:
        errs.append(math.inf)
    return max(errs)


def check_folded_oracle(random_sets: int = 10, fig9_points: int = 20, seed: int = 3) -> CheckResult:
    rng = np.random.default_rng(seed)
    rand = max(ode_vs_closed(random_folded(rng)) for _ in range(random_sets))
    fig9 = max(ode_vs_closed(p) for p in fig9_sample_points(fig9_points))
    cons = 0.0
    for _ in range(200):
        s = closed_populations(random_folded(rng, CLOSED))
        cons = max(cons, abs(float(s.r_m + s.r_n + s.r_f) - 1.0))
    ok = rand < 0.02 and fig9 < 0.02 and cons < 1e-12
    return CheckResult(7, "folded closed forms vs discretized-continuum ODE", ok,
                       f"{random_sets} random sets max dev {rand:.2e}, {fig9_points} fig9 points "
                       f"max dev {fig9:.2e} (limit 2e-2); closed conservation {cons:.1e} (limit 1e-12)")


# -------------------------------------------------------------- propagation

def random_setup(rng: np.random.Generator) -> PropagationSetup:
    C = float(10 ** rng.uniform(-1, 1))
    return PropagationSetup(rng.uniform(0, 0.5), rng.uniform(0, 0.5), rng.uniform(0, 0.2), C,
                            chi_phase=complex(np.exp(1j * rng.uniform(0, 2 * np.pi))))


def propagation_errors(setup: PropagationSetup, z0=None):
    """(closed-form vs ODE error, Manley-Rowe error of the lossless twin)."""
    z0 = np.linspace(0, 20, 201) if z0 is None else z0
    kS, a1, aS = physical_coefficients(setup)
    waves = integrate_coupled_waves(z0, kS, a1, aS)
    closed = eta_q(setup, z0)
    err = float(np.max(np.abs(waves.eta - closed)) / max(float(np.max(closed)), 1e-300))
    lossless = integrate_coupled_waves(z0, kS, 0.0, 0.0)
    mr = float(np.max(np.abs(lossless.eta + lossless.fundamental_fraction - 1)))
    return err, mr


def check_propagation(draws: int = 50, seed: int = 5) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = np.zeros(2)
    for _ in range(draws):
        worst = np.maximum(worst, propagation_errors(random_setup(rng)))
    fig6 = get_preset("fig6")
    spec = SweepSpec.from_preset("fig6")
    v = resolve(spec.scheme, {**spec.fixed, "Omega_L/Gamma_gf": -250.0, "z_alpha10": 0.0})
    from .propagation import ladder_setup
    from .sweep import _ladder_params
    p = _ladder_params(v).with_(Omega1=float(v["Omega1"]), Omega2=float(v["Omega2"]),
                                Omega_L=float(v["Omega_L"]))
    f6 = propagation_errors(ladder_setup(p, float(v["C"])))
    worst = np.maximum(worst, f6)
    ok = worst[0] < 1e-8 and worst[1] < 1e-8
    return CheckResult(8, "propagation closed form vs coupled-wave ODE", bool(ok),
                       f"{draws} random setups + {fig6.id} at Omega_L=-250: max rel err "
                       f"{worst[0]:.2e}, lossless photon balance err {worst[1]:.2e} (limit 1e-8)")


# -------------------------------------------------------------------- limits

def _rel(a, b) -> float:
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def limit_errors(rng: np.random.Generator) -> dict:
    lp = random_ladder(rng).with_(g_nn=0.0, g_ff=0.0)
    three = _rel(complex(ladder_point(lp).F1), three_level_F1(lp))
    po = random_folded(rng, OPEN)
    s, r = open_populations(po.e3_off()), open_populations_e3_off(po)
    e3 = max(_rel(getattr(s, k), getattr(r, k)) for k in ("r_m", "r_n", "r_f", "W"))
    p0 = po.with_(G_mn=0.0)
    s, r = open_populations(p0), open_populations_no_discrete_field(p0)
    g0 = max(_rel(getattr(s, k), getattr(r, k)) for k in ("r_m", "r_n", "r_f", "r_nf", "W"))
    pc = random_folded(rng, CLOSED).with_(G_mn=0.0)
    s, r = closed_populations(pc), closed_populations_e1_off(pc)
    e1 = max(_rel(getattr(s, k), getattr(r, k)) for k in ("r_m", "r_n", "r_f", "r_nf", "W"))
    return {"three-level": three, "E3 off": e3, "G_mn -> 0": g0, "E1 off closed": e1}


def check_limits(draws: int = 200, seed: int = 7) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst: dict = {}
    for _ in range(draws):
        for k, v in limit_errors(rng).items():
            worst[k] = max(worst.get(k, 0.0), v)
    ok = all(v < 1e-8 for v in worst.values())
    return CheckResult(9, "limit identities", ok,
                       ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + " (limit 1e-8)")


# ------------------------------------------------------------------- Doppler

def doppler_limit_error(hwhm_ratio: float = 1e-3) -> float:
    """Sup-norm gap between narrow-Doppler and homogeneous fig2a curve-2 spectra."""
    spec = SweepSpec.from_preset("fig2a", curve="2")
    v = resolve("ladder-spectrum", spec.fixed)
    from .sweep import _ladder_params
    p = _ladder_params(v)
    O1 = np.linspace(-5, 5, 401) * p.Gamma_gm
    base = {"Omega1": O1, "Omega2": float(v["Omega2"]), "Omega_L": float(v["Omega_L"])}
    homo = ladder_spectrum(p, **base).F1
    cfg = DopplerConfig(hwhm_ratio * p.Gamma_gm, {"Omega1": 1.0, "Omega2": -0.9, "Omega_L": 1.1})
    avg = doppler_average(lambda **kw: ladder_spectrum(p, **kw).F1, cfg, base)
    return float(np.max(np.abs(avg - homo)))


def voigt_peak_error(ratio: float = 16.65) -> tuple:
    """(quadrature vs dense trapezoid, quadrature vs Faddeeva) relative errors."""
    width = 1.0
    cfg = DopplerConfig(ratio * width, {"Omega": 1.0})
    avg = complex(doppler_average(lambda Omega: 1 / (1 + 1j * Omega / width), cfg, {"Omega": 0.0}))
    s = cfg.e_width
    u = np.linspace(-12 * s, 12 * s, 2_000_001)
    f = np.exp(-(u / s) ** 2) / (math.sqrt(math.pi) * s) / (1 - 1j * u / width)
    brute = trapezoid(f, u)
    exact = math.sqrt(math.pi) * width / s * wofz(1j * width / s)
    return abs(avg - brute) / abs(brute), abs(avg - exact) / abs(exact)


def check_doppler() -> CheckResult:
    lim = doppler_limit_error()
    trap, faddeeva = voigt_peak_error()
    ok = lim < 1e-4 and trap < 1e-6
    return CheckResult(10, "Doppler limits", ok,
                       f"narrow-width sup-norm gap {lim:.2e} (limit 1e-4); Voigt peak vs dense "
                       f"trapezoid {trap:.2e} (limit 1e-6), vs Faddeeva {faddeeva:.2e}")


CHECKS: tuple = (check_fig4, check_fig5, check_fig6, check_folded_maxima, check_fig16,
                 check_ladder_oracle, check_folded_oracle, check_propagation, check_limits,
                 check_doppler)


def run_all(checks=CHECKS, echo: Optional[Callable[[str], None]] = None) -> list:
    out = []
    for fn in checks:
        r = fn()
        out.append(r)
        if echo is not None:
            echo(r.line())
    return out
