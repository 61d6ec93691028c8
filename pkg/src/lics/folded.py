"""Quasi-stationary solutions of the folded scheme.

Level m is coupled to n by a discrete field (coupling G_mn); n and f are
both coupled to one dissociation continuum by two further fields. After
the continuum is eliminated, the widths gamma^j_il and shifts
delta^j_il = q^j_il gamma^j_il carry a superscript j in {m, n, f} naming
the continuum energy at which they are evaluated: the two-photon energy
reached from m, and the energies resonant with n and with f.

Steady states follow from a 3x3 real population problem once the three
coherences are expressed through the populations. The helpers below
name the intermediate sums after their role in that elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from types import SimpleNamespace
from typing import Optional

import numpy as np

from .params import ParameterError, _check_finite
from .propagation import PropagationSetup

OPEN = "open"
CLOSED = "closed"

FUNDAMENTAL = "fundamental"
GENERATED = "generated"


class DegenerateSteadyState(ArithmeticError):
    """The population determinant vanished."""


@dataclass(frozen=True)
class ContinuumChannels:
    """Continuum-mediated widths (or Fano ratios) at one continuum energy.

    ``nn`` and ``ff`` are the diagonal channels, ``nf``/``fn`` the cross
    channel; ``fn`` defaults to ``nf``.
    """

    nn: float = 0.0
    ff: float = 0.0
    nf: float = 0.0
    fn: Optional[float] = None

    def __post_init__(self):
        if self.fn is None:
            object.__setattr__(self, "fn", self.nf)
        _check_finite(self)

    @classmethod
    def widths(cls, nn: float, ff: float, cross: float = 1.0) -> "ContinuumChannels":
        """Widths with the cross width cross * sqrt(nn * ff)."""
        if nn < 0 or ff < 0:
            raise ParameterError("gamma", (nn, ff), "widths must be >= 0")
        if not -1.0 <= cross <= 1.0:
            raise ParameterError("cross", cross, "must lie in [-1, 1]")
        c = cross * math.sqrt(nn * ff)
        return cls(nn, ff, c, c)


@dataclass(frozen=True)
class FoldedParams:
    """Folded-scheme parameters (rates in a common reference unit).

    ``gamma_m``, ``gamma_n``, ``gamma_f`` hold the continuum widths
    evaluated at the two-photon energy from m and at the energies resonant
    with n and f; ``q_m``, ``q_n``, ``q_f`` the matching Fano ratios.
    ``config`` selects open pumping (Q_m, Q_n, Q_f) or a closed system
    with incoherent excitation rates (w_n, w_f) out of m.
    """

    Gamma_m: float
    Gamma_n: float
    Gamma_f: float
    Gamma_mn: float
    Gamma_mf: float
    Gamma_nf: float
    G_mn: float = 0.0
    gamma_m: ContinuumChannels = ContinuumChannels()
    gamma_n: ContinuumChannels = ContinuumChannels()
    gamma_f: ContinuumChannels = ContinuumChannels()
    q_m: ContinuumChannels = ContinuumChannels()
    q_n: ContinuumChannels = ContinuumChannels()
    q_f: ContinuumChannels = ContinuumChannels()
    Omega_mn: float = 0.0
    Omega_nf: float = 0.0
    Omega_mf: Optional[float] = None
    config: str = CLOSED
    Q_m: float = 0.0
    Q_n: float = 0.0
    Q_f: float = 0.0
    w_n: float = 0.0
    w_f: float = 0.0
    w_nm: float = 0.0
    gamma_fn_dissociation: Optional[float] = None

    def __post_init__(self):
        if self.Omega_mf is None:
            object.__setattr__(self, "Omega_mf", self.Omega_mn + self.Omega_nf)
        _check_finite(self)
        if abs(self.Omega_mf - (self.Omega_mn + self.Omega_nf)) > 1e-12 * max(
                1.0, abs(self.Omega_mn), abs(self.Omega_nf)):
            raise ParameterError("Omega_mf", self.Omega_mf, "must equal Omega_mn + Omega_nf")
        for name in ("Gamma_m", "Gamma_n", "Gamma_f", "Gamma_mn", "Gamma_mf", "Gamma_nf",
                     "Q_m", "Q_n", "Q_f", "w_n", "w_f", "w_nm", "G_mn"):
            if getattr(self, name) < 0:
                raise ParameterError(name, getattr(self, name), "must be >= 0")
        for name in ("gamma_m", "gamma_n", "gamma_f"):
            ch = getattr(self, name)
            if ch.nn < 0 or ch.ff < 0:
                raise ParameterError(name, ch, "diagonal widths must be >= 0")
        if self.config == OPEN:
            if self.w_n or self.w_f:
                raise ParameterError("w_n/w_f", (self.w_n, self.w_f),
                                     "closed-system excitation set in open configuration")
        elif self.config == CLOSED:
            if self.Q_m or self.Q_n or self.Q_f:
                raise ParameterError("Q", (self.Q_m, self.Q_n, self.Q_f),
                                     "pumping set in closed configuration")
        else:
            raise ParameterError("config", self.config, "must be 'open' or 'closed'")
        if self.gamma_fn_dissociation is None:
            # magnitude sqrt(g^n_nn g^f_ff), sign of the cross channel
            object.__setattr__(self, "gamma_fn_dissociation", math.copysign(
                math.sqrt(self.gamma_n.nn * self.gamma_f.ff), self.gamma_n.fn))

    @classmethod
    def from_rates(cls, Gamma_m: float, Gamma_n: float, Gamma_f: float, **kw) -> "FoldedParams":
        """Coherence half-widths as half-sums of the population decay rates."""
        return cls(Gamma_m, Gamma_n, Gamma_f, (Gamma_m + Gamma_n) / 2, (Gamma_m + Gamma_f) / 2,
                   (Gamma_n + Gamma_f) / 2, **kw)

    def with_(self, **changes) -> "FoldedParams":
        if ("Omega_mn" in changes or "Omega_nf" in changes) and "Omega_mf" not in changes:
            changes["Omega_mf"] = None
        if "gamma_fn_dissociation" not in changes and any(
                k in changes for k in ("gamma_n", "gamma_f")):
            changes["gamma_fn_dissociation"] = None
        return replace(self, **changes)

    def e3_off(self) -> "FoldedParams":
        """Switch off the field coupling f with the continuum."""
        def strip(ch):
            return ContinuumChannels(ch.nn, 0.0, 0.0, 0.0)
        return self.with_(gamma_m=strip(self.gamma_m), gamma_n=strip(self.gamma_n),
                          gamma_f=strip(self.gamma_f))

    def e2_off(self) -> "FoldedParams":
        """Switch off the field coupling n with the continuum."""
        def strip(ch):
            return ContinuumChannels(0.0, ch.ff, 0.0, 0.0)
        return self.with_(gamma_m=strip(self.gamma_m), gamma_n=strip(self.gamma_n),
                          gamma_f=strip(self.gamma_f))

    def no_interference(self) -> "FoldedParams":
        """Remove all cross channels between n and f."""
        def strip(ch):
            return ContinuumChannels(ch.nn, ch.ff, 0.0, 0.0)
        return self.with_(gamma_m=strip(self.gamma_m), gamma_n=strip(self.gamma_n),
                          gamma_f=strip(self.gamma_f))


def uniform_channels(gamma_nn: float, gamma_ff: float, q_nn: float = 0.0, q_ff: float = 0.0,
                     q_nf: float = 0.0, cross: float = 1.0, q_fn: Optional[float] = None) -> dict:
    """Channel families that are equal at all three continuum energies.

    Returns keyword arguments for FoldedParams (flat-continuum choice used
    when only unlabelled widths and Fano ratios are known).
    """
    g = ContinuumChannels.widths(gamma_nn, gamma_ff, cross)
    q = ContinuumChannels(q_nn, q_ff, q_nf, q_nf if q_fn is None else q_fn)
    return dict(gamma_m=g, gamma_n=g, gamma_f=g, q_m=q, q_n=q, q_f=q)


@dataclass(frozen=True)
class FoldedState:
    """Steady state: populations, coherences and dissociation rates.

    ``W`` is the dissociation rate 2[g^n_nn r_n + g^f_ff r_f + 2 Re(g_fn r_nf)]
    with a single cross width; ``W_balance`` is the exact loss rate implied
    by the population equations (they coincide when the cross channel is
    the same at the n- and f-resonant energies).
    """

    r_m: np.ndarray
    r_n: np.ndarray
    r_f: np.ndarray
    r_mn: np.ndarray
    r_mf: np.ndarray
    r_nf: np.ndarray
    W: np.ndarray
    W_balance: np.ndarray
    config: str

    @property
    def negative_population(self) -> bool:
        return bool(np.any(np.asarray(self.r_m) < 0) or np.any(np.asarray(self.r_n) < 0)
                    or np.any(np.asarray(self.r_f) < 0))

    def quasi_stationary(self, t_obs: float, limit: float = 0.1) -> np.ndarray:
        """True where the dissociated fraction W * t_obs stays below ``limit``."""
        return np.asarray(self.W) * t_obs < limit


_B_SIGNS = {1: (-1, -1), 2: (1, 1), 3: (-1, 1), 4: (1, -1)}


def _b(p: FoldedParams, i: int, j: str, l: str):
    """Cross product gamma^j_fn (1 -/+ i q^j_fn) * gamma^l_nf (1 -/+ i q^l_nf)."""
    s1, s2 = _B_SIGNS[i]
    gj, qj = getattr(p, "gamma_" + j), getattr(p, "q_" + j)
    gl, ql = getattr(p, "gamma_" + l), getattr(p, "q_" + l)
    return gj.fn * (1 + s1 * 1j * qj.fn) * gl.nf * (1 + s2 * 1j * ql.nf)


def notation(p: FoldedParams, Omega_mn=None, Omega_nf=None, G_mn=None) -> SimpleNamespace:
    """Intermediate sums of the population elimination (broadcasting).

    y_*: complex coherence denominators; Y, Z: determinants of the
    coherence problem; drive: |G|^2 Re(y_mf/Y); B_i/M_i/D: real feedback
    sums; Y_f, Y_nm, L1, L2, P: the coefficients of the final 3x3 problem.
    """
    O_mn = p.Omega_mn if Omega_mn is None else np.asarray(Omega_mn, dtype=float)
    O_nf = p.Omega_nf if Omega_nf is None else np.asarray(Omega_nf, dtype=float)
    G = p.G_mn if G_mn is None else np.asarray(G_mn, dtype=float)
    O_mf = O_mn + O_nf
    gm, gn, gf = p.gamma_m, p.gamma_n, p.gamma_f
    qm, qn, qf = p.q_m, p.q_n, p.q_f
    G2 = G * G

    y_mn = p.Gamma_mn + gm.nn + 1j * (O_mn - qm.nn * gm.nn)
    y_mf = p.Gamma_mf + gm.ff + 1j * (O_mf - qm.ff * gm.ff)
    y_nf = p.Gamma_nf + gn.ff + gf.nn + 1j * (O_nf + qf.nn * gf.nn - qn.ff * gn.ff)
    c_mfn = gm.fn * (1 - 1j * qm.fn)
    c_mnf = gm.nf * (1 - 1j * qm.nf)
    Y = y_mn * y_mf - c_mnf * c_mfn
    Z = y_nf * Y + G2 * y_mn

    with np.errstate(divide="ignore", invalid="ignore"):
        YZ = Y / Z
        invZ = 1 / Z

        def B(i, j, l):
            return np.real(_b(p, i, j, l) * YZ)

        def M(i, j, l):
            return G2 * np.real(_b(p, i, j, l) * invZ)

        drive = G2 * np.real(y_mf / Y)
        D = G2 * G2 * np.real(c_mnf * c_mfn / (Y * Z))
    B1nn, B2ff, B3nf, B4fn = B(1, "n", "n"), B(2, "f", "f"), B(3, "n", "f"), B(4, "f", "n")
    M1mn, M1nm, M3mf, M4fm = M(1, "m", "n"), M(1, "n", "m"), M(3, "m", "f"), M(4, "f", "m")

    Gn_t = p.Gamma_n + 2 * gn.nn
    Gf_t = p.Gamma_f + 2 * gf.ff
    Y_f = Gf_t - 2 * B2ff
    L1 = 2 * (B3nf - M3mf)
    L2 = 2 * (B4fn - M4fm)
    Y_nm = Gn_t + 2 * (drive - B1nn + M1mn + M1nm - D)
    P = 2 * (drive + M1nm - D)
    return SimpleNamespace(G=G, G2=G2, y_mn=y_mn, y_mf=y_mf, y_nf=y_nf, c_mfn=c_mfn, c_mnf=c_mnf,
                           Y=Y, Z=Z, drive=drive, D=D, B1nn=B1nn, B2ff=B2ff, B3nf=B3nf,
                           B4fn=B4fn, M1mn=M1mn, M1nm=M1nm, M3mf=M3mf, M4fm=M4fm,
                           Gn_t=Gn_t, Gf_t=Gf_t, Y_f=Y_f, L1=L1, L2=L2, Y_nm=Y_nm, P=P)


def _coherences(p: FoldedParams, n: SimpleNamespace, r_m, r_n, r_f):
    e_n = p.gamma_n.nf * (1 - 1j * p.q_n.nf)
    e_f = p.gamma_f.nf * (1 + 1j * p.q_f.nf)
    with np.errstate(divide="ignore", invalid="ignore"):
        r_nf = ((r_n - r_m) * n.G2 * n.c_mnf - (r_f * e_f + r_n * e_n) * n.Y) / n.Z
        r_mf = (-1j * n.G * n.y_mn * r_nf - 1j * n.G * n.c_mnf * (r_m - r_n)) / n.Y
        r_mn = (1j * n.G * (r_m - r_n) - n.c_mfn * r_mf) / n.y_mn
    return r_mn, r_mf, r_nf


def dissociation_rate(p: FoldedParams, r_n, r_f, r_nf):
    """2[g^n_nn r_n + g^f_ff r_f + 2 Re(g_fn r_nf)] with the single cross width."""
    return 2 * (p.gamma_n.nn * r_n + p.gamma_f.ff * r_f
                + 2 * np.real(p.gamma_fn_dissociation * r_nf))


def dissociation_balance(p: FoldedParams, r_n, r_f, r_nf):
    """Exact loss rate to the continuum implied by the population equations."""
    h_n = p.gamma_n.fn * (1 - 1j * p.q_n.fn)
    h_f = p.gamma_f.fn * (1 + 1j * p.q_f.fn)
    return 2 * (p.gamma_n.nn * r_n + p.gamma_f.ff * r_f) + 2 * np.real((h_n + h_f) * r_nf)


def _state(p, n, r_m, r_n, r_f, config):
    r_mn, r_mf, r_nf = _coherences(p, n, r_m, r_n, r_f)
    return FoldedState(r_m, r_n, r_f, r_mn, r_mf, r_nf,
                       dissociation_rate(p, r_n, r_f, r_nf),
                       dissociation_balance(p, r_n, r_f, r_nf), config)


def _check_det(det, what):
    if np.any(np.asarray(det) == 0) or not np.all(np.isfinite(det)):
        raise DegenerateSteadyState(f"{what} determinant is singular or non-finite")


def open_populations(p: FoldedParams, Omega_mn=None, Omega_nf=None, G_mn=None) -> FoldedState:
    """Steady state of the open (externally pumped) configuration."""
    if p.config != OPEN:
        raise ParameterError("config", p.config, "open_populations needs open pumping")
    n = notation(p, Omega_mn, Omega_nf, G_mn)
    C2 = (p.Gamma_m + 2 * (n.drive - n.D)) * n.Y_f - 4 * n.M4fm * n.M3mf
    S1 = (p.w_nm + 2 * (n.drive + n.M1mn - n.D)) * n.Y_f + 2 * n.L2 * n.M3mf
    C1 = n.Y_nm * n.Y_f - n.L1 * n.L2
    S2 = n.P * n.Y_f + 2 * n.M4fm * n.L1
    F1 = p.Q_m * n.Y_f + 2 * p.Q_f * n.M3mf
    F2 = p.Q_n * n.Y_f + p.Q_f * n.L1
    det = C1 * C2 - S1 * S2
    _check_det(det, "open-configuration")
    r_m = (F1 * C1 + F2 * S1) / det
    r_n = (F2 + S2 * r_m) / C1
    r_f = (p.Q_f + 2 * n.B4fn * r_n + 2 * n.M4fm * (r_m - r_n)) / n.Y_f
    return _state(p, n, r_m, r_n, r_f, OPEN)


def closed_populations(p: FoldedParams, Omega_mn=None, Omega_nf=None, G_mn=None) -> FoldedState:
    """Steady state of the closed configuration (r_m + r_n + r_f = 1).

    Valid while the dissociated fraction stays small over the observation
    time (see FoldedState.quasi_stationary).
    """
    if p.config != CLOSED:
        raise ParameterError("config", p.config, "closed_populations needs closed pumping")
    n = notation(p, Omega_mn, Omega_nf, G_mn)
    a = p.w_n + n.P
    c = p.w_f + 2 * n.M4fm
    det = (n.Y_nm + a) * (n.Y_f + c) - (a - n.L1) * (c - n.L2)
    _check_det(det, "closed-configuration")
    r_n = (n.Y_f * a + n.L1 * c) / det
    r_f = (n.Y_nm * c + n.L2 * a) / det
    r_m = 1 - r_n - r_f
    return _state(p, n, r_m, r_n, r_f, CLOSED)


def populations(p: FoldedParams, **grid) -> FoldedState:
    return (open_populations if p.config == OPEN else closed_populations)(p, **grid)


def open_populations_no_discrete_field(p: FoldedParams, Omega_nf=None) -> FoldedState:
    """Open configuration with G_mn = 0: only the continuum-coupled pair interacts."""
    if p.config != OPEN:
        raise ParameterError("config", p.config, "needs open pumping")
    if p.G_mn != 0:
        raise ParameterError("G_mn", p.G_mn, "this reduced form requires G_mn = 0")
    O_nf = p.Omega_nf if Omega_nf is None else np.asarray(Omega_nf, dtype=float)
    gn, gf, qn, qf = p.gamma_n, p.gamma_f, p.q_n, p.q_f
    y_nf = p.Gamma_nf + gn.ff + gf.nn + 1j * (O_nf + qf.nn * gf.nn - qn.ff * gn.ff)
    Y_n = p.Gamma_n + 2 * gn.nn - 2 * np.real(_b(p, 1, "n", "n") / y_nf)
    Y_f = p.Gamma_f + 2 * gf.ff - 2 * np.real(_b(p, 2, "f", "f") / y_nf)
    k_n = 2 * np.real(_b(p, 3, "n", "f") / y_nf)
    k_f = 2 * np.real(_b(p, 4, "f", "n") / y_nf)
    det = Y_n * Y_f - k_n * k_f
    _check_det(det, "reduced open")
    r_n = (p.Q_n * Y_f + p.Q_f * k_n) / det
    r_f = (p.Q_f * Y_n + p.Q_n * k_f) / det
    r_m = (p.Q_m + p.w_nm * r_n) / p.Gamma_m
    r_nf = -(r_f * gf.nf * (1 + 1j * qf.nf) + r_n * gn.nf * (1 - 1j * qn.nf)) / y_nf
    zero = np.zeros_like(r_nf)
    return FoldedState(r_m, r_n, r_f, zero, zero, r_nf, dissociation_rate(p, r_n, r_f, r_nf),
                       dissociation_balance(p, r_n, r_f, r_nf), OPEN)


def open_populations_e3_off(p: FoldedParams, Omega_mn=None, G_mn=None) -> FoldedState:
    """Open configuration without the field coupling f to the continuum."""
    if p.config != OPEN:
        raise ParameterError("config", p.config, "needs open pumping")
    p = p.e3_off()
    O_mn = p.Omega_mn if Omega_mn is None else np.asarray(Omega_mn, dtype=float)
    G = p.G_mn if G_mn is None else np.asarray(G_mn, dtype=float)
    y_mn = p.Gamma_mn + p.gamma_m.nn + 1j * (O_mn - p.q_m.nn * p.gamma_m.nn)
    Gn_t = p.Gamma_n + 2 * p.gamma_n.nn
    # population transfer rate between m and n divided by the n loss rate
    k = 2 * G * G * y_mn.real / np.abs(y_mn) ** 2 / Gn_t
    den = p.Gamma_m + k * (p.Gamma_m + Gn_t - p.w_nm)
    r_m = (p.Q_m + p.Q_n * p.w_nm / Gn_t + k * (p.Q_m + p.Q_n)) / den
    r_n = (p.Q_n * p.Gamma_m / Gn_t + k * (p.Q_m + p.Q_n)) / den
    r_f = p.Q_f / (p.Gamma_f + 2 * p.gamma_f.ff) * np.ones_like(r_n)
    r_mn = 1j * G * (r_m - r_n) / y_mn
    zero = np.zeros_like(r_mn)
    W = 2 * p.gamma_n.nn * r_n
    return FoldedState(r_m, r_n, r_f, r_mn, zero, zero, W, W, OPEN)


def closed_populations_e1_off(p: FoldedParams, Omega_nf=None) -> FoldedState:
    """Closed configuration without the discrete field (pure continuum structure)."""
    if p.config != CLOSED:
        raise ParameterError("config", p.config, "needs closed pumping")
    O_nf = p.Omega_nf if Omega_nf is None else np.asarray(Omega_nf, dtype=float)
    gn, gf, qn, qf = p.gamma_n, p.gamma_f, p.q_n, p.q_f
    y_nf = p.Gamma_nf + gn.ff + gf.nn + 1j * (O_nf + qf.nn * gf.nn - qn.ff * gn.ff)
    Y_n = p.Gamma_n + 2 * gn.nn - 2 * np.real(_b(p, 1, "n", "n") / y_nf)
    Y_f = p.Gamma_f + 2 * gf.ff - 2 * np.real(_b(p, 2, "f", "f") / y_nf)
    k_n = 2 * np.real(_b(p, 3, "n", "f") / y_nf) - p.w_n
    k_f = 2 * np.real(_b(p, 4, "f", "n") / y_nf) - p.w_f
    det = (Y_f + p.w_f) * (Y_n + p.w_n) - k_n * k_f
    _check_det(det, "closed E1-off")
    r_n = (Y_f * p.w_n + (k_n + p.w_n) * p.w_f) / det
    r_f = (Y_n * p.w_f + (k_f + p.w_f) * p.w_n) / det
    r_m = 1 - r_n - r_f
    r_nf = -(r_f * gf.nf * (1 + 1j * qf.nf) + r_n * gn.nf * (1 - 1j * qn.nf)) / y_nf
    zero = np.zeros_like(r_nf)
    return FoldedState(r_m, r_n, r_f, zero, zero, r_nf, dissociation_rate(p, r_n, r_f, r_nf),
                       dissociation_balance(p, r_n, r_f, r_nf), CLOSED)


def dissociation_limits(p: FoldedParams, Omega_mn=None, G_mn=None) -> SimpleNamespace:
    """Half dissociation rates W/2 of the two single-channel closed limits.

    ``incoherent``: only the continuum field on n and incoherent excitation
    w_n (no discrete field). ``two_photon``: discrete field plus the
    continuum field on n (no field on f). Both assume w_f = 0.
    """
    if p.config != CLOSED:
        raise ParameterError("config", p.config, "needs closed pumping")
    O_mn = p.Omega_mn if Omega_mn is None else np.asarray(Omega_mn, dtype=float)
    G = p.G_mn if G_mn is None else np.asarray(G_mn, dtype=float)
    g = p.gamma_n.nn
    Gn_t = p.Gamma_n + 2 * g
    incoherent = g * p.w_n / (Gn_t + p.w_n)
    y_mn = p.Gamma_mn + p.gamma_m.nn + 1j * (O_mn - p.q_m.nn * p.gamma_m.nn)
    t = G * G * y_mn.real / np.abs(y_mn) ** 2
    two_photon = g * (p.w_n + 2 * t) / (Gn_t + p.w_n + 4 * t)
    return SimpleNamespace(incoherent=incoherent, two_photon=two_photon)


@dataclass(frozen=True)
class WeakCoherences:
    driven: complex
    cross: complex


def folded_weak_coherences(p: FoldedParams, probe: str = FUNDAMENTAL, G_probe: float = 1.0,
                           Omega_mn=None, Omega_nf=None) -> WeakCoherences:
    """Linear response of the ground level to one weak probe.

    ``probe="fundamental"``: weak field on m-n; returns (r_mn, r_mf), the
    directly driven coherence and the one generated through the continuum.
    ``probe="generated"``: weak field on m-f; returns (R_mf, R_mn).
    """
    n = notation(p, Omega_mn, Omega_nf, 0.0)
    if probe == FUNDAMENTAL:
        return WeakCoherences(1j * G_probe * n.y_mf / n.Y, -1j * G_probe * n.c_mnf / n.Y)
    if probe == GENERATED:
        return WeakCoherences(1j * G_probe * n.y_mn / n.Y, -1j * G_probe * n.c_mfn / n.Y)
    raise ValueError(f"unknown probe {probe!r}")


def folded_conversion_setup(p: FoldedParams, C: float, Omega_mn=None, Omega_nf=None) -> PropagationSetup:
    """Scaled propagation coefficients of folded four-wave mixing.

    Absorption indices are normalized to the bare resonant values, and the
    drive is eta_bar = (pi/2)^2 |c_mnf c_mfn| |Gamma_mn Gamma_mf / Y|^2 /
    (Gamma_mn Gamma_mf), i.e. (pi/2)^2 (1 + q^2) g_n g_f |chi|^2 for a
    single continuum channel with g_n = gamma_nn/Gamma_mn, g_f = gamma_ff/Gamma_mf.
    """
    n = notation(p, Omega_mn, Omega_nf, 0.0)
    a1 = np.real(p.Gamma_mn * n.y_mf / n.Y)
    aS = np.real(p.Gamma_mf * n.y_mn / n.Y)
    chi = p.Gamma_mn * p.Gamma_mf / n.Y
    eta_bar = (math.pi / 2) ** 2 * np.abs(n.c_mnf * n.c_mfn) * np.abs(chi) ** 2 / (
        p.Gamma_mn * p.Gamma_mf)
    phase = -n.c_mnf / n.Y
    if np.ndim(a1) == 0:
        return PropagationSetup(float(a1), float(aS), float(eta_bar), C, chi_phase=complex(phase))
    return PropagationSetup(a1, aS, eta_bar, C, chi_phase=phase)
