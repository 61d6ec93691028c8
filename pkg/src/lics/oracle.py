"""Independent brute-force validators.

``solve_ladder_linear_system`` solves the amplitude equations of the ladder
scheme as a dense complex linear system, with the continuum eliminated by
the resonant (delta + principal value) substitution. Its unknowns are the
three discrete amplitudes and the two projections of the continuum kernel
onto levels n and f (level-k contributions are folded into the net widths
and shifts).

``integrate_folded_master`` time-integrates the folded-scheme density
matrix with an explicitly discretized continuum and returns the steady
state together with the widths and shifts realized by the discretization.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .folded import (CLOSED, OPEN, ContinuumChannels, FoldedParams, FoldedState,
                     dissociation_balance, dissociation_rate)
from .params import LadderParams

RESIDUAL_TOL = 1e-12

R_SET = "R"
r_SET = "r"


@dataclass(frozen=True)
class LadderSolution:
    branch: str
    amplitudes: dict
    residual: float
    F1: Optional[complex] = None
    FS: Optional[complex] = None
    chi3_S_ratio: Optional[complex] = None


def _ladder_matrix(p: LadderParams, G_gm: float = 1.0):
    q = p.fano
    gnn, gff = p.gamma_nn, p.gamma_ff
    gnf = p.cross * math.sqrt(gnn * gff)
    G = math.sqrt(p.g_mn * p.Gamma_gm * p.Gamma_gn)
    p_gm = p.Gamma_gm + 1j * p.Omega1
    p_gn = p.Gamma_gn + 1j * (p.Omega1 + p.Omega2)
    p_gf = p.Gamma_gf + 1j * (p.Omega1 + p.Omega2 - p.Omega_L)
    # unknowns: a_m, a_n, a_f, kernel projection onto n, kernel projection onto f
    A = np.zeros((5, 5), dtype=complex)
    A[0, 0] = 1j * p_gm
    A[0, 1] = G
    A[1, 0] = G
    A[1, 1] = 1j * p_gn
    A[1, 3] = 1.0
    A[2, 2] = 1j * p_gf
    A[2, 4] = 1.0
    A[3, 1] = -1j * gnn * (1 - 1j * q.q_nn)
    A[3, 2] = -1j * gnf * (1 - 1j * q.q_fn)
    A[3, 3] = 1.0
    A[4, 1] = -1j * gnf * (1 - 1j * q.q_nf)
    A[4, 2] = -1j * gff * (1 - 1j * q.q_ff)
    A[4, 4] = 1.0
    return A, G, gnn, gff


def solve_ladder_linear_system(p: LadderParams, branch: str = R_SET) -> LadderSolution:
    """Direct solve of one of the two ladder amplitude sets.

    ``branch="R"``: amplitudes driven by the discrete probe (gives F1 and the
    forward chi3 ratio). ``branch="r"``: amplitudes driven through the
    continuum by the generated wave (gives FS). The direct ground-continuum
    width is set to one; it cancels from the normalized responses.
    """
    A, G, gnn, gff = _ladder_matrix(p)
    q = p.fano
    b = np.zeros(5, dtype=complex)
    if branch == R_SET:
        b[0] = -1.0  # -G_gm with G_gm = 1
    elif branch == r_SET:
        b[3] = 1j * math.sqrt(gnn) * (1 - 1j * q.q_gn)
        b[4] = 1j * math.sqrt(gff) * (1 - 1j * q.q_gf)
    else:
        raise ValueError(f"unknown branch {branch!r}")
    x = np.linalg.solve(A, b)
    residual = float(np.linalg.norm(A @ x - b) / np.linalg.norm(b))
    if residual > RESIDUAL_TOL:
        warnings.warn(f"ladder linear solve residual {residual:.2e} exceeds {RESIDUAL_TOL}")
    names = ("m", "n", "f", "kernel_n", "kernel_f")
    amps = dict(zip(names, x))
    if branch == R_SET:
        F1 = x[0] * p.Gamma_gm / 1j
        chi = None
        if gnn > 0:
            a_n0 = -G / (p.Gamma_gm * p.Gamma_gn)
            proj = (x[1] * math.sqrt(gnn) * (1 - 1j * q.q_gn)
                    + x[2] * math.sqrt(gff) * (1 - 1j * q.q_gf))
            chi = proj / (a_n0 * math.sqrt(gnn) * (1 - 1j * q.q_gn))
        return LadderSolution(branch, amps, residual, F1=complex(F1), chi3_S_ratio=chi)
    FS = 1 + (x[1] * math.sqrt(gnn) * (1 - 1j * q.q_gn) + x[2] * math.sqrt(gff) * (1 - 1j * q.q_gf))
    return LadderSolution(branch, amps, residual, FS=complex(FS))


# ---------------------------------------------------------------- folded scheme

_M, _N, _F = 0, 1, 2


def _folded_reduced_residual(p: FoldedParams, x: np.ndarray) -> np.ndarray:
    """Residuals of the eliminated-continuum steady-state equations.

    ``x`` holds r_m, r_n, r_f and Re/Im of r_mn, r_mf, r_nf.
    """
    r_m, r_n, r_f = x[0], x[1], x[2]
    r_mn, r_mf, r_nf = x[3] + 1j * x[4], x[5] + 1j * x[6], x[7] + 1j * x[8]
    G = p.G_mn
    gm, gn, gf, qm, qn, qf = p.gamma_m, p.gamma_n, p.gamma_f, p.q_m, p.q_n, p.q_f
    y_mn = p.Gamma_mn + gm.nn + 1j * (p.Omega_mn - qm.nn * gm.nn)
    y_mf = p.Gamma_mf + gm.ff + 1j * (p.Omega_mf - qm.ff * gm.ff)
    y_nf = p.Gamma_nf + gn.ff + gf.nn + 1j * (p.Omega_nf + qf.nn * gf.nn - qn.ff * gn.ff)
    c_mfn = gm.fn * (1 - 1j * qm.fn)
    c_mnf = gm.nf * (1 - 1j * qm.nf)
    e_n = gn.nf * (1 - 1j * qn.nf)
    e_f = gf.nf * (1 + 1j * qf.nf)
    h_n = gn.fn * (1 - 1j * qn.fn)
    h_f = gf.fn * (1 + 1j * qf.fn)
    transfer = 2 * np.real(1j * G * r_mn)
    eq_mn = 1j * G * (r_m - r_n) - c_mfn * r_mf - y_mn * r_mn
    eq_mf = -1j * G * r_nf - c_mnf * r_mn - y_mf * r_mf
    eq_nf = -1j * G * r_mf - e_n * r_n - e_f * r_f - y_nf * r_nf
    if p.config == OPEN:
        src_n, src_f = p.Q_n, p.Q_f
        eq_m = p.Q_m + p.w_nm * r_n + transfer - p.Gamma_m * r_m
    else:
        src_n, src_f = p.w_n * r_m, p.w_f * r_m
        eq_m = 1 - r_m - r_n - r_f
    eq_n = src_n - transfer - 2 * np.real(h_n * r_nf) - (p.Gamma_n + 2 * gn.nn) * r_n
    eq_f = src_f - 2 * np.real(h_f * r_nf) - (p.Gamma_f + 2 * gf.ff) * r_f
    return np.array([eq_m, eq_n, eq_f, eq_mn.real, eq_mn.imag, eq_mf.real, eq_mf.imag,
                     eq_nf.real, eq_nf.imag])


def solve_folded_reduced(p: FoldedParams) -> FoldedState:
    """Dense solve of the nine real eliminated-continuum steady-state equations.

    Independent of the closed-form elimination: the affine residual map is
    assembled column by column and inverted directly.
    """
    b = -_folded_reduced_residual(p, np.zeros(9))
    A = np.column_stack([_folded_reduced_residual(p, e) + b for e in np.eye(9)])
    x = np.linalg.solve(A, b)
    residual = float(np.linalg.norm(A @ x - b) / np.linalg.norm(b))
    if residual > RESIDUAL_TOL:
        warnings.warn(f"folded reduced solve residual {residual:.2e} exceeds {RESIDUAL_TOL}")
    r_n, r_f, r_nf = x[1], x[2], x[7] + 1j * x[8]
    return FoldedState(x[0], r_n, r_f, x[3] + 1j * x[4], x[5] + 1j * x[6], r_nf,
                       dissociation_rate(p, r_n, r_f, r_nf),
                       dissociation_balance(p, r_n, r_f, r_nf), p.config)


@dataclass(frozen=True)
class DiscretizedContinuum:
    """Flat continuum sampled on N equal bins, plus far-detuned shift levels.

    ``energies``, ``G_n``, ``G_f`` describe the bins. Every bound-continuum
    coherence is damped at ``eta`` (a few bin widths) so the finite grid
    behaves as a smooth continuum. ``levels`` lists auxiliary bound levels
    (energy, coupling to n, coupling to f); being detuned far beyond the
    span, they act through their second-order coupling evaluated at
    ``center`` (a Hermitian n-f block added to the Hamiltonian).
    """

    energies: np.ndarray
    G_n: np.ndarray
    G_f: np.ndarray
    bin_width: float
    eta: float
    center: float = 0.0
    levels: tuple = ()

    def __post_init__(self):
        if self.energies.size < 10:
            raise ValueError(f"n_bins={self.energies.size}: too few bins")
        if not self.eta > 0:
            raise ValueError(f"eta={self.eta!r}: damping must be > 0")

    @property
    def n_bins(self) -> int:
        return int(self.energies.size)

    @property
    def span(self) -> float:
        return self.n_bins * self.bin_width

    @classmethod
    def flat(cls, gamma_nn: float, gamma_ff: float, *, center: float = 0.0,
             span: Optional[float] = None, bin_width: Optional[float] = None,
             cross_sign: float = 1.0, delta_nn: float = 0.0, delta_ff: float = 0.0,
             delta_nf: float = 0.0, level_detuning: Optional[float] = None,
             eta_bins: float = 2.0) -> "DiscretizedContinuum":
        """Continuum realizing target widths and (through extra levels) shifts.

        Defaults follow the validation rule: span = 100 x the largest width
        and bin width = 1/10 of the smallest nonzero width. Shifts come from
        levels placed ``level_detuning`` (default 100 x span) from ``center``:
        one per diagonal shift, and for the cross shift a pair with opposite
        detunings and opposite f-coupling signs (their diagonal parts cancel).
        """
        widths = [g for g in (gamma_nn, gamma_ff) if g > 0]
        if not widths:
            raise ValueError("at least one continuum width must be > 0")
        span = 100 * max(widths) if span is None else span
        bin_width = min(widths) / 10 if bin_width is None else bin_width
        n = int(math.ceil(span / bin_width))
        nu = center + (np.arange(n) - (n - 1) / 2) * bin_width
        Gn = np.full(n, math.sqrt(gamma_nn * bin_width / math.pi))
        Gf = np.full(n, math.copysign(math.sqrt(gamma_ff * bin_width / math.pi), cross_sign))
        D = 100 * span if level_detuning is None else level_detuning
        levels = []
        if delta_nn:
            levels.append((center - math.copysign(D, delta_nn), math.sqrt(abs(delta_nn) * D), 0.0))
        if delta_ff:
            levels.append((center - math.copysign(D, delta_ff), 0.0, math.sqrt(abs(delta_ff) * D)))
        if delta_nf:
            a = math.sqrt(abs(delta_nf) * D / 2)
            b = math.copysign(a, delta_nf)
            levels += [(center - D, a, b), (center + D, a, -b)]
        return cls(nu, Gn, Gf, bin_width, eta_bins * bin_width, center, tuple(levels))

    def level_shift(self) -> np.ndarray:
        """Real 2x2 second-order coupling of n, f through the auxiliary levels."""
        out = np.zeros((2, 2))
        for nu, a, b in self.levels:
            v = np.array([a, b])
            out += np.outer(v, v) / (self.center - nu)
        return out

    def self_energy(self, E: float) -> np.ndarray:
        """2x2 matrix S_kl(E) = sum G_k G_l / (E - nu - i eta), k, l in {n, f}."""
        w = 1.0 / (E - self.energies - 1j * self.eta)
        c = np.stack([self.G_n, self.G_f])
        return (c * w) @ c.T + self.level_shift()

    def realized(self, E: float):
        """(gamma, delta) 2x2 matrices realized at energy E."""
        S = self.self_energy(E)
        return S.imag, S.real


def _channels(S: np.ndarray):
    g, d = S.imag, S.real

    def q(i, j):
        return d[i, j] / g[i, j] if g[i, j] != 0 else 0.0

    return (ContinuumChannels(g[0, 0], g[1, 1], g[0, 1], g[1, 0]),
            ContinuumChannels(q(0, 0), q(1, 1), q(0, 1), q(1, 0)))


def _level_energies(p: FoldedParams):
    return 0.0, -p.Omega_mn, -p.Omega_mf


def realized_params(p: FoldedParams, c: DiscretizedContinuum) -> FoldedParams:
    """Copy of ``p`` carrying the widths and shifts the grid actually realizes."""
    E_m, E_n, E_f = _level_energies(p)
    gm, qm = _channels(c.self_energy(E_m))
    gn, qn = _channels(c.self_energy(E_n))
    gf, qf = _channels(c.self_energy(E_f))
    return p.with_(gamma_m=gm, gamma_n=gn, gamma_f=gf, q_m=qm, q_n=qn, q_f=qf,
                   gamma_fn_dissociation=None)


def continuum_for(p: FoldedParams, **kw) -> DiscretizedContinuum:
    """Flat continuum targeting the n-resonant channel values of ``p``."""
    g, q = p.gamma_n, p.q_n
    E = _level_energies(p)
    spread = max(E) - min(E)
    widths = [x for x in (g.nn, g.ff) if x > 0]
    kw.setdefault("span", 100 * max(widths) + 2 * spread)
    sign = 1.0 if g.nf >= 0 else -1.0
    return DiscretizedContinuum.flat(g.nn, g.ff, center=sum(E) / 3, cross_sign=sign,
                                     delta_nn=q.nn * g.nn, delta_ff=q.ff * g.ff,
                                     delta_nf=q.nf * g.nf, **kw)


@dataclass
class FoldedMasterResult:
    """Steady state of the discretized master equation.

    ``state`` is evaluated with the realized widths of ``realized``;
    ``W_trace`` is the continuum-population growth rate on ``times``.
    """

    state: FoldedState
    realized: FoldedParams
    times: np.ndarray
    W_trace: np.ndarray
    bin_populations: np.ndarray
    steady: bool
    derivative_norm: float
    balance_error: float
    n_variables: int
    extras: dict = field(default_factory=dict)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["# folded master-equation oracle", f"steady={self.steady}",
                        f"derivative_norm={self.derivative_norm:.3e}",
                        f"balance_error={self.balance_error:.3e}"])
            s = self.state
            w.writerow(["quantity", "real", "imag"])
            for name in ("r_m", "r_n", "r_f", "r_mn", "r_mf", "r_nf", "W", "W_balance"):
                v = complex(getattr(s, name))
                w.writerow([name, repr(v.real), repr(v.imag)])
            w.writerow(["time", "W"])
            for t, v in zip(self.times, self.W_trace):
                w.writerow([repr(float(t)), repr(float(v))])


class _Assembler:
    """Builds dz/dt = A z + B conj(z) + c for the complex state z."""

    def __init__(self, size):
        self.size = size
        self.A, self.B = [], []
        self.c = np.zeros(size, dtype=complex)

    def lin(self, row, col, val):
        self.A.append((row, col, val))

    def conj(self, row, col, val):
        self.B.append((row, col, val))

    def _mat(self, entries):
        rows, cols, vals = [], [], []
        for r, c, v in entries:
            r, c, v = np.broadcast_arrays(np.asarray(r), np.asarray(c), np.asarray(v, dtype=complex))
            rows.append(r.ravel()), cols.append(c.ravel()), vals.append(v.ravel())
        if not rows:
            return sp.csr_matrix((self.size, self.size), dtype=complex)
        return sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                             shape=(self.size, self.size))

    def copy_rows_negated(self, sources, target):
        """Append -(sum of rows ``sources``) to row ``target``."""
        for lst in (self.A, self.B):
            extra = []
            for r, c, v in lst:
                r, c, v = np.broadcast_arrays(np.asarray(r), np.asarray(c), np.asarray(v, dtype=complex))
                keep = np.isin(r, sources)
                if keep.any():
                    extra.append((np.full(keep.sum(), target), c[keep], -v[keep]))
            lst.extend(extra)
        self.c[target] -= self.c[list(sources)].sum()

    def real_form(self):
        A, B = self._mat(self.A), self._mat(self.B)
        J = sp.bmat([[(A + B).real, (B - A).imag], [(A + B).imag, (A - B).real]], format="csc")
        return J, np.concatenate([self.c.real, self.c.imag])


def _build_master(p: FoldedParams, c: DiscretizedContinuum):
    nb = c.energies.size
    mm, nn, ff, mn, mf, nf = range(6)
    base = 6
    jb = [base + j * nb + np.arange(nb) for j in range(3)]
    bb = base + 3 * nb + np.arange(nb)
    size = base + 4 * nb
    E = _level_energies(p)
    G = p.G_mn
    Gn, Gf = c.G_n, c.G_f
    a = _Assembler(size)

    # populations
    def transfer(row, sign):
        a.lin(row, mn, sign * 1j * G)
        a.conj(row, mn, -sign * 1j * G)

    def loss(row, j, Gj):
        # -2 G_jb Im z_jb summed over bins
        a.lin(np.full(nb, row), jb[j], 1j * Gj)
        a.conj(np.full(nb, row), jb[j], -1j * Gj)

    a.lin(nn, nn, -p.Gamma_n)
    a.lin(ff, ff, -p.Gamma_f)
    transfer(nn, -1)
    loss(nn, _N, Gn)
    loss(ff, _F, Gf)
    if p.config == OPEN:
        a.c[[mm, nn, ff]] = p.Q_m, p.Q_n, p.Q_f
        a.lin(mm, mm, -p.Gamma_m)
        a.lin(mm, nn, p.w_nm)
        transfer(mm, +1)
    else:
        a.lin(nn, mm, p.w_n)
        a.lin(ff, mm, p.w_f)

    # second-order coupling through the far-detuned levels
    H = c.level_shift()
    d_nn, d_ff, d_nf = H[0, 0], H[1, 1], H[0, 1]
    a.lin(nn, nf, 1j * d_nf)
    a.conj(nn, nf, -1j * d_nf)
    a.lin(ff, nf, -1j * d_nf)
    a.conj(ff, nf, 1j * d_nf)
    a.lin(mn, mn, 1j * d_nn)
    a.lin(mn, mf, 1j * d_nf)
    a.lin(mf, mf, 1j * d_ff)
    a.lin(mf, mn, 1j * d_nf)
    a.lin(nf, nf, -1j * (d_nn - d_ff))
    a.lin(nf, ff, -1j * d_nf)
    a.lin(nf, nn, 1j * d_nf)

    # discrete coherences
    a.lin(mn, mn, -(p.Gamma_mn + 1j * (E[_M] - E[_N])))
    a.lin(mn, mm, 1j * G)
    a.lin(mn, nn, -1j * G)
    a.lin(np.full(nb, mn), jb[_M], 1j * Gn)
    a.lin(mf, mf, -(p.Gamma_mf + 1j * (E[_M] - E[_F])))
    a.lin(mf, nf, -1j * G)
    a.lin(np.full(nb, mf), jb[_M], 1j * Gf)
    a.lin(nf, nf, -(p.Gamma_nf + 1j * (E[_N] - E[_F])))
    a.lin(nf, mf, -1j * G)
    a.lin(np.full(nb, nf), jb[_N], 1j * Gf)
    a.conj(np.full(nb, nf), jb[_F], -1j * Gn)

    # bound-continuum coherences
    for j in range(3):
        a.lin(jb[j], jb[j], -(1j * (E[j] - c.energies) + c.eta))
    a.lin(jb[_M], np.full(nb, mn), 1j * Gn)
    a.lin(jb[_M], np.full(nb, mf), 1j * Gf)
    a.lin(jb[_N], np.full(nb, nn), 1j * Gn)
    a.lin(jb[_N], np.full(nb, nf), 1j * Gf)
    a.conj(jb[_F], np.full(nb, nf), 1j * Gn)
    a.lin(jb[_F], np.full(nb, ff), 1j * Gf)

    # continuum populations: +2 G_jb Im z_jb
    for j, Gj in ((_N, Gn), (_F, Gf)):
        a.lin(bb, jb[j], -1j * Gj)
        a.conj(bb, jb[j], 1j * Gj)
    if p.config == CLOSED:
        # keep r_m + r_n + r_f fixed: the m row is minus the sum of the n and f rows
        a.copy_rows_negated((nn, ff), mm)
    J, c0 = a.real_form()
    return J, c0, size, bb


_TRBDF2_GAMMA = 2 - math.sqrt(2)


class _LinearTRBDF2:
    """Adaptive TR-BDF2 for dy/dt = J y + c with constant sparse J.

    L-stable, second order. Step sizes are powers of two times ``h0`` so
    the factorizations of (I - d h J) can be cached; the local error is
    estimated by step doubling.
    """

    def __init__(self, J, c, rtol, atol, watch):
        self.J, self.c = J.tocsc(), c
        self.watch = watch
        self.I = sp.identity(J.shape[0], format="csc")
        self.rtol, self.atol = rtol, atol
        self._lu = {}

    def _solver(self, h):
        lu = self._lu.get(h)
        if lu is None:
            d = _TRBDF2_GAMMA / 2
            lu = self._lu[h] = splu((self.I - (d * h) * self.J).tocsc())
        return lu

    def step(self, y, h):
        g = _TRBDF2_GAMMA
        lu = self._solver(h)
        f0 = self.J @ y + self.c
        y_g = lu.solve(y + (g * h / 2) * f0 + (g * h / 2) * self.c)
        d = (1 - g) / (2 - g)
        rhs = (y_g - (1 - g) ** 2 * y) / (g * (2 - g)) + d * h * self.c
        return lu.solve(rhs)

    def run(self, y0, t_end, h0, on_step, max_steps=200000):
        t, y, h = 0.0, y0.copy(), h0
        steps = 0
        while t < t_end and steps < max_steps:
            h = min(h, t_end - t) if t_end - t < h else h
            big = self.step(y, h)
            half = self.step(self.step(y, h / 2), h / 2)
            w = self.watch
            scale = self.atol + self.rtol * np.maximum(np.abs(y[w]), np.abs(half[w]))
            err = float(np.sqrt(np.mean(((half[w] - big[w]) / 3 / scale) ** 2)))
            steps += 1
            if err > 1.0:
                h /= 2
                continue
            y = half
            t += h
            if on_step(t, y):
                break
            if err < 0.1:
                h *= 2
        return t, y, steps


def integrate_folded_master(p: FoldedParams, c: Optional[DiscretizedContinuum] = None,
                            t_end: Optional[float] = None, tol: float = 1e-6,
                            rtol: float = 1e-5, atol: float = 1e-9) -> FoldedMasterResult:
    """Time-integrate the folded master equation with a discretized continuum.

    Starts from the empty (open) or ground-state (closed) configuration.
    The run stops once the change of every discrete variable over one
    relaxation time, relative to the state norm, has stayed below ``tol``
    for one relaxation time,
    or at ``t_end`` (default: 200 / slowest population rate), in which case
    the result is flagged as not steady. Continuum populations keep growing
    at rate W and are excluded from the steady-state test. The step-size
    control watches the bound-level density matrix only; the L-stable
    scheme damps unresolved fast continuum coherences, which enter the
    steady state only through their slaved values.
    """
    c = continuum_for(p) if c is None else c
    J, c0, size, bb = _build_master(p, c)
    slow = min(x for x in (p.Gamma_m, p.Gamma_n, p.Gamma_f, p.w_n + p.w_f) if x > 0)
    t_relax = 1.0 / slow
    t_end = 200.0 * t_relax if t_end is None else t_end
    z0 = np.zeros(2 * size)
    if p.config == CLOSED:
        z0[0] = 1.0
    disc = np.ones(2 * size, dtype=bool)
    disc[bb] = False
    disc[bb + size] = False

    times, W_trace, balance, derivs = [0.0], [0.0], [0.0], [np.inf]
    calm_since = [None]
    Q = p.Q_m + p.Q_n + p.Q_f

    def on_step(t, y):
        dy = J @ y + c0
        W = float(dy[bb].sum())
        d_bound = float(dy[0:3].sum())
        if p.config == OPEN:
            outflow = p.Gamma_m * y[0] + (p.Gamma_n - p.w_nm) * y[1] + p.Gamma_f * y[2]
            balance.append(abs(d_bound + W - (Q - outflow)) / Q)
        else:
            balance.append(abs(d_bound))  # bound sum is pinned by construction
        deriv = t_relax * float(np.max(np.abs(dy[disc]))) / max(float(np.max(np.abs(y[disc]))), 1e-300)
        times.append(t), W_trace.append(W), derivs.append(deriv)
        if deriv < tol:
            if calm_since[0] is None:
                calm_since[0] = t
            return t - calm_since[0] >= t_relax
        calm_since[0] = None
        return False

    # initial step on the bound-level time scale; faster continuum transients are damped
    g = realized_params(p, c)
    fast = max(p.Gamma_m, p.Gamma_n, p.Gamma_f, p.Gamma_mn, p.Gamma_mf, p.Gamma_nf, p.G_mn,
               abs(p.Omega_mn), abs(p.Omega_nf), abs(p.Omega_mf),
               *(abs(getattr(ch, k)) for ch in (g.gamma_m, g.gamma_n, g.gamma_f)
                 for k in ("nn", "ff", "nf")))
    h0 = 0.01 / fast
    watch = np.r_[0:6, size:size + 6]
    integrator = _LinearTRBDF2(J, c0, rtol, atol, watch)
    t, y, steps = integrator.run(z0, t_end, h0, on_step)
    # a calm state at t_end counts even if the last step jumped past the window
    steady = calm_since[0] is not None and (t - calm_since[0] >= t_relax or t >= t_end)
    if not steady:
        warnings.warn(f"folded master equation not steady at t={t:.3g} "
                      f"(relative derivative {derivs[-1]:.2e})")
    zf = y[:size] + 1j * y[size:]
    r_m, r_n, r_f = zf[0].real, zf[1].real, zf[2].real
    pr = realized_params(p, c)
    state = FoldedState(r_m, r_n, r_f, zf[3], zf[4], zf[5], W_trace[-1], W_trace[-1], p.config)
    return FoldedMasterResult(state, pr, np.array(times), np.array(W_trace), zf[bb].real, steady,
                              derivs[-1], float(max(balance)), 2 * size,
                              extras={"t_relax": t_relax, "t_final": t, "steps": steps})
