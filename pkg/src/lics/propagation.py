"""Conversion efficiency of a weak fundamental into the generated wave.

The two weak waves obey linear coupled amplitude equations with constant
coefficients (strong fields undepleted):

    da_S/dz = -(alpha_S/2) a_S + i kappa_S a_1 exp(i dk z)
    da_1/dz = -(alpha_1/2) a_1 + i kappa_1 a_S exp(-i dk z)

with kappa_1 = (k_1/k_S) conj(kappa_S) for conjugate susceptibilities, so
that the product kappa_S kappa_1 is the real drive per unit length squared.
The photon conversion efficiency is eta = (k_1/k_S)|a_S|^2/|a_1(0)|^2.

In scaled form the optical depth is z0 = z alpha_10 / 2 and the absorption
indices, drive and asymmetry are alpha1_bar, alphaS_bar, eta_bar and C.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp

from .params import LadderParams, ParameterError


@dataclass(frozen=True)
class PropagationSetup:
    """Scaled propagation coefficients; arrays broadcast elementwise."""

    alpha1_bar: float
    alphaS_bar: float
    eta_bar: float
    C: float
    chi_phase: complex = 1.0

    def __post_init__(self):
        if not np.all(np.asarray(self.C) > 0):
            raise ParameterError("C", self.C, "absorption asymmetry must be > 0")
        if np.any(np.asarray(self.eta_bar) < 0):  # NaN gaps pass through
            raise ParameterError("eta_bar", self.eta_bar, "drive must be >= 0")
        if np.any(np.asarray(self.alpha1_bar) < -1e-12) or np.any(np.asarray(self.alphaS_bar) < -1e-12):
            warnings.warn("negative scaled absorption (gain) in propagation setup",
                          RuntimeWarning, stacklevel=2)


@dataclass(frozen=True)
class ConversionCurve:
    z0: np.ndarray
    eta: np.ndarray
    b: float


def eta0_fano(q_gn: float) -> float:
    """Fano enhancement of the conversion drive, 1 + q^2."""
    return 1.0 + q_gn ** 2


def conversion_rate_b(setup: PropagationSetup):
    """Balance between conversion and absorption; > 0 means oscillatory exchange."""
    return 4 * np.asarray(setup.eta_bar) - (
        np.asarray(setup.alpha1_bar) - setup.C * np.asarray(setup.alphaS_bar)) ** 2 / (4 * setup.C)


def _sinc2(y):
    """(sin y / y)^2, regular at y = 0."""
    return np.sinc(np.asarray(y, dtype=float) / np.pi) ** 2


def eta_q_scaled(alpha1_bar, alphaS_bar, eta_bar, C, z0):
    """Closed-form conversion efficiency versus optical depth z0 = z alpha_10/2.

    Written as 4 eta_bar C z0^2 exp(-(a1 + C aS) z0) times the squared
    sin/sinh "sinc" of sqrt(|b| C) z0, which equals the familiar
    4 eta_bar/|b| {sinh^2 + sin^2} form and stays regular at b = 0.
    """
    z0 = np.asarray(z0, dtype=float)
    if np.any(z0 < 0):
        raise ParameterError("z0", float(z0.min()), "optical depth must be >= 0")
    a1 = np.asarray(alpha1_bar, dtype=float)
    aS = np.asarray(alphaS_bar, dtype=float)
    e0 = np.asarray(eta_bar, dtype=float)
    b = 4 * e0 - (a1 - C * aS) ** 2 / (4 * C)
    y = np.sqrt(np.abs(b) * C) * z0
    with np.errstate(over="ignore", invalid="ignore"):
        # combine exponent with the sinh growth to avoid overflow
        growth = np.where(b < 0, 2 * y, 0.0)
        log_env = -(a1 + C * aS) * z0 + growth
        shape = np.where(b < 0, _sinh_ratio_sq(y), _sinc2(y))
        eta = 4 * e0 * C * z0 ** 2 * np.exp(log_env) * shape
    return np.where(z0 == 0, 0.0, eta)


def _sinh_ratio_sq(y):
    """(sinh y / y)^2 exp(-2y), stable for large y."""
    y = np.asarray(y, dtype=float)
    small = y < 1e-8
    ys = np.where(small, 1.0, y)
    val = ((1 - np.exp(-2 * ys)) / (2 * ys)) ** 2
    return np.where(small, 1.0 - 2 * y, val)


def eta_q(setup: PropagationSetup, z0):
    """Scaled conversion efficiency for a propagation setup."""
    return eta_q_scaled(setup.alpha1_bar, setup.alphaS_bar, setup.eta_bar, setup.C, z0)


def conversion_curve(setup: PropagationSetup, z0) -> ConversionCurve:
    z0 = np.asarray(z0, dtype=float)
    return ConversionCurve(z0, eta_q(setup, z0), float(conversion_rate_b(setup)))


def eta_q_low_depletion(eta_drive, delta_k, alpha_S, z):
    """Generated-photon fraction with an undepleted fundamental.

    ``eta_drive`` is kappa_S kappa_1 (per length squared); ``delta_k`` is the
    complex mismatch dk' - i(alpha_S - alpha_1)/2, so that absorption of the
    fundamental is carried by its imaginary part.
    """
    dk = np.asarray(delta_k, dtype=complex)
    z = np.asarray(z, dtype=float)
    x = 1j * dk * z
    small = np.abs(x) < 1e-6
    # |exp(x) - 1|^2 / |dk|^2 with a series for small |x|
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(small, np.abs(z * (1 + x / 2 + x * x / 6)) ** 2,
                         np.abs(np.expm1(x)) ** 2 / np.where(small, 1.0, np.abs(dk) ** 2))
    return np.asarray(eta_drive) * np.exp(-np.asarray(alpha_S) * z) * ratio


def eta_q_short_medium(eta_drive, length):
    """Small-signal limit eta = eta_drive * L^2 for a short, thin medium."""
    return np.asarray(eta_drive) * np.asarray(length, dtype=float) ** 2


@dataclass(frozen=True)
class CoupledWaves:
    z: np.ndarray
    a_1: np.ndarray
    a_S: np.ndarray
    k_ratio: float

    @property
    def eta(self) -> np.ndarray:
        return self.k_ratio * np.abs(self.a_S) ** 2 / np.abs(self.a_1[0]) ** 2

    @property
    def fundamental_fraction(self) -> np.ndarray:
        return np.abs(self.a_1) ** 2 / np.abs(self.a_1[0]) ** 2


def integrate_coupled_waves(z, kappa_S: complex, alpha_1: float, alpha_S: float, *,
                            k_ratio: float = 1.0, delta_k: float = 0.0,
                            kappa_1: Optional[complex] = None, back_conversion: bool = True,
                            a1_0: complex = 1.0, rtol: float = 1e-12,
                            atol: float = 1e-15) -> CoupledWaves:
    """Reference integration of the two coupled amplitude equations.

    ``k_ratio`` is k_1/k_S. ``kappa_1`` defaults to k_ratio * conj(kappa_S).
    With ``back_conversion=False`` the fundamental only decays (Beer law).
    """
    z = np.asarray(z, dtype=float)
    if z[0] != 0 or np.any(np.diff(z) <= 0):
        raise ParameterError("z", z[:3], "grid must start at 0 and increase strictly")
    if kappa_1 is None:
        kappa_1 = k_ratio * np.conj(kappa_S)
    k1 = kappa_1 if back_conversion else 0.0

    def rhs(zz, y):
        a1, aS = y
        ph = np.exp(1j * delta_k * zz)
        return [-0.5 * alpha_1 * a1 + 1j * k1 * aS / ph,
                -0.5 * alpha_S * aS + 1j * kappa_S * a1 * ph]

    sol = solve_ivp(rhs, (0.0, z[-1]), np.array([a1_0, 0.0], dtype=complex), method="DOP853",
                    t_eval=z, rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"coupled-wave integration failed near z={sol.t[-1]:.4g}: {sol.message}")
    return CoupledWaves(z, sol.y[0], sol.y[1], k_ratio)


def physical_coefficients(setup: PropagationSetup, alpha10: float = 2.0, k_ratio: float = 1.0):
    """Map a scaled setup to (kappa_S, alpha_1, alpha_S) for the coupled-wave ODE.

    With ``alpha10 = 2`` the propagation distance equals the optical depth z0.
    """
    alpha_1 = alpha10 * float(setup.alpha1_bar)
    alpha_S = alpha10 * setup.C * float(setup.alphaS_bar)
    drive = float(setup.eta_bar) * setup.C * alpha10 ** 2
    phase = complex(setup.chi_phase)
    phase = phase / abs(phase) if phase != 0 else 1.0
    kappa_S = np.sqrt(drive / k_ratio) * phase
    return kappa_S, alpha_1, alpha_S


def ladder_setup(p: LadderParams, C: float, Omega1=None, Omega2=None, Omega_L=None) -> PropagationSetup:
    """Propagation coefficients from the ladder spectra.

    Detuning arrays may be passed to build a setup over a whole grid; the
    drive is eta_bar = (1 + q_gn^2) |chi3_S ratio|^2 g_mn g_nn.
    """
    from .ladder import ladder_spectrum

    sp = ladder_spectrum(p, Omega1, Omega2, Omega_L)
    chi = sp.chi3_S_ratio
    eta_bar = eta0_fano(p.fano.q_gn) * np.abs(chi) ** 2 * p.g_mn * p.g_nn
    if np.ndim(chi) == 0:
        return PropagationSetup(float(sp.F1.real), float(sp.FS.real), float(eta_bar), C,
                                chi_phase=complex(chi))
    return PropagationSetup(sp.F1.real, sp.FS.real, eta_bar, C, chi_phase=chi)


@dataclass(frozen=True)
class ConversionMaximum:
    eta: float
    detuning: float
    z0: float

    @property
    def optical_depth(self) -> float:
        """Location expressed as z alpha_10 (twice the scaled depth z0)."""
        return 2.0 * self.z0


def locate_maximum(surface: Callable[[np.ndarray, np.ndarray], np.ndarray],
                   detunings, z0_grid, refine: int = 6, zoom_points: int = 21) -> ConversionMaximum:
    """Grid scan of eta(detuning, z0) followed by successive zoomed grids.

    ``surface(d, z)`` must broadcast a detuning column against a z0 row.
    Each refinement resamples a window of +-1 original cell around the
    current best point on a ``zoom_points`` square grid and shrinks the
    window by the grid factor. Grids may be non-uniform (e.g. log-spaced z0).
    """
    d = np.asarray(detunings, dtype=float)
    z = np.asarray(z0_grid, dtype=float)
    E = np.asarray(surface(d[:, None], z[None, :]), dtype=float)
    E = np.where(np.isfinite(E), E, -np.inf)
    i, j = np.unravel_index(int(np.argmax(E)), E.shape)
    best_d, best_z, best = d[i], z[j], E[i, j]
    lo_d, hi_d = d[max(i - 1, 0)], d[min(i + 1, d.size - 1)]
    lo_z, hi_z = z[max(j - 1, 0)], z[min(j + 1, z.size - 1)]
    for _ in range(refine):
        dd = np.linspace(lo_d, hi_d, zoom_points) if hi_d > lo_d else np.array([best_d])
        zz = np.linspace(lo_z, hi_z, zoom_points) if hi_z > lo_z else np.array([best_z])
        F = np.asarray(surface(dd[:, None], zz[None, :]), dtype=float)
        F = np.where(np.isfinite(F), F, -np.inf)
        a, b = np.unravel_index(int(np.argmax(F)), F.shape)
        if F[a, b] > best:
            best, best_d, best_z = F[a, b], dd[a], zz[b]
        hd = (hi_d - lo_d) / (zoom_points - 1)
        hz = (hi_z - lo_z) / (zoom_points - 1)
        lo_d, hi_d = max(d[0], best_d - 2 * hd), min(d[-1], best_d + 2 * hd)
        lo_z, hi_z = max(z[0], best_z - 2 * hz), min(z[-1], best_z + 2 * hz)
    return ConversionMaximum(float(best), float(best_d), float(best_z))


def first_maximum(eta_values, z0_grid) -> tuple[float, float]:
    """First local maximum of a sampled eta(z0) curve (value, z0)."""
    e = np.asarray(eta_values, dtype=float)
    z = np.asarray(z0_grid, dtype=float)
    for k in range(1, len(e) - 1):
        if e[k] >= e[k - 1] and e[k] > e[k + 1]:
            return float(e[k]), float(z[k])
    k = int(np.argmax(e))
    return float(e[k]), float(z[k])
