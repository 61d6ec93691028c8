"""Closed-form spectra of the ladder scheme.

F1 is the normalized complex response at the discrete probe frequency,
FS the response at the continuum (generated) frequency, and the chi3
ratios are the four-wave-mixing susceptibilities normalized to their
fully resonant weak-field values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import (ComplexResponse, LadderParams, ResonantPoleError,
                     dispersion_factors)

POLE_RTOL = 1e-12
FORM_RTOL = 1e-12

CHI1_CONJUGATE = "conjugate"
CHI1_PRINTED = "printed"


@dataclass(frozen=True)
class LadderSpectrumPoint:
    F1: ComplexResponse
    FS: ComplexResponse
    chi3_S_ratio: complex
    chi3_1_ratio: complex


@dataclass(frozen=True)
class LadderSpectrum:
    """Array-valued spectra; grid points on a resonant pole hold NaN."""

    F1: np.ndarray
    FS: np.ndarray
    chi3_S_ratio: np.ndarray
    chi3_1_ratio: np.ndarray
    pole: np.ndarray


def fs_forms(p: LadderParams, Omega1=None, Omega2=None, Omega_L=None):
    """The three algebraically equivalent expressions for FS."""
    d = dispersion_factors(p, Omega1, Omega2, Omega_L)
    D = d.X_f * d.X_n - d.K + d.A_m * d.X_f
    first = 1 - (d.X_f * d.X_n * (d.A_n + d.A_f) - d.U + d.A_m * d.A_f * d.X_f) / D
    second = 1 - d.A_f - d.A_n - (d.K * (d.A_n + d.A_f) - d.U - d.A_m * d.A_n * d.X_f) / D
    third = (1 - d.A_f - d.An_tilde
             - (d.K * (d.An_tilde + d.A_f) - d.U) / (d.X_f * d.Xn_tilde - d.K))
    return first, second, third


def _kernel(p: LadderParams, Omega1, Omega2, Omega_L, chi1: str, pole_tol: float):
    d = dispersion_factors(p, Omega1, Omega2, Omega_L)
    q = p.fano
    XnXf = d.X_n * d.X_f
    D = XnXf - d.K + d.A_m * d.X_f
    pole = np.abs(D) < pole_tol * np.maximum(1.0, np.abs(XnXf))
    with np.errstate(divide="ignore", invalid="ignore"):
        F1 = (1 - d.A_m * d.X_f / D) / d.X_m
        FS = 1 - (d.X_f * d.X_n * (d.A_n + d.A_f) - d.U + d.A_m * d.A_f * d.X_f) / D
        num = d.X_f - p.cross * d.beta_f * (1 - 1j * q.q_nf) * (1 - 1j * q.q_gf) / (1 - 1j * q.q_gn)
        chi_S = num / (d.X_m * (1 + p.g_nn) * D)
    if chi1 == CHI1_CONJUGATE:
        chi_1 = np.conj(chi_S)
    elif chi1 == CHI1_PRINTED:
        chi_1 = chi_S
    else:
        raise ValueError(f"unknown chi1 convention {chi1!r}")
    return F1, FS, chi_S, chi_1, pole


def ladder_spectrum(p: LadderParams, Omega1=None, Omega2=None, Omega_L=None, *,
                    chi1: str = CHI1_CONJUGATE, pole_tol: float = POLE_RTOL) -> LadderSpectrum:
    """Vectorized spectra over broadcast detuning arrays (gaps at poles)."""
    F1, FS, chi_S, chi_1, pole = _kernel(p, Omega1, Omega2, Omega_L, chi1, pole_tol)
    nan = np.nan + 1j * np.nan
    return LadderSpectrum(*(np.where(pole, nan, a) for a in (F1, FS, chi_S, chi_1)),
                          pole=np.asarray(pole))


def ladder_point(p: LadderParams, *, chi1: str = CHI1_CONJUGATE,
                 pole_tol: float = POLE_RTOL, check_forms: bool = True) -> LadderSpectrumPoint:
    """Evaluate F1, FS and both chi3 ratios at the detunings stored in ``p``.

    ``chi1="conjugate"`` returns the back-conversion susceptibility as the
    complex conjugate of the forward one (the convention assumed by the
    propagation solution); ``chi1="printed"`` returns the identical
    expression instead. Raises ResonantPoleError on an undamped pole.
    """
    F1, FS, chi_S, chi_1, pole = _kernel(p, None, None, None, chi1, pole_tol)
    if pole:
        raise ResonantPoleError(
            f"resonant pole at Omega1={p.Omega1}, Omega2={p.Omega2}, Omega_L={p.Omega_L}; "
            "re-evaluate with finite widths")
    if check_forms:
        forms = fs_forms(p)
        spread = max(abs(forms[1] - forms[0]), abs(forms[2] - forms[0])) / max(abs(FS), 1.0)
        if spread > 1e3 * FORM_RTOL:
            raise ArithmeticError(f"FS forms disagree (relative spread {spread:.2e})")
    return LadderSpectrumPoint(ComplexResponse(complex(F1)), ComplexResponse(complex(FS)),
                               complex(chi_S), complex(chi_1))


def absorption_1(p: LadderParams) -> float:
    return ladder_point(p).F1.absorption


def refraction_1(p: LadderParams) -> float:
    return ladder_point(p).F1.dispersion


def absorption_S(p: LadderParams) -> float:
    return ladder_point(p).FS.absorption


def refraction_S(p: LadderParams) -> float:
    return ladder_point(p).FS.dispersion


def three_level_F1(p: LadderParams, Omega1=None, Omega2=None) -> complex:
    """Three-level limit (no continuum coupling) of F1."""
    d = dispersion_factors(p, Omega1, Omega2)
    return d.X_n / (d.X_n * d.X_m + p.g_mn / (1 + p.g_nn))
