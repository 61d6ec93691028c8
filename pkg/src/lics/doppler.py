"""Doppler averaging over a one-dimensional Maxwellian velocity distribution.

A response is evaluated with every detuning Omega_i replaced by
Omega_i - c_i u, where u is the Doppler shift of the reference field and
c_i the signed wavenumber ratio that multiplies it for detuning i. The
shift u is Gaussian with half-width at half-maximum ``hwhm``; the 1/e
half-width is hwhm / sqrt(ln 2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from scipy.integrate import quad_vec
from scipy.special import roots_hermite

HERMITE = "hermite"
ADAPTIVE = "adaptive"
AUTO = "auto"

CONVERGENCE_RTOL = 1e-6


class DopplerConvergenceWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class DopplerConfig:
    """Inhomogeneous broadening setup.

    ``shifts`` maps detuning names to signed coefficients c_i. ``method``
    is "hermite" (fixed-order Gauss-Hermite), "adaptive" (Gauss-Kronrod
    with the Gaussian weight) or "auto" (Gauss-Hermite with an order
    doubling check, falling back to adaptive quadrature when the check
    fails).
    """

    hwhm: float
    shifts: Mapping[str, float] = field(default_factory=dict)
    order: int = 64
    method: str = AUTO
    rtol: float = CONVERGENCE_RTOL

    def __post_init__(self):
        if not self.hwhm >= 0:
            raise ValueError(f"hwhm={self.hwhm!r}: Doppler width must be >= 0")
        if self.order < 16:
            raise ValueError(f"order={self.order!r}: quadrature order must be >= 16")
        if self.method not in (HERMITE, ADAPTIVE, AUTO):
            raise ValueError(f"unknown quadrature method {self.method!r}")

    @property
    def e_width(self) -> float:
        """1/e half-width of the shift distribution."""
        return self.hwhm / math.sqrt(math.log(2.0))


def _shifted(base: Mapping[str, float], shifts: Mapping[str, float], u: float) -> dict:
    out = dict(base)
    for name, c in shifts.items():
        out[name] = out.get(name, 0.0) - c * u
    return out


def _hermite(response, cfg: DopplerConfig, base, order: int):
    x, w = roots_hermite(order)
    total = 0.0
    for xi, wi in zip(x, w):
        total = total + wi * np.asarray(response(**_shifted(base, cfg.shifts, xi * cfg.e_width)))
    return total / math.sqrt(math.pi)


def _adaptive(response, cfg: DopplerConfig, base):
    s = cfg.e_width

    def integrand(x):
        return math.exp(-x * x) / math.sqrt(math.pi) * np.asarray(
            response(**_shifted(base, cfg.shifts, x * s)), dtype=complex)

    val, _ = quad_vec(integrand, -np.inf, np.inf, epsabs=1e-14, epsrel=cfg.rtol * 1e-3, limit=20000)
    return val


def doppler_average(response: Callable[..., complex], cfg: DopplerConfig,
                    base: Mapping[str, float]):
    """Velocity-averaged response (scalar or array, matching ``response``).

    A velocity-independent response is returned unchanged.
    """
    if cfg.hwhm == 0 or not cfg.shifts:
        return np.asarray(response(**dict(base)))
    if cfg.method == ADAPTIVE:
        return _adaptive(response, cfg, base)
    v = _hermite(response, cfg, base, cfg.order)
    v2 = _hermite(response, cfg, base, 2 * cfg.order)
    scale = max(float(np.max(np.abs(v2))), 1e-300)
    change = float(np.max(np.abs(v2 - v))) / scale
    if change <= cfg.rtol:
        return v2
    if cfg.method == AUTO:
        return _adaptive(response, cfg, base)
    warnings.warn(f"Gauss-Hermite order {cfg.order} not converged (relative change "
                  f"{change:.2e} on doubling); raise the order or use method='adaptive'",
                  DopplerConvergenceWarning, stacklevel=2)
    return v2


def ladder_shifts(k1: float, k2: float, k3: float, k: float) -> dict:
    """Shift coefficients of the ladder detunings for signed wavenumber ratios.

    ``k1, k2, k3`` belong to the fields driving g-m, m-n and n-continuum,
    ``k`` to the field coupling f with the continuum. For the generated
    probe, ``k1`` must be the effective k_S - k_2 - k_3 (collinear matching).
    Omega1 shifts with k1, Omega2 with k2 and Omega_L with k - k3.
    """
    return {"Omega1": k1, "Omega2": k2, "Omega_L": k - k3}
