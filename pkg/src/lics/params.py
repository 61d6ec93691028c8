"""Dimensionless parameter types shared by the ladder and folded schemes.

All rates are expressed in units of a caller-chosen reference width; only
ratios enter the formulas. Light-induced shifts are never independent
inputs: a shift is always ``q * gamma`` for the corresponding Fano ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Optional

import numpy as np


class ParameterError(ValueError):
    """Raised when a parameter block violates its invariants."""

    def __init__(self, field_name: str, value, reason: str):
        self.field_name = field_name
        self.value = value
        super().__init__(f"{field_name}={value!r}: {reason}")


class ResonantPoleError(ArithmeticError):
    """A closed-form denominator vanished (undamped resonance)."""


def _check_finite(obj, skip=()) -> None:
    for f in fields(obj):
        if f.name in skip:
            continue
        v = getattr(obj, f.name)
        if v is None or isinstance(v, (str, bool)) or hasattr(v, "__dataclass_fields__"):
            continue
        if not math.isfinite(v):
            raise ParameterError(f.name, v, "must be finite")


@dataclass(frozen=True)
class FanoSet:
    """Fano ratios (shift / width) of the ladder scheme.

    ``q_nf`` defaults to ``q_fn`` (real couplings make the cross ratio
    symmetric). All values are intensity independent by construction:
    the API accepts numbers, never field-dependent callables.
    """

    q_gn: float = 0.0
    q_gf: float = 0.0
    q_fn: float = 0.0
    q_nn: float = 0.0
    q_ff: float = 0.0
    q_nf: Optional[float] = None

    def __post_init__(self):
        if self.q_nf is None:
            object.__setattr__(self, "q_nf", self.q_fn)
        _check_finite(self)


@dataclass(frozen=True)
class LadderParams:
    """Ladder scheme g -> m -> n -> continuum <- f.

    Rates (``Gamma_*``) are homogeneous half-widths. The drives are given
    as the dimensionless ``g_mn = |G_mn|^2/(Gamma_gm Gamma_gn)``,
    ``g_nn = gamma_nn/Gamma_gn`` and ``g_ff = gamma_ff/Gamma_gf``.
    ``cross`` is the sign/strength s of the cross width
    ``gamma_nf = s * sqrt(gamma_nn * gamma_ff)``.
    """

    Gamma_gm: float = 100.0
    Gamma_gn: float = 10.0
    Gamma_gf: float = 1.0
    g_mn: float = 0.0
    g_nn: float = 0.0
    g_ff: float = 0.0
    Omega1: float = 0.0
    Omega2: float = 0.0
    Omega_L: float = 0.0
    fano: FanoSet = FanoSet()
    cross: float = 1.0

    def __post_init__(self):
        _check_finite(self)
        for name in ("Gamma_gm", "Gamma_gn", "Gamma_gf"):
            if getattr(self, name) <= 0:
                raise ParameterError(name, getattr(self, name), "half-width must be > 0")
        for name in ("g_mn", "g_nn", "g_ff"):
            if getattr(self, name) < 0:
                raise ParameterError(name, getattr(self, name), "drive must be >= 0")
        if not -1.0 <= self.cross <= 1.0:
            raise ParameterError("cross", self.cross, "must lie in [-1, 1]")

    @property
    def gamma_nn(self) -> float:
        return self.g_nn * self.Gamma_gn

    @property
    def gamma_ff(self) -> float:
        return self.g_ff * self.Gamma_gf

    @property
    def delta_nn(self) -> float:
        return self.fano.q_nn * self.gamma_nn

    @property
    def delta_ff(self) -> float:
        return self.fano.q_ff * self.gamma_ff

    def with_(self, **changes) -> "LadderParams":
        """Copy with some fields replaced; ``q_*`` names address the FanoSet."""
        fano_changes = {k: v for k, v in changes.items() if k.startswith("q_")}
        rest = {k: v for k, v in changes.items() if not k.startswith("q_")}
        if fano_changes:
            rest["fano"] = replace(rest.get("fano", self.fano), **fano_changes)
        return replace(self, **rest)


@dataclass(frozen=True)
class ComplexResponse:
    """Complex spectral response normalized to its unperturbed resonant value.

    The real part is the scaled absorption index, the imaginary part the
    scaled refractive index (n-1)/2(n_max-1); both come from one evaluation.
    """

    value: complex

    @property
    def absorption(self) -> float:
        return self.value.real

    @property
    def dispersion(self) -> float:
        return self.value.imag

    def __complex__(self):
        return complex(self.value)


@dataclass(frozen=True)
class DispersionFactors:
    X_m: complex
    X_n: complex
    X_f: complex
    K: complex
    A_m: complex
    A_n: complex
    A_f: complex
    An_tilde: complex
    Xn_tilde: complex
    U: complex
    beta_n: float
    beta_f: float


def dispersion_factors(p: LadderParams, Omega1=None, Omega2=None, Omega_L=None) -> DispersionFactors:
    """Elementary complex factors entering every ladder closed form.

    Detunings default to those stored in ``p``; arrays may be passed to
    evaluate many detunings at once (the factors then broadcast).
    """
    O1 = p.Omega1 if Omega1 is None else np.asarray(Omega1, dtype=float)
    O2 = p.Omega2 if Omega2 is None else np.asarray(Omega2, dtype=float)
    OL = p.Omega_L if Omega_L is None else np.asarray(Omega_L, dtype=float)
    q = p.fano
    x_m = O1 / p.Gamma_gm
    x_n = (O1 + O2 - p.delta_nn) / (p.Gamma_gn + p.gamma_nn)
    x_f = (O1 + O2 - OL - p.delta_ff) / (p.Gamma_gf + p.gamma_ff)
    X_m, X_n, X_f = 1 + 1j * x_m, 1 + 1j * x_n, 1 + 1j * x_f
    beta_n = p.g_nn / (1 + p.g_nn)
    beta_f = p.g_ff / (1 + p.g_ff)
    s = p.cross
    K = s * s * beta_f * beta_n * (1 - 1j * q.q_nf) ** 2
    A_m = p.g_mn / (X_m * (1 + p.g_nn))
    A_n = beta_n * (1 - 1j * q.q_gn) ** 2 / X_n
    A_f = beta_f * (1 - 1j * q.q_gf) ** 2 / X_f
    U = 2 * s * beta_f * beta_n * (1 - 1j * q.q_gf) * (1 - 1j * q.q_fn) * (1 - 1j * q.q_gn)
    Xn_tilde = X_n + A_m
    An_tilde = beta_n * (1 - 1j * q.q_gn) ** 2 / Xn_tilde
    return DispersionFactors(X_m, X_n, X_f, K, A_m, A_n, A_f, An_tilde, Xn_tilde, U,
                             beta_n, beta_f)
