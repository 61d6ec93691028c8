"""Parameter sweeps over one or two axes for every scheme.

A parameter block is a flat mapping of keys to values. A key is either a
quantity name (``Omega_L``) or a ratio ``a/b`` meaning ``a = value * b``
(or, if only ``a`` is known, ``b = a / value``). Quantities not fixed by
the block are derived by the scheme's rules (``g_nn = gamma_nn/Gamma_gn``,
coherence widths as half-sums of decay rates, ...) or take defaults.

Rows are emitted axis-major: the first axis varies slowest. Grid points
where a closed form hits an undamped pole are kept as gap rows (NaN).
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from . import __version__
from .doppler import DopplerConfig, doppler_average, ladder_shifts
from .folded import (CLOSED, DegenerateSteadyState, FoldedParams, notation, populations,
                     folded_conversion_setup, uniform_channels)
from .ladder import ladder_spectrum
from .params import FanoSet, LadderParams
from .presets import Axis, FigurePreset, Landmark, get_preset, override, target
from .propagation import (PropagationSetup, conversion_rate_b, eta0_fano, eta_q_scaled,
                          first_maximum, locate_maximum)

LADDER_SPECTRUM = "ladder-spectrum"
LADDER_CONVERSION = "ladder-conversion"
FOLDED_POPULATION = "folded-population"
FOLDED_DISSOCIATION = "folded-dissociation"
FOLDED_CONVERSION = "folded-conversion"
DOPPLER = "doppler"
SCHEMES = (LADDER_SPECTRUM, LADDER_CONVERSION, FOLDED_POPULATION, FOLDED_DISSOCIATION,
           FOLDED_CONVERSION, DOPPLER)

MAX_POINTS = 10 ** 6


class SpecError(ValueError):
    """Invalid sweep specification (unknown path, conflict, missing value)."""


# ------------------------------------------------------------------ vocabulary

@dataclass(frozen=True)
class Rule:
    target: str
    inputs: tuple
    fn: Callable


_LADDER_RULES = (
    Rule("g_nn", ("gamma_nn", "Gamma_gn"), lambda g, G: g / G),
    Rule("g_ff", ("gamma_ff", "Gamma_gf"), lambda g, G: g / G),
    Rule("gamma_nn", ("g_nn", "Gamma_gn"), lambda g, G: g * G),
    Rule("gamma_ff", ("g_ff", "Gamma_gf"), lambda g, G: g * G),
    Rule("g_mn", ("G_mn", "Gamma_gm", "Gamma_gn"), lambda G, a, b: G * G / (a * b)),
    Rule("G_mn", ("g_mn", "Gamma_gm", "Gamma_gn"), lambda g, a, b: np.sqrt(g * a * b)),
    Rule("Omega1", ("Omega", "Omega2", "Omega_L"), lambda O, O2, OL: O - O2 + OL),
    Rule("Omega", ("Omega1", "Omega2", "Omega_L"), lambda O1, O2, OL: O1 + O2 - OL),
    Rule("Gamma_mn", ("Gamma_gn",), lambda G: G),
    Rule("q_nf", ("q_fn",), lambda q: q),
    Rule("k1", ("k_S", "k2", "k3"), lambda s, b, c: s - b - c),
)
_LADDER_DEFAULTS = (
    ("Gamma_gf", 1.0), ("Gamma_gm", 100.0), ("Gamma_gn", 10.0), ("Omega2", 0.0),
    ("Omega_L", 0.0), ("Omega1", 0.0), ("g_mn", 0.0), ("g_nn", 0.0), ("g_ff", 0.0),
    ("q_gn", 0.0), ("q_gf", 0.0), ("q_fn", 0.0), ("q_nn", 0.0), ("q_ff", 0.0), ("cross", 1.0),
    ("chi1", "conjugate"),
)
_DOPPLER_DEFAULTS = (("hwhm", 0.0), ("k2", 0.0), ("k3", 0.0), ("k", 0.0), ("k1", 1.0),
                     ("doppler_order", 64), ("doppler_method", "auto"))

_FOLDED_RULES = (
    Rule("Gamma_mn", ("Gamma_m", "Gamma_n"), lambda a, b: (a + b) / 2),
    Rule("Gamma_mf", ("Gamma_m", "Gamma_f"), lambda a, b: (a + b) / 2),
    Rule("Gamma_nf", ("Gamma_n", "Gamma_f"), lambda a, b: (a + b) / 2),
    Rule("q_fn", ("q_nf",), lambda q: q),
)
_FOLDED_DEFAULTS = (
    ("Gamma_m", 2e7), ("Gamma_n", 1.2e8), ("Gamma_f", 1.2e8), ("G_mn", 0.0),
    ("gamma_nn", 0.0), ("gamma_ff", 0.0), ("q_nn", 0.0), ("q_ff", 0.0), ("q_nf", 0.0),
    ("cross", 1.0), ("Omega_mn", 0.0), ("Omega_nf", 0.0), ("config", CLOSED),
    ("Q_m", 0.0), ("Q_n", 0.0), ("Q_f", 0.0), ("w_n", 0.0), ("w_f", 0.0), ("w_nm", 0.0),
)


@dataclass(frozen=True)
class SchemeInfo:
    rules: tuple
    defaults: tuple
    required: tuple
    vectorized: frozenset
    outputs: tuple
    default_outputs: tuple
    rate_outputs: frozenset = frozenset()

    @property
    def names(self) -> set:
        out = {n for n, _ in self.defaults} | set(self.required)
        for r in self.rules:
            out.add(r.target)
            out.update(r.inputs)
        return out


_SPECTRUM_OUT = ("absorption_1", "refraction_1", "absorption_S", "refraction_S", "chi3_abs2")
_LADDER_CONV_OUT = ("eta_q", "alpha1_bar", "alphaS_bar", "eta_bar", "b_bar", "chi3_abs2")
_FOLDED_OUT = ("r_m", "r_n", "r_f", "r_nf_abs", "W", "W_balance")
_FOLDED_CONV_OUT = ("eta_q", "alpha1_bar", "alphaS_bar", "chi_abs2", "b_bar", "eta_bar")

SCHEME_INFO = {
    LADDER_SPECTRUM: SchemeInfo(_LADDER_RULES, _LADDER_DEFAULTS, (),
                                frozenset({"Omega1", "Omega2", "Omega_L"}),
                                _SPECTRUM_OUT, ("absorption_1", "absorption_S")),
    LADDER_CONVERSION: SchemeInfo(_LADDER_RULES, _LADDER_DEFAULTS, ("C", "z_alpha10"),
                                  frozenset({"Omega1", "Omega2", "Omega_L", "z_alpha10"}),
                                  _LADDER_CONV_OUT, ("eta_q",)),
    DOPPLER: SchemeInfo(_LADDER_RULES, _LADDER_DEFAULTS + _DOPPLER_DEFAULTS, (),
                        frozenset({"Omega1", "Omega2", "Omega_L"}),
                        _SPECTRUM_OUT[:4], ("absorption_1", "refraction_1")),
    FOLDED_POPULATION: SchemeInfo(_FOLDED_RULES, _FOLDED_DEFAULTS, (),
                                  frozenset({"Omega_mn", "Omega_nf", "G_mn"}),
                                  _FOLDED_OUT, ("r_m", "r_n", "r_f"),
                                  frozenset({"W", "W_balance"})),
    FOLDED_DISSOCIATION: SchemeInfo(_FOLDED_RULES, _FOLDED_DEFAULTS, (),
                                    frozenset({"Omega_mn", "Omega_nf", "G_mn"}),
                                    _FOLDED_OUT, ("W",), frozenset({"W", "W_balance"})),
    FOLDED_CONVERSION: SchemeInfo(_FOLDED_RULES, _FOLDED_DEFAULTS, ("C", "z_alpha10"),
                                  frozenset({"Omega_mn", "Omega_nf", "z_alpha10"}),
                                  _FOLDED_CONV_OUT, ("eta_q",)),
}

_RATE_NAMES = {"Gamma_gm", "Gamma_gn", "Gamma_gf", "Gamma_mn", "Gamma_m", "Gamma_n", "Gamma_f",
               "Gamma_mf", "Gamma_nf", "gamma_nn", "gamma_ff", "G_mn", "Omega1", "Omega2",
               "Omega_L", "Omega", "Omega_mn", "Omega_nf", "hwhm", "Q_m", "Q_n", "Q_f",
               "w_n", "w_f", "w_nm"}


def scheme_info(scheme: str) -> SchemeInfo:
    if scheme not in SCHEME_INFO:
        raise SpecError(f"unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}")
    return SCHEME_INFO[scheme]


def _split(key: str):
    if "/" in key:
        num, den = (s.strip() for s in key.split("/", 1))
        return num, den
    return key.strip(), None


def check_keys(scheme: str, block: Mapping[str, object]) -> None:
    """Raise SpecError for keys that name no quantity of the scheme."""
    names = scheme_info(scheme).names
    for key in block:
        for part in _split(key):
            if part is not None and part not in names:
                raise SpecError(f"unknown parameter {part!r} in {key!r} for scheme {scheme}; "
                                f"known: {', '.join(sorted(names))}")


def _numeric(v) -> bool:
    return not isinstance(v, str)


def _same(a, b) -> bool:
    return bool(np.all(np.isclose(a, b, rtol=1e-9, atol=1e-12)))


def resolve(scheme: str, block: Mapping[str, object]) -> dict:
    """Absolute values of every quantity of ``scheme`` (arrays broadcast)."""
    info = scheme_info(scheme)
    check_keys(scheme, block)
    known: dict = {}
    ratios = []
    for key, v in block.items():
        num, den = _split(key)
        if den is None:
            known[num] = v
        else:
            if not _numeric(v):
                raise SpecError(f"ratio {key!r} needs a number, got {v!r}")
            ratios.append((num, den, v, key))

    def settle():
        progress = True
        while progress:
            progress = False
            for num, den, v, key in ratios:
                if den in known and num not in known:
                    known[num] = v * np.asarray(known[den], dtype=float)
                    progress = True
                elif num in known and den not in known:
                    if np.any(np.asarray(v) == 0):
                        raise SpecError(f"cannot solve {key!r} = 0 for {den}")
                    known[den] = np.asarray(known[num], dtype=float) / v
                    progress = True
            for r in info.rules:
                if r.target not in known and all(i in known for i in r.inputs):
                    known[r.target] = r.fn(*(known[i] for i in r.inputs))
                    progress = True

    settle()
    for name, value in info.defaults:
        if name not in known:
            known[name] = value
            settle()
    for num, den, v, key in ratios:
        if num not in known or den not in known:
            raise SpecError(f"cannot resolve {key!r}")
        if not _same(known[num], v * np.asarray(known[den], dtype=float)):
            raise SpecError(f"conflicting values: {key!r} = {v} disagrees with "
                            f"{num} set elsewhere")
    for r in info.rules:
        if r.target in known and all(i in known for i in r.inputs):
            vals = [known[i] for i in r.inputs + (r.target,)]
            if all(_numeric(x) for x in vals) and not _same(known[r.target], r.fn(*vals[:-1])):
                raise SpecError(f"conflicting values: {r.target} disagrees with "
                                f"{', '.join(r.inputs)}")
    for name in info.required:
        if name not in known:
            raise SpecError(f"scheme {scheme} needs {name!r} (fixed value or axis)")
    return {k: (np.asarray(v, dtype=float) if _numeric(v) and np.ndim(v) else v)
            for k, v in known.items()}


# --------------------------------------------------------------------- evaluation

def _scalar(v):
    return float(v) if _numeric(v) else v


def _ladder_params(v) -> LadderParams:
    fano = FanoSet(q_gn=_scalar(v["q_gn"]), q_gf=_scalar(v["q_gf"]), q_fn=_scalar(v["q_fn"]),
                   q_nn=_scalar(v["q_nn"]), q_ff=_scalar(v["q_ff"]), q_nf=_scalar(v["q_nf"]))
    return LadderParams(Gamma_gm=_scalar(v["Gamma_gm"]), Gamma_gn=_scalar(v["Gamma_gn"]),
                        Gamma_gf=_scalar(v["Gamma_gf"]), g_mn=_scalar(v["g_mn"]),
                        g_nn=_scalar(v["g_nn"]), g_ff=_scalar(v["g_ff"]), fano=fano,
                        cross=_scalar(v["cross"]))


def folded_params(v) -> FoldedParams:
    """FoldedParams from resolved scalar values (uniform continuum channels)."""
    ch = uniform_channels(_scalar(v["gamma_nn"]), _scalar(v["gamma_ff"]), _scalar(v["q_nn"]),
                          _scalar(v["q_ff"]), _scalar(v["q_nf"]), cross=_scalar(v["cross"]),
                          q_fn=_scalar(v["q_fn"]))
    pump = dict(Q_m=_scalar(v["Q_m"]), Q_n=_scalar(v["Q_n"]), Q_f=_scalar(v["Q_f"]),
                w_n=_scalar(v["w_n"]), w_f=_scalar(v["w_f"]), w_nm=_scalar(v["w_nm"]))
    return FoldedParams(_scalar(v["Gamma_m"]), _scalar(v["Gamma_n"]), _scalar(v["Gamma_f"]),
                        _scalar(v["Gamma_mn"]), _scalar(v["Gamma_mf"]), _scalar(v["Gamma_nf"]),
                        config=v["config"], **ch, **pump)


def _eval_spectrum(v, doppler: bool = False, tolerance: Optional[float] = None):
    p = _ladder_params(v)
    det = {k: np.asarray(v[k], dtype=float) for k in ("Omega1", "Omega2", "Omega_L")}
    if doppler:
        shifts = ladder_shifts(_scalar(v["k1"]), _scalar(v["k2"]), _scalar(v["k3"]), _scalar(v["k"]))
        cfg = DopplerConfig(_scalar(v["hwhm"]), shifts, order=int(_scalar(v["doppler_order"])),
                            method=v["doppler_method"],
                            **({} if tolerance is None else {"rtol": tolerance}))

        def response(Omega1, Omega2, Omega_L):
            sp = ladder_spectrum(p, Omega1, Omega2, Omega_L)
            return np.stack(np.broadcast_arrays(sp.F1, sp.FS))

        F1, FS = doppler_average(response, cfg, det)
        # normalize to the averaged field-free response at line center
        p0 = p.with_(g_mn=0.0, g_nn=0.0, g_ff=0.0)

        def bare(Omega1, Omega2, Omega_L):
            sp = ladder_spectrum(p0, Omega1, Omega2, Omega_L)
            return np.array([sp.F1, sp.FS])

        ref1, refS = doppler_average(bare, cfg, {"Omega1": 0.0, "Omega2": 0.0, "Omega_L": 0.0})
        F1, FS = F1 / ref1.real, FS / refS.real
        chi = np.full(np.shape(F1), np.nan)
    else:
        sp = ladder_spectrum(p, det["Omega1"], det["Omega2"], det["Omega_L"], chi1=v["chi1"])
        F1, FS, chi = sp.F1, sp.FS, sp.chi3_S_ratio
    return {"absorption_1": F1.real, "refraction_1": F1.imag, "absorption_S": FS.real,
            "refraction_S": FS.imag, "chi3_abs2": np.abs(chi) ** 2}


def _conversion_outputs(setup: PropagationSetup, z_alpha10, extra):
    z0 = np.asarray(z_alpha10, dtype=float) / 2
    eta = eta_q_scaled(setup.alpha1_bar, setup.alphaS_bar, setup.eta_bar, setup.C, z0)
    out = {"eta_q": eta, "alpha1_bar": setup.alpha1_bar, "alphaS_bar": setup.alphaS_bar,
           "eta_bar": setup.eta_bar, "b_bar": conversion_rate_b(setup)}
    out.update(extra)
    return out


def _eval_ladder_conversion(v, tolerance=None):
    p = _ladder_params(v)
    sp = ladder_spectrum(p, v["Omega1"], v["Omega2"], v["Omega_L"], chi1=v["chi1"])
    chi = sp.chi3_S_ratio
    eta_bar = eta0_fano(p.fano.q_gn) * np.abs(chi) ** 2 * p.g_mn * p.g_nn
    setup = PropagationSetup(sp.F1.real, sp.FS.real, eta_bar, _scalar(v["C"]), chi_phase=chi)
    return _conversion_outputs(setup, v["z_alpha10"], {"chi3_abs2": np.abs(chi) ** 2})


def _eval_folded(v, tolerance=None):
    p = folded_params(v)
    grid = dict(Omega_mn=np.asarray(v["Omega_mn"], dtype=float),
                Omega_nf=np.asarray(v["Omega_nf"], dtype=float),
                G_mn=np.asarray(v["G_mn"], dtype=float))
    try:
        s = populations(p, **grid)
    except DegenerateSteadyState:
        shape = np.broadcast_shapes(*(np.shape(a) for a in grid.values()))
        cols = {k: np.full(shape, np.nan) for k in _FOLDED_OUT}
        flat = {k: np.broadcast_to(a, shape) for k, a in grid.items()}
        for idx in np.ndindex(shape):
            try:
                si = populations(p, **{k: float(a[idx]) for k, a in flat.items()})
            except DegenerateSteadyState:
                continue
            for k, val in _folded_columns(si).items():
                cols[k][idx] = val
        return cols
    return _folded_columns(s)


def _folded_columns(s):
    return {"r_m": s.r_m, "r_n": s.r_n, "r_f": s.r_f, "r_nf_abs": np.abs(s.r_nf),
            "W": s.W, "W_balance": s.W_balance}


def _eval_folded_conversion(v, tolerance=None):
    p = folded_params(v)
    O_mn = np.asarray(v["Omega_mn"], dtype=float)
    O_nf = np.asarray(v["Omega_nf"], dtype=float)
    setup = folded_conversion_setup(p, _scalar(v["C"]), O_mn, O_nf)
    n = notation(p, O_mn, O_nf, 0.0)
    chi = p.Gamma_mn * p.Gamma_mf / n.Y
    return _conversion_outputs(setup, v["z_alpha10"], {"chi_abs2": np.abs(chi) ** 2})


_EVALUATORS = {
    LADDER_SPECTRUM: _eval_spectrum,
    DOPPLER: lambda v, tolerance=None: _eval_spectrum(v, doppler=True, tolerance=tolerance),
    LADDER_CONVERSION: _eval_ladder_conversion,
    FOLDED_POPULATION: _eval_folded,
    FOLDED_DISSOCIATION: _eval_folded,
    FOLDED_CONVERSION: _eval_folded_conversion,
}


def evaluate(scheme: str, block: Mapping[str, object], *, threads: int = 1,
             tolerance: Optional[float] = None) -> dict:
    """All outputs of ``scheme`` for a block whose values may be arrays.

    Array values broadcast against each other. Quantities the closed forms
    accept as arrays are evaluated in one call; for the others the grid is
    grouped by their distinct values and each group evaluated separately.
    """
    info = scheme_info(scheme)
    v = resolve(scheme, block)
    arrays = {k: a for k, a in v.items() if isinstance(a, np.ndarray) and a.ndim}
    shape = np.broadcast_shapes(*(a.shape for a in arrays.values())) if arrays else ()
    fn = _EVALUATORS[scheme]
    loop = [k for k in arrays if k not in info.vectorized]
    if not loop:
        out = fn(v, tolerance=tolerance)
        return {k: np.broadcast_to(np.asarray(out[k], dtype=float), shape).copy() for k in out}
    size = int(np.prod(shape))
    flat = {k: np.broadcast_to(a, shape).reshape(size) for k, a in arrays.items()}
    keys = np.stack([flat[k] for k in loop], axis=1)
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).reshape(size)
    groups = [np.flatnonzero(inverse == g) for g in range(len(uniq))]

    def run(g):
        idx = groups[g]
        sub = dict(v)
        for k in arrays:
            sub[k] = flat[k][idx] if k not in loop else float(uniq[g][loop.index(k)])
        res = fn(sub, tolerance=tolerance)
        return {k: np.broadcast_to(np.asarray(res[k], dtype=float), idx.shape) for k in res}

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(run, range(len(groups))))
    else:
        parts = [run(g) for g in range(len(groups))]
    out = {k: np.empty(size) for k in parts[0]}
    for idx, res in zip(groups, parts):
        for k in out:
            out[k][idx] = res[k]
    return {k: a.reshape(shape) for k, a in out.items()}


# ------------------------------------------------------------------------- sweeps

def axis_values(axis: Axis) -> np.ndarray:
    if axis.count < 2:
        raise SpecError(f"axis {axis.path!r}: point count must be >= 2")
    if axis.scale == "lin":
        return np.linspace(axis.start, axis.stop, axis.count)
    if axis.scale == "log":
        if axis.start <= 0 or axis.stop <= 0:
            raise SpecError(f"axis {axis.path!r}: log spacing needs positive bounds")
        return np.geomspace(axis.start, axis.stop, axis.count)
    raise SpecError(f"axis {axis.path!r}: scale must be 'lin' or 'log'")


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep, over which axes, and which outputs to report."""

    scheme: str
    axes: tuple = ()
    fixed: Mapping[str, object] = field(default_factory=dict)
    outputs: tuple = ()
    preset: Optional[str] = None
    curve: Optional[str] = None
    max_points: int = MAX_POINTS
    threads: int = 1
    tolerance: Optional[float] = None
    rate_unit: str = "reference rate"

    @classmethod
    def from_preset(cls, preset_id: str, *, curve: Optional[str] = None,
                    fixed: Optional[Mapping[str, object]] = None, axes=None,
                    outputs=None, **kw) -> "SweepSpec":
        """Preset block, then caller overrides; a curve fixes quantities it names."""
        pr = get_preset(preset_id)
        block = pr.values(curve)
        if fixed:
            block = override(block, fixed)
        axes = tuple(pr.axes if axes is None else axes)
        if curve is not None:
            pinned = {target(k) for k in pr.curves[curve]}
            axes = tuple(a for a in axes if target(a.path) not in pinned)
        unit = "Gamma_gf" if pr.scheme in (LADDER_SPECTRUM, LADDER_CONVERSION, DOPPLER) else "s^-1"
        return cls(pr.scheme, axes, block, tuple(outputs or pr.outputs), pr.id, curve,
                   rate_unit=kw.pop("rate_unit", unit), **kw)

    def validate(self) -> None:
        info = scheme_info(self.scheme)
        if len(self.axes) > 2:
            raise SpecError("at most two axes are supported")
        seen = set()
        for a in self.axes:
            t = target(a.path)
            if t in seen:
                raise SpecError(f"two axes set the same quantity {t!r}")
            seen.add(t)
            axis_values(a)
            check_keys(self.scheme, {a.path: 0.0})
        for o in self.outputs:
            if o not in info.outputs:
                raise SpecError(f"unknown output {o!r} for {self.scheme}; "
                                f"available: {', '.join(info.outputs)}")
        n = int(np.prod([a.count for a in self.axes])) if self.axes else 1
        if n > self.max_points:
            raise SpecError(f"grid of {n} points exceeds the limit of {self.max_points}; "
                            "raise max_points to allow it")

    def block(self, values: Sequence[np.ndarray]) -> dict:
        out = dict(self.fixed)
        for a, v in zip(self.axes, values):
            out = override(out, {a.path: v})
        return out


@dataclass
class Table:
    """Column-oriented numeric table with unit annotations and metadata."""

    columns: list
    units: list
    data: np.ndarray
    metadata: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Table):
            return NotImplemented
        return (self.columns == other.columns and self.units == other.units
                and self.metadata == other.metadata and self.data.shape == other.data.shape
                and bool(np.array_equal(self.data, other.data, equal_nan=True)))


@dataclass
class SweepResult:
    spec: SweepSpec
    table: Table
    grids: dict
    summary: dict
    landmarks: list = field(default_factory=list)

    @property
    def shape(self) -> tuple:
        return tuple(a.count for a in self.spec.axes)


def _unit(name: str, spec: SweepSpec) -> str:
    num, den = _split(name)
    if den is not None:
        return "1"
    if num in _RATE_NAMES or num in scheme_info(spec.scheme).rate_outputs:
        return spec.rate_unit
    return "1"


def _extrema(values: np.ndarray, axes, grids, name):
    finite = np.isfinite(values)
    if not finite.any():
        return {}
    out = {}
    for kind, fn in (("max", np.nanargmax), ("min", np.nanargmin)):
        i = np.unravel_index(int(fn(np.where(finite, values, np.nan))), values.shape)
        out[kind] = float(values[i])
        out[kind + "_at"] = {a.path: float(grids[a.path][k]) for a, k in zip(axes, i)}
    return out


def _z_axis(spec: SweepSpec) -> Optional[int]:
    for k, a in enumerate(spec.axes):
        if target(a.path) == "z_alpha10":
            return k
    return None


def first_max_over(values: np.ndarray, z: np.ndarray, z_axis: int, grids, axes) -> dict:
    """Best first local maximum along the optical-depth axis."""
    E = np.moveaxis(values, z_axis, -1)
    E = E.reshape(-1, E.shape[-1])
    best = (-np.inf, 0.0, 0)
    for row in range(E.shape[0]):
        e = np.nan_to_num(E[row], nan=-np.inf)
        val, loc = first_maximum(e, z)
        if val > best[0]:
            best = (val, loc, row)
    out = {"value": float(best[0]), "z_alpha10": float(best[1])}
    other = [a for k, a in enumerate(axes) if k != z_axis]
    if other:
        out[other[0].path] = float(grids[other[0].path][best[2]])
    return out


def refine_maximum(spec: SweepSpec, output: str = "eta_q", refine: int = 6):
    """Zoomed-grid refinement of the maximum of a two-axis conversion sweep."""
    zk = _z_axis(spec)
    if len(spec.axes) != 2 or zk is None:
        return None
    dk = 1 - zk
    da, za = spec.axes[dk], spec.axes[zk]

    def surface(d, z):
        vals = [None, None]
        vals[dk], vals[zk] = d, z
        return evaluate(spec.scheme, spec.block(vals), tolerance=spec.tolerance)[output]

    m = locate_maximum(surface, axis_values(da), axis_values(za), refine=refine)
    return {"value": m.eta, da.path: m.detuning, za.path: m.z0}


def run_sweep(spec: SweepSpec, *, refine: bool = True) -> SweepResult:
    """Evaluate a sweep; rows are axis-major with NaN gap rows at poles."""
    spec.validate()
    info = scheme_info(spec.scheme)
    outputs = list(spec.outputs or info.default_outputs)
    grids = {a.path: axis_values(a) for a in spec.axes}
    mesh = np.meshgrid(*grids.values(), indexing="ij") if spec.axes else []
    res = evaluate(spec.scheme, spec.block(mesh), threads=spec.threads, tolerance=spec.tolerance)
    shape = tuple(a.count for a in spec.axes)
    cols = [a.path for a in spec.axes] + outputs
    data = np.column_stack([m.reshape(-1) for m in mesh]
                           + [np.broadcast_to(res[o], shape).reshape(-1) for o in outputs]) \
        if cols else np.empty((0, 0))
    if data.ndim == 1:
        data = data[None, :]

    summary: dict = {}
    for o in outputs:
        vals = np.broadcast_to(res[o], shape)
        ext = _extrema(np.asarray(vals), spec.axes, grids, o)
        ext["gaps"] = int(np.sum(~np.isfinite(vals)))
        summary[o] = ext
    zk = _z_axis(spec)
    if "eta_q" in outputs and zk is not None:
        summary["eta_q"]["first_max"] = first_max_over(
            np.asarray(res["eta_q"]), grids[spec.axes[zk].path], zk, grids, spec.axes)
        if refine:
            r = refine_maximum(spec)
            if r is not None:
                summary["eta_q"]["refined_max"] = r

    table = Table(cols, [_unit(c, spec) for c in cols], np.asarray(data, dtype=float),
                  _metadata(spec, outputs, summary))
    result = SweepResult(spec, table, grids, summary)
    if spec.preset is not None and spec.curve is None:
        result.landmarks = check_landmarks(result, get_preset(spec.preset))
    return result


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.ndarray):
        return "array" + str(v.shape)
    return str(v)


def _metadata(spec: SweepSpec, outputs, summary) -> dict:
    md = {"tool": f"lics {__version__}", "scheme": spec.scheme, "rate_unit": spec.rate_unit}
    if spec.preset:
        md["preset"] = spec.preset
    if spec.curve:
        md["curve"] = spec.curve
    for k in sorted(spec.fixed):
        md[f"param.{k}"] = _fmt(spec.fixed[k])
    for i, a in enumerate(spec.axes, 1):
        md[f"axis{i}"] = f"{a.path} {a.scale} {_fmt(float(a.start))} {_fmt(float(a.stop))} {a.count}"
    md["outputs"] = ",".join(outputs)
    for o, ext in summary.items():
        for key, val in ext.items():
            if isinstance(val, dict):
                for sub, x in val.items():
                    md[f"summary.{o}.{key}.{sub}"] = _fmt(x)
            else:
                md[f"summary.{o}.{key}"] = _fmt(val)
    return md


# ----------------------------------------------------------------------- landmarks

@dataclass(frozen=True)
class LandmarkCheck:
    landmark: Landmark
    value: float
    location: Optional[float]
    passed: bool

    def line(self) -> str:
        m = self.landmark
        where = "" if self.location is None else f" at {m.location_axis}={self.location:.4g}"
        want = f"{m.value} +- {m.tolerance}"
        if m.location is not None:
            want += f" at {m.location_axis}={m.location:g} (+-{100 * m.location_rtol:g}%)"
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {m.kind} {m.output} = {self.value:.4f}{where}; expected {want}"


def check_landmarks(result: SweepResult, preset: FigurePreset) -> list:
    checks = []
    for m in preset.landmarks:
        s = result.summary.get(m.output, {})
        if m.kind == "first_max":
            found = s.get("first_max")
        else:
            found = s.get("refined_max") or (
                {"value": s["max"], **s["max_at"]} if "max" in s else None)
        if not found:
            checks.append(LandmarkCheck(m, math.nan, None, False))
            continue
        value = found["value"]
        ok = abs(value - m.value) <= m.tolerance
        loc = None
        if m.location_axis is not None:
            loc = found.get(m.location_axis)
            ok = ok and loc is not None and abs(loc - m.location) <= m.location_rtol * m.location
        checks.append(LandmarkCheck(m, value, loc, ok))
    return checks
