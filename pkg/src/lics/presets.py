"""Figure presets: caption parameter blocks, default sweep axes and landmarks.

Parameter keys use the sweep vocabulary (see ``lics.sweep``). A key of the
form ``a/b`` states the ratio of two quantities exactly as a caption does
(``Omega_L/Gamma_gm = 0.8``); the resolver turns it into absolute values.
Every value carries the caption it was transcribed from. Axis ranges are
choices of this package and are not cited.

Ladder presets use the unit Gamma_gf = 1. Folded presets use the physical
relaxation rates of the Na2 example (s^-1), so rates and detunings come out
in s^-1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Optional


@dataclass(frozen=True)
class Cited:
    value: object
    source: str


@dataclass(frozen=True)
class Axis:
    """One sweep axis: parameter path, range, point count and spacing."""

    path: str
    start: float
    stop: float
    count: int
    scale: str = "lin"


@dataclass(frozen=True)
class Landmark:
    """A quoted number the preset must reproduce.

    ``kind`` is "max" (global maximum of ``output`` over the sweep) or
    "first_max" (best first local maximum along ``location_axis``).
    """

    output: str
    kind: str
    value: float
    tolerance: float
    location_axis: Optional[str] = None
    location: Optional[float] = None
    location_rtol: Optional[float] = None
    source: str = ""


@dataclass(frozen=True)
class FigurePreset:
    id: str
    scheme: str
    description: str
    params: Mapping[str, Cited]
    axes: tuple = ()
    outputs: tuple = ()
    curves: Mapping[str, Mapping[str, Cited]] = field(default_factory=dict)
    landmarks: tuple = ()
    ambiguities: tuple = ()
    curves_only: bool = False

    def values(self, curve: Optional[str] = None) -> dict:
        """Flat parameter block, optionally with one curve's overrides applied."""
        out = {k: c.value for k, c in self.params.items()}
        if curve is not None:
            if curve not in self.curves:
                raise KeyError(f"preset {self.id} has no curve {curve!r} "
                               f"(available: {', '.join(self.curves) or 'none'})")
            out = override(out, {k: c.value for k, c in self.curves[curve].items()})
        return out

    def to_dict(self) -> dict:
        def block(b):
            return {k: {"value": c.value, "source": c.source} for k, c in b.items()}
        return {
            "id": self.id,
            "scheme": self.scheme,
            "description": self.description,
            "params": block(self.params),
            "curves": {name: block(b) for name, b in self.curves.items()},
            "axes": [vars(a) for a in self.axes],
            "outputs": list(self.outputs),
            "landmarks": [vars(m) for m in self.landmarks],
            "ambiguities": list(self.ambiguities),
            "curves_only": self.curves_only,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def target(key: str) -> str:
    """Quantity a block key sets (the numerator of a ratio key)."""
    return key.split("/", 1)[0].strip()


def override(base: Mapping[str, object], changes: Mapping[str, object]) -> dict:
    """Apply ``changes`` to a block, dropping base keys that set the same quantity."""
    hit = {target(k) for k in changes}
    out = {k: v for k, v in base.items() if target(k) not in hit}
    out.update(changes)
    return out


def _cite(source: str, values: Mapping[str, object]) -> dict:
    return {k: Cited(v, source) for k, v in values.items()}


def _merge(*blocks: Mapping[str, Cited]) -> dict:
    out: dict = {}
    for b in blocks:
        out = override(out, b)
    return out


PRESETS: dict = {}


def _add(p: FigurePreset) -> None:
    PRESETS[p.id] = p


# ----------------------------------------------------------------- ladder spectra

_RATES = {"Gamma_gm/Gamma_gf": 100.0, "Gamma_gm/Gamma_gn": 10.0}
_FIG2 = _cite("fig2 caption", {"q_ff": 0.9, "q_nn": 0.5, **_RATES})
_FIG2AB = _cite("fig2 caption, panels a,b", {
    "Omega2": 0.0, "q_fn": 1.5, "g_mn": 7.0, "gamma_ff/Gamma_gf": 2.0})
_FIG2CD = _cite("fig2 caption, panels c,d", {
    "Omega2/Gamma_mn": 0.3, "g_mn": 70.0, "gamma_ff/Gamma_gf": 10.0, "Omega_L/Gamma_gm": -1.1})
_FIG2CD_CURVES = {
    "1": _cite("fig2 caption, panels c,d curve 1", {"gamma_nn": 0.0}),
    "2": _cite("fig2 caption, panels c,d curve 2", {"gamma_nn/Gamma_gn": 50.0}),
}
_OMEGA1_AXIS = (Axis("Omega1/Gamma_gm", -5.0, 5.0, 1001),)
_GAMMA_MN_NOTE = ("Omega2 is given relative to Gamma_mn, which is not a ladder parameter; "
                  "the resolver reads Gamma_mn as Gamma_gn.")

_add(FigurePreset(
    "fig2a", "ladder-spectrum", "Absorption at the discrete probe versus Omega1, two dressing settings",
    _merge(_FIG2, _FIG2AB), _OMEGA1_AXIS, ("absorption_1",),
    curves={
        "1": _cite("fig2 caption, panel a curve 1", {"gamma_nn": 0.0}),
        "2": _cite("fig2 caption, panel a curve 2", {"gamma_nn/Gamma_gn": 5.0, "Omega_L/Gamma_gm": 0.8}),
    },
    ambiguities=("Curve 1 prints no Omega_L; with gamma_nn = 0 the probe response does not "
                 "depend on Omega_L, so the default 0 is harmless.",), curves_only=True))
_add(FigurePreset(
    "fig2b", "ladder-spectrum", "Absorption and refraction at the discrete probe versus Omega1",
    _merge(_FIG2, _FIG2AB, _cite("fig2 caption, panel b", {"gamma_nn/Gamma_gn": 5.0, "Omega_L": 0.0})),
    _OMEGA1_AXIS, ("absorption_1", "refraction_1")))
_add(FigurePreset(
    "fig2c", "ladder-spectrum", "Absorption at the discrete probe, large cross Fano ratio",
    _merge(_FIG2, _FIG2CD, _cite("fig2 caption, panel c", {"q_fn": 15.0})),
    _OMEGA1_AXIS, ("absorption_1",), curves=_FIG2CD_CURVES, ambiguities=(_GAMMA_MN_NOTE,),
    curves_only=True))
_add(FigurePreset(
    "fig2d", "ladder-spectrum", "Absorption at the discrete probe, small cross Fano ratio",
    _merge(_FIG2, _FIG2CD, _cite("fig2 caption, panel d", {"q_fn": 1.5})),
    _OMEGA1_AXIS, ("absorption_1",), curves=_FIG2CD_CURVES, ambiguities=(_GAMMA_MN_NOTE,),
    curves_only=True))

_FIG3 = _cite("fig3 caption", dict(_RATES))
_FIG3AB = _cite("fig3 caption, panels a,b", {
    "q_ff": 0.9, "q_nn": 0.9, "Omega_L/Gamma_gf": -110.0, "Omega2/Gamma_gf": 30.0})
_FIG3_CURVES = {
    "1": _cite("fig3 caption, curve 1", {"q_fn": 15.0, "g_mn": 0.0, "gamma_nn": 0.0,
                                         "gamma_ff/Gamma_gf": 10.0}),
    "2": _cite("fig3 caption, curve 2", {"q_fn": 15.0, "g_mn": 70.0, "gamma_nn/Gamma_gn": 50.0,
                                         "gamma_ff": 0.0}),
    "3": _cite("fig3 caption, curve 3", {"q_fn": 15.0, "g_mn": 70.0, "gamma_nn/Gamma_gn": 50.0,
                                         "gamma_ff/Gamma_gf": 10.0}),
}
_OMEGA_S_AXIS = (Axis("Omega/Gamma_gf", -300.0, 300.0, 1201),)

_add(FigurePreset(
    "fig3a", "ladder-spectrum", "Absorption at the continuum probe versus its two-photon detuning",
    _merge(_FIG3, _FIG3AB, _cite("fig3 caption, panel a", {"q_gf": -0.5, "q_gn": -0.95, "q_fn": 15.0})),
    _OMEGA_S_AXIS, ("absorption_S", "refraction_S"), curves=_FIG3_CURVES,
    ambiguities=("The curve-by-curve settings are printed once for panels a and b; panel a "
                 "reuses curves 1-3 of panel b with its own q_gf, q_gn.",), curves_only=True))
_add(FigurePreset(
    "fig3b", "ladder-spectrum", "Absorption at the continuum probe, Fano-ratio comparison",
    _merge(_FIG3, _FIG3AB, _cite("fig3 caption, panel b", {"q_gf": -0.95, "q_gn": -0.5})),
    _OMEGA_S_AXIS, ("absorption_S", "refraction_S"),
    curves={**_FIG3_CURVES,
            "4": _cite("fig3 caption, curve 4", {"q_fn": 150.0, "g_mn": 70.0,
                                                 "gamma_nn/Gamma_gn": 50.0, "gamma_ff/Gamma_gf": 10.0})},
    curves_only=True))

# ------------------------------------------------------------- ladder conversion

_FIG4 = _cite("fig4 caption", {
    "C": 1e-5, "g_ff": 150.0, "g_nn": 200.0, "g_mn": 9000.0, "Omega1/Gamma_gf": 5000.0,
    "Omega2/Gamma_gf": -5100.0, "q_gf": 0.95, "q_gn": -2.0, "q_ff": 0.01, "q_nn": -5.0,
    "q_fn": 0.0, **_RATES})
_CONVERSION_OUT = ("eta_q", "alpha1_bar", "alphaS_bar", "eta_bar", "b_bar")

_add(FigurePreset(
    "fig4", "ladder-conversion", "Conversion efficiency versus Omega_L and optical depth, weak continuum",
    _FIG4, (Axis("Omega_L/Gamma_gf", -3000.0, 3000.0, 601), Axis("z_alpha10", 0.0, 20000.0, 1001)),
    _CONVERSION_OUT,
    curves={"1": _cite("fig4 caption, curve 1", {"z_alpha10": 8.5e3}),
            "2": _cite("fig4 caption, curve 2", {"z_alpha10": 1e4}),
            "3": _cite("fig4 caption, curve 3", {"z_alpha10": 2e4})},
    landmarks=(Landmark("eta_q", "max", 0.29, 0.03, "z_alpha10", 4000.0, 0.10,
                        "fig4 discussion: maximum 0.29 at z alpha10 = 4000"),)))

_FIG5 = _merge(_FIG4, _cite("fig5 caption", {"C": 3e-2, "g_nn": 500.0, "g_mn": 8000.0}))
_add(FigurePreset(
    "fig5", "ladder-conversion", "Conversion efficiency, comparable oscillator strengths",
    _FIG5, (Axis("Omega_L/Gamma_gf", -3000.0, 3000.0, 601), Axis("z_alpha10", 0.0, 1500.0, 1001)),
    _CONVERSION_OUT,
    curves={"1": _cite("fig5 caption, curve 1", {"z_alpha10": 450.0}),
            "2": _cite("fig5 caption, curve 2", {"z_alpha10": 500.0}),
            "3": _cite("fig5 caption, curve 3", {"z_alpha10": 550.0})},
    landmarks=(Landmark("eta_q", "first_max", 0.9, 0.05, "z_alpha10", 125.0, 0.5,
                        "fig5 discussion: first maximum 0.9 near z alpha10 = 125"),),
    ambiguities=("The first-maximum location is quoted only as approximate; a +-50% window "
                 "is used for it.",)))

_FIG6 = _merge(_FIG5, _cite("fig6 caption", {
    "g_ff": 100.0, "g_nn": 5.0, "g_mn": 7.0, "Omega1/Gamma_gf": 0.0, "Omega2/Gamma_gf": -250.0}))
_add(FigurePreset(
    "fig6", "ladder-conversion", "Conversion efficiency at one-photon resonance",
    _FIG6, (Axis("Omega_L/Gamma_gf", -1000.0, 1000.0, 401), Axis("z_alpha10", 0.0, 100.0, 1001)),
    _CONVERSION_OUT,
    curves={"1": _cite("fig6 caption, curve 1", {"Omega_L/Gamma_gf": 0.0}),
            "2": _cite("fig6 caption, curve 2", {"Omega_L/Gamma_gf": -250.0}),
            "3": _cite("fig6 caption, curve 3", {"Omega_L/Gamma_gf": -400.0})},
    landmarks=(Landmark("eta_q", "first_max", 0.54, 0.05, "z_alpha10", 5.0, 0.5,
                        "fig6 discussion: first maximum 0.54 near z alpha10 = 5"),),
    ambiguities=("The first-maximum location is quoted only as approximate; a +-50% window "
                 "is used for it.",)))

# ------------------------------------------------------------------------ Doppler

_FIG7 = _cite("fig7 caption", {
    "hwhm/Gamma_gm": 16.65, "k1": 1.0, "k2": -0.9, "k3": -0.5, "k": 0.6, **_RATES,
    "G_mn/hwhm": 1.0, "q_nn": 0.5, "q_ff": 0.9, "Omega2/hwhm": 9.0})
_FIG7AB = _cite("fig7 caption, panels a,b", {"gamma_nn/hwhm": 0.2, "gamma_ff/hwhm": 0.1, "q_fn": 0.5})
_FIG7_NOTE = ("Signed wavenumber ratios: k parallel to k1, k2 and k3 antiparallel to k1. "
              "The squared coupling ratio |G_mn|^2/hwhm^2 = 1 is stored as G_mn/hwhm = 1.")
_add(FigurePreset(
    "fig7a", "doppler", "Doppler-averaged probe absorption and refraction, Omega_L = 0",
    _merge(_FIG7, _FIG7AB, _cite("fig7 caption, panel a", {"Omega_L": 0.0})),
    (Axis("Omega1/hwhm", -4.0, 4.0, 401),), ("absorption_1", "refraction_1"),
    ambiguities=(_FIG7_NOTE,)))
_add(FigurePreset(
    "fig7b", "doppler", "Doppler-averaged probe absorption and refraction, split quasi-levels",
    _merge(_FIG7, _FIG7AB, _cite("fig7 caption, panels b-d", {"Omega_L/hwhm": -0.8})),
    (Axis("Omega1/hwhm", -4.0, 4.0, 401),), ("absorption_1", "refraction_1"),
    ambiguities=(_FIG7_NOTE,)))
_add(FigurePreset(
    "fig7c", "doppler", "Doppler-averaged probe spectra, strong continuum coupling",
    _merge(_FIG7, _cite("fig7 caption, panels b-d", {"Omega_L/hwhm": -0.8}),
           _cite("fig7 caption, panel c", {"gamma_nn/hwhm": 0.8, "gamma_ff/hwhm": 0.3, "q_fn": -1.5})),
    (Axis("Omega1/hwhm", -4.0, 4.0, 401),), ("absorption_1", "refraction_1"),
    ambiguities=(_FIG7_NOTE,)))
_add(FigurePreset(
    "fig7d", "doppler", "Doppler-averaged probe spectra, strong field on f",
    _merge(_FIG7, _cite("fig7 caption, panels b-d", {"Omega_L/hwhm": -0.8}),
           _cite("fig7 caption, panel d", {"gamma_nn/hwhm": 0.2, "gamma_ff/hwhm": 0.8, "q_fn": 1.5})),
    (Axis("Omega1/hwhm", -4.0, 4.0, 401),), ("absorption_1", "refraction_1"),
    ambiguities=(_FIG7_NOTE,)))

_FIG8 = _cite("fig8 caption", {
    "hwhm/Gamma_gf": 5e3, "k_S": 1.0, "k": 0.8, "k3": 0.3, "k2": 0.37, **_RATES,
    "G_mn/hwhm": 1.0, "gamma_nn/hwhm": 0.4, "gamma_ff/hwhm": 0.8, "q_gf": 0.95, "q_gn": 0.01,
    "q_ff": 0.01, "q_nn": -5.0})
_FIG8_NOTE = ("All wavevectors parallel. The continuum probe shifts its two-photon detuning "
              "with k_S - k; the discrete-probe detuning therefore carries k_S - k2 - k3.")
_FIG8_AXIS = (Axis("Omega/hwhm", -5.0, 5.0, 401),)
_add(FigurePreset(
    "fig8a", "doppler", "Doppler-averaged continuum-probe spectra, all fields on",
    _merge(_FIG8, _cite("fig8 caption, panel a", {"q_fn": 1.5, "Omega_L/hwhm": 1.5, "Omega2/hwhm": 2.2})),
    _FIG8_AXIS, ("absorption_S", "refraction_S"), ambiguities=(_FIG8_NOTE,)))
_add(FigurePreset(
    "fig8b", "doppler", "Doppler-averaged continuum-probe spectra, large cross Fano ratio",
    _merge(_FIG8, _cite("fig8 caption, panels b-d", {"Omega2": 0.0}),
           _cite("fig8 caption, panel b", {"q_fn": 15.0, "Omega_L/hwhm": 1.5})),
    _FIG8_AXIS, ("absorption_S", "refraction_S"), ambiguities=(_FIG8_NOTE,)))
_add(FigurePreset(
    "fig8c", "doppler", "Doppler-averaged continuum-probe spectra, far quasi-level",
    _merge(_FIG8, _cite("fig8 caption, panels b-d", {"Omega2": 0.0}),
           _cite("fig8 caption, panel c", {"q_fn": -1.5, "Omega_L/hwhm": 15.0})),
    _FIG8_AXIS, ("absorption_S", "refraction_S"), ambiguities=(_FIG8_NOTE,)))
_add(FigurePreset(
    "fig8d", "doppler", "Doppler-averaged continuum-probe spectra, near quasi-level",
    _merge(_FIG8, _cite("fig8 caption, panels b-d", {"Omega2": 0.0}),
           _cite("fig8 caption, panel d", {"q_fn": -1.5, "Omega_L/hwhm": -0.5})),
    _FIG8_AXIS, ("absorption_S", "refraction_S"), ambiguities=(_FIG8_NOTE,)))

# ------------------------------------------------------------------- folded scheme

_NA2 = _cite("Na2 relaxation constants", {"Gamma_m": 2e7, "Gamma_n": 1.2e8, "Gamma_f": 1.2e8})
_FIG9 = _merge(_NA2, _cite("fig9 caption", {
    "gamma_nn/Gamma_mn": 3.0, "gamma_ff/Gamma_mf": 3.0, "q_nn": 0.2, "q_ff": -0.5, "q_nf": 10.0,
    "w_n/Gamma_n": 0.1, "w_f": 0.0, "Omega_mn": 0.0}),
    _cite("fig9 caption (w_n, w_f imply closed pumping)", {"config": "closed"}))
_FOLDED_NOTES = (
    "Widths are given without a continuum-energy label; the same widths and Fano ratios "
    "are used at all three continuum energies.",
    "The Na2 relaxation rates quoted for the generation examples are used here too.",
)
_NF_AXIS = Axis("Omega_nf/Gamma_mf", -20.0, 20.0, 201)

for _panel, _out, _what in (("a", "W", "Dissociation rate"), ("b", "r_f", "Population of level f")):
    _scheme = "folded-dissociation" if _out == "W" else "folded-population"
    _add(FigurePreset(
        "fig9" + _panel, _scheme, f"{_what} versus Omega_nf and the discrete coupling",
        _FIG9, (_NF_AXIS, Axis("G_mn/Gamma_mn", 0.0, 60.0, 121)), (_out,),
        ambiguities=_FOLDED_NOTES))
    _add(FigurePreset(
        "fig10" + _panel, _scheme, f"{_what} versus Omega_nf and q_nf, strong discrete coupling",
        _merge(_FIG9, _cite("fig10 caption", {"G_mn/Gamma_mn": 50.0})),
        (_NF_AXIS, Axis("q_nf", -15.0, 15.0, 121)), (_out,), ambiguities=_FOLDED_NOTES))
    _add(FigurePreset(
        "fig11" + _panel, _scheme, f"{_what} versus Omega_nf and q_nf, no discrete field",
        _merge(_FIG9, _cite("fig11 caption", {"G_mn": 0.0})),
        (_NF_AXIS, Axis("q_nf", -15.0, 15.0, 121)), (_out,), ambiguities=_FOLDED_NOTES))

_FOLDED_CONV_OUT = ("eta_q", "alpha1_bar", "alphaS_bar", "chi_abs2", "b_bar", "eta_bar")
_Z_LOG = Axis("z_alpha10", 0.2, 2e5, 400, "log")
_FIG12 = _merge(_NA2, _cite("fig12 caption", {
    "C": 0.5, "gamma_nn/Gamma_mn": 100.0, "gamma_ff/Gamma_mf": 6000.0, "Omega_mn/Gamma_mn": 0.0,
    "q_ff": -0.5, "q_nn": 0.2, "q_nf": 0.0}))
_FIG14 = _merge(_FIG12, _cite("fig14 caption", {"gamma_nn/Gamma_mn": 6000.0}))
_FIG15 = _merge(_FIG14, _cite("fig15 caption", {"gamma_nn/Gamma_mn": 10.0, "gamma_ff/Gamma_mf": 6.5}))
_FIG13 = _merge(_FIG15, _cite("fig13 caption", {"gamma_nn/Gamma_mn": 10.0, "gamma_ff/Gamma_mf": 20.0}))
_CONV_NOTES = _FOLDED_NOTES[:1] + (
    "g_n = gamma_nn/Gamma_mn and g_f = gamma_ff/Gamma_mf.",
    "Figure numbering follows the numbering used for the acceptance landmarks: the "
    "g_n = 10, g_f = 20 comparison of q_nf is fig13 and the Omega_mn/Gamma_mn = 100 case is fig16.",
)

_add(FigurePreset(
    "fig12", "folded-conversion", "Folded four-wave mixing with strong power broadening",
    _FIG12, (Axis("Omega_nf/Gamma_mn", -20000.0, 20000.0, 801), _Z_LOG), _FOLDED_CONV_OUT,
    ambiguities=_CONV_NOTES))
_add(FigurePreset(
    "fig14", "folded-conversion", "Folded four-wave mixing, equal strong drives",
    _FIG14, (Axis("Omega_nf/Gamma_mn", -20000.0, 20000.0, 801), _Z_LOG), _FOLDED_CONV_OUT,
    curves={"1": _cite("fig14 caption, first cut", {"z_alpha10": 1e3}),
            "2": _cite("fig14 caption, second cut", {"z_alpha10": 4e3}),
            "3": _cite("fig14 caption, third cut", {"z_alpha10": 3e4})},
    ambiguities=_CONV_NOTES))
_add(FigurePreset(
    "fig15", "folded-conversion", "Folded four-wave mixing, moderate drives",
    _FIG15, (Axis("Omega_nf/Gamma_mn", -400.0, 400.0, 801), _Z_LOG), _FOLDED_CONV_OUT,
    ambiguities=_CONV_NOTES))

_FIG13_MAX = {100.0: 0.996, 5.0: 0.919, 0.0: 0.569}
for _panel, _q, _span in (("", 5.0, 400.0), ("a", 100.0, 3000.0), ("b", 5.0, 400.0),
                          ("c", 0.0, 400.0)):
    _src = "fig13 caption" + (f", panel {_panel}" if _panel else " (panel b is the default)")
    _add(FigurePreset(
        "fig13" + _panel, "folded-conversion", f"Folded four-wave mixing, q_nf = {_q:g}",
        _merge(_FIG13, _cite(_src, {"q_nf": _q})),
        (Axis("Omega_nf/Gamma_mn", -_span, _span, 801), _Z_LOG), _FOLDED_CONV_OUT,
        landmarks=(Landmark("eta_q", "max", _FIG13_MAX[_q], 0.01,
                            source=f"folded generation discussion: maximum {_FIG13_MAX[_q]} "
                                   f"for q_nf = {_q:g}"),),
        ambiguities=_CONV_NOTES))

_add(FigurePreset(
    "fig16", "folded-conversion", "Folded four-wave mixing off one-photon resonance",
    _merge(_FIG13, _cite("fig16 caption", {"q_nf": 5.0, "Omega_mn/Gamma_mn": 100.0})),
    (Axis("Omega_nf/Gamma_mn", -600.0, 600.0, 801), _Z_LOG), _FOLDED_CONV_OUT,
    landmarks=(Landmark("eta_q", "max", 0.87, 0.02, source="fig16 caption: max eta_q = 0.87"),),
    ambiguities=_CONV_NOTES))


EXCLUDED = {"fig3c": "the caption gives a negative half-width Gamma_gf = -1530"}


def get_preset(preset_id: str) -> FigurePreset:
    key = preset_id.lower()
    if key in EXCLUDED:
        raise KeyError(f"preset {preset_id} is not available: {EXCLUDED[key]}")
    if key not in PRESETS:
        raise KeyError(f"unknown preset {preset_id!r}; available: {', '.join(sorted(PRESETS))}")
    return PRESETS[key]
