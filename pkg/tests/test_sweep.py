from __future__ import annotations

import numpy as np
import pytest

from lics.presets import PRESETS, Axis
from lics.sweep import (DOPPLER, FOLDED_CONVERSION, FOLDED_POPULATION, LADDER_CONVERSION,
                        LADDER_SPECTRUM, SpecError, SweepSpec, resolve, run_sweep)


def test_drives_off_spectrum_is_flat():
    spec = SweepSpec(LADDER_SPECTRUM, (Axis("Omega1", -500, 500, 21),),
                     outputs=("absorption_S", "absorption_1"))
    t = run_sweep(spec).table
    assert np.all(t.column("absorption_S") == 1.0)
    assert t.column("absorption_1")[10] == 1.0


def test_rows_are_axis_major():
    spec = SweepSpec(LADDER_SPECTRUM, (Axis("Omega1", 0, 1, 2), Axis("Omega2", 0, 2, 3)),
                     outputs=("absorption_1",))
    t = run_sweep(spec).table
    assert t.column("Omega1").tolist() == [0, 0, 0, 1, 1, 1]
    assert t.column("Omega2").tolist() == [0, 1, 2, 0, 1, 2]


def test_resolver_ratios_and_rules():
    v = resolve(LADDER_SPECTRUM, {"Gamma_gm/Gamma_gf": 100.0, "Gamma_gm/Gamma_gn": 10.0,
                                  "G_mn": 20.0})
    assert v["Gamma_gf"] == 1.0 and v["Gamma_gn"] == 10.0
    assert v["g_mn"] == pytest.approx(400 / 1000)


def test_resolver_errors():
    with pytest.raises(SpecError, match="unknown parameter"):
        resolve(LADDER_SPECTRUM, {"Gamma_xx": 1.0})
    with pytest.raises(SpecError, match="conflicting"):
        resolve(LADDER_SPECTRUM, {"g_mn": 1.0, "G_mn": 50.0})
    with pytest.raises(SpecError, match="needs"):
        resolve(LADDER_CONVERSION, {})
    with pytest.raises(SpecError):
        SweepSpec(LADDER_SPECTRUM, (Axis("Omega1", 0, 1, 2),), outputs=("eta_q",)).validate()
    with pytest.raises(SpecError):
        SweepSpec(LADDER_SPECTRUM, (Axis("Omega1", 0, 1, 2), Axis("Omega1/Gamma_gm", 0, 1, 2))
                  ).validate()
    with pytest.raises(SpecError):
        SweepSpec(LADDER_SPECTRUM, (Axis("Omega1", 0, 1, 1),)).validate()
    with pytest.raises(SpecError):
        SweepSpec(LADDER_SPECTRUM, (Axis("nope", 0, 1, 2),)).validate()


def test_point_guard():
    big = (Axis("Omega1", 0, 1, 1001), Axis("Omega2", 0, 1, 1000))
    with pytest.raises(SpecError, match="exceeds"):
        SweepSpec(LADDER_SPECTRUM, big).validate()
    SweepSpec(LADDER_SPECTRUM, big, max_points=2 * 10 ** 6).validate()


def test_pole_rows_are_gaps(monkeypatch):
    import dataclasses
    import lics.sweep as sweep_mod
    from lics.ladder import ladder_spectrum

    def with_pole(*args, **kw):
        # damped spectra have no poles; flag the line center as one
        sp = ladder_spectrum(*args, **kw)
        F1 = np.where(np.asarray(args[1]) == 0, np.nan, sp.F1)
        return dataclasses.replace(sp, F1=F1)

    monkeypatch.setattr(sweep_mod, "ladder_spectrum", with_pole)
    spec = SweepSpec(LADDER_SPECTRUM, (Axis("Omega1", -50, 50, 3),), {"g_mn": 1.0},
                     outputs=("absorption_1",))
    res = run_sweep(spec)
    col = res.table.column("absorption_1")
    assert np.isnan(col[1]) and np.all(np.isfinite(col[[0, 2]]))
    assert res.table.data.shape == (3, 2) and res.summary["absorption_1"]["gaps"] == 1


def test_threads_give_identical_rows():
    axes = (Axis("Omega_nf/Gamma_mf", -5, 5, 11), Axis("q_nf", -3, 3, 7))
    base = SweepSpec.from_preset("fig11a", axes=axes)
    one = run_sweep(base).table
    many = run_sweep(SweepSpec.from_preset("fig11a", axes=axes, threads=4)).table
    assert one.data.tobytes() == many.data.tobytes()


def test_curve_pins_axis():
    spec = SweepSpec.from_preset("fig4", curve="1")
    assert [a.path for a in spec.axes] == ["Omega_L/Gamma_gf"]
    assert spec.fixed["z_alpha10"] == 8500.0


@pytest.mark.parametrize("pid", sorted(p for p, pr in PRESETS.items()
                                       if "eta_q" in pr.outputs and not pr.curves_only))
def test_conversion_presets_bounded(pid):
    pr = PRESETS[pid]
    axes = tuple(Axis(a.path, a.start, a.stop, min(a.count, 121), a.scale) for a in pr.axes)
    eta = run_sweep(SweepSpec.from_preset(pid, axes=axes), refine=False).table.column("eta_q")
    eta = eta[np.isfinite(eta)]
    assert eta.size and np.all(eta >= 0) and np.all(eta <= 1)


def test_doppler_sweep_is_normalized_and_sub_doppler():
    spec = SweepSpec.from_preset("fig7a", axes=(Axis("Omega1/hwhm", -4, 4, 41),))
    res = run_sweep(spec)
    a = res.table.column(spec.outputs[0])
    assert 0.9 < np.nanmax(a) < 1.01


def test_folded_sweep_matches_direct_evaluation():
    from lics.folded import populations
    from lics.sweep import folded_params
    spec = SweepSpec.from_preset("fig9b", axes=(Axis("Omega_nf/Gamma_mf", -3, 3, 5),))
    t = run_sweep(spec).table
    block = dict(spec.fixed)
    block["Omega_nf/Gamma_mf"] = 3.0
    v = resolve(FOLDED_POPULATION, block)
    p = folded_params(v).with_(Omega_nf=float(v["Omega_nf"]), G_mn=float(v["G_mn"]),
                               Omega_mn=float(v["Omega_mn"]))
    assert t.column("r_f")[-1] == pytest.approx(float(populations(p).r_f), rel=1e-12)


def test_scheme_names():
    assert {LADDER_SPECTRUM, LADDER_CONVERSION, FOLDED_POPULATION, FOLDED_CONVERSION, DOPPLER} <= \
        {pr.scheme for pr in PRESETS.values()}
