from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from lics.io import (emit_csv, emit_plot, format_config, format_csv, parse_axis, parse_csv,
                     read_config, read_csv)
from lics.presets import Axis
from lics.sweep import LADDER_SPECTRUM, SpecError, SweepSpec, Table, run_sweep

names = st.text(alphabet="abcdefghijklmnopqrstuvwxyz_/", min_size=1, max_size=10)


@st.composite
def tables(draw):
    ncol = draw(st.integers(1, 4))
    cols = draw(st.lists(names, min_size=ncol, max_size=ncol, unique=True))
    units = draw(st.lists(st.sampled_from(["1", "s^-1", "Gamma_gf", ""]), min_size=ncol, max_size=ncol))
    nrow = draw(st.integers(0, 5))
    data = draw(arrays(float, (nrow, ncol), elements=st.floats(allow_nan=False, allow_infinity=False)))
    return Table(cols, units, data, {"tool": "lics test", "scheme": "x"})


@given(tables())
def test_csv_round_trip(t):
    assert parse_csv(format_csv(t)) == t


def test_empty_table_is_header_only():
    t = Table(["a", "b"], ["1", "s^-1"], np.empty((0, 2)))
    assert format_csv(t) == "a [1],b [s^-1]\n"
    assert parse_csv(format_csv(t)) == t


def test_single_row_round_trip(tmp_path):
    t = Table(["x"], ["1"], np.array([[0.1 + 0.2]]), {"k": "v"})
    path = emit_csv(t, tmp_path / "one.csv")
    lines = path.read_text().splitlines()
    assert lines == ["# k = v", "x [1]", "0.30000000000000004"]
    assert read_csv(path) == t


def test_identical_specs_give_identical_bytes():
    spec = SweepSpec.from_preset("fig9a", axes=(Axis("Omega_nf/Gamma_mf", -5, 5, 11),
                                                Axis("G_mn/Gamma_mn", 0, 10, 6)))
    assert format_csv(run_sweep(spec).table) == format_csv(run_sweep(spec).table)


def test_metadata_carries_parameters_and_version():
    md = run_sweep(SweepSpec.from_preset("fig2b")).table.metadata
    assert md["tool"].startswith("lics ") and md["preset"] == "fig2b"
    assert md["param.g_mn"] == "7.0"


def test_fig9a_surface_extrema_match_summary(tmp_path):
    spec = SweepSpec.from_preset("fig9a")
    res = run_sweep(spec)
    t = read_csv(emit_csv(res.table, tmp_path / "fig9a.csv"))
    W = t.column("W")
    assert float(t.metadata["summary.W.max"]) == np.nanmax(W)
    assert float(t.metadata["summary.W.min"]) == np.nanmin(W)
    i = int(np.nanargmax(W))
    for a in spec.axes:
        assert float(t.metadata[f"summary.W.max_at.{a.path}"]) == t.column(a.path)[i]
    emit_plot(res, tmp_path / "fig9a.svg", "W")
    assert (tmp_path / "fig9a.svg").read_text().lstrip().startswith("<?xml")


def test_line_plot(tmp_path):
    res = run_sweep(SweepSpec(LADDER_SPECTRUM, (Axis("Omega1", -300, 300, 31),), {"g_mn": 2.0}))
    emit_plot(res, tmp_path / "line.pdf")
    assert (tmp_path / "line.pdf").read_bytes().startswith(b"%PDF")


def test_axis_parsing():
    assert parse_axis("z_alpha10:0.2:2e5:400:log") == Axis("z_alpha10", 0.2, 2e5, 400, "log")
    with pytest.raises(SpecError):
        parse_axis("Omega1:0:1")


def test_config_reading_and_round_trip():
    text = """
[sweep]
scheme = ladder-spectrum
outputs = absorption_1, refraction_1
threads = 2

[params]
g_mn = 7
Gamma_gm/Gamma_gf = 100
chi1 = conjugate

[axis1]
path = Omega1/Gamma_gm
range = -5, 5
count = 11
"""
    cfg = read_config(text)
    assert cfg["scheme"] == "ladder-spectrum" and cfg["threads"] == 2
    assert cfg["params"] == {"g_mn": 7.0, "Gamma_gm/Gamma_gf": 100.0, "chi1": "conjugate"}
    assert cfg["axes"] == [Axis("Omega1/Gamma_gm", -5.0, 5.0, 11)]
    spec = SweepSpec(cfg["scheme"], tuple(cfg["axes"]), cfg["params"], cfg["outputs"])
    again = read_config(format_config(spec))
    assert again["params"] == cfg["params"] and again["axes"] == cfg["axes"]
    assert again["outputs"] == cfg["outputs"]


@pytest.mark.parametrize("text", ["[plot]\nx = 1\n", "[sweep]\ncolour = red\n",
                                  "[axis1]\npath = Omega1\n", "no section\n"])
def test_config_errors(text):
    with pytest.raises(SpecError):
        read_config(text)


def test_emit_creates_parent_directories(tmp_path):
    spec = SweepSpec.from_preset("fig2b")
    spec = SweepSpec(spec.scheme, fixed=spec.fixed, axes=(Axis(spec.axes[0].path, -1.0, 1.0, 3),),
                     outputs=spec.outputs, rate_unit=spec.rate_unit)
    result = run_sweep(spec, refine=False)
    out = emit_csv(result.table, tmp_path / "a" / "b" / "t.csv")
    assert out.exists()
