"""CSV tables, quick vector plots and ``key = value`` sweep configs."""

from __future__ import annotations

import configparser
import csv
import io as _io
import re
from pathlib import Path
from typing import Optional

import numpy as np

from .presets import Axis
from .sweep import SpecError, SweepResult, SweepSpec, Table

_HEADER = re.compile(r"^(.*) \[(.*)\]$")


def _num(x: float) -> str:
    return repr(float(x))


def format_csv(table: Table) -> str:
    """CSV text: ``# key = value`` metadata lines, a unit-annotated header, rows."""
    buf = _io.StringIO()
    for k, v in table.metadata.items():
        buf.write(f"# {k} = {v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"{c} [{u}]" for c, u in zip(table.columns, table.units)])
    for row in table.data:
        w.writerow([_num(x) for x in row])
    return buf.getvalue()


def emit_csv(table: Table, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_csv(table))
    return path


def parse_csv(text: str) -> Table:
    metadata = {}
    lines = text.splitlines()
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        key, _, value = lines[i][1:].strip().partition(" = ")
        metadata[key] = value
        i += 1
    rows = list(csv.reader(lines[i:]))
    if not rows:
        raise ValueError("CSV has no header row")
    columns, units = [], []
    for h in rows[0]:
        m = _HEADER.match(h)
        columns.append(m.group(1) if m else h)
        units.append(m.group(2) if m else "")
    data = np.array([[float(x) for x in r] for r in rows[1:] if r], dtype=float)
    if data.size == 0:
        data = np.empty((0, len(columns)))
    return Table(columns, units, data.reshape(-1, len(columns)), metadata)


def read_csv(path) -> Table:
    return parse_csv(Path(path).read_text())


# ----------------------------------------------------------------------- plotting

def emit_plot(result: SweepResult, path, output: Optional[str] = None) -> Path:
    """Line plot for one axis, heatmap for two. The format follows the suffix."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    t = result.table
    axes = result.spec.axes
    outs = [c for c in t.columns if c not in {a.path for a in axes}]
    if not outs:
        raise SpecError("nothing to plot")
    label = {c: f"{c} [{u}]" if u != "1" else c for c, u in zip(t.columns, t.units)}
    fig, ax = plt.subplots(figsize=(6, 4.2))
    if len(axes) == 1:
        x = t.column(axes[0].path)
        for o in ([output] if output else outs):
            ax.plot(x, t.column(o), label=label[o])
        ax.set_xlabel(label[axes[0].path])
        if axes[0].scale == "log":
            ax.set_xscale("log")
        ax.legend()
    elif len(axes) == 2:
        o = output or outs[0]
        g1, g2 = result.grids[axes[0].path], result.grids[axes[1].path]
        Z = t.column(o).reshape(len(g1), len(g2))
        # large meshes are embedded as an image; axes and labels stay vector
        mesh = ax.pcolormesh(g1, g2, Z.T, shading="auto", rasterized=Z.size > 10_000)
        fig.colorbar(mesh, ax=ax, label=label[o])
        ax.set_xlabel(label[axes[0].path])
        ax.set_ylabel(label[axes[1].path])
        if axes[1].scale == "log":
            ax.set_yscale("log")
        if axes[0].scale == "log":
            ax.set_xscale("log")
    else:
        raise SpecError("plots need one or two axes")
    title = result.spec.preset or result.spec.scheme
    if result.spec.curve:
        title += f" curve {result.spec.curve}"
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


# ------------------------------------------------------------------------- config

def _value(text: str):
    t = text.strip()
    try:
        return float(t)
    except ValueError:
        return t


def parse_axis(text: str) -> Axis:
    """``path:start:stop:count[:lin|log]``."""
    parts = text.split(":")
    if len(parts) not in (4, 5):
        raise SpecError(f"axis {text!r}: expected path:start:stop:count[:lin|log]")
    try:
        return Axis(parts[0].strip(), float(parts[1]), float(parts[2]), int(parts[3]),
                    parts[4].strip() if len(parts) == 5 else "lin")
    except ValueError as exc:
        raise SpecError(f"axis {text!r}: {exc}") from None


def read_config(text: str) -> dict:
    """Parse a sweep config into plain values.

    Sections: ``[sweep]`` (scheme, preset, curve, outputs, max_points,
    threads, tolerance), ``[params]`` (parameter block) and ``[axis1]``,
    ``[axis2]`` (path, start, stop, count, scale; or ``range = a, b``).
    """
    cp = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#", ";"),
                                   interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise SpecError(f"config: {exc}") from None
    known = {"sweep", "params", "axis1", "axis2"}
    for s in cp.sections():
        if s not in known:
            raise SpecError(f"config: unknown section [{s}]")
    out: dict = {"params": {}, "axes": []}
    if cp.has_section("sweep"):
        sw = cp["sweep"]
        for key in sw:
            if key not in ("scheme", "preset", "curve", "outputs", "max_points", "threads",
                           "tolerance", "rate_unit"):
                raise SpecError(f"config: unknown [sweep] key {key!r}")
        for key in ("scheme", "preset", "curve", "rate_unit"):
            if key in sw:
                out[key] = sw[key].strip()
        if "outputs" in sw:
            out["outputs"] = tuple(o.strip() for o in sw["outputs"].split(",") if o.strip())
        for key in ("max_points", "threads"):
            if key in sw:
                out[key] = int(float(sw[key]))
        if "tolerance" in sw:
            out["tolerance"] = float(sw["tolerance"])
    if cp.has_section("params"):
        out["params"] = {k: _value(v) for k, v in cp["params"].items()}
    for name in ("axis1", "axis2"):
        if not cp.has_section(name):
            continue
        a = cp[name]
        try:
            if "range" in a:
                start, stop = (float(x) for x in a["range"].split(","))
            else:
                start, stop = float(a["start"]), float(a["stop"])
            out["axes"].append(Axis(a["path"].strip(), start, stop, int(float(a["count"])),
                                    a.get("scale", "lin").strip()))
        except (KeyError, ValueError) as exc:
            raise SpecError(f"config [{name}]: {exc}") from None
    return out


def load_config(path) -> dict:
    return read_config(Path(path).read_text())


def format_config(spec: SweepSpec) -> str:
    """Config text that reproduces ``spec`` (fully expanded, no preset lookup)."""
    lines = ["[sweep]", f"scheme = {spec.scheme}"]
    if spec.outputs:
        lines.append(f"outputs = {', '.join(spec.outputs)}")
    lines.append(f"max_points = {spec.max_points}")
    lines.append(f"rate_unit = {spec.rate_unit}")
    lines += ["", "[params]"]
    for k, v in spec.fixed.items():
        lines.append(f"{k} = {_num(v) if not isinstance(v, str) else v}")
    for i, a in enumerate(spec.axes, 1):
        lines += ["", f"[axis{i}]", f"path = {a.path}", f"start = {_num(a.start)}",
                  f"stop = {_num(a.stop)}", f"count = {a.count}", f"scale = {a.scale}"]
    return "\n".join(lines) + "\n"
