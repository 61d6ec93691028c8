from __future__ import annotations

import subprocess
import sys

import pytest

from lics.cli import EXIT_OK, EXIT_SPEC, EXIT_VALIDATION, main
from lics.io import parse_csv, read_csv


def test_spectrum_to_stdout(capsys):
    assert main(["spectrum", "--set", "g_mn=1", "--grid", "Omega1/Gamma_gm:-5:5:5"]) == EXIT_OK
    t = parse_csv(capsys.readouterr().out)
    assert t.data.shape[0] == 5 and t.metadata["param.g_mn"] == "1.0"


def test_precedence_cli_over_config_over_preset(tmp_path):
    cfg = tmp_path / "s.ini"
    cfg.write_text("[sweep]\npreset = fig2b\n\n[params]\ng_mn = 3\nq_fn = 0.5\n")
    out = tmp_path / "o.csv"
    assert main(["spectrum", "--config", str(cfg), "--set", "g_mn=4", "--out", str(out)]) == EXIT_OK
    md = read_csv(out).metadata
    assert md["param.g_mn"] == "4.0" and md["param.q_fn"] == "0.5" and md["preset"] == "fig2b"


def test_preset_writes_csv_plot_and_passes_landmark(tmp_path):
    out, plot = tmp_path / "f6.csv", tmp_path / "f6.svg"
    assert main(["preset", "fig6", "--out", str(out), "--plot", str(plot)]) == EXIT_OK
    assert out.exists() and plot.exists()


def test_curves_only_preset_writes_each_curve(tmp_path):
    assert main(["preset", "fig2a", "--out", str(tmp_path / "f.csv")]) == EXIT_OK
    assert sorted(p.name for p in tmp_path.iterdir()) == ["f.curve1.csv", "f.curve2.csv"]


def test_failed_landmark_exit_code(tmp_path):
    assert main(["preset", "fig6", "--set", "C=0.2", "--out", str(tmp_path / "x.csv")]) \
        == EXIT_VALIDATION


@pytest.mark.parametrize("argv", [
    ["spectrum", "--set", "bogus=1"],
    ["preset", "fig3c"],
    ["preset", "fig99"],
    ["populations", "--preset", "fig4"],
    ["spectrum", "--grid", "Omega1:0:1:1000:lin", "--grid", "Omega2:0:1:1001"],
    ["spectrum", "--curve", "1"],
])
def test_spec_errors(argv, capsys):
    assert main(argv) == EXIT_SPEC
    assert capsys.readouterr().err.startswith("error:")


def test_conversion_scheme_choice(capsys):
    assert main(["conversion", "--preset", "fig16", "--no-refine", "--grid",
                 "Omega_nf/Gamma_mn:-600:600:5", "--grid", "z_alpha10:0.2:2e5:20:log",
                 "--outputs", "eta_q"]) in (EXIT_OK, EXIT_VALIDATION)
    assert "folded-conversion" in capsys.readouterr().out
    assert main(["conversion", "--scheme", "ladder", "--preset", "fig16"]) == EXIT_SPEC


def test_preset_list_and_show(capsys):
    assert main(["preset", "list"]) == EXIT_OK
    assert "fig16" in capsys.readouterr().out
    assert main(["preset", "fig4", "--show"]) == EXIT_OK
    assert '"g_mn"' in capsys.readouterr().out


def test_validate_subset(capsys):
    assert main(["validate", "--only", "9"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("[PASS]  9")


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "lics.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("lics ")
