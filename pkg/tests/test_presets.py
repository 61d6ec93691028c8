from __future__ import annotations

import json
from pathlib import Path

import pytest

from lics.presets import EXCLUDED, PRESETS, get_preset, override, target
from lics.sweep import resolve, scheme_info

GOLDEN = Path(__file__).parent / "golden" / "preset_values.json"


def test_presets_reserialize_to_golden_values():
    golden = json.loads(GOLDEN.read_text())
    assert sorted(golden) == sorted(PRESETS)
    for pid, pr in PRESETS.items():
        d = json.loads(pr.to_json())
        assert {k: v["value"] for k, v in d["params"].items()} == golden[pid]["params"], pid
        assert {n: {k: v["value"] for k, v in b.items()} for n, b in d["curves"].items()} \
            == golden[pid]["curves"], pid
        assert [[m["output"], m["kind"], m["value"], m["tolerance"], m["location_axis"],
                 m["location"]] for m in d["landmarks"]] == golden[pid]["landmarks"], pid


def test_every_value_carries_a_citation():
    for pr in PRESETS.values():
        for k, c in pr.params.items():
            assert c.source.strip(), (pr.id, k)
        for b in pr.curves.values():
            for k, c in b.items():
                assert c.source.strip(), (pr.id, k)
        for m in pr.landmarks:
            assert m.source.strip(), pr.id


@pytest.mark.parametrize("pid", sorted(PRESETS))
def test_preset_blocks_resolve(pid):
    pr = PRESETS[pid]
    info = scheme_info(pr.scheme)
    for curve in [None, *pr.curves]:
        block = pr.values(curve)
        for a in pr.axes:
            if target(a.path) not in {target(k) for k in block}:
                block = override(block, {a.path: a.start})
        resolve(pr.scheme, block)
    assert set(pr.outputs) <= set(info.outputs)


def test_quoted_caption_values():
    assert {k: get_preset("fig4").values()[k] for k in ("g_ff", "g_nn", "g_mn", "q_fn")} == \
        {"g_ff": 150.0, "g_nn": 200.0, "g_mn": 9000.0, "q_fn": 0.0}
    v = get_preset("fig16").values()
    assert v["q_nf"] == 5.0 and v["Omega_mn/Gamma_mn"] == 100.0
    for pid in ("fig9a", "fig13", "fig16"):
        v = get_preset(pid).values()
        assert (v["Gamma_m"], v["Gamma_n"], v["Gamma_f"]) == (2e7, 1.2e8, 1.2e8)
    assert get_preset("fig2a").values()["g_mn"] == 7.0


def test_excluded_and_unknown_presets():
    assert "fig3c" in EXCLUDED
    with pytest.raises(KeyError, match="negative"):
        get_preset("fig3c")
    with pytest.raises(KeyError):
        get_preset("fig99")
    with pytest.raises(KeyError):
        get_preset("fig2a").values("7")


def test_override_replaces_same_quantity():
    assert override({"a/b": 2.0, "c": 1.0}, {"a": 5.0}) == {"c": 1.0, "a": 5.0}
