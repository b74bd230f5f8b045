import json

import numpy as np
import pytest

from tamcalc.barcode import EMPTY, Barcode, bar, from_json, to_json
from tamcalc.cli import main
from tamcalc.config import load_config
from tamcalc.fileio import InputError, curve_to_dict, load_barcode, load_curve, load_graph
from tamcalc.lagrangian import TwoLobe
from tamcalc.persistence import circle_angles
from tamcalc.render import render_svg


def write(path, obj):
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


# config -----------------------------------------------------------------------

def test_config_file_and_env(tmp_path):
    cfg = write(tmp_path / "run.cfg", "seed = 7\nprime = 3  # comment\nchord_tol = 1e-8\n")
    c = load_config(cfg, env={})
    assert (c.seed, c.prime, c.chord_tol) == (7, 3, 1e-8)
    c = load_config(cfg, env={"TAMCALC_PRIME": "5", "TAMCALC_SEED": "1"})
    assert (c.seed, c.prime) == (1, 5)


def test_config_requires_seed(tmp_path):
    with pytest.raises(ValueError, match="seed is required"):
        load_config(write(tmp_path / "a.cfg", "prime = 2\n"), env={})


@pytest.mark.parametrize("text, msg", [
    ("seed = 1\nprime = 4\n", "not a prime"),
    ("seed = 1\nbogus = 4\n", "unknown key"),
    ("seed = 1\nscale = 300\n", "power of ten"),
    ("seed = 1\nstability_eps = -1\n", "positive"),
    ("seed = x\n", "not a number"),
])
def test_config_validation(tmp_path, text, msg):
    with pytest.raises(ValueError, match=msg):
        load_config(write(tmp_path / "c.cfg", text), env={})


# files --------------------------------------------------------------------------

def test_barcode_file_errors_name_the_field(tmp_path):
    with pytest.raises(InputError, match="missing field 'bars'"):
        load_barcode(write(tmp_path / "b.json", {"scale": 1}))
    with pytest.raises(InputError, match=r"bars\[1\]"):
        load_barcode(write(tmp_path / "b.json", {"bars": [{"lo": 0, "hi": 1},
                                                          {"lo": 2, "hi": 1}]}))
    with pytest.raises(InputError, match="line 1"):
        load_barcode(write(tmp_path / "b.json", "{oops"))


def test_graph_file_shapes(tmp_path):
    L = load_graph(write(tmp_path / "t.json", {"preset": "t2", "values": [0] * 16}))
    assert L.shape == (4, 4)
    with pytest.raises(InputError, match="does not match"):
        load_graph(write(tmp_path / "t.json", {"preset": "t2", "shape": [3, 4],
                                               "values": [0] * 16}))
    L = load_graph(write(tmp_path / "c.json", {"preset": "custom", "vertices": [[0], [1], [2]],
                                               "simplices": [[0, 1], [1, 2], [0, 2]],
                                               "values": [0, 1, 2]}))
    assert L.complex.euler_characteristic == 0


def test_curve_file_must_be_exact(tmp_path):
    t = np.linspace(0, 2 * np.pi, 128, endpoint=False)
    rows = [{"s": float(u / (2 * np.pi)), "x": float(u), "xi": float(0.2 * np.cos(u))}
            for u in t]
    load_curve(write(tmp_path / "ok.json", {"samples": rows}))
    bad = [dict(r, xi=r["xi"] + 0.3) for r in rows]
    with pytest.raises(InputError, match="not exact"):
        load_curve(write(tmp_path / "bad.json", {"samples": bad}))


# svg ----------------------------------------------------------------------------

def test_svg_layout():
    assert render_svg(EMPTY).count("<line") == 1          # the axis only
    one = render_svg(Barcode([bar(0, 1)]))
    assert one.count("<line") == 2 and 'fill="white"' in one
    ray = render_svg(Barcode([bar(0, "inf")]))
    assert "<polygon" in ray
    mixed = render_svg(Barcode([bar(0, 1), bar(0, 2, 1)]))
    assert "deg 0" in mixed and "deg 1" in mixed
    assert render_svg(Barcode([bar(0, 1)])) == one


# commands ---------------------------------------------------------------------

@pytest.fixture
def files(tmp_path):
    F = Barcode([bar(0, "inf"), bar(1, "inf", -1)])
    return {
        "F": write(tmp_path / "F.json", to_json(F)),
        "empty": write(tmp_path / "empty.json", to_json(EMPTY)),
        "sine": write(tmp_path / "s1_sine.json",
                      {"preset": "s1", "values": list(np.sin(circle_angles(360)))}),
        "half": write(tmp_path / "half.json",
                      {"preset": "s1", "values": list(0.5 * np.sin(circle_angles(360)))}),
        "steep": write(tmp_path / "steep.json",
                       {"preset": "s1", "values": list(3 * np.sin(circle_angles(360)))}),
        "curve": write(tmp_path / "curve.json", curve_to_dict(TwoLobe().model(1024))),
        "rep": write(tmp_path / "rep.json",
                     {"breakpoints": [1], "dims": [0, 1, 1], "maps": {"1->2": [[1]]}}),
        "dir": tmp_path,
    }


def test_cli_v(files, capsys):
    assert main(["v", files["F"], files["F"]]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_cli_persist(files, tmp_path):
    out = str(tmp_path / "bc.json")
    assert main(["persist", files["sine"], "--prime", "2", "--out", out]) == 0
    B = from_json(open(out).read())
    assert B == Barcode([bar(-1, "inf"), bar(1, "inf", -1)])


def test_cli_render_empty(files, capsys):
    assert main(["render-svg", files["empty"]]) == 0
    assert capsys.readouterr().out.startswith("<svg")


def test_cli_homstar_audit(files, capsys):
    assert main(["homstar", files["F"], files["F"], "--audit"]) == 0
    out = capsys.readouterr().out
    assert '"bars"' in out and "| F bar | G bar |" in out


def test_cli_decompose(files, capsys):
    assert main(["decompose", files["rep"]]) == 0
    assert from_json(capsys.readouterr().out) == Barcode([bar(1, "inf")])


def test_cli_chords(files, capsys):
    assert main(["chords", files["curve"]]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["chords"]) == 2 and data["l_max"] > 0


def test_cli_check_bound(files, tmp_path):
    report = tmp_path / "r.md"
    assert main(["check-bound", "--model", files["half"], "--geometry", "u1",
                 "--report", str(report)]) == 0
    first = report.read_text()
    assert "Verdict: PASS" in first
    main(["check-bound", "--model", files["half"], "--geometry", "u1", "--report", str(report)])
    assert report.read_text() == first
    assert main(["check-bound", "--model", files["steep"], "--geometry", "u1"]) == 2
    assert main(["check-bound", "--model", files["curve"], "--geometry", "u1"]) == 0


def test_cli_oracle_verify_needs_seed(monkeypatch, capsys):
    monkeypatch.delenv("TAMCALC_SEED", raising=False)
    assert main(["oracle-verify", "--suite", "homstar", "--cases", "3"]) == 2
    assert main(["oracle-verify", "--suite", "homstar", "--cases", "3", "--seed", "5"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_cli_input_errors(files):
    assert main(["v", str(files["dir"] / "missing.json"), files["F"]]) == 2
    assert main(["check-bound", "--model", files["half"], "--geometry", "nowhere"]) == 2
