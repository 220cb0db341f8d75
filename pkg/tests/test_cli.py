import json
import os
from pathlib import Path

import pytest

from purederive.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"
REGENERATE = os.environ.get("PUREDERIVE_REGEN_GOLDEN") == "1"

# name -> argv; every report uses the bundled workspace and its seed
GOLDEN = {
    "profile_X": ["profile", "X"],
    "resolve_X": ["resolve", "X"],
    "resolve_Q4_injective": ["resolve", "Q4", "--side", "injective", "--padding", "1"],
    "pext_X_S2_1": ["pext", "X", "S2", "1"],
    "pext_S6_S4_0_both": ["pext", "S6", "S4", "0", "--route", "both"],
    "ext_Z2_Z2_1": ["ext", "Z2", "Z2", "1"],
    "ppd_X": ["ppd", "X"],
    "pid_Q4": ["pid", "Q4"],
    "criteria_X_1": ["criteria", "X", "1"],
    "split_X_1": ["split", "X", "1"],
    "roof_r": ["roof", "r"],
    "tower_presentation_Q": ["tower", "presentation", "Q"],
    "tower_resolution_K": ["tower", "resolution", "K"],
    "tower_lim1_Q_Z6": ["tower", "lim1", "Q", "--target", "Z6"],
    "tower_decide_Q_Z": ["tower", "decide", "Q", "--target", "Z"],
    "tower_decide_P2_random": ["tower", "decide", "P2", "--target", "Z4", "--cocycle", "random", "--seed", "1"],
    "tower_witness": ["tower", "witness"],
    "probe": ["probe"],
    "verify_wellknown": ["verify", "wellknown"],
    "verify_thm45": ["verify", "thm45", "--count", "6"],
    "canonical": ["canonical"],
}


def run(argv, capsys):
    code = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_reports(name, capsys):
    code, out = run(GOLDEN[name], capsys)
    assert code == 0
    path = GOLDEN_DIR / f"{name}.json"
    if REGENERATE:
        path.write_text(out)
    assert out == path.read_text()


def test_reports_deterministic(capsys):
    for argv in (["verify", "prop34", "--count", "4", "--seed", "11"], ["tower", "decide", "Q", "--target", "Z4", "--cocycle", "random"]):
        a = run(argv, capsys)
        b = run(argv, capsys)
        assert a == b


def test_golden_contents():
    prof = json.loads((GOLDEN_DIR / "profile_X.json").read_text())["results"]
    assert (prof["inf_p"], prof["sup_p"]) == (-1, 0)
    assert json.loads((GOLDEN_DIR / "ppd_X.json").read_text())["results"]["value"] == 1
    w = json.loads((GOLDEN_DIR / "tower_witness.json").read_text())["results"]
    assert w["ppd"] == 1 and w["cocycle"]["residues"][-1]["s_k"] == 46233
    ext = json.loads((GOLDEN_DIR / "ext_Z2_Z2_1.json").read_text())["results"]
    assert (ext["pext"], ext["classical_ext"]) == ("0", "Z/2")


def test_text_format(capsys):
    assert main(["ppd", "X"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("command: ppd X") and "PASS" in out


def test_exit_code_check_failure(capsys):
    assert main(["probe", "--n", "0"]) == 1
    assert "FAIL candidate n" in capsys.readouterr().out


def test_exit_code_input_errors(tmp_path, capsys):
    assert main(["ppd", "nope"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["profile", "X", "--workspace", str(bad)]) == 2
    assert main(["split", "X", "0"]) == 2
    assert main(["nonsense"]) == 2
    capsys.readouterr()


def test_exit_code_unsupported(capsys):
    assert main(["resolve", "X", "--side", "injective"]) == 3
    assert "unsupported" in capsys.readouterr().err


def test_workspace_path_not_echoed(tmp_path, capsys):
    from importlib import resources
    src = resources.files("purederive").joinpath("data/example_workspace.json").read_text()
    p = tmp_path / "ws.json"
    p.write_text(src)
    code, out = run(["profile", "X", "--workspace", str(p)], capsys)
    assert code == 0 and str(p) not in out
    assert out == (GOLDEN_DIR / "profile_X.json").read_text()
