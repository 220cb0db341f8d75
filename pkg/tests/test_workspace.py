import json
from importlib import resources

import pytest

from purederive.errors import ParseError, ValidationError
from purederive.workspace import HarnessConfig, emit, load_workspace, loads_workspace

MINIMAL = {
    "ring": "Z",
    "modules": {"Z": {"generators": 1, "relations": []}, "Z2": {"cyclic": 2}},
    "maps": {"two": {"source": "Z", "target": "Z", "matrix": [[2]]}},
    "complexes": {"X": {"terms": [{"degree": -1, "module": "Z"}, {"degree": 0, "module": "Z"}],
                        "differentials": [{"degree": -1, "map": "two"}]}},
}


def test_minimal_document():
    ws = loads_workspace(json.dumps(MINIMAL))
    X = ws.complex("X")
    assert X.degrees == [-1, 0] and X.diff(-1).matrix == ((2,),)
    assert str(ws.module("Z2")) == "Z/2"
    assert ws.harness == HarnessConfig()


def test_round_trip_is_stable():
    ws = loads_workspace(json.dumps(MINIMAL))
    text = emit(ws)
    again = emit(loads_workspace(text))
    assert text == again
    assert json.loads(text)["modules"]["Z2"] == {"generators": 1, "relations": [[2]]}


def test_bundled_example_loads():
    path = resources.files("purederive") / "data" / "example_workspace.json"
    ws = load_workspace(str(path))
    for name in ("X", "C", "S2", "S4", "Q4", "A"):
        assert ws.complex(name).validate() is None
    assert set(ws.towers) >= {"Q", "P2", "K"}
    assert "r" in ws.roofs


def test_d_squared_nonzero_names_degree():
    doc = json.loads(json.dumps(MINIMAL))
    doc["maps"]["one"] = {"source": "Z", "target": "Z", "matrix": [[1]]}
    doc["complexes"]["B"] = {
        "terms": [{"degree": d, "module": "Z"} for d in (0, 1, 2)],
        "differentials": [{"degree": 0, "map": "one"}, {"degree": 1, "map": "one"}],
    }
    with pytest.raises(ValidationError) as err:
        loads_workspace(json.dumps(doc))
    assert "degree 1" in str(err.value) and "d o d != 0" in str(err.value)


def test_unknown_reference():
    doc = json.loads(json.dumps(MINIMAL))
    doc["complexes"]["X"]["differentials"][0]["map"] = "three"
    with pytest.raises(ValidationError) as err:
        loads_workspace(json.dumps(doc))
    assert "three" in str(err.value)
    with pytest.raises(ValidationError):
        loads_workspace(json.dumps(MINIMAL)).complex("nope")


def test_json_syntax_error_has_position():
    with pytest.raises(ParseError) as err:
        loads_workspace('{"ring": "Z",\n  "modules": }')
    assert err.value.line == 2 and err.value.column is not None


def test_bad_field_reports_path():
    doc = json.loads(json.dumps(MINIMAL))
    doc["maps"]["two"]["matrix"] = [["x"]]
    with pytest.raises(ParseError) as err:
        loads_workspace(json.dumps(doc))
    assert err.value.field is not None and "two" in err.value.field


def test_bad_ring():
    with pytest.raises(ParseError):
        loads_workspace(json.dumps({"ring": "Q"}))


def test_map_must_respect_relations():
    doc = json.loads(json.dumps(MINIMAL))
    doc["maps"]["bad"] = {"source": "Z2", "target": "Z", "matrix": [[1]]}
    with pytest.raises(ValidationError):
        loads_workspace(json.dumps(doc))


def test_missing_file():
    with pytest.raises(ParseError):
        load_workspace("/nonexistent/workspace.json")
