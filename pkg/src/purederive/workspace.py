"""JSON workspaces: named modules, maps, complexes, chain maps, roofs and towers.

The canonical document uses explicit integer degrees and row-major integer
matrices, and is emitted with sorted keys so that files diff cleanly::

    {
      "ring": "Z",
      "modules": {"Z": {"generators": 1, "relations": []}},
      "maps": {"two": {"source": "Z", "target": "Z", "matrix": [[2]]}},
      "complexes": {"X": {"terms": [{"degree": -1, "module": "Z"},
                                    {"degree": 0, "module": "Z"}],
                          "differentials": [{"degree": -1, "map": "two"}]}}
    }

Modules may also be written as ``{"cyclic": d}`` or ``{"diagonal": [d1, ...]}``;
loading canonicalises them to generators and relations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .complexes import BoundedComplex, ChainMap
from .errors import IllFormedMap, InvalidComplex, ParseError, PureDeriveError, ValidationError
from .modules import FgModule, ModuleMap
from .resolve import Roof
from .ring import BaseRing
from .tower import Tower, tail_rule_from_json

__all__ = ["Workspace", "HarnessConfig", "load_workspace", "loads_workspace", "emit", "canonicalize"]

_SECTIONS = ("modules", "maps", "complexes", "chain_maps", "roofs", "towers")


@dataclass(frozen=True)
class HarnessConfig:
    seed: int = 7
    count: int = 20
    max_gens: int = 3
    max_length: int = 4
    depth: int = 4
    family_cap: int = 64

    def to_json(self):
        return {"seed": self.seed, "count": self.count, "max_gens": self.max_gens,
                "max_length": self.max_length, "depth": self.depth, "family_cap": self.family_cap}


@dataclass
class Workspace:
    ring: BaseRing
    doc: dict
    modules: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)
    chain_maps: dict = field(default_factory=dict)
    roofs: dict = field(default_factory=dict)
    towers: dict = field(default_factory=dict)
    harness: HarnessConfig = field(default_factory=HarnessConfig)

    def get(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            raise ValidationError(name, f"no {section[:-1].replace('_', ' ')} named {name!r}")
        return table[name]

    def complex(self, name: str) -> BoundedComplex:
        return self.get("complexes", name)

    def module(self, name: str) -> FgModule:
        return self.get("modules", name)


# ---------------------------------------------------------------------------
# parsing helpers

def _int(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError("expected an integer", field=where)
    return v


def _str(v, where):
    if not isinstance(v, str):
        raise ParseError("expected a string", field=where)
    return v


def _obj(v, where):
    if not isinstance(v, dict):
        raise ParseError("expected an object", field=where)
    return v


def _list(v, where):
    if not isinstance(v, list):
        raise ParseError("expected an array", field=where)
    return v


def _matrix(v, where, rows=None, cols=None):
    _list(v, where)
    out = [[_int(x, f"{where}[{i}][{j}]") for j, x in enumerate(_list(r, f"{where}[{i}]"))] for i, r in enumerate(v)]
    if len({len(r) for r in out}) > 1:
        raise ParseError("rows of different lengths", field=where)
    if rows is not None and len(out) != rows:
        raise ParseError(f"expected {rows} rows, got {len(out)}", field=where)
    if cols is not None and any(len(r) != cols for r in out):
        raise ParseError(f"expected {cols} columns", field=where)
    return out


def _ring(v) -> BaseRing:
    if not isinstance(v, str):
        raise ParseError("ring must be \"Z\" or \"Z/m\"", field="ring")
    try:
        if v == "Z":
            return BaseRing.integers()
        if v.startswith("Z/"):
            return BaseRing.mod(int(v[2:]))
    except ValueError as exc:
        raise ParseError(str(exc), field="ring") from None
    raise ParseError(f"unknown ring {v!r}", field="ring")


def _canon_module(entry, where):
    _obj(entry, where)
    if "cyclic" in entry:
        d = _int(entry["cyclic"], f"{where}.cyclic")
        return {"generators": 1, "relations": [[d]] if d else []}
    if "diagonal" in entry:
        ds = [_int(x, f"{where}.diagonal[{i}]") for i, x in enumerate(_list(entry["diagonal"], f"{where}.diagonal"))]
        k = len(ds)
        return {"generators": k, "relations": [[d if i == j else 0 for j in range(k)] for i, d in enumerate(ds) if d]}
    if "generators" not in entry:
        raise ParseError("module needs 'generators', 'cyclic' or 'diagonal'", field=where)
    g = _int(entry["generators"], f"{where}.generators")
    if g < 0:
        raise ParseError("generators must be non-negative", field=f"{where}.generators")
    rels = _matrix(entry.get("relations", []), f"{where}.relations", cols=g) if entry.get("relations") else []
    return {"generators": g, "relations": rels}


def _degree_list(v, where, key):
    out = []
    seen = set()
    for i, item in enumerate(_list(v, where)):
        _obj(item, f"{where}[{i}]")
        n = _int(item.get("degree"), f"{where}[{i}].degree")
        if n in seen:
            raise ParseError(f"degree {n} listed twice", field=where)
        seen.add(n)
        out.append({"degree": n, key: _str(item.get(key), f"{where}[{i}].{key}")})
    return sorted(out, key=lambda e: e["degree"])


def canonicalize(raw: dict) -> dict:
    """Normalised document: shorthands expanded, degree lists sorted."""
    _obj(raw, "<root>")
    unknown = set(raw) - set(_SECTIONS) - {"ring", "harness"}
    if unknown:
        raise ParseError(f"unknown top-level keys {sorted(unknown)}", field="<root>")
    doc: dict[str, Any] = {"ring": raw.get("ring", "Z")}
    _ring(doc["ring"])
    doc["modules"] = {n: _canon_module(s, f"modules.{n}") for n, s in _obj(raw.get("modules", {}), "modules").items()}
    maps = {}
    for n, s in _obj(raw.get("maps", {}), "maps").items():
        w = f"maps.{n}"
        _obj(s, w)
        maps[n] = {"source": _str(s.get("source"), f"{w}.source"), "target": _str(s.get("target"), f"{w}.target"),
                   "matrix": _matrix(s.get("matrix", []), f"{w}.matrix")}
    doc["maps"] = maps
    cxs = {}
    for n, s in _obj(raw.get("complexes", {}), "complexes").items():
        w = f"complexes.{n}"
        _obj(s, w)
        cxs[n] = {"terms": _degree_list(s.get("terms", []), f"{w}.terms", "module"),
                  "differentials": _degree_list(s.get("differentials", []), f"{w}.differentials", "map")}
    doc["complexes"] = cxs
    cms = {}
    for n, s in _obj(raw.get("chain_maps", {}), "chain_maps").items():
        w = f"chain_maps.{n}"
        _obj(s, w)
        cms[n] = {"source": _str(s.get("source"), f"{w}.source"), "target": _str(s.get("target"), f"{w}.target"),
                  "components": _degree_list(s.get("components", []), f"{w}.components", "map")}
    doc["chain_maps"] = cms
    roofs = {}
    for n, s in _obj(raw.get("roofs", {}), "roofs").items():
        w = f"roofs.{n}"
        _obj(s, w)
        roofs[n] = {"s": _str(s.get("s"), f"{w}.s"), "a": _str(s.get("a"), f"{w}.a")}
    doc["roofs"] = roofs
    towers = {}
    for n, s in _obj(raw.get("towers", {}), "towers").items():
        w = f"towers.{n}"
        _obj(s, w)
        tail = _obj(s.get("tail"), f"{w}.tail")
        try:
            tail_rule_from_json(tail)
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad tail rule: {exc}", field=f"{w}.tail") from None
        towers[n] = {
            "direction": _str(s.get("direction", "direct"), f"{w}.direction"),
            "stages": [_str(x, f"{w}.stages[{i}]") for i, x in enumerate(_list(s.get("stages", []), f"{w}.stages"))],
            "maps": [_str(x, f"{w}.maps[{i}]") for i, x in enumerate(_list(s.get("maps", []), f"{w}.maps"))],
            "tail": {k: tail[k] for k in sorted(tail)},
        }
    doc["towers"] = towers
    h = _obj(raw.get("harness", {}), "harness")
    base = HarnessConfig().to_json()
    for k in h:
        if k not in base:
            raise ParseError(f"unknown harness key {k!r}", field=f"harness.{k}")
        base[k] = _int(h[k], f"harness.{k}")
    doc["harness"] = base
    return doc


# ---------------------------------------------------------------------------
# building and validation

def _ref(table: dict, name: str, kind: str, owner: str):
    if name not in table:
        raise ValidationError(owner, f"unknown {kind} {name!r}")
    return table[name]


def build(doc: dict) -> Workspace:
    ring = _ring(doc["ring"])
    ws = Workspace(ring, doc, harness=HarnessConfig(**doc["harness"]))
    for n, s in doc["modules"].items():
        ws.modules[n] = FgModule(ring, s["generators"], tuple(tuple(r) for r in s["relations"]))
    for n, s in doc["maps"].items():
        A = _ref(ws.modules, s["source"], "module", n)
        B = _ref(ws.modules, s["target"], "module", n)
        mat = s["matrix"]
        if len(mat) != B.ngens or any(len(r) != A.ngens for r in mat):
            raise ValidationError(n, f"matrix must be {B.ngens} x {A.ngens} (target generators x source generators)")
        f = ModuleMap(A, B, tuple(tuple(r) for r in mat))
        try:
            f.check()
        except IllFormedMap as exc:
            raise ValidationError(n, str(exc)) from None
        ws.maps[n] = f
    for n, s in doc["complexes"].items():
        terms = {e["degree"]: _ref(ws.modules, e["module"], "module", n) for e in s["terms"]}
        diffs = {}
        for e in s["differentials"]:
            d = _ref(ws.maps, e["map"], "map", n)
            k = e["degree"]
            if terms.get(k) != d.domain or terms.get(k + 1) != d.codomain:
                raise ValidationError(n, f"differential at degree {k} does not go from term {k} to term {k + 1}")
            diffs[k] = d
        try:
            ws.complexes[n] = BoundedComplex(ring, terms, diffs).check()
        except InvalidComplex as exc:
            raise ValidationError(n, f"degree {exc.degree}: {exc.reason}") from None
    for n, s in doc["chain_maps"].items():
        X = _ref(ws.complexes, s["source"], "complex", n)
        Y = _ref(ws.complexes, s["target"], "complex", n)
        comps = {}
        for e in s["components"]:
            f = _ref(ws.maps, e["map"], "map", n)
            k = e["degree"]
            if X.term(k) != f.domain or Y.term(k) != f.codomain:
                raise ValidationError(n, f"component at degree {k} has the wrong source or target")
            comps[k] = f
        try:
            ws.chain_maps[n] = ChainMap(X, Y, comps).check()
        except InvalidComplex as exc:
            raise ValidationError(n, f"degree {exc.degree}: {exc.reason}") from None
    for n, s in doc["roofs"].items():
        sm = _ref(ws.chain_maps, s["s"], "chain map", n)
        am = _ref(ws.chain_maps, s["a"], "chain map", n)
        if doc["chain_maps"][s["s"]]["source"] != doc["chain_maps"][s["a"]]["source"]:
            raise ValidationError(n, "s and a must share their source")
        ws.roofs[n] = Roof(sm.source, sm, am)
    for n, s in doc["towers"].items():
        stages = tuple(_ref(ws.modules, x, "module", n) for x in s["stages"])
        maps = tuple(_ref(ws.maps, x, "map", n) for x in s["maps"])
        try:
            T = Tower(ring, stages, maps, tail_rule_from_json(s["tail"]), s["direction"])
            T.validate(depth=max(len(maps) + 2, 4))
        except (ValueError, PureDeriveError) as exc:
            raise ValidationError(n, str(exc)) from None
        ws.towers[n] = T
    return ws


def loads_workspace(text: str) -> Workspace:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return build(canonicalize(raw))


def load_workspace(path) -> Workspace:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc.strerror}") from None
    return loads_workspace(text)


def emit(ws: Workspace) -> str:
    return json.dumps(ws.doc, sort_keys=True, indent=2) + "\n"
