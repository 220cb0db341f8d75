"""``purederive`` command line.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error,
3 unsupported operation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from importlib import resources
from typing import Optional

from . import dimension, harness
from .complexes import stalk
from .generators import random_cocycle
from .errors import (
    InconsistentCriteria,
    NotPureQuasiIso,
    ParseError,
    PrereqFails,
    PureDeriveError,
    PrereqPurityFails,
    UnsupportedInjectiveBase,
    UnsupportedOperation,
    ValidationError,
)
from .purity import purity_profile, range_cross_check
from .resolve import (
    identity_preenvelope,
    identity_precover,
    padded_preenvelope,
    padded_precover,
    pure_injective_resolution,
    pure_projective_resolution,
    roof_normalize,
    split_off_tail,
)
from .tower import (
    Cocycle,
    all_ones_cocycle,
    cocycle_decide,
    colim_presentation,
    hocolim_resolution,
    holim_injective_resolution,
    pext1_colim,
    rationals_witness,
)
from .workspace import Workspace, emit, load_workspace, loads_workspace

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3


class _Report:
    def __init__(self, argv):
        self.command = list(argv)
        self.results = {}
        self.checks = []

    def check(self, label, passed):
        self.checks.append({"check": label, "pass": bool(passed)})

    @property
    def ok(self):
        return all(c["pass"] for c in self.checks)

    def to_json(self):
        return {"command": self.command, "results": self.results, "checks": self.checks, "ok": self.ok}


def bundled_workspace() -> Workspace:
    text = resources.files("purederive").joinpath("data/example_workspace.json").read_text()
    return loads_workspace(text)


def _resolution_json(R):
    return {
        "side": R.side,
        "resolvent": {str(n): str(M) for n, M in R.resolvent.terms.items()},
        "differentials": {str(n): d.to_json() for n, d in R.resolvent.diffs.items()},
        "map": {str(n): f.to_json() for n, f in R.map.components.items()},
        "certificate": R.certificate.to_json(),
    }


def _samples(ws: Workspace):
    return list(ws.complexes.values()) + dimension.default_samples(ws.ring)


# ---------------------------------------------------------------------------
# commands

def cmd_profile(ws, a, rep):
    X = ws.complex(a.complex)
    prof = purity_profile(X, family_cap=a.family_cap)
    rep.results = prof.to_json()
    rep.check("range forms agree with tensor and Hom exactness", range_cross_check(X, prof).agree)


def cmd_resolve(ws, a, rep):
    X = ws.complex(a.complex)
    sides = ("projective", "injective") if a.side == "both" else (a.side,)
    for side in sides:
        if side == "projective":
            pc = padded_precover(a.padding) if a.padding else identity_precover
            R = pure_projective_resolution(X, pc, family_cap=a.family_cap)
        else:
            pe = padded_preenvelope if a.padding else identity_preenvelope
            R = pure_injective_resolution(X, pe, family_cap=a.family_cap)
        rep.results[side] = _resolution_json(R)
        rep.check(f"{side} resolution certified", R.certificate.ok)


def cmd_pext(ws, a, rep):
    X, Y = ws.complex(a.x), ws.complex(a.y)
    M = dimension.pext(X, Y, a.degree, route=a.route)
    rep.results = {"degree": a.degree, "route": a.route, "pext": str(M), "canonical": M.canonical.to_json()}
    rep.check("value computed" if a.route != "both" else "routes agree", True)


def cmd_ext(ws, a, rep):
    M, N = ws.module(a.m), ws.module(a.n)
    pure = dimension.pext(stalk(M), stalk(N), a.degree)
    classical = dimension.classical_ext_Z(M, N, a.degree)
    rep.results = {"degree": a.degree, "pext": str(pure), "classical_ext": str(classical)}
    rep.check("values computed", True)


def _dim(fn, ws, a, rep):
    X = ws.complex(a.complex)
    v, dr = fn(X, family_cap=a.family_cap, samples=_samples(ws))
    rep.results = dr.to_json()
    rep.check("criteria (1), (2), (3), (5) give the same minimal n", True)
    rep.check("sampled criterion (4) consistent", dr.criterion4 == "consistent")


def cmd_ppd(ws, a, rep):
    _dim(dimension.ppd, ws, a, rep)


def cmd_pid(ws, a, rep):
    _dim(dimension.pid, ws, a, rep)


def cmd_criteria(ws, a, rep):
    X = ws.complex(a.complex)
    c = dimension.criteria_report(X, a.n, a.side, family_cap=a.family_cap, samples=_samples(ws))
    rep.results = c.to_json()
    vals = {k: v for k, v in c.verdicts.items() if k != "4"}
    rep.check("criteria (1), (2), (3), (5) agree", len(set(vals.values())) == 1)
    if all(vals.values()):
        rep.check("sampled criterion (4) consistent", c.verdicts["4"])


def cmd_split(ws, a, rep):
    X = ws.complex(a.complex)
    if a.side == "projective":
        R = pure_projective_resolution(X, padded_precover(a.padding), family_cap=a.family_cap)
    else:
        R = pure_injective_resolution(X, padded_preenvelope, family_cap=a.family_cap)
    ts = split_off_tail(R, a.n, family_cap=a.family_cap)
    rep.results = ts.to_json()
    rep.check("tail contractible", ts.contraction.verify())


def cmd_roof(ws, a, rep):
    r = ws.get("roofs", a.roof)
    nz = roof_normalize(r, route=a.route, family_cap=a.family_cap)
    rep.results = nz.to_json()
    if nz.route == "lift":
        rep.check("s t ~ Id", nz.section_homotopy.verify())
        rep.check("a ~ g s", nz.equivalence.verify())
    else:
        rep.check("apex truncation is a pure quasi-isomorphism", nz.truncation_certificate is None or bool(nz.truncation_certificate))


def cmd_tower(ws, a, rep):
    if a.action == "witness":
        w = rationals_witness(depth=max(a.depth, 8), family_cap=a.family_cap)
        rep.results = w
        rep.check("ppd(Q) = 1", w["ppd"] == 1)
        return
    if a.tower is None:
        raise ValidationError("tower", "this action needs a tower name")
    T = ws.get("towers", a.tower)
    if a.action == "presentation":
        cp = colim_presentation(T, a.depth, family_cap=a.family_cap)
        rep.results = cp.to_json()
        rep.check("truncations exact, monic and pure", cp.ok)
    elif a.action == "resolution":
        if T.direction == "direct":
            tr = hocolim_resolution(T, a.depth, family_cap=a.family_cap)
        else:
            tr = holim_injective_resolution(T, a.depth, family_cap=a.family_cap)
        rep.results = tr.to_json()
        rep.check("truncations certified", tr.ok)
    elif a.action in ("lim1", "decide"):
        if a.target is None:
            raise ValidationError("--target", "a target module is required")
        N = ws.module(a.target)
        L = pext1_colim(T, N)
        if a.action == "lim1":
            rep.results = L.to_json(a.depth)
            rep.check("presentation computed", True)
            return
        if a.cocycle == "ones":
            c = all_ones_cocycle(T, N)
        elif a.cocycle == "zero":
            c = Cocycle(T, N, ())
        else:
            c = random_cocycle(random.Random(a.seed), T, N, prefix=a.depth)
        try:
            c.validate(a.depth)
        except PureDeriveError as exc:
            raise ValidationError("cocycle", str(exc)) from None
        v = cocycle_decide(c, max(a.depth, 1))
        rep.results = v.to_json() if not hasattr(v, "rule") else v.to_json(a.depth)
        if hasattr(v, "rule"):
            rep.check("witness verified by substitution", v.verify(a.depth))
        elif hasattr(v, "rows"):
            rep.check("growth certificate verified", v.verify())


def cmd_probe(ws, a, rep):
    p = dimension.pgldim_probe(ws.ring, list(ws.complexes.values()), n=a.n, with_towers=not a.no_towers,
                               family_cap=a.family_cap)
    rep.results = p.to_json()
    rep.check("inequalities hold", p.inequalities_hold)
    rep.check("higher Pext vanishes", p.higher_pext_vanish)
    rep.check("candidate n not below the certified lower bound", p.lower_bound <= p.candidate_n)


def cmd_verify(ws, a, rep):
    r = harness.run_suite(a.suite, count=a.count, seed=a.seed, family_cap=a.family_cap)
    rep.results = r.to_json(verbose=a.verbose)
    for c in r.checks:
        if not c.passed:
            rep.check(f"instance {c.instance}: {c.label}", False)
    rep.check(f"{a.suite}: {r.tally()['passed']} checks passed", r.passed)


def cmd_canonical(ws, a, rep):
    rep.results = {"workspace": json.loads(emit(ws))}
    rep.check("round trip", emit(loads_workspace(emit(ws))) == emit(ws))


COMMANDS = {
    "profile": cmd_profile,
    "resolve": cmd_resolve,
    "pext": cmd_pext,
    "ext": cmd_ext,
    "ppd": cmd_ppd,
    "pid": cmd_pid,
    "criteria": cmd_criteria,
    "split": cmd_split,
    "roof": cmd_roof,
    "tower": cmd_tower,
    "probe": cmd_probe,
    "verify": cmd_verify,
    "canonical": cmd_canonical,
}


# ---------------------------------------------------------------------------
# argument parsing and rendering

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", metavar="FILE", help="JSON workspace (default: the bundled example)")
    common.add_argument("--seed", type=int)
    common.add_argument("--count", type=int)
    common.add_argument("--depth", type=int)
    common.add_argument("--family-cap", type=int, dest="family_cap")
    common.add_argument("--format", choices=("json", "text"), default="text")

    p = argparse.ArgumentParser(prog="purederive", description="Pure homological algebra over Z and Z/m.")
    sub = p.add_subparsers(dest="cmd", required=True, metavar="command")

    s = sub.add_parser("profile", parents=[common], help="per-degree pure exactness, inf_p and sup_p")
    s.add_argument("complex")
    s = sub.add_parser("resolve", parents=[common], help="pure projective / injective resolution")
    s.add_argument("complex")
    s.add_argument("--side", choices=("projective", "injective", "both"), default="projective")
    s.add_argument("--padding", type=int, default=0, help="pad the precovers with free summands")
    s = sub.add_parser("pext", parents=[common], help="Pext^i(X, Y)")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("degree", type=int)
    s.add_argument("--route", choices=("projective", "injective", "both"), default="projective")
    s = sub.add_parser("ext", parents=[common], help="Pext against classical Ext for two modules over Z")
    s.add_argument("m")
    s.add_argument("n")
    s.add_argument("degree", type=int)
    for name, what in (("ppd", "pure projective dimension"), ("pid", "pure injective dimension")):
        s = sub.add_parser(name, parents=[common], help=what)
        s.add_argument("complex")
    s = sub.add_parser("criteria", parents=[common], help="every dimension criterion at one n")
    s.add_argument("complex")
    s.add_argument("n", type=int)
    s.add_argument("--side", choices=("projective", "injective"), default="projective")
    s = sub.add_parser("split", parents=[common], help="split a resolvent into a bounded part and a contractible tail")
    s.add_argument("complex")
    s.add_argument("n", type=int)
    s.add_argument("--side", choices=("projective", "injective"), default="projective")
    s.add_argument("--padding", type=int, default=1)
    s = sub.add_parser("roof", parents=[common], help="normalize a roof to a chain map")
    s.add_argument("roof")
    s.add_argument("--route", choices=("lift", "stalk"))
    s = sub.add_parser("tower", parents=[common], help="colimits, lim^1 and certificates for towers")
    s.add_argument("action", choices=("presentation", "resolution", "lim1", "decide", "witness"))
    s.add_argument("tower", nargs="?")
    s.add_argument("--target", help="module N for lim1 / decide")
    s.add_argument("--cocycle", choices=("ones", "zero", "random"), default="ones",
                   help="all-ones entries, zero, or a seeded random cocycle")
    s = sub.add_parser("probe", parents=[common], help="pure global dimension probe on the workspace complexes")
    s.add_argument("--n", type=int)
    s.add_argument("--no-towers", action="store_true")
    s = sub.add_parser("verify", parents=[common], help="randomized verification suites")
    s.add_argument("suite", choices=sorted(harness.SUITES))
    s.add_argument("--verbose", action="store_true")
    sub.add_parser("canonical", parents=[common], help="print the canonical workspace")
    return p


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, dict) for x in v) and \
        all(not isinstance(y, dict) for x in v if isinstance(x, list) for y in x)


def _scalar(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(rep: _Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep.to_json(), sort_keys=True, indent=2) + "\n"
    out = ["command: " + " ".join(rep.command)]
    out.extend(_text(rep.results))
    for c in rep.checks:
        out.append(("PASS " if c["pass"] else "FAIL ") + c["check"])
    return "\n".join(out) + "\n"


def main(argv: Optional[list] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ws = load_workspace(a.workspace) if a.workspace else bundled_workspace()
    except (ParseError, ValidationError) as exc:
        print(f"purederive: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    h = ws.harness
    a.seed = h.seed if a.seed is None else a.seed
    a.count = h.count if a.count is None else a.count
    a.depth = h.depth if a.depth is None else a.depth
    a.family_cap = h.family_cap if a.family_cap is None else a.family_cap
    shown = [x for x in argv if x != "--workspace" and x != a.workspace]
    rep = _Report([a.cmd] + shown[1:] if shown and shown[0] == a.cmd else shown)
    try:
        COMMANDS[a.cmd](ws, a, rep)
    except (ParseError, ValidationError, PrereqFails, PrereqPurityFails, NotPureQuasiIso) as exc:
        print(f"purederive: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UnsupportedInjectiveBase, UnsupportedOperation) as exc:
        print(f"purederive: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except InconsistentCriteria as exc:
        rep.check(f"consistency: {exc}", False)
    sys.stdout.write(render(rep, a.format))
    return EXIT_OK if rep.ok else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
