"""Seeded randomized verification suites.

Every suite returns a :class:`SuiteReport` whose checks are keyed by instance
index, so reports are identical for identical ``(seed, count)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .complexes import BoundedComplex, ChainMap, complex_sum, cone, homology_at, shift, stalk, truncate
from .dimension import classical_ext_Z, pext, pgldim_probe, pid, ppd
from .errors import InconsistentCriteria, PureDeriveError
from .generators import random_chain_map, random_complex, random_finite_module, random_module
from .modules import ModuleMap, ShortExactSequence, cyclic, direct_sum, free, hom_module
from .purity import NEG_INF, POS_INF, is_pure_quasi_iso, is_pure_sequence, purity_profile, range_cross_check
from .resolve import (
    lift_along_resolutions,
    padded_preenvelope,
    padded_precover,
    pure_injective_resolution,
    pure_projective_resolution,
)
from .ring import BaseRing
from .tower import (
    all_ones_cocycle,
    colim_presentation,
    constant_tower,
    pext1_colim,
    pruefer_tower,
    rationals_tower,
    rationals_witness,
)

__all__ = ["Check", "SuiteReport", "SUITES", "run_suite"]

Z = BaseRing.integers()


@dataclass(frozen=True)
class Check:
    instance: int
    label: str
    passed: bool
    detail: Optional[str] = None

    def to_json(self):
        out = {"instance": self.instance, "check": self.label, "pass": self.passed}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    name: str
    seed: int
    count: int
    checks: list = field(default_factory=list)

    def add(self, instance, label, passed, detail=None):
        self.checks.append(Check(instance, label, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def tally(self) -> dict:
        ok = sum(c.passed for c in self.checks)
        return {"passed": ok, "failed": len(self.checks) - ok}

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_json(self, verbose: bool = False):
        out = {"suite": self.name, "seed": self.seed, "count": self.count, "tally": self.tally(),
               "failures": [c.to_json() for c in self.failures()]}
        if verbose:
            out["checks"] = [c.to_json() for c in self.checks]
        return out


def _small_samples(ring: BaseRing, rng: random.Random):
    out = [stalk(cyclic(ring, 0), 0), stalk(cyclic(ring, 2), 1), stalk(cyclic(ring, 4), -1)]
    out.append(random_complex(rng, ring, length=2, max_gens=2, finite=bool(ring.modulus)))
    return out


def thm45(count=20, seed=7, max_gens=3, max_length=4, family_cap=64, rings=None) -> SuiteReport:
    """Projective-side criteria agree; sampled vanishing is consistent; ppd = -inf_p."""
    rng = random.Random(seed)
    rings = rings or (Z, BaseRing.mod(8))
    rep = SuiteReport("thm45", seed, count)
    for k in range(count):
        ring = rings[k % len(rings)]
        X = random_complex(rng, ring, length=rng.randint(1, max_length), max_gens=max_gens)
        samples = _small_samples(ring, rng)
        try:
            v, dr = ppd(X, family_cap=family_cap, samples=samples)
        except InconsistentCriteria as exc:
            rep.add(k, "criteria agree", False, str(exc))
            continue
        rep.add(k, "criteria agree", True)
        rep.add(k, "criterion 4 consistent", dr.criterion4 == "consistent")
        prof = purity_profile(X, family_cap=family_cap)
        want = NEG_INF if prof.is_pure_exact() else -prof.inf_p
        rep.add(k, "ppd = -inf_p", v == want, f"ppd {v}, inf_p {prof.inf_p}")
    return rep


def thm46(count=20, seed=7, max_gens=3, max_length=4, family_cap=64, rings=None) -> SuiteReport:
    """Injective-side criteria agree over a finite ring; pid = sup_p."""
    rng = random.Random(seed)
    rings = rings or (BaseRing.mod(8),)
    rep = SuiteReport("thm46", seed, count)
    for k in range(count):
        ring = rings[k % len(rings)]
        X = random_complex(rng, ring, length=rng.randint(1, max_length), max_gens=max_gens)
        samples = _small_samples(ring, rng)
        try:
            v, dr = pid(X, family_cap=family_cap, samples=samples)
        except InconsistentCriteria as exc:
            rep.add(k, "criteria agree", False, str(exc))
            continue
        rep.add(k, "criteria agree", True)
        rep.add(k, "criterion 4 consistent", dr.criterion4 == "consistent")
        prof = purity_profile(X, family_cap=family_cap)
        want = NEG_INF if prof.is_pure_exact() else prof.sup_p
        rep.add(k, "pid = sup_p", v == want, f"pid {v}, sup_p {prof.sup_p}")
    return rep


def padding_pair(X: BoundedComplex, rng: random.Random) -> ChainMap:
    """``X -> X (+) cone(Id_M)`` for a random module ``M`` in a random degree."""
    M = random_module(rng, X.ring, 2)
    C = cone(ChainMap.identity(stalk(M, rng.randint(-2, 2)))).cone
    S, (iX, _), _ = complex_sum(X, C)
    return iX


def prop34(count=20, seed=7, max_gens=3, max_length=4, family_cap=64, rings=None) -> SuiteReport:
    """Literal profile against range forms, and invariance along pure quasi-isomorphisms."""
    rng = random.Random(seed)
    rings = rings or (Z, BaseRing.mod(4), BaseRing.mod(6), BaseRing.mod(8))
    rep = SuiteReport("prop34", seed, count)
    for k in range(count):
        ring = rings[k % len(rings)]
        X = random_complex(rng, ring, length=rng.randint(1, max_length), max_gens=max_gens)
        prof = purity_profile(X, family_cap=family_cap)
        rc = range_cross_check(X, prof)
        rep.add(k, "range forms agree", rc.agree)
        pairs = [("padding", padding_pair(X, rng))]
        if prof.sup_p.is_finite:
            pairs.append(("kernel truncation", truncate(X, prof.sup_p.value, "kernel_style", family_cap).comparison))
        if prof.inf_p.is_finite:
            pairs.append(("cokernel truncation", truncate(X, prof.inf_p.value, "cokernel_style", family_cap).comparison))
        for label, f in pairs:
            qi = is_pure_quasi_iso(f, family_cap=family_cap)
            a = purity_profile(f.source, family_cap=family_cap)
            b = purity_profile(f.target, family_cap=family_cap)
            rep.add(k, f"{label} is a pure quasi-isomorphism", bool(qi))
            rep.add(k, f"{label} preserves inf_p and sup_p", (a.inf_p, a.sup_p) == (b.inf_p, b.sup_p),
                    f"({a.inf_p}, {a.sup_p}) vs ({b.inf_p}, {b.sup_p})")
    return rep


def resolutions(count=20, seed=7, max_gens=3, max_length=3, family_cap=64, rings=None) -> SuiteReport:
    """Certified resolutions and homotopy-commutative functoriality squares."""
    rng = random.Random(seed)
    rings = rings or (Z, BaseRing.mod(4), BaseRing.mod(8))
    rep = SuiteReport("resolutions", seed, count)
    for k in range(count):
        ring = rings[k % len(rings)]
        finite = bool(ring.modulus)
        X = random_complex(rng, ring, length=rng.randint(1, max_length), max_gens=max_gens, finite=finite)
        Y = random_complex(rng, ring, length=rng.randint(1, max_length), max_gens=max_gens, finite=finite)
        f = random_chain_map(rng, X, Y)
        pad = padded_precover(rng.randint(0, 1))
        RX = pure_projective_resolution(X, pad, family_cap=family_cap)
        RY = pure_projective_resolution(Y, family_cap=family_cap)
        for name, R in (("P(X)", RX), ("P(Y)", RY)):
            c = R.certificate
            tgt = purity_profile(R.target, family_cap=family_cap)
            finite_ok = c.inf_p.is_finite if not tgt.is_pure_exact() else c.inf_p == POS_INF
            rep.add(k, f"{name} certified", c.ok and finite_ok)
        fl, h = lift_along_resolutions(f, RX, RY)
        rep.add(k, "projective square commutes up to homotopy", h.verify())
        if finite:
            IX = pure_injective_resolution(X, padded_preenvelope, family_cap=family_cap)
            IY = pure_injective_resolution(Y, family_cap=family_cap)
            rep.add(k, "I(X) certified", IX.certificate.ok)
            fl, h = lift_along_resolutions(f, IX, IY)
            rep.add(k, "injective square commutes up to homotopy", h.verify())
    return rep


def thm47(count=20, seed=7, max_gens=3, max_length=3, family_cap=64, rings=None) -> SuiteReport:
    """Global dimension probes: 0 over Z/4, fg-blind bound and the Q witness over Z."""
    rng = random.Random(seed)
    rep = SuiteReport("thm47", seed, count)
    R4 = BaseRing.mod(4)
    sample4 = []
    for k in range(count):
        if k % 2:
            sample4.append(stalk(random_finite_module(rng, R4, max_gens)))
        else:
            sample4.append(random_complex(rng, R4, length=rng.randint(1, max_length), max_gens=max_gens))
    p4 = pgldim_probe(R4, sample4, n=0, with_towers=False, family_cap=family_cap)
    rep.add(0, "Z/4: inequalities with n = 0", p4.inequalities_hold)
    rep.add(0, "Z/4: higher Pext vanishes", p4.higher_pext_vanish)
    rep.add(0, "Z/4: observed bound 0", p4.observed_bound == 0)
    mods = [stalk(random_finite_module(rng, R4, max_gens)) for _ in range(max(count // 2, 1))]
    vanish = True
    for M in mods:
        for N in mods[:5]:
            for i in (1, 2):
                if not pext(M, N, i).is_zero():
                    vanish = False
    rep.add(0, "Z/4: Pext^1, Pext^2 vanish on modules", vanish)
    sampleZ = [random_complex(rng, Z, length=rng.randint(1, max_length), max_gens=max_gens) for _ in range(count)]
    pZ = pgldim_probe(Z, sampleZ, n=1, with_towers=True, family_cap=family_cap)
    rep.add(1, "Z: inequalities with n = 1", pZ.inequalities_hold)
    rep.add(1, "Z: fg sample bound is 0", pZ.observed_bound == 0)
    rep.add(1, "Z: sampling flagged blind", pZ.blind_to_non_fg)
    rep.add(1, "Z: tower lower bound 1", pZ.lower_bound == 1)
    w = pZ.tower_witness
    rep.add(1, "ppd(Q) = 1", w is not None and w["ppd"] == 1)
    return rep


def wellknown(count=0, seed=7, family_cap=64, **_) -> SuiteReport:
    """Fixed instances with known answers."""
    rep = SuiteReport("wellknown", seed, count)
    Zm = free(Z, 1)
    two = ModuleMap(Zm, Zm, ((2,),))
    X = BoundedComplex(Z, {-1: Zm, 0: Zm}, {-1: two})
    p = purity_profile(X)
    rep.add(0, "(Z -2-> Z): inf_p = -1, sup_p = 0", p.inf_p == -1 and p.sup_p == 0)
    v, _ = ppd(X)
    rep.add(1, "(Z -2-> Z): ppd = 1", v == 1)
    rep.add(2, "Pext^1((Z -2-> Z), Z/2) = Z/2", str(pext(X, stalk(cyclic(Z, 2)), 1)) == "Z/2")
    rep.add(3, "Pext^0(Z/6, Z/4) = Z/2", str(pext(stalk(cyclic(Z, 6)), stalk(cyclic(Z, 4)), 0)) == "Z/2")
    z2 = cyclic(Z, 2)
    rep.add(4, "Pext^1(Z/2, Z/2) = 0 over Z", pext(stalk(z2), stalk(z2), 1).is_zero())
    rep.add(5, "classical Ext^1(Z/2, Z/2) = Z/2", str(classical_ext_Z(z2, z2, 1)) == "Z/2")
    z4 = cyclic(Z, 4)
    seq = ShortExactSequence(ModuleMap(z2, z4, ((2,),)), ModuleMap(z4, z2, ((1,),)))
    rep.add(6, "0 -> Z/2 -> Z/4 -> Z/2 -> 0 is not pure", not is_pure_sequence(seq))
    S, inj, proj = direct_sum(z2, cyclic(Z, 3))
    rep.add(7, "split sequence is pure", bool(is_pure_sequence(ShortExactSequence(inj[0], proj[1]))))
    rep.add(8, "ppd(stalk Z/6) = 0", ppd(stalk(cyclic(Z, 6)))[0] == 0)
    C = BoundedComplex(Z, {-1: Zm, 0: Zm}, {-1: ModuleMap(Zm, Zm, ((1,),))})
    rep.add(9, "ppd(contractible) = -inf", ppd(C)[0] == NEG_INF)
    R4 = BaseRing.mod(4)
    rep.add(10, "pid(stalk Z/2) over Z/4 = 0", pid(stalk(cyclic(R4, 2)))[0] == 0)
    Y = BoundedComplex(R4, {0: cyclic(R4, 4), 1: cyclic(R4, 2)}, {0: ModuleMap(cyclic(R4, 4), cyclic(R4, 2), ((1,),))})
    rep.add(11, "pid(Z/4 -> Z/2) = sup_p = 1", pid(Y)[0] == purity_profile(Y).sup_p == 1)
    w = rationals_witness()
    rep.add(12, "ppd(Q) = 1 with both bounds certified", w["ppd"] == 1)
    Q = rationals_tower()
    rep.add(13, "Q tower 1-shift blocks (1, -(i+2))",
            colim_presentation(Q, 4).shift_matrix(4) == ((1, 0, 0), (-2, 1, 0), (0, -3, 1), (0, 0, -4)))
    rep.add(14, "Pext^1(Pruefer, Z) = 0 (zero Hom system)", pext1_colim(pruefer_tower(2), cyclic(Z, 0)).zero_system())
    return rep


SUITES = {
    "thm45": thm45,
    "thm46": thm46,
    "prop34": prop34,
    "thm47": thm47,
    "wellknown": wellknown,
    "resolutions": resolutions,
}


def run_suite(name: str, count: int = 20, seed: int = 7, family_cap: int = 64, **kw) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](count=count, seed=seed, family_cap=family_cap, **kw)
