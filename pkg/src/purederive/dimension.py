"""Pext, pure projective / injective dimensions and the criteria behind them.

``ppd`` and ``pid`` are not read off ``inf_p``/``sup_p``: every criterion of
the characterisation is evaluated on its own and the minimal ``n`` of each is
compared.

* (1) an explicit resolution vanishing below ``-n`` (above ``n``) is built
  from a truncation of the complex and certified;
* (2) ``inf_p >= -n`` and the resolvent cokernel at ``-n`` is pure projective
  (dually ``sup_p <= n`` and the kernel at ``n`` is pure injective);
* (3) the resolvent splits as a bounded part plus a contractible tail;
* (4) Pext vanishing against a sampled family; it can only be contradicted,
  never proven, so it is reported as ``consistent``;
* (5) ``inf_p >= -n`` and ``Pext^(n+1)(X, N) = 0`` for every test module ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .complexes import (
    BoundedComplex,
    ChainMap,
    homology_at,
    shift,
    stalk,
    total_hom,
    truncate,
)
from .errors import InconsistentCriteria
from .modules import FgModule, ModuleMap, cyclic, free, map_subquotients, purity_class
from .purity import (
    NEG_INF,
    POS_INF,
    ExtendedInt,
    TestFamily,
    family_for_complex,
    family_for_modules,
    is_pure_quasi_iso,
    purity_profile,
    test_family,
)
from .resolve import (
    Resolution,
    decompose_tail,
    identity_preenvelope,
    identity_precover,
    lift_post,
    lift_pre,
    pure_injective_resolution,
    pure_projective_resolution,
)
from .ring import BaseRing, hermite_basis

__all__ = [
    "pext",
    "ppd",
    "pid",
    "criteria_report",
    "DimReport",
    "CriteriaAt",
    "pgldim_probe",
    "ProbeReport",
    "classical_ext_Z",
]

VIA_PROJECTIVE = "projective"
VIA_INJECTIVE = "injective"
BOTH = "both"


def _pext_from(P_or_X: BoundedComplex, Y_or_I: BoundedComplex, i: int) -> FgModule:
    G = total_hom(P_or_X, Y_or_I)
    return homology_at(G.complex, i)


def pext(X: BoundedComplex, Y: BoundedComplex, i: int, route: str = VIA_PROJECTIVE,
         precover=identity_precover, preenvelope=identity_preenvelope,
         RX: Optional[Resolution] = None, RY: Optional[Resolution] = None) -> FgModule:
    """``Pext^i(X, Y)`` as ``H^i Hom(P_X, Y)`` or ``H^i Hom(X, I_Y)``."""
    if route in (VIA_PROJECTIVE, BOTH):
        RX = RX or pure_projective_resolution(X, precover, certify_result=False)
        via_p = _pext_from(RX.resolvent, Y, i)
        if route == VIA_PROJECTIVE:
            return via_p
    RY = RY or pure_injective_resolution(Y, preenvelope, certify_result=False)
    via_i = _pext_from(X, RY.resolvent, i)
    if route == VIA_INJECTIVE:
        return via_i
    if via_p.canonical != via_i.canonical:
        raise InconsistentCriteria(
            f"Pext^{i} differs between routes: {via_p.canonical} vs {via_i.canonical}")
    return via_p


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True, eq=False)
class CriteriaAt:
    n: int
    verdicts: dict       # criterion label -> bool ("4" -> bool for the sample)
    certificates: dict

    def to_json(self):
        return {"n": self.n, "criteria": {k: v for k, v in sorted(self.verdicts.items())},
                "certificates": self.certificates}


@dataclass(frozen=True, eq=False)
class DimReport:
    complex: BoundedComplex
    side: str
    value: ExtendedInt
    minimal: dict        # criterion -> ExtendedInt
    criterion4: str      # "consistent" or "contradicted"
    rows: tuple          # CriteriaAt per scanned n

    def to_json(self):
        return {
            "side": self.side,
            "value": self.value.to_json(),
            "minimal_n_per_criterion": {k: v.to_json() for k, v in sorted(self.minimal.items())},
            "criterion_4": self.criterion4,
            "scan": [r.to_json() for r in self.rows],
        }


class _Engine:
    """Caches the profile, resolution and family of one complex."""

    def __init__(self, X: BoundedComplex, side: str, resolution: Optional[Resolution] = None,
                 family_cap: Optional[int] = None, samples: Sequence[BoundedComplex] = ()):
        self.X = X
        self.side = side
        self.cap = family_cap
        self.profile = purity_profile(X, family_cap=family_cap)
        if resolution is None:
            if side == VIA_PROJECTIVE:
                resolution = pure_projective_resolution(X, certify_result=False)
            else:
                resolution = pure_injective_resolution(X, certify_result=False)
        self.res = resolution
        self.family = family_for_complex(X, family_cap)
        self.samples = list(samples)
        self._pext_cache = {}

    # -- helpers -------------------------------------------------------------

    def window(self) -> list[int]:
        R = self.res.resolvent
        degs = list(self.X.terms) + list(R.terms)
        if not degs:
            return [0]
        lo, hi = min(degs), max(degs)
        if self.side == VIA_PROJECTIVE:
            return list(range(-hi - 1, -lo + 1))
        return list(range(lo - 1, hi + 2))

    def pext_against(self, other: BoundedComplex, i: int) -> FgModule:
        key = (id(other), i)
        hit = self._pext_cache.get(key)
        if hit is not None:
            return hit[1]
        if self.side == VIA_PROJECTIVE:
            M = _pext_from(self.res.resolvent, other, i)
        else:
            M = _pext_from(other, self.res.resolvent, i)
        self._pext_cache[key] = (other, M)
        return M

    def test_modules(self) -> list[BoundedComplex]:
        fam = family_for_modules(self.X.ring, list(self.X.terms.values()) + list(self.res.resolvent.terms.values()),
                                 self.cap)
        return [stalk(F) for F in fam.modules()]

    # -- criteria ------------------------------------------------------------

    def bound_ok(self, n: int) -> bool:
        if self.side == VIA_PROJECTIVE:
            return self.profile.inf_p >= -n
        return self.profile.sup_p <= n

    def crit1(self, n: int):
        """Construct a resolution vanishing beyond the bound and certify it."""
        X = self.X
        if not self.bound_ok(n):
            bound = self.profile.inf_p if self.side == VIA_PROJECTIVE else self.profile.sup_p
            return False, {"obstruction": f"pure exactness bound {bound} is invariant under resolution"}
        if self.profile.is_pure_exact():
            Z = BoundedComplex.zero(X.ring)
            f = ChainMap.zero(Z, X) if self.side == VIA_PROJECTIVE else ChainMap.zero(X, Z)
            ok = bool(is_pure_quasi_iso(f, family_cap=self.cap, cross_check=False))
            return ok, {"resolvent": "0"}
        if self.side == VIA_PROJECTIVE:
            tr = truncate(X, -n, "cokernel_style", family_cap=self.cap)
            Xt, t = tr.complex, tr.comparison          # t: X -> Xt
            g, _ = lift_post(t @ self.res.map, ChainMap.identity(Xt))
            cand = self.res.map @ g                     # Xt -> X
            vanishes = all(k >= -n for k in Xt.terms)
        else:
            tr = truncate(X, n, "kernel_style", family_cap=self.cap)
            Xt, t = tr.complex, tr.comparison          # t: Xt -> X
            c, _ = lift_pre(self.res.map @ t, ChainMap.identity(Xt))
            cand = c @ self.res.map                     # X -> Xt
            vanishes = all(k <= n for k in Xt.terms)
        ok = vanishes and bool(is_pure_quasi_iso(cand, family_cap=self.cap, cross_check=False))
        return ok, {"resolvent_degrees": sorted(Xt.terms)}

    def crit2(self, n: int):
        if not self.bound_ok(n):
            return False, {}
        R = self.res.resolvent
        if self.side == VIA_PROJECTIVE:
            M = map_subquotients(R.diff(-n - 1), check=False).cokernel
            return purity_class(M).pure_projective, {"cokernel": str(M)}
        M = map_subquotients(R.diff(n), check=False).kernel
        return bool(purity_class(M).pure_injective), {"kernel": str(M)}

    def crit3(self, n: int):
        ts = decompose_tail(self.res.resolvent, n, self.side)
        if ts is None:
            return False, {}
        return True, {"split": ts.to_json()}

    def crit5(self, n: int):
        if not self.bound_ok(n):
            cert = {}
            for N in self.test_modules():
                M = self.pext_against(N, n + 1)
                if not M.is_zero():
                    cert = {"nonzero_pext": {"test_module": str(N.term(0)), "degree": n + 1, "value": str(M)}}
                    break
            return False, cert
        for N in self.test_modules():
            M = self.pext_against(N, n + 1)
            if not M.is_zero():
                return False, {"nonzero_pext": {"test_module": str(N.term(0)), "degree": n + 1, "value": str(M)}}
        return True, {}

    def crit4(self, n: int):
        """Sampled vanishing; True means no counterexample among the samples."""
        for Y in self.samples:
            p = purity_profile(Y, family_cap=self.cap)
            if self.side == VIA_PROJECTIVE:
                other = p.sup_p
                if other == POS_INF:
                    continue
                lo_i = None if other == NEG_INF else n + other.value + 1
            else:
                other = p.inf_p
                if other == NEG_INF:
                    continue
                lo_i = None if other == POS_INF else n - other.value + 1
            G = total_hom(self.res.resolvent, Y) if self.side == VIA_PROJECTIVE else total_hom(Y, self.res.resolvent)
            for i in G.complex.terms:
                if lo_i is not None and i < lo_i:
                    continue
                if not homology_at(G.complex, i).is_zero():
                    return False, {"counterexample_degree": i}
        return True, {}

    def at(self, n: int, which=("1", "2", "3", "5")) -> CriteriaAt:
        verdicts, certs = {}, {}
        for k in which:
            v, c = getattr(self, "crit" + k)(n)
            verdicts[k] = v
            if c:
                certs[k] = c
        return CriteriaAt(n, verdicts, certs)


def _minimal(rows, key, window) -> ExtendedInt:
    trues = [r.n for r in rows if r.verdicts[key]]
    if not trues:
        return POS_INF
    if trues[0] == window[0] and len(trues) == len(rows):
        return NEG_INF
    return ExtendedInt.of(min(trues))


def _dimension(X: BoundedComplex, side: str, resolution=None, family_cap=None, samples=()) -> DimReport:
    eng = _Engine(X, side, resolution, family_cap, samples)
    window = eng.window()
    rows = [eng.at(n) for n in window]
    minimal = {k: _minimal(rows, k, window) for k in ("1", "2", "3", "5")}
    # monotonicity: once a criterion holds it keeps holding as n grows
    for k in ("1", "2", "3", "5"):
        seen = False
        for r in rows:
            if seen and not r.verdicts[k]:
                raise InconsistentCriteria(f"criterion ({k}) is not monotone in n")
            seen = seen or r.verdicts[k]
    values = set(minimal.values())
    if len(values) != 1:
        raise InconsistentCriteria(f"criteria disagree on the minimal n: {minimal}")
    value = values.pop()
    crit4 = "consistent"
    if samples:
        for r in rows:
            if value == NEG_INF or (value.is_finite and r.n >= value.value):
                ok, _ = eng.crit4(r.n)
                r.verdicts["4"] = ok
                if not ok:
                    crit4 = "contradicted"
    return DimReport(X, side, value, minimal, crit4, tuple(rows))


def ppd(X: BoundedComplex, resolution: Optional[Resolution] = None, family_cap: Optional[int] = None,
        samples: Sequence[BoundedComplex] = ()) -> tuple[ExtendedInt, DimReport]:
    """Pure projective dimension of a bounded complex with its criteria report."""
    rep = _dimension(X, VIA_PROJECTIVE, resolution, family_cap, samples)
    return rep.value, rep


def pid(Y: BoundedComplex, resolution: Optional[Resolution] = None, family_cap: Optional[int] = None,
        samples: Sequence[BoundedComplex] = ()) -> tuple[ExtendedInt, DimReport]:
    """Pure injective dimension; needs finite terms (or a finite ring)."""
    rep = _dimension(Y, VIA_INJECTIVE, resolution, family_cap, samples)
    return rep.value, rep


def criteria_report(X: BoundedComplex, n: int, side: str = VIA_PROJECTIVE,
                    resolution: Optional[Resolution] = None, family_cap: Optional[int] = None,
                    samples: Sequence[BoundedComplex] = ()) -> CriteriaAt:
    """Every criterion at a single ``n``, each with its own certificate."""
    eng = _Engine(X, side, resolution, family_cap, samples or default_samples(X.ring))
    return eng.at(n, ("1", "2", "3", "4", "5"))


def default_samples(ring: BaseRing) -> list[BoundedComplex]:
    """Stalk test modules in a few degrees, used to sample criterion (4)."""
    out = []
    for d in ([0, 2, 3, 4] if not ring.modulus else [0] + [d for d in range(2, ring.modulus) if ring.modulus % d == 0]):
        for k in (0, 1, -1):
            out.append(stalk(cyclic(ring, d), k))
    return out


# ---------------------------------------------------------------------------
# pure global dimension probes

@dataclass(frozen=True, eq=False)
class ProbeReport:
    ring: BaseRing
    candidate_n: int
    observed_bound: int
    inequalities_hold: bool
    higher_pext_vanish: bool
    lower_bound: int
    blind_to_non_fg: bool
    tower_witness: Optional[dict] = None
    samples: int = 0

    def to_json(self):
        out = {
            "ring": str(self.ring),
            "candidate_n": self.candidate_n,
            "observed_bound": self.observed_bound,
            "inequalities_hold": self.inequalities_hold,
            "higher_pext_vanish": self.higher_pext_vanish,
            "reported_lower_bound": self.lower_bound,
            "blind_to_non_finitely_generated": self.blind_to_non_fg,
            "samples": self.samples,
        }
        if self.tower_witness is not None:
            out["tower_witness"] = self.tower_witness
        return out


def pgldim_probe(ring: BaseRing, complexes: Sequence[BoundedComplex], n: Optional[int] = None,
                 with_towers: bool = True, family_cap: Optional[int] = None) -> ProbeReport:
    """Check the global dimension inequalities on a sample.

    For every sampled ``X``: ``ppd X <= n - inf_p X`` and, on a finite ring,
    ``pid X <= n + sup_p X``; for pairs, ``Pext^i(X, Y) = 0`` whenever
    ``i > n + sup_p Y - inf_p X``.
    """
    if n is None:
        n = 0 if ring.modulus else 1
    observed = None
    ok = True
    profiles = []
    for X in complexes:
        prof = purity_profile(X, family_cap=family_cap)
        profiles.append(prof)
        if prof.is_pure_exact():
            continue
        d, _ = ppd(X, family_cap=family_cap)
        shifted = d.value + prof.inf_p.value
        observed = shifted if observed is None else max(observed, shifted)
        if d > n - prof.inf_p.value:
            ok = False
        if ring.modulus:
            e, _ = pid(X, family_cap=family_cap)
            if e > n + prof.sup_p.value:
                ok = False
    vanish = True
    for X, px in zip(complexes, profiles):
        for Y, py in zip(complexes[:8], profiles[:8]):
            if px.is_pure_exact() or py.is_pure_exact():
                continue
            G = total_hom(X, Y)
            bound = n + py.sup_p.value - px.inf_p.value
            for i in G.complex.terms:
                if i > bound and not homology_at(G.complex, i).is_zero():
                    vanish = False
    observed = observed if observed is not None else 0
    lower = observed
    witness = None
    blind = not ring.modulus
    if with_towers and not ring.modulus:
        from .tower import rationals_witness

        witness = rationals_witness()
        lower = max(lower, witness["ppd"])
    return ProbeReport(ring, n, observed, ok, vanish, lower, blind, witness, len(complexes))


# ---------------------------------------------------------------------------
# classical Ext for contrast

def classical_ext_Z(M: FgModule, N: FgModule, i: int) -> FgModule:
    """``Ext^i_Z(M, N)`` from the free resolution ``0 -> Z^r -> Z^g -> M -> 0``."""
    if M.ring.modulus:
        raise ValueError("classical contrast is implemented over Z only")
    g = M.ngens
    basis = hermite_basis([list(r) for r in M.relations], g)
    F0 = free(M.ring, g)
    F1 = free(M.ring, len(basis))
    # columns of the differential are the relation vectors
    d = ModuleMap(F1, F0, tuple(tuple(b[r] for b in basis) for r in range(g))) if basis else None
    P = BoundedComplex(M.ring, {-1: F1, 0: F0}, {-1: d} if d is not None else {})
    return homology_at(total_hom(P, stalk(N)).complex, i)
