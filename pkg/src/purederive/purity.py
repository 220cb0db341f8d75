"""Purity of short exact sequences and degreewise pure exactness of complexes.

A short exact sequence ``0 -> A -> B -> C -> 0`` is tested three ways:

``cohn``
    ``Hom(R/(d), B) -> Hom(R/(d), C)`` is onto for every cyclic test module.
``tensor``
    ``R/(d) (x) A -> R/(d) (x) B`` is injective for every cyclic test module.
``split``
    a retraction ``B -> A`` exists (over Z and Z/m a pure sequence of finitely
    generated modules splits).

The three verdicts must agree; disagreement raises :class:`InconsistentCriteria`.

A complex is pure exact at ``n`` when it is exact at ``n``, the image
factorisations of ``d^(n-1)`` and ``d^n`` consist of a pure epimorphism
followed by a pure monomorphism, and ``0 -> Ker d^n -> X^n -> Coker d^(n-1) -> 0``
is pure exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import total_ordering
from math import gcd
from typing import Optional

from .complexes import (
    BoundedComplex,
    ChainMap,
    cone,
    homology_map,
    is_exact_at,
    stalk,
    tensor_cyclic,
    total_hom,
)
from .errors import InconsistentCriteria
from .modules import (
    FgModule,
    ModuleMap,
    ShortExactSequence,
    _lcm,
    cyclic,
    divisors,
    hom_module,
    map_subquotients,
    prime_power_parts,
    reduce_mod,
    split_analysis,
)
from .ring import BaseRing

log = logging.getLogger(__name__)

DEFAULT_FAMILY_CAP = 64

__all__ = [
    "ExtendedInt",
    "TestFamily",
    "SequenceVerdict",
    "DegreeVerdict",
    "PurityProfile",
    "RangeCheck",
    "QuasiIsoVerdict",
    "test_family",
    "family_for_complex",
    "is_pure_sequence",
    "purity_profile",
    "range_cross_check",
    "is_pure_quasi_iso",
]


@total_ordering
@dataclass(frozen=True)
class ExtendedInt:
    """An integer or one of the two infinities."""

    kind: int  # -1 for -inf, 0 finite, 1 for +inf
    value: int = 0

    @classmethod
    def of(cls, n: int) -> "ExtendedInt":
        return cls(0, int(n))

    @classmethod
    def neg_inf(cls) -> "ExtendedInt":
        return cls(-1)

    @classmethod
    def pos_inf(cls) -> "ExtendedInt":
        return cls(1)

    @property
    def is_finite(self) -> bool:
        return self.kind == 0

    def _key(self):
        return (self.kind, self.value if self.kind == 0 else 0)

    def __lt__(self, other):
        if isinstance(other, int):
            other = ExtendedInt.of(other)
        return self._key() < other._key()

    def __eq__(self, other):
        if isinstance(other, int):
            other = ExtendedInt.of(other)
        if not isinstance(other, ExtendedInt):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __neg__(self):
        return ExtendedInt(-self.kind, -self.value if self.kind == 0 else 0)

    def __add__(self, k: int):
        return self if self.kind else ExtendedInt.of(self.value + k)

    def __str__(self):
        return {-1: "-inf", 1: "+inf"}.get(self.kind, str(self.value))

    __repr__ = __str__

    def to_json(self):
        return self.value if self.kind == 0 else str(self)


NEG_INF = ExtendedInt.neg_inf()
POS_INF = ExtendedInt.pos_inf()


# ---------------------------------------------------------------------------
# test families

@dataclass(frozen=True)
class TestFamily:
    """Cyclic test modules ``R/(d)``; ``d == 0`` stands for ``R`` itself."""

    __test__ = False  # not a pytest class

    ring: BaseRing
    moduli: tuple
    capped: bool = False

    def modules(self) -> list[FgModule]:
        return [cyclic(self.ring, d) for d in self.moduli]

    def proper(self) -> tuple:
        return tuple(d for d in self.moduli if d)

    def to_json(self):
        return {"moduli": list(self.moduli), "capped": self.capped}


def test_family(ring: BaseRing, exponent: int, cap: Optional[int] = None) -> TestFamily:
    """``R`` together with ``R/(d)`` for the divisors ``d > 1`` of ``exponent``.

    Prime powers come first, so a cap keeps the members that matter most
    (purity is detected by prime power cyclics alone).
    """
    cap = DEFAULT_FAMILY_CAP if cap is None else cap
    m = ring.modulus
    if m:
        exponent = gcd(exponent, m) if exponent else m
    ds = [d for d in divisors(exponent) if d > 1 and d != m] if exponent else []
    pp = [d for d in ds if len(prime_power_parts(d)) == 1]
    rest = [d for d in ds if len(prime_power_parts(d)) > 1]
    moduli = [0] + pp + rest
    capped = False
    if len(moduli) > cap:
        log.warning("test family capped at %d of %d members", cap, len(moduli))
        moduli = moduli[:cap]
        capped = True
    return TestFamily(ring, tuple(moduli), capped)


def _exponent_of(modules) -> int:
    e = 1
    for M in modules:
        e = _lcm(e, M.torsion_exponent())
    return e


def family_for_modules(ring: BaseRing, modules, cap: Optional[int] = None) -> TestFamily:
    return test_family(ring, _exponent_of(modules), cap)


def family_for_complex(X: BoundedComplex, cap: Optional[int] = None, extra=()) -> TestFamily:
    """Family built from the torsion of every term and every cokernel of ``X``."""
    mods = list(X.terms.values())
    for n in X.diffs:
        mods.append(map_subquotients(X.diffs[n], check=False).cokernel)
    for Y in extra:
        mods.extend(Y.terms.values())
        for n in Y.diffs:
            mods.append(map_subquotients(Y.diffs[n], check=False).cokernel)
    return family_for_modules(X.ring, mods, cap)


# ---------------------------------------------------------------------------
# sequences

@dataclass(frozen=True, eq=False)
class SequenceVerdict:
    pure: bool
    routes: dict
    witness_modulus: Optional[int] = None
    witness_map: Optional[ModuleMap] = None
    retraction: Optional[ModuleMap] = None
    family: Optional[TestFamily] = None

    def __bool__(self):
        return self.pure

    def to_json(self):
        out = {"pure": self.pure, "routes": dict(self.routes)}
        if self.witness_modulus is not None:
            out["witness_test_module"] = self.witness_modulus
            out["witness_hom_element"] = self.witness_map.to_json()
        if self.retraction is not None:
            out["retraction"] = self.retraction.to_json()
        return out


def _cohn(seq: ShortExactSequence, d: int):
    """None if ``Hom(R/(d), -)`` keeps the sequence exact, else a failing map ``R/(d) -> C``."""
    if d == 0:
        return None
    B, C = seq.B, seq.C
    if C.is_zero():
        return None
    F = cyclic(B.ring, d)
    HB = hom_module(F, B)
    HC = hom_module(F, C)
    if not HC.pairs:
        return None
    mat = HB.postcompose_matrix(seq.g, HC) if HB.pairs else [[] for _ in HC.pairs]
    post = ModuleMap(HB.module, HC.module, mat)
    for k in range(len(HC.pairs)):
        e = [1 if t == k else 0 for t in range(len(HC.pairs))]
        if post.preimage(e) is None:
            return HC.decode(e)
    return None


def _tensor_injective(seq: ShortExactSequence, d: int) -> bool:
    if d == 0:
        return True
    A, B = seq.A, seq.B
    if A.is_zero():
        return True
    Ad, Bd = reduce_mod(A, d), reduce_mod(B, d)
    return ModuleMap(Ad, Bd, seq.f.matrix).is_injective()


def is_pure_sequence(seq: ShortExactSequence, family: Optional[TestFamily] = None,
                     cross_check: bool = True, check: bool = True,
                     cap: Optional[int] = None) -> SequenceVerdict:
    """Purity of an exact sequence via the Cohn family, tensor and split routes."""
    if check:
        seq.check_exact()
    if family is None:
        family = family_for_modules(seq.A.ring, seq.modules(), cap)
    witness_d, witness = None, None
    for d in family.moduli:
        w = _cohn(seq, d)
        if w is not None:
            witness_d, witness = d, w
            break
    cohn = witness is None
    routes = {"cohn": cohn}
    retraction = None
    if cross_check:
        routes["tensor"] = all(_tensor_injective(seq, d) for d in family.moduli)
        sp = split_analysis(seq, check=False)
        routes["split"] = sp.split
        retraction = sp.retraction
        if len(set(routes.values())) > 1:
            raise InconsistentCriteria(f"purity routes disagree: {routes}")
    return SequenceVerdict(cohn, routes, witness_d, witness, retraction, family)


# ---------------------------------------------------------------------------
# profiles

@dataclass(frozen=True, eq=False)
class DegreeVerdict:
    degree: int
    pure_exact: bool
    reason: Optional[str] = None
    witness_modulus: Optional[int] = None
    witness_map: Optional[ModuleMap] = None

    def to_json(self):
        out = {"degree": self.degree, "pure_exact": self.pure_exact}
        if not self.pure_exact:
            out["reason"] = self.reason
            if self.witness_modulus is not None:
                out["witness_test_module"] = self.witness_modulus
                out["witness_hom_element"] = self.witness_map.to_json()
        return out


@dataclass(frozen=True, eq=False)
class RangeCheck:
    """Per cut ``n``: literal verdicts over ranges against tensor/Hom exactness."""

    cuts: tuple
    below: dict   # n -> (literal, tensor)
    above: dict   # n -> (literal, hom)

    @property
    def agree(self) -> bool:
        return all(a == b for a, b in self.below.values()) and all(a == b for a, b in self.above.values())


@dataclass(frozen=True, eq=False)
class PurityProfile:
    complex: BoundedComplex
    verdicts: dict
    inf_p: ExtendedInt
    sup_p: ExtendedInt
    family: TestFamily
    range_check: Optional[RangeCheck] = None

    def at(self, n: int) -> DegreeVerdict:
        v = self.verdicts.get(n)
        return v if v is not None else DegreeVerdict(n, True)

    def failing_degrees(self) -> list[int]:
        return [n for n, v in self.verdicts.items() if not v.pure_exact]

    def is_pure_exact(self) -> bool:
        return not self.failing_degrees()

    def to_json(self):
        out = {
            "inf_p": self.inf_p.to_json(),
            "sup_p": self.sup_p.to_json(),
            "test_family": self.family.to_json(),
            "degrees": [v.to_json() for v in self.verdicts.values()],
        }
        if self.range_check is not None:
            out["range_cross_check"] = self.range_check.agree
        return out


class _DiffData:
    """Subquotients of one differential and the purity of its two sequences."""

    def __init__(self, d: ModuleMap, family: TestFamily, cross_check: bool):
        self.sq = map_subquotients(d, check=False)
        sq = self.sq
        epi = ShortExactSequence(sq.kernel_inclusion, sq.coimage_projection)
        mono = ShortExactSequence(sq.image_inclusion, sq.cokernel_projection)
        self.epi = is_pure_sequence(epi, family, cross_check=cross_check, check=False)
        self.mono = is_pure_sequence(mono, family, cross_check=cross_check, check=False)


def purity_profile(X: BoundedComplex, tests: Optional[TestFamily] = None, cross_check: bool = False,
                   family_cap: Optional[int] = None) -> PurityProfile:
    """Degreewise pure exactness over the support of ``X`` plus one degree each side.

    With ``cross_check`` every sequence is tested by all three routes and the
    range forms are compared against tensor and Hom exactness.
    """
    family = tests or family_for_complex(X, family_cap)
    verdicts = {}
    if X.terms:
        lo, hi = X.lo - 1, X.hi + 1
        dd = {}

        def data(j):
            if j not in dd:
                dd[j] = _DiffData(X.diff(j), family, cross_check)
            return dd[j]

        for n in range(lo, hi + 1):
            verdicts[n] = _degree_verdict(X, n, data, family, cross_check)
    failing = [n for n, v in verdicts.items() if not v.pure_exact]
    inf_p = ExtendedInt.of(min(failing)) if failing else POS_INF
    sup_p = ExtendedInt.of(max(failing)) if failing else NEG_INF
    prof = PurityProfile(X, verdicts, inf_p, sup_p, family)
    if cross_check:
        rc = range_cross_check(X, prof)
        if not rc.agree:
            raise InconsistentCriteria("literal profile disagrees with the tensor/Hom range criteria")
        prof = PurityProfile(X, verdicts, inf_p, sup_p, family, rc)
    return prof


def _degree_verdict(X, n, data, family, cross_check) -> DegreeVerdict:
    if not is_exact_at(X, n):
        return DegreeVerdict(n, False, f"H^{n} != 0")
    for j, label in ((n - 1, f"d^{n - 1}"), (n, f"d^{n}")):
        dj = data(j)
        if not dj.epi.pure:
            return DegreeVerdict(n, False, f"{label}: epimorphism onto the image is not pure",
                                 dj.epi.witness_modulus, dj.epi.witness_map)
        if not dj.mono.pure:
            return DegreeVerdict(n, False, f"{label}: image is not a pure submodule",
                                 dj.mono.witness_modulus, dj.mono.witness_map)
    k = data(n).sq
    c = data(n - 1).sq
    seq = ShortExactSequence(k.kernel_inclusion, c.cokernel_projection)
    v = is_pure_sequence(seq, family, cross_check=cross_check, check=cross_check)
    if not v.pure:
        return DegreeVerdict(n, False, "kernel-cokernel sequence is not pure",
                             v.witness_modulus, v.witness_map)
    return DegreeVerdict(n, True)


def _hom_complex(F: FgModule, X: BoundedComplex) -> BoundedComplex:
    return total_hom(stalk(F), X).complex


def range_cross_check(X: BoundedComplex, prof: PurityProfile) -> RangeCheck:
    """Compare range forms of the literal profile with tensor and Hom exactness."""
    family = prof.family
    if not X.terms:
        return RangeCheck((), {}, {})
    lo, hi = X.lo - 1, X.hi + 1
    cuts = tuple(range(lo, hi + 1))
    tens = [tensor_cyclic(X, d) for d in family.moduli]
    homs = [_hom_complex(F, X) for F in family.modules()]
    t_exact = {n: all(is_exact_at(T, n) for T in tens) for n in cuts}
    h_exact = {n: all(is_exact_at(H, n) for H in homs) for n in cuts}
    below, above = {}, {}
    for n in cuts:
        lit_le = all(prof.at(k).pure_exact for k in cuts if k <= n)
        lit_ge = all(prof.at(k).pure_exact for k in cuts if k >= n)
        below[n] = (lit_le, all(t_exact[k] for k in cuts if k <= n))
        above[n] = (lit_ge, all(h_exact[k] for k in cuts if k >= n))
    return RangeCheck(cuts, below, above)


# ---------------------------------------------------------------------------
# pure quasi-isomorphisms

@dataclass(frozen=True, eq=False)
class QuasiIsoVerdict:
    yes: bool
    first_failing_degree: Optional[int]
    cone_profile: PurityProfile
    hom_route: bool

    def __bool__(self):
        return self.yes

    def to_json(self):
        out = {"pure_quasi_isomorphism": self.yes, "cone_profile": self.cone_profile.to_json()}
        if not self.yes:
            out["first_failing_degree"] = self.first_failing_degree
        return out


def _hom_route(f: ChainMap, family: TestFamily) -> bool:
    """``Hom(F, f)`` is a quasi-isomorphism for every test module ``F``."""
    X, Y = f.source, f.target
    for F in family.modules():
        GX = total_hom(stalk(F), X)
        GY = total_hom(stalk(F), Y)
        CX, CY = GX.complex, GY.complex
        comps = {}
        for n in set(CX.terms) & set(CY.terms):
            comps[n] = _postcompose_graded(GX, GY, n, f.component(n))
        g = ChainMap(CX, CY, comps)
        degs = sorted(set(CX.terms) | set(CY.terms))
        for n in degs:
            if not homology_map(g, n).is_isomorphism():
                return False
    return True


def _postcompose_graded(GX, GY, n, fn: ModuleMap) -> ModuleMap:
    """Postcomposition with ``f^n`` on ``Hom(F, X^n) -> Hom(F, Y^n)`` for a stalk ``F``."""
    src = GX.complex.term(n)
    dst = GY.complex.term(n)
    cols = []
    for k in range(src.ngens):
        e = [1 if t == k else 0 for t in range(src.ngens)]
        phi = GX.decode(n, e)[0]
        cols.append(GY.encode(n, {0: fn @ phi}))
    return ModuleMap(src, dst, tuple(tuple(c[r] for c in cols) for r in range(dst.ngens)))


def is_pure_quasi_iso(f: ChainMap, tests: Optional[TestFamily] = None, cross_check: bool = True,
                      family_cap: Optional[int] = None) -> QuasiIsoVerdict:
    """Cone route, optionally compared with the Hom-homology route."""
    T = cone(f)
    family = tests or family_for_complex(T.cone, family_cap, extra=(f.source, f.target))
    prof = purity_profile(T.cone, family)
    yes = prof.is_pure_exact()
    hom_ok = yes
    if cross_check:
        hom_ok = _hom_route(f, family)
        if hom_ok != yes:
            raise InconsistentCriteria("cone profile and Hom-homology route disagree")
    first = None if yes else min(prof.failing_degrees())
    return QuasiIsoVerdict(yes, first, prof, hom_ok)
