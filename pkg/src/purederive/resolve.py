"""Pure projective and pure injective resolutions of bounded complexes.

Resolutions are built by induction on the number of nonzero terms.  For the
projective side, with ``j`` the lowest nonzero degree, ``X`` is literally the
cone of ``u = d^j: X1 -> X2`` where ``X1`` is ``X^j`` placed in degree ``j+1``
and ``X2`` is the part of ``X`` above ``j``.  Both pieces are resolved, ``u``
is lifted to the resolvents and the cone of the lift maps to ``X``.  The
injective side peels off the top degree instead.

Every lift is found by solving one linear system on total Hom complexes:
a degree zero cycle ``c`` together with a degree -1 element ``h`` with
``q c - g = d h + h d`` (post-composition form) or ``c j - g = d h + h d``
(pre-composition form).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .complexes import (
    BoundedComplex,
    ChainMap,
    GradedHom,
    Homotopy,
    cone,
    homology_map,
    null_homotopy,
    shift,
    shift_map,
    stalk,
    total_hom,
    truncate,
)
from .errors import LiftSearchFailed, NotPureQuasiIso, PrereqFails, UnsupportedInjectiveBase
from .modules import (
    FgModule,
    ModuleMap,
    ShortExactSequence,
    block_map,
    direct_sum,
    free,
    map_subquotients,
    purity_class,
    split_analysis,
)
from .purity import NEG_INF, POS_INF, is_pure_quasi_iso, purity_profile

__all__ = [
    "Resolution",
    "ResolutionCertificate",
    "Roof",
    "RoofNormalization",
    "TailSplit",
    "identity_precover",
    "padded_precover",
    "identity_preenvelope",
    "padded_preenvelope",
    "lift_post",
    "lift_pre",
    "cone_map",
    "pure_projective_resolution",
    "pure_injective_resolution",
    "certify",
    "lift_along_resolutions",
    "homotopy_inverse",
    "split_off_tail",
    "decompose_tail",
    "roof_normalize",
]


# ---------------------------------------------------------------------------
# precovers and preenvelopes for the base case

Precover = Callable[[FgModule], tuple]


def identity_precover(M: FgModule):
    """``Id: M -> M``; every finitely generated module here is pure projective."""
    return M, ModuleMap.identity(M)


def padded_precover(k: int = 1):
    """``M (+) R^k -> M`` sending the free generators onto generators of ``M``.

    The kernel is free of rank ``k`` and the sequence splits, so the base case
    resolvent becomes the two-term complex ``R^k -> M (+) R^k``.
    """

    def pc(M: FgModule):
        F = free(M.ring, k)
        S, _, _ = direct_sum(M, F)
        g = M.ngens
        rows = []
        for r in range(g):
            row = [1 if c == r else 0 for c in range(g)]
            row += [1 if (c % g) == r else 0 for c in range(k)] if g else []
            rows.append(tuple(row))
        return S, ModuleMap(S, M, tuple(rows))

    return pc


def identity_preenvelope(M: FgModule):
    return M, ModuleMap.identity(M)


def padded_preenvelope(M: FgModule):
    """``M -> M (+) M`` via ``(id, id)``; the cokernel is a copy of ``M``."""
    S, _, _ = direct_sum(M, M)
    g = M.ngens
    rows = tuple(tuple(1 if c == r % g else 0 for c in range(g)) for r in range(2 * g))
    return S, ModuleMap(M, S, rows)


# ---------------------------------------------------------------------------
# resolutions

@dataclass(frozen=True, eq=False)
class ResolutionCertificate:
    terms_ok: bool
    quasi_iso: object  # QuasiIsoVerdict
    inf_p: object
    sup_p: object
    shape_ok: bool

    @property
    def ok(self) -> bool:
        return self.terms_ok and bool(self.quasi_iso) and self.shape_ok

    def to_json(self):
        return {
            "terms_pure_projective_or_injective": self.terms_ok,
            "pure_quasi_isomorphism": bool(self.quasi_iso),
            "inf_p": self.inf_p.to_json(),
            "sup_p": self.sup_p.to_json(),
            "shape": self.shape_ok,
        }


@dataclass(frozen=True, eq=False)
class Resolution:
    """``map: resolvent -> target`` (projective) or ``target -> resolvent`` (injective)."""

    target: BoundedComplex
    resolvent: BoundedComplex
    map: ChainMap
    side: str
    certificate: Optional[ResolutionCertificate] = None

    @property
    def is_projective(self) -> bool:
        return self.side == "projective"


def _as_map(src: BoundedComplex, dst: BoundedComplex, comps) -> ChainMap:
    return ChainMap(src, dst, comps)


def _post_matrix(G_src: GradedHom, G_dst: GradedHom, q: ChainMap, n: int) -> list:
    """``phi -> q o phi`` from ``Hom^n(A, B)`` to ``Hom^n(A, C)``."""
    src = G_src.complex.term(n)
    dst = G_dst.complex.term(n)
    cols = []
    for i, H, off in G_src.blocks.get(n, ()):
        qi = q.component(i + n)
        for k in range(len(H.pairs)):
            phi = H.decode([1 if t == k else 0 for t in range(len(H.pairs))])
            cols.append(G_dst.encode(n, {i: qi @ phi}))
    return [[c[r] for c in cols] for r in range(dst.ngens)]


def _pre_matrix(G_src: GradedHom, G_dst: GradedHom, j: ChainMap, n: int) -> list:
    """``phi -> phi o j`` from ``Hom^n(B, C)`` to ``Hom^n(A, C)``."""
    dst = G_dst.complex.term(n)
    cols = []
    for i, H, off in G_src.blocks.get(n, ()):
        ji = j.component(i)
        for k in range(len(H.pairs)):
            phi = H.decode([1 if t == k else 0 for t in range(len(H.pairs))])
            cols.append(G_dst.encode(n, {i: phi @ ji}))
    return [[c[r] for c in cols] for r in range(dst.ngens)]


def _solve_lift(G_c: GradedHom, G_h: GradedHom, couple: list, g: ChainMap):
    """Solve ``D c = 0`` and ``couple(c) - D h = g`` for ``c`` in ``Hom^0`` of ``G_c``."""
    C0, C1 = G_c.complex.term(0), G_c.complex.term(1)
    H0, Hm = G_h.complex.term(0), G_h.complex.term(-1)
    U, _, _ = direct_sum(C0, Hm)
    E, _, _ = direct_sum(C1, H0)
    blocks = {}
    if C0.ngens and C1.ngens:
        blocks[(0, 0)] = G_c.complex.diff(0).matrix
    if C0.ngens and H0.ngens:
        blocks[(1, 0)] = couple
    if Hm.ngens and H0.ngens:
        blocks[(1, 1)] = (-G_h.complex.diff(-1)).matrix
    Phi = block_map(U, E, blocks, [C1.ngens, H0.ngens], [C0.ngens, Hm.ngens])
    rhs = [0] * C1.ngens + G_h.encode(0, g.components)
    x = Phi.preimage(rhs)
    if x is None:
        return None
    c = x[: C0.ngens]
    h = x[C0.ngens:]
    return G_c.decode(0, c), G_h.decode(-1, h)


def lift_post(q: ChainMap, g: ChainMap) -> tuple[ChainMap, Homotopy]:
    """``c: A -> B`` with ``q o c`` homotopic to ``g: A -> C`` (``q: B -> C``)."""
    A, B, C = g.source, q.source, q.target
    G_c = total_hom(A, B)
    G_h = total_hom(A, C)
    couple = _post_matrix(G_c, G_h, q, 0)
    sol = _solve_lift(G_c, G_h, couple, g)
    if sol is None:
        raise LiftSearchFailed("no chain map lifts the given map up to homotopy")
    c = ChainMap(A, B, sol[0])
    return c, Homotopy(q @ c, g, sol[1])


def lift_pre(j: ChainMap, g: ChainMap) -> tuple[ChainMap, Homotopy]:
    """``c: B -> C`` with ``c o j`` homotopic to ``g: A -> C`` (``j: A -> B``)."""
    A, B, C = j.source, j.target, g.target
    G_c = total_hom(B, C)
    G_h = total_hom(A, C)
    couple = _pre_matrix(G_c, G_h, j, 0)
    sol = _solve_lift(G_c, G_h, couple, g)
    if sol is None:
        raise LiftSearchFailed("no chain map extends the given map up to homotopy")
    c = ChainMap(B, C, sol[0])
    return c, Homotopy(c @ j, g, sol[1])


def cone_map(u: ChainMap, f: ChainMap, a: ChainMap, b: ChainMap, k: Homotopy) -> ChainMap:
    """Map ``cone(u) -> cone(f)`` induced by ``a, b`` and ``b u - f a = d k + k d``.

    ``u: X1 -> X2``, ``f: P1 -> P2``, ``a: X1 -> P1``, ``b: X2 -> P2``.  In
    degree ``n`` the map is ``[[a^(n+1), 0], [k^(n+1), b^n]]``.
    """
    Cu = cone(u).cone
    Cf = cone(f).cone
    X1, X2 = u.source, u.target
    P1, P2 = f.source, f.target
    comps = {}
    for n in sorted(set(Cu.terms) & set(Cf.terms)):
        blocks = {
            (0, 0): a.component(n + 1).matrix,
            (1, 0): k.component(n + 1).matrix,
            (1, 1): b.component(n).matrix,
        }
        comps[n] = block_map(Cu.term(n), Cf.term(n), blocks,
                             [P1.term(n + 1).ngens, P2.term(n).ngens],
                             [X1.term(n + 1).ngens, X2.term(n).ngens])
    return ChainMap(Cu, Cf, comps)


def _brutal_above(X: BoundedComplex, j: int) -> BoundedComplex:
    return BoundedComplex(X.ring, {n: M for n, M in X.terms.items() if n > j},
                          {n: d for n, d in X.diffs.items() if n > j})


def _brutal_below(X: BoundedComplex, j: int) -> BoundedComplex:
    return BoundedComplex(X.ring, {n: M for n, M in X.terms.items() if n < j},
                          {n: d for n, d in X.diffs.items() if n < j - 1})


def _nonzero_degrees(X: BoundedComplex) -> list[int]:
    return [n for n, M in X.terms.items() if not M.is_zero()]


def _prune(X: BoundedComplex) -> BoundedComplex:
    """Drop zero terms (modules with generators but no elements)."""
    keep = set(_nonzero_degrees(X))
    if keep == set(X.terms):
        return X
    terms = {n: M for n, M in X.terms.items() if n in keep}
    diffs = {n: d for n, d in X.diffs.items() if n in keep and n + 1 in keep}
    return BoundedComplex(X.ring, terms, diffs)


def _projective_base(X: BoundedComplex, precover: Precover):
    """Resolution of a complex with at most one nonzero term."""
    if not X.terms:
        return X, ChainMap.zero(X, X)
    (j, M), = X.terms.items()
    P, p = precover(M)
    sq = map_subquotients(p, check=False)
    K = sq.kernel
    if K.is_zero():
        R = stalk(P, j)
        return R, ChainMap(R, X, {j: p})
    R = BoundedComplex(X.ring, {j - 1: K, j: P}, {j - 1: sq.kernel_inclusion})
    return R, ChainMap(R, X, {j: p})


def _resolve_projective(X: BoundedComplex, precover: Precover):
    degs = list(X.terms)
    if len(degs) <= 1:
        return _projective_base(X, precover)
    j = degs[0]
    X1 = stalk(X.terms[j], j + 1)
    X2 = _brutal_above(X, j)
    u = ChainMap(X1, X2, {j + 1: X.diff(j)})
    P1, f1 = _resolve_projective(X1, precover)
    P2, f2 = _resolve_projective(X2, precover)
    f, h = lift_post(f2, u @ f1)
    phi = cone_map(f, u, f1, f2, h)
    P = phi.source
    fX = ChainMap(P, X, phi.components)
    return P, fX


def pure_projective_resolution(X: BoundedComplex, precover: Precover = identity_precover,
                               certify_result: bool = True, family_cap: Optional[int] = None) -> Resolution:
    """Resolution ``P -> X`` by induction on the nonzero terms of ``X``."""
    Xp = _prune(X)
    P, fX = _resolve_projective(Xp, precover)
    fX = ChainMap(P, X, fX.components)
    res = Resolution(X, P, fX, "projective")
    if certify_result:
        res = Resolution(X, P, fX, "projective", certify(res, family_cap=family_cap))
    return res


def _require_injective_support(X: BoundedComplex):
    if X.ring.modulus:
        return
    for n, M in X.terms.items():
        if not M.is_finite():
            raise UnsupportedInjectiveBase(
                f"term in degree {n} has a free Z summand; no finite pure injective preenvelope")


def _injective_base(X: BoundedComplex, preenvelope):
    if not X.terms:
        return X, ChainMap.zero(X, X)
    (j, M), = X.terms.items()
    E, e = preenvelope(M)
    sq = map_subquotients(e, check=False)
    C = sq.cokernel
    if C.is_zero():
        R = stalk(E, j)
        return R, ChainMap(X, R, {j: e})
    R = BoundedComplex(X.ring, {j: E, j + 1: C}, {j: sq.cokernel_projection})
    return R, ChainMap(X, R, {j: e})


def _resolve_injective(X: BoundedComplex, preenvelope):
    degs = list(X.terms)
    if len(degs) <= 1:
        return _injective_base(X, preenvelope)
    j = degs[-1]
    A = _brutal_below(X, j)
    T = stalk(X.terms[j], j - 1)
    w = ChainMap(A, T, {j - 1: X.diff(j - 1)})
    IA, gA = _resolve_injective(A, preenvelope)
    IT, gT = _resolve_injective(T, preenvelope)
    wp, h = lift_pre(gA, gT @ w)
    # cone_map needs b w - w' a = d k + k d; h certifies w' a - b w, so k = -h
    k = Homotopy(h.g, h.f, {n: -s for n, s in h.components.items()})
    Phi = cone_map(w, wp, gA, gT, k)
    Cw = Phi.source
    # X is cone(w)[-1] up to the sign -1 in degree j
    Cw1 = shift(Cw, -1)
    iso = {}
    for n, M in X.terms.items():
        iso[n] = ModuleMap.scalar(M, -1) if n == j else ModuleMap.identity(M)
    phi = ChainMap(X, Cw1, iso)
    Phi1 = shift_map(Phi, -1)
    gX = Phi1 @ phi
    I = Phi1.target
    return I, ChainMap(X, I, gX.components)


def pure_injective_resolution(X: BoundedComplex, preenvelope=identity_preenvelope,
                              certify_result: bool = True, family_cap: Optional[int] = None) -> Resolution:
    """Resolution ``X -> I`` by the dual induction; needs finite terms."""
    _require_injective_support(X)
    Xp = _prune(X)
    I, gX = _resolve_injective(Xp, preenvelope)
    gX = ChainMap(X, I, gX.components)
    res = Resolution(X, I, gX, "injective")
    if certify_result:
        res = Resolution(X, I, gX, "injective", certify(res, family_cap=family_cap))
    return res


def certify(res: Resolution, family_cap: Optional[int] = None) -> ResolutionCertificate:
    """Degreewise purity class, pure quasi-isomorphism and the bounded shape."""
    R = res.resolvent
    if res.is_projective:
        terms_ok = all(purity_class(M).pure_projective for M in R.terms.values())
    else:
        terms_ok = all(purity_class(M).pure_injective for M in R.terms.values())
    qi = is_pure_quasi_iso(res.map, family_cap=family_cap, cross_check=False)
    prof = purity_profile(R, family_cap=family_cap)
    # a pure exact resolvent has inf_p = +inf; only -inf would leave the shape
    shape_ok = prof.inf_p != NEG_INF if res.is_projective else prof.sup_p != POS_INF
    return ResolutionCertificate(terms_ok, qi, prof.inf_p, prof.sup_p, shape_ok)


def lift_along_resolutions(f: ChainMap, RX: Resolution, RY: Resolution) -> tuple[ChainMap, Homotopy]:
    """``f'`` between resolvents with a homotopy certifying the square."""
    if RX.side != RY.side:
        raise ValueError("resolutions must be on the same side")
    if RX.is_projective:
        return lift_post(RY.map, f @ RX.map)
    return lift_pre(RX.map, RY.map @ f)


def homotopy_inverse(R1: Resolution, R2: Resolution):
    """Comparison maps between two resolvents of one target and the homotopies
    showing both composites are homotopic to the identity."""
    ident = ChainMap.identity(R1.target)
    a, _ = lift_along_resolutions(ident, R1, R2)
    b, _ = lift_along_resolutions(ident, R2, R1)
    h1 = null_homotopy(b @ a, ChainMap.identity(R1.resolvent))
    h2 = null_homotopy(a @ b, ChainMap.identity(R2.resolvent))
    return a, b, h1, h2


# ---------------------------------------------------------------------------
# splitting off contractible tails

@dataclass(frozen=True, eq=False)
class TailSplit:
    """``resolvent = P1 (+) P2`` with ``P2`` contractible."""

    P1: BoundedComplex
    P2: BoundedComplex
    embed: ChainMap        # P1 (+) P2 -> resolvent
    retract: ChainMap      # resolvent -> P1 (+) P2
    contraction: Homotopy  # Id_{P2} ~ 0
    sum_complex: BoundedComplex

    def to_json(self):
        return {"P1": _degrees_desc(self.P1), "P2": _degrees_desc(self.P2), "P2_contractible": True}


def _degrees_desc(X: BoundedComplex):
    return {str(n): str(M) for n, M in X.terms.items()}


def _map_from_columns(src, dst, cols):
    return ModuleMap(src, dst, tuple(tuple(c[i] for c in cols) for i in range(dst.ngens)))


def decompose_tail(P: BoundedComplex, n: int, side: str = "projective") -> Optional[TailSplit]:
    """Split ``P`` at ``-n`` (projective) or ``n`` (injective) into a part
    vanishing beyond that degree and a contractible remainder, if possible."""
    from .complexes import complex_sum

    if side == "projective":
        t = -n
        d = P.diff(t - 1)
        sq = map_subquotients(d, check=False)
        seq = ShortExactSequence(sq.image_inclusion, sq.cokernel_projection)  # 0 -> Im -> P^t -> Coker -> 0
        sp = split_analysis(seq, check=False)
        if not sp.split:
            return None
        Im, Ck = sq.image, sq.cokernel
        s, r = sp.section, sp.retraction
        t1 = {k: M for k, M in P.terms.items() if k > t}
        t1[t] = Ck
        d1 = {k: D for k, D in P.diffs.items() if k > t}
        d1[t] = P.diff(t) @ s
        P1 = BoundedComplex(P.ring, t1, d1)
        t2 = {k: M for k, M in P.terms.items() if k < t}
        t2[t] = Im
        d2 = {k: D for k, D in P.diffs.items() if k < t - 1}
        d2[t - 1] = sq.coimage_projection
        P2 = BoundedComplex(P.ring, t2, d2)
        glue_in = (s, seq.f)        # Ck -> P^t, Im -> P^t
        glue_out = (seq.g, r)       # P^t -> Ck, P^t -> Im
    else:
        t = n
        d = P.diff(t)
        sq = map_subquotients(d, check=False)
        seq = ShortExactSequence(sq.kernel_inclusion, sq.coimage_projection)  # 0 -> Ker -> P^t -> Im -> 0
        sp = split_analysis(seq, check=False)
        if not sp.split:
            return None
        Kr, Im = sq.kernel, sq.image
        s, r = sp.section, sp.retraction
        t1 = {k: M for k, M in P.terms.items() if k < t}
        t1[t] = Kr
        d1 = {k: D for k, D in P.diffs.items() if k < t - 1}
        if t - 1 in P.terms:
            d1[t - 1] = r @ P.diff(t - 1)
        P1 = BoundedComplex(P.ring, t1, d1)
        t2 = {k: M for k, M in P.terms.items() if k > t}
        t2[t] = Im
        d2 = {k: D for k, D in P.diffs.items() if k > t}
        d2[t] = sq.image_inclusion
        P2 = BoundedComplex(P.ring, t2, d2)
        glue_in = (seq.f, s)        # Ker -> P^t, Im -> P^t
        glue_out = (r, seq.g)       # P^t -> Ker, P^t -> Im
    P1.check()
    P2.check()
    S, _, _ = complex_sum(P1, P2)
    emb, ret = {}, {}
    for k in S.terms:
        a, b = P1.term(k).ngens, P2.term(k).ngens
        if k == t:
            emb[k] = block_map(S.term(k), P.term(k), {(0, 0): glue_in[0].matrix, (0, 1): glue_in[1].matrix},
                               [P.term(k).ngens], [a, b])
            ret[k] = block_map(P.term(k), S.term(k), {(0, 0): glue_out[0].matrix, (1, 0): glue_out[1].matrix},
                               [a, b], [P.term(k).ngens])
        else:
            emb[k] = ModuleMap(S.term(k), P.term(k), ModuleMap.identity(P.term(k)).matrix)
            ret[k] = ModuleMap(P.term(k), S.term(k), ModuleMap.identity(P.term(k)).matrix)
    embed = ChainMap(S, P, emb)
    retract = ChainMap(P, S, ret)
    if embed.validate() or retract.validate():
        raise AssertionError("tail splitting maps are not chain maps")
    if not all((retract @ embed).component(k).equals(ModuleMap.identity(S.term(k))) for k in S.terms):
        raise AssertionError("tail splitting is not an isomorphism")
    contraction = null_homotopy(ChainMap.identity(P2))
    if contraction is None:
        return None
    return TailSplit(P1, P2, embed, retract, contraction, S)


def split_off_tail(R: Resolution, n: int, family_cap: Optional[int] = None) -> TailSplit:
    """Checked splitting of a resolvent into a bounded part and a contractible tail."""
    prof = purity_profile(R.target, family_cap=family_cap)
    P = R.resolvent
    if R.is_projective:
        if prof.inf_p < -n:
            raise PrereqFails(f"inf_p = {prof.inf_p} < {-n}")
        ck = map_subquotients(P.diff(-n - 1), check=False).cokernel
        if not purity_class(ck).pure_projective:
            raise PrereqFails(f"Coker d^{-n - 1} is not pure projective")
        ts = decompose_tail(P, n, "projective")
    else:
        if prof.sup_p > n:
            raise PrereqFails(f"sup_p = {prof.sup_p} > {n}")
        kr = map_subquotients(P.diff(n), check=False).kernel
        if not purity_class(kr).pure_injective:
            raise PrereqFails(f"Ker d^{n} is not pure injective")
        ts = decompose_tail(P, n, "injective")
    if ts is None:
        raise PrereqFails("the tail sequence does not split into a contractible summand")
    return ts


# ---------------------------------------------------------------------------
# roofs

@dataclass(frozen=True, eq=False)
class Roof:
    """``X <-s- apex -a-> Y`` with ``s`` a pure quasi-isomorphism."""

    apex: BoundedComplex
    s: ChainMap
    a: ChainMap


@dataclass(frozen=True, eq=False)
class RoofNormalization:
    g: ChainMap
    route: str
    section: Optional[ChainMap] = None           # t: X -> apex
    section_homotopy: Optional[Homotopy] = None  # s t ~ Id_X
    equivalence: Optional[Homotopy] = None       # a ~ g s
    truncation_certificate: object = None

    def to_json(self):
        out = {"route": self.route, "g": {str(n): f.to_json() for n, f in self.g.components.items()}}
        if self.section is not None:
            out["section"] = {str(n): f.to_json() for n, f in self.section.components.items()}
        if self.truncation_certificate is not None:
            out["apex_truncation_pure_quasi_isomorphism"] = bool(self.truncation_certificate)
        return out


def _is_stalk_at_zero(X: BoundedComplex) -> bool:
    return set(_nonzero_degrees(X)) <= {0}


def roof_normalize(r: Roof, route: Optional[str] = None, family_cap: Optional[int] = None) -> RoofNormalization:
    """A chain map ``g: X -> Y`` with ``(s, a)`` equivalent to ``(Id, g)``.

    ``route`` is ``"lift"`` (the source is a complex of pure projectives, always
    true here) or ``"stalk"`` (both ends are modules in degree 0, ``g`` is
    ``H^0(a) H^0(s)^-1``).  By default stalks use the stalk route.
    """
    s, a = r.s, r.a
    X, Y = s.target, a.target
    if not is_pure_quasi_iso(s, family_cap=family_cap, cross_check=False):
        raise NotPureQuasiIso("the left leg of the roof is not a pure quasi-isomorphism")
    if route is None:
        route = "stalk" if _is_stalk_at_zero(X) and _is_stalk_at_zero(Y) else "lift"
    if route == "stalk":
        h_s = homology_map(s, 0)
        h_a = homology_map(a, 0)
        HX = X.term(0)
        inv = h_s.inverse()
        # identify H^0 of the stalks with the modules themselves
        from .complexes import homology

        HXd = homology(X, 0)
        HYd = homology(Y, 0)
        to_hx = _map_from_columns(HX, HXd.module, [HXd.class_of(HX.generator(i)) for i in range(HX.ngens)])
        from_hy = HYd.representatives
        g0 = from_hy @ h_a @ inv @ to_hx
        g = ChainMap(X, Y, {0: ModuleMap(X.term(0), Y.term(0), g0.matrix)} if X.term(0).ngens and Y.term(0).ngens else {})
        cert = None
        if r.apex.terms and 0 in r.apex.terms:
            cert = truncate(r.apex, 0, "kernel_style", family_cap=family_cap).certificate
        return RoofNormalization(g, "stalk", truncation_certificate=cert)
    t, hst = lift_post(s, ChainMap.identity(X))
    g = a @ t
    eq = null_homotopy(a, g @ s)
    if eq is None:
        raise NotPureQuasiIso("apex is not homotopy equivalent to the source")
    return RoofNormalization(g, "lift", t, hst, eq)
