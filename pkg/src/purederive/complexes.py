"""Bounded cochain complexes of finitely generated modules.

Conventions:

* ``X[k]^n = X^(n+k)`` with differential ``(-1)^k d``; shifting a chain map
  does not change signs.
* ``cone(f)^n = X^(n+1) (+) Y^n`` with differential ``[[-d_X, 0], [f, d_Y]]``.
* ``Hom(X, Y)^n = prod_i Hom(X^i, Y^(i+n))`` with
  ``d(phi)^i = d_Y phi^i - (-1)^n phi^(i+1) d_X^i``.

With these choices a homotopy ``s`` from ``f`` to ``g`` (``f - g = d s + s d``)
is exactly a preimage of ``f - g`` under the degree -1 differential of the
Hom complex, which is how :func:`null_homotopy` finds it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional

from .errors import InvalidComplex, PrereqPurityFails, RingMismatch, ShapeMismatch
from .modules import (
    FgModule,
    HomSpace,
    ModuleMap,
    _quotient_of_lattice,
    block_map,
    diagonal_module,
    direct_sum,
    hom_module,
    reduce_mod,
    zero_module,
)
from .ring import BaseRing, hermite_basis

__all__ = [
    "BoundedComplex",
    "ChainMap",
    "Homotopy",
    "Triangle",
    "GradedHom",
    "Homology",
    "stalk",
    "shift",
    "shift_map",
    "cone",
    "total_hom",
    "homology_at",
    "homology",
    "homology_map",
    "null_homotopy",
    "is_contractible",
    "complex_sum",
    "tensor_cyclic",
    "truncate",
    "Truncation",
]


@dataclass(frozen=True, eq=False)
class BoundedComplex:
    """Terms ``X^n`` and differentials ``d^n: X^n -> X^(n+1)``.

    Missing degrees are zero; missing differentials are zero maps.
    """

    ring: BaseRing
    terms: Mapping[int, FgModule]
    diffs: Mapping[int, ModuleMap] = field(default_factory=dict)

    def __post_init__(self):
        terms = {int(n): M for n, M in self.terms.items() if M.ngens}
        for M in terms.values():
            if M.ring != self.ring:
                raise RingMismatch("all terms must be over the complex's ring")
        diffs = {}
        for n, d in self.diffs.items():
            n = int(n)
            src = terms.get(n)
            dst = terms.get(n + 1)
            if src is None or dst is None:
                if d.matrix and any(any(r) for r in d.matrix):
                    raise InvalidComplex(n, "nonzero differential out of or into a zero term")
                continue
            if d.domain.ngens != src.ngens or d.codomain.ngens != dst.ngens:
                raise ShapeMismatch(f"differential at degree {n} has the wrong shape")
            if d.domain != src or d.codomain != dst:
                d = ModuleMap(src, dst, d.matrix)
            diffs[n] = d
        object.__setattr__(self, "terms", dict(sorted(terms.items())))
        object.__setattr__(self, "diffs", dict(sorted(diffs.items())))

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_sequence(cls, ring: BaseRing, start: int, modules, maps) -> "BoundedComplex":
        """``modules[k]`` sits in degree ``start + k``; ``maps[k]`` goes from it to the next."""
        terms = {start + k: M for k, M in enumerate(modules)}
        diffs = {}
        for k, mat in enumerate(maps):
            src, dst = modules[k], modules[k + 1]
            diffs[start + k] = mat if isinstance(mat, ModuleMap) else ModuleMap(src, dst, mat)
        return cls(ring, terms, diffs)

    @classmethod
    def zero(cls, ring: BaseRing) -> "BoundedComplex":
        return cls(ring, {}, {})

    # -- access ---------------------------------------------------------------

    def term(self, n: int) -> FgModule:
        M = self.terms.get(n)
        return M if M is not None else zero_module(self.ring)

    def diff(self, n: int) -> ModuleMap:
        d = self.diffs.get(n)
        if d is not None:
            return d
        return ModuleMap.zero(self.term(n), self.term(n + 1))

    @property
    def degrees(self) -> list[int]:
        return list(self.terms)

    @property
    def lo(self) -> Optional[int]:
        return min(self.terms) if self.terms else None

    @property
    def hi(self) -> Optional[int]:
        return max(self.terms) if self.terms else None

    def support(self) -> Optional[tuple[int, int]]:
        """Smallest interval containing every nonzero term."""
        nz = [n for n, M in self.terms.items() if not M.is_zero()]
        return (min(nz), max(nz)) if nz else None

    def is_zero(self) -> bool:
        return all(M.is_zero() for M in self.terms.values())

    def validate(self) -> Optional[tuple[int, str]]:
        """First failing ``(degree, reason)`` or None if the complex is valid."""
        for n, d in self.diffs.items():
            if not d.is_well_defined():
                return n, "differential does not respect relations"
        for n in self.diffs:
            if n + 1 in self.diffs and not (self.diffs[n + 1] @ self.diffs[n]).is_zero():
                return n + 1, "d o d != 0"
        return None

    def check(self) -> "BoundedComplex":
        bad = self.validate()
        if bad:
            raise InvalidComplex(*bad)
        return self

    def __repr__(self):
        parts = []
        for n, M in self.terms.items():
            parts.append(f"{n}:{M}")
        return f"BoundedComplex({', '.join(parts)})"

    def describe(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for n in range(self.lo, self.hi + 1):
            out.append(f"[{n}] {self.term(n)}")
        return " -> ".join(out)


def stalk(M: FgModule, n: int = 0) -> BoundedComplex:
    """``M`` concentrated in degree ``n``."""
    return BoundedComplex(M.ring, {n: M}, {})


def _check_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatch("objects over different rings")


# ---------------------------------------------------------------------------
# chain maps

@dataclass(frozen=True, eq=False)
class ChainMap:
    source: BoundedComplex
    target: BoundedComplex
    components: Mapping[int, ModuleMap] = field(default_factory=dict)

    def __post_init__(self):
        _check_ring(self.source, self.target)
        comps = {}
        for n, f in self.components.items():
            n = int(n)
            src, dst = self.source.term(n), self.target.term(n)
            if not src.ngens or not dst.ngens:
                continue
            if f.domain.ngens != src.ngens or f.codomain.ngens != dst.ngens:
                raise ShapeMismatch(f"component at degree {n} has the wrong shape")
            if f.domain != src or f.codomain != dst:
                f = ModuleMap(src, dst, f.matrix)
            comps[n] = f
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    @classmethod
    def identity(cls, X: BoundedComplex) -> "ChainMap":
        return cls(X, X, {n: ModuleMap.identity(M) for n, M in X.terms.items()})

    @classmethod
    def zero(cls, X: BoundedComplex, Y: BoundedComplex) -> "ChainMap":
        return cls(X, Y, {})

    def component(self, n: int) -> ModuleMap:
        f = self.components.get(n)
        if f is not None:
            return f
        return ModuleMap.zero(self.source.term(n), self.target.term(n))

    def degrees(self) -> list[int]:
        return sorted(set(self.source.terms) | set(self.target.terms))

    def validate(self) -> Optional[tuple[int, str]]:
        for n, f in self.components.items():
            if not f.is_well_defined():
                return n, "component does not respect relations"
        X, Y = self.source, self.target
        for n in self.degrees():
            lhs = Y.diff(n) @ self.component(n)
            rhs = self.component(n + 1) @ X.diff(n)
            if not lhs.equals(rhs):
                return n, "does not commute with the differentials"
        return None

    def check(self) -> "ChainMap":
        bad = self.validate()
        if bad:
            raise InvalidComplex(*bad)
        return self

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """``(g @ f)^n = g^n o f^n``."""
        comps = {}
        for n in set(self.components) & set(other.components):
            comps[n] = self.components[n] @ other.components[n]
        return ChainMap(other.source, self.target, comps)

    def _combine(self, other: "ChainMap", sign: int) -> "ChainMap":
        comps = {}
        for n in set(self.components) | set(other.components):
            a = self.component(n)
            b = other.component(n)
            comps[n] = a + b if sign > 0 else a - b
        return ChainMap(self.source, self.target, comps)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return ChainMap(self.source, self.target, {n: -f for n, f in self.components.items()})

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components.values())


@dataclass(frozen=True, eq=False)
class Homotopy:
    """``s^n: X^n -> Y^(n-1)`` with ``f - g = d_Y s + s d_X``."""

    f: ChainMap
    g: ChainMap
    components: Mapping[int, ModuleMap]

    def component(self, n: int) -> ModuleMap:
        s = self.components.get(n)
        if s is not None:
            return s
        return ModuleMap.zero(self.f.source.term(n), self.f.target.term(n - 1))

    def verify(self) -> bool:
        X, Y = self.f.source, self.f.target
        for n in sorted(set(X.terms) | set(Y.terms)):
            lhs = self.f.component(n) - self.g.component(n)
            rhs = Y.diff(n - 1) @ self.component(n) + self.component(n + 1) @ X.diff(n)
            if not lhs.equals(rhs):
                return False
        return True


# ---------------------------------------------------------------------------
# shifts, cones, sums

def shift(X: BoundedComplex, k: int) -> BoundedComplex:
    sign = -1 if k % 2 else 1
    terms = {n - k: M for n, M in X.terms.items()}
    diffs = {n - k: (d if sign > 0 else -d) for n, d in X.diffs.items()}
    return BoundedComplex(X.ring, terms, diffs)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(shift(f.source, k), shift(f.target, k), {n - k: c for n, c in f.components.items()})


def complex_sum(X: BoundedComplex, Y: BoundedComplex):
    """``X (+) Y`` with injections and projections as chain maps."""
    _check_ring(X, Y)
    degs = sorted(set(X.terms) | set(Y.terms))
    terms, inj, proj = {}, {}, {}
    for n in degs:
        S, i, p = direct_sum(X.term(n), Y.term(n))
        terms[n] = (S, i, p)
    diffs = {}
    for n in degs:
        if n + 1 not in terms:
            continue
        S, _, _ = terms[n]
        T, _, _ = terms[n + 1]
        a, b = X.term(n).ngens, Y.term(n).ngens
        c, e = X.term(n + 1).ngens, Y.term(n + 1).ngens
        diffs[n] = block_map(S, T, {(0, 0): X.diff(n).matrix, (1, 1): Y.diff(n).matrix}, [c, e], [a, b])
    Z = BoundedComplex(X.ring, {n: t[0] for n, t in terms.items()}, diffs)
    iX = ChainMap(X, Z, {n: t[1][0] for n, t in terms.items()})
    iY = ChainMap(Y, Z, {n: t[1][1] for n, t in terms.items()})
    pX = ChainMap(Z, X, {n: t[2][0] for n, t in terms.items()})
    pY = ChainMap(Z, Y, {n: t[2][1] for n, t in terms.items()})
    return Z, (iX, iY), (pX, pY)


@dataclass(frozen=True, eq=False)
class Triangle:
    """``X --f--> Y --inc--> cone(f) --proj--> X[1]``."""

    X: BoundedComplex
    Y: BoundedComplex
    f: ChainMap
    cone: BoundedComplex
    inc: ChainMap
    proj: ChainMap


def cone(f: ChainMap) -> Triangle:
    X, Y = f.source, f.target
    degs = sorted({n - 1 for n in X.terms} | set(Y.terms))
    terms = {}
    for n in degs:
        terms[n] = direct_sum(X.term(n + 1), Y.term(n))
    diffs = {}
    for n in degs:
        if n + 1 not in terms:
            continue
        S = terms[n][0]
        T = terms[n + 1][0]
        a, b = X.term(n + 1).ngens, Y.term(n).ngens
        c, e = X.term(n + 2).ngens, Y.term(n + 1).ngens
        blocks = {
            (0, 0): (-X.diff(n + 1)).matrix,
            (1, 0): f.component(n + 1).matrix,
            (1, 1): Y.diff(n).matrix,
        }
        diffs[n] = block_map(S, T, blocks, [c, e], [a, b])
    C = BoundedComplex(X.ring, {n: t[0] for n, t in terms.items()}, diffs)
    inc = ChainMap(Y, C, {n: t[1][1] for n, t in terms.items()})
    X1 = shift(X, 1)
    proj = ChainMap(C, X1, {n: t[2][0] for n, t in terms.items()})
    return Triangle(X, Y, f, C, inc, proj)


def tensor_cyclic(X: BoundedComplex, d: int) -> BoundedComplex:
    """``R/(d) (x) X``: same generators and matrices, extra relations ``d x = 0``."""
    if d == 0:
        return X
    terms = {n: reduce_mod(M, d) for n, M in X.terms.items()}
    diffs = {n: ModuleMap(terms[n], terms[n + 1], D.matrix) for n, D in X.diffs.items()}
    return BoundedComplex(X.ring, terms, diffs)


# ---------------------------------------------------------------------------
# homology

@dataclass(frozen=True, eq=False)
class Homology:
    """``H^n(X)`` in diagonal form.

    ``representatives`` maps the generators of ``module`` to cycles of ``X^n``;
    :meth:`class_of` sends a cycle to its class.
    """

    complex: BoundedComplex
    degree: int
    module: FgModule
    representatives: ModuleMap
    _cycle_basis: tuple
    _to_module: ModuleMap

    def class_of(self, v) -> tuple:
        from .modules import hnf_coords

        c = hnf_coords(self._cycle_basis, v)
        if c is None:
            raise ValueError("vector is not a cycle")
        return tuple(self._to_module(c))


_HOMOLOGY_CACHE: dict = {}


def homology(X: BoundedComplex, n: int) -> Homology:
    key = (id(X), n)
    hit = _HOMOLOGY_CACHE.get(key)
    if hit is not None and hit.complex is X:
        return hit
    M = X.term(n)
    d_out = X.diff(n)
    d_in = X.diff(n - 1)
    K = d_out.kernel_lattice
    subs = list(M.lattice_gens) + [d_in.column(j) for j in range(d_in.domain.ngens)]
    subs = [s for s in subs if any(s)]
    H, to_h, amb = _quotient_of_lattice(X.ring, K, subs)
    if H.ngens:
        reps = ModuleMap(H, M, amb)
    else:
        reps = ModuleMap.zero(H, M)
    res = Homology(X, n, H, reps, tuple(tuple(b) for b in K), to_h)
    if len(_HOMOLOGY_CACHE) > 5000:
        _HOMOLOGY_CACHE.clear()
    _HOMOLOGY_CACHE[key] = res
    return res


def homology_at(X: BoundedComplex, n: int) -> FgModule:
    return homology(X, n).module


def is_exact_at(X: BoundedComplex, n: int) -> bool:
    """``H^n(X) = 0``, decided without building the homology presentation."""
    d_out, d_in = X.diff(n), X.diff(n - 1)
    M = X.term(n)
    if M.is_zero():
        return True
    for v in d_out.kernel_lattice:
        if not M.is_zero_element(v) and d_in.preimage(v) is None:
            return False
    return True


def homology_map(f: ChainMap, n: int) -> ModuleMap:
    HX = homology(f.source, n)
    HY = homology(f.target, n)
    cols = []
    for j in range(HX.module.ngens):
        v = HX.representatives.column(j)
        cols.append(HY.class_of(f.component(n)(v)))
    rows = tuple(tuple(c[i] for c in cols) for i in range(HY.module.ngens))
    return ModuleMap(HX.module, HY.module, rows)


# ---------------------------------------------------------------------------
# total Hom

@dataclass(frozen=True, eq=False)
class GradedHom:
    """The total Hom complex with encoders for its graded pieces."""

    source: BoundedComplex
    target: BoundedComplex
    complex: BoundedComplex
    blocks: Mapping[int, tuple]  # n -> ((i, HomSpace, offset), ...)

    def encode(self, n: int, comps: Mapping[int, ModuleMap]) -> list[int]:
        size = self.complex.term(n).ngens
        out = [0] * size
        for i, H, off in self.blocks.get(n, ()):
            f = comps.get(i)
            if f is None:
                continue
            if f.domain != H.source or f.codomain != H.target:
                f = ModuleMap(H.source, H.target, f.matrix)
            for k, c in enumerate(H.encode(f)):
                out[off + k] = c
        return out

    def decode(self, n: int, coords) -> dict[int, ModuleMap]:
        out = {}
        for i, H, off in self.blocks.get(n, ()):
            out[i] = H.decode(coords[off: off + len(H.pairs)])
        return out

    def encode_chain_map(self, f: ChainMap) -> list[int]:
        return self.encode(0, f.components)

    def decode_chain_map(self, coords) -> ChainMap:
        return ChainMap(self.source, self.target, self.decode(0, coords))

    def decode_homotopy(self, f: ChainMap, g: ChainMap, coords) -> Homotopy:
        return Homotopy(f, g, self.decode(-1, coords))


_TOTAL_HOM_CACHE: dict = {}


def total_hom(X: BoundedComplex, Y: BoundedComplex) -> GradedHom:
    _check_ring(X, Y)
    key = (id(X), id(Y))
    hit = _TOTAL_HOM_CACHE.get(key)
    if hit is not None and hit.source is X and hit.target is Y:
        return hit
    blocks = {}
    terms = {}
    if X.terms and Y.terms:
        for n in range(Y.lo - X.hi, Y.hi - X.lo + 1):
            bl = []
            factors = []
            off = 0
            for i in X.terms:
                if i + n not in Y.terms:
                    continue
                H = hom_module(X.terms[i], Y.terms[i + n])
                if not H.pairs:
                    continue
                bl.append((i, H, off))
                factors.extend(p[3] for p in H.pairs)
                off += len(H.pairs)
            if bl:
                blocks[n] = tuple(bl)
                terms[n] = diagonal_module(X.ring, factors)
    diffs = {}
    for n, bl in blocks.items():
        if n + 1 not in blocks:
            continue
        tgt = {i: (H, off) for i, H, off in blocks[n + 1]}
        sign = -1 if n % 2 else 1  # (-1)^n
        cols = []
        for i, H, off in bl:
            for k in range(len(H.pairs)):
                phi = H.decode([1 if t == k else 0 for t in range(len(H.pairs))])
                col = [0] * terms[n + 1].ngens
                # d_Y^{i+n} phi^i lands in block i
                if i in tgt:
                    H2, off2 = tgt[i]
                    for r, c in enumerate(H2.encode(Y.diff(i + n) @ phi)):
                        col[off2 + r] += c
                # -(-1)^n phi^i d_X^{i-1} lands in block i-1
                if i - 1 in tgt:
                    H2, off2 = tgt[i - 1]
                    for r, c in enumerate(H2.encode(phi @ X.diff(i - 1))):
                        col[off2 + r] -= sign * c
                cols.append(col)
        rows = tuple(tuple(c[r] for c in cols) for r in range(terms[n + 1].ngens))
        diffs[n] = ModuleMap(terms[n], terms[n + 1], rows)
    G = GradedHom(X, Y, BoundedComplex(X.ring, terms, diffs), blocks)
    if len(_TOTAL_HOM_CACHE) > 2000:
        _TOTAL_HOM_CACHE.clear()
    _TOTAL_HOM_CACHE[key] = G
    return G


def null_homotopy(f: ChainMap, g: Optional[ChainMap] = None) -> Optional[Homotopy]:
    """A homotopy from ``f`` to ``g`` (default 0), or None when none exists."""
    if g is None:
        g = ChainMap.zero(f.source, f.target)
    diff = f - g
    G = total_hom(f.source, f.target)
    target = G.encode(0, diff.components)
    if not any(target):
        return Homotopy(f, g, {})
    C = G.complex
    if not C.term(0).ngens or C.term(0).is_zero_element(target):
        return Homotopy(f, g, {})
    x = C.diff(-1).preimage(target)
    if x is None:
        return None
    return G.decode_homotopy(f, g, x)


def is_contractible(X: BoundedComplex) -> bool:
    return null_homotopy(ChainMap.identity(X)) is not None


# ---------------------------------------------------------------------------
# truncations

@dataclass(frozen=True, eq=False)
class Truncation:
    complex: BoundedComplex
    comparison: ChainMap
    certificate: object  # purity profile of the comparison's cone


def truncate(X: BoundedComplex, m: int, mode: str = "kernel_style", family_cap: Optional[int] = None) -> Truncation:
    """Replace the part of ``X`` above (kernel style) or below (cokernel style) ``m``.

    kernel style: ``... -> X^(m-1) -> Ker d^m -> 0`` mapping into ``X``;
    needs ``X`` pure exact in every degree ``>= m + 1``.
    cokernel style: ``0 -> Coker d^(m-1) -> X^(m+1) -> ...`` receiving ``X``;
    needs ``X`` pure exact in every degree ``<= m - 1``.
    """
    from .modules import map_subquotients
    from .purity import is_pure_quasi_iso, purity_profile

    prof = purity_profile(X, family_cap=family_cap)
    if mode == "kernel_style":
        bad = [n for n in prof.failing_degrees() if n >= m + 1]
        if bad:
            raise PrereqPurityFails(min(bad))
        sq = map_subquotients(X.diff(m), check=False)
        K, inc = sq.kernel, sq.kernel_inclusion
        terms = {n: M for n, M in X.terms.items() if n < m}
        terms[m] = K
        diffs = {n: d for n, d in X.diffs.items() if n < m - 1}
        if m - 1 in X.terms and K.ngens:
            d = X.diff(m - 1)
            # factor d^(m-1) through the kernel inclusion
            lift = [_lift_through(inc, d.column(j)) for j in range(d.domain.ngens)]
            diffs[m - 1] = ModuleMap(X.term(m - 1), K, tuple(tuple(c[i] for c in lift) for i in range(K.ngens)))
        Xt = BoundedComplex(X.ring, terms, diffs)
        comps = {n: ModuleMap.identity(M) for n, M in X.terms.items() if n < m}
        comps[m] = inc
        comp = ChainMap(Xt, X, comps)
    elif mode == "cokernel_style":
        bad = [n for n in prof.failing_degrees() if n <= m - 1]
        if bad:
            raise PrereqPurityFails(max(bad))
        sq = map_subquotients(X.diff(m - 1), check=False)
        C, proj = sq.cokernel, sq.cokernel_projection
        terms = {n: M for n, M in X.terms.items() if n > m}
        terms[m] = C
        diffs = {n: d for n, d in X.diffs.items() if n > m}
        if m + 1 in X.terms and C.ngens:
            d = X.diff(m)
            # d^m kills the image of d^(m-1), so it factors through the projection
            sec = _section_matrix(proj)
            diffs[m] = d @ sec
        Xt = BoundedComplex(X.ring, terms, diffs)
        comps = {n: ModuleMap.identity(M) for n, M in X.terms.items() if n > m}
        comps[m] = proj
        comp = ChainMap(X, Xt, comps)
    else:
        raise ValueError(f"unknown truncation mode {mode!r}")
    Xt.check()
    comp.check()
    cert = is_pure_quasi_iso(comp, family_cap=family_cap)
    return Truncation(Xt, comp, cert)


def _lift_through(inc: ModuleMap, v) -> list[int]:
    x = inc.preimage(v)
    if x is None:
        raise ValueError("vector does not lie in the image")
    return x


def _section_matrix(proj: ModuleMap) -> ModuleMap:
    """Set-theoretic section of a surjection on generators, as a map of generators."""
    C = proj.codomain
    cols = [proj.preimage(C.generator(j)) for j in range(C.ngens)]
    return ModuleMap(C, proj.domain, tuple(tuple(c[i] for c in cols) for i in range(proj.domain.ngens)))
