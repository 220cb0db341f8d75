"""Finitely generated modules over Z and Z/m.

A module is ``R^g`` modulo the row span of its relation matrix.  Internally
everything is a Z-lattice computation: a Z/m-module is ``Z^g`` modulo its
relations together with ``m`` times the identity.  Every module carries a
cached primary decomposition ``M = (+) Z/p^k (+) Z^r`` with explicit
coordinate matrices in both directions; Hom, tensor and the subquotient
constructions are all done in those coordinates.

Maps act on column vectors: ``matrix`` has one row per codomain generator
and one column per domain generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Optional, Sequence

from .errors import IllFormedMap, NotExact, RingMismatch, ShapeMismatch
from .ring import BaseRing, _snf, diagonal_of, hermite_basis, identity, matmul, matvec

__all__ = [
    "FgModule",
    "ModuleMap",
    "Element",
    "CanonicalForm",
    "HomSpace",
    "TensorProduct",
    "Subquotients",
    "ShortExactSequence",
    "SplitResult",
    "PurityClass",
    "cyclic",
    "free",
    "zero_module",
    "direct_sum",
    "canonical_form",
    "hom_module",
    "tensor_module",
    "tensor_map",
    "map_subquotients",
    "split_analysis",
    "purity_class",
    "reduce_mod",
]


def prime_power_parts(n: int) -> list[int]:
    """Prime power factors of ``n > 1`` in increasing prime order."""
    parts = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            parts.append(q)
        p += 1 if p == 2 else 2
    if n > 1:
        parts.append(n)
    return parts


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


class _Solver:
    """Factorised integer system ``A x = b`` reusable for many right hand sides."""

    def __init__(self, rows, ncols):
        self.m = len(rows)
        self.n = ncols
        if self.m == 0:
            self.U, self.diag, self.V, self.rank = [], [], identity(ncols), 0
            return
        U, S, V, _ = _snf(rows, self.m, ncols)
        self.U, self.V = U, V
        self.diag = diagonal_of(S, self.m, ncols)
        self.rank = sum(1 for d in self.diag if d)

    def solve(self, b) -> Optional[list[int]]:
        if self.m == 0:
            return [0] * self.n
        ub = matvec(self.U, b)
        y = [0] * self.n
        for i in range(self.m):
            if i < self.rank:
                q, r = divmod(ub[i], self.diag[i])
                if r:
                    return None
                y[i] = q
            elif ub[i]:
                return None
        return matvec(self.V, y)

    def kernel(self) -> list[list[int]]:
        n = self.n
        return [[self.V[r][c] for r in range(n)] for c in range(self.rank, n)]


def hnf_coords(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[list[int]]:
    """Coordinates of ``v`` in a row Hermite basis, or None if ``v`` is outside."""
    v = list(v)
    coords = []
    for b in basis:
        c = next(i for i, x in enumerate(b) if x)
        q, r = divmod(v[c], b[c])
        if r:
            return None
        coords.append(q)
        if q:
            for k in range(c, len(v)):
                v[k] -= q * b[k]
    if any(v):
        return None
    return coords


@dataclass(frozen=True)
class CanonicalForm:
    free_rank: int
    torsion: tuple

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class _Decomposition:
    factors: tuple          # prime powers, then 0 for each free summand
    to_canon: tuple         # k x g
    from_canon: tuple       # g x k


@dataclass(frozen=True)
class FgModule:
    """``R^ngens`` modulo the rows of ``relations``."""

    ring: BaseRing
    ngens: int
    relations: tuple = ()

    def __post_init__(self):
        rels = []
        for r in self.relations:
            if len(r) != self.ngens:
                raise ShapeMismatch(f"relation {list(r)} does not have {self.ngens} entries")
            row = tuple(self.ring.reduce(int(x)) for x in r)
            if any(row):
                rels.append(row)
        object.__setattr__(self, "relations", tuple(rels))

    # -- lattice data -------------------------------------------------------

    @cached_property
    def lattice_gens(self) -> list[list[int]]:
        """Generators of the relation lattice in ``Z^ngens``."""
        rels = [list(r) for r in self.relations]
        m = self.ring.modulus
        if m:
            rels += [[m if i == j else 0 for j in range(self.ngens)] for i in range(self.ngens)]
        return rels

    @cached_property
    def _decomp(self) -> _Decomposition:
        if all(sum(1 for x in r if x) == 1 for r in self.relations):
            return self._diagonal_decomp()
        g = self.ngens
        rels = self.lattice_gens
        if not rels:
            return _Decomposition(tuple([0] * g), tuple(map(tuple, identity(g))), tuple(map(tuple, identity(g))))
        _, S, V, Vi = _snf(rels, len(rels), g)
        diag = [S[i][i] if i < len(rels) else 0 for i in range(g)]
        parts = []  # (factor, row of to_canon, column of from_canon)
        free_parts = []
        for i, d in enumerate(diag):
            if d == 1:
                continue
            prow = [V[r][i] for r in range(g)]
            qcol = [Vi[i][r] for r in range(g)]
            if d == 0:
                free_parts.append((0, prow, qcol))
                continue
            for q in prime_power_parts(d):
                cof = d // q
                u = pow(cof, -1, q)
                parts.append((q, [x % q for x in prow], [cof * u * x for x in qcol]))
        parts.sort(key=lambda t: t[0])
        parts += free_parts
        factors = tuple(t[0] for t in parts)
        to_canon = tuple(tuple(t[1]) for t in parts)
        from_canon = tuple(tuple(t[2][r] for t in parts) for r in range(g))
        return _Decomposition(factors, to_canon, from_canon)

    def _diagonal_decomp(self) -> _Decomposition:
        g = self.ngens
        col = [self.ring.modulus] * g
        for r in self.relations:
            j = next(i for i, x in enumerate(r) if x)
            col[j] = gcd(col[j], r[j])
        parts, free_parts = [], []
        for j, d in enumerate(col):
            if d == 1:
                continue
            if d == 0:
                free_parts.append((0, j, 1))
                continue
            for q in prime_power_parts(d):
                cof = d // q
                parts.append((q, j, cof * pow(cof, -1, q)))
        parts.sort(key=lambda t: t[0])
        parts += free_parts
        to_canon = tuple(tuple(1 if c == j else 0 for c in range(g)) for _, j, _ in parts)
        from_canon = tuple(tuple(s if j == r else 0 for _, j, s in parts) for r in range(g))
        return _Decomposition(tuple(t[0] for t in parts), to_canon, from_canon)

    @property
    def factors(self) -> tuple:
        return self._decomp.factors

    @cached_property
    def canonical(self) -> CanonicalForm:
        f = self.factors
        return CanonicalForm(free_rank=sum(1 for d in f if d == 0), torsion=tuple(d for d in f if d))

    def is_zero(self) -> bool:
        return not self.factors

    def is_finite(self) -> bool:
        return self.canonical.free_rank == 0

    def order(self) -> Optional[int]:
        return self.canonical.order()

    def exponent(self) -> int:
        """Least common multiple of the torsion factors (0 if there is free rank)."""
        e = 1
        for d in self.factors:
            e = _lcm(e, d) if d else 0
            if e == 0:
                return 0
        return e

    def torsion_exponent(self) -> int:
        e = 1
        for d in self.factors:
            if d:
                e = _lcm(e, d)
        return e

    def is_isomorphic(self, other: "FgModule") -> bool:
        return self.ring == other.ring and self.canonical == other.canonical

    # -- elements -------------------------------------------------------------

    def coords(self, x: Sequence[int]) -> tuple:
        """Canonical coordinates of the element with generator coefficients ``x``."""
        out = []
        for row, d in zip(self._decomp.to_canon, self._decomp.factors):
            c = sum(a * b for a, b in zip(row, x) if a)
            out.append(c % d if d else c)
        return tuple(out)

    def from_coords(self, c: Sequence[int]) -> list[int]:
        return matvec(self._decomp.from_canon, c) if self.ngens else []

    def is_zero_element(self, x: Sequence[int]) -> bool:
        return not any(self.coords(x))

    def element(self, x: Sequence[int]) -> "Element":
        return Element(self, tuple(x))

    def generator(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(self.ngens))

    def simplified(self) -> tuple["FgModule", "ModuleMap", "ModuleMap"]:
        """Diagonal presentation of ``self`` with mutually inverse isomorphisms."""
        f = self.factors
        S = FgModule(self.ring, len(f), tuple(tuple(d if i == j else 0 for j in range(len(f))) for i, d in enumerate(f) if d))
        to_s = ModuleMap(self, S, self._decomp.to_canon)
        from_s = ModuleMap(S, self, self._decomp.from_canon)
        return S, to_s, from_s

    def __str__(self):
        return str(self.canonical)

    def to_json(self):
        return {"generators": self.ngens, "relations": [list(r) for r in self.relations]}


def cyclic(ring: BaseRing, d: int) -> FgModule:
    """``R/(d)``; ``d == 0`` gives the free module of rank one."""
    return FgModule(ring, 1, ((d,),) if d else ())


def free(ring: BaseRing, rank: int) -> FgModule:
    return FgModule(ring, rank, ())


def zero_module(ring: BaseRing) -> FgModule:
    return FgModule(ring, 0, ())


def diagonal_module(ring: BaseRing, factors: Sequence[int]) -> FgModule:
    k = len(factors)
    return FgModule(ring, k, tuple(tuple(d if i == j else 0 for j in range(k)) for i, d in enumerate(factors) if d))


@dataclass(frozen=True)
class Element:
    module: FgModule
    coords: tuple

    def __eq__(self, other):
        if not isinstance(other, Element) or other.module != self.module:
            return NotImplemented
        return self.module.is_zero_element([a - b for a, b in zip(self.coords, other.coords)])

    def __hash__(self):
        return hash((self.module, self.module.coords(self.coords)))

    def __add__(self, other):
        return Element(self.module, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element(self.module, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return self.module.is_zero_element(self.coords)


# ---------------------------------------------------------------------------
# maps

def _check_same_ring(*mods):
    rings = {m.ring for m in mods}
    if len(rings) > 1:
        raise RingMismatch(f"modules over different rings: {sorted(map(str, rings))}")


@dataclass(frozen=True, eq=False)
class ModuleMap:
    domain: FgModule
    codomain: FgModule
    matrix: tuple

    def __post_init__(self):
        _check_same_ring(self.domain, self.codomain)
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        if len(rows) != self.codomain.ngens or any(len(r) != self.domain.ngens for r in rows):
            raise ShapeMismatch(
                f"map matrix must be {self.codomain.ngens}x{self.domain.ngens}"
            )
        m = self.domain.ring.modulus
        if m:
            rows = tuple(tuple(x % m for x in r) for r in rows)
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, M: FgModule) -> "ModuleMap":
        return cls(M, M, tuple(map(tuple, identity(M.ngens))))

    @classmethod
    def zero(cls, M: FgModule, N: FgModule) -> "ModuleMap":
        return cls(M, N, tuple((0,) * M.ngens for _ in range(N.ngens)))

    @classmethod
    def scalar(cls, M: FgModule, c: int) -> "ModuleMap":
        return cls(M, M, tuple(tuple(c if i == j else 0 for j in range(M.ngens)) for i in range(M.ngens)))

    @property
    def ring(self) -> BaseRing:
        return self.domain.ring

    def __call__(self, x: Sequence[int]) -> list[int]:
        return matvec(self.matrix, x)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition: ``(g @ f)(x) == g(f(x))``."""
        if other.codomain.ngens != self.domain.ngens:
            raise ShapeMismatch("composable maps must share a generator count")
        if self.domain.ngens == 0:
            return ModuleMap.zero(other.domain, self.codomain)
        return ModuleMap(other.domain, self.codomain, matmul(self.matrix, other.matrix, inner=self.domain.ngens))

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.domain, self.codomain,
                         tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def __neg__(self) -> "ModuleMap":
        return ModuleMap(self.domain, self.codomain, tuple(tuple(-a for a in r) for r in self.matrix))

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return self + (-other)

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.domain, self.codomain, tuple(tuple(c * a for a in r) for r in self.matrix))

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.matrix]

    def is_well_defined(self) -> bool:
        return all(self.codomain.is_zero_element(self(r)) for r in self.domain.relations)

    def check(self) -> "ModuleMap":
        for r in self.domain.relations:
            if not self.codomain.is_zero_element(self(r)):
                raise IllFormedMap(f"relation {list(r)} is sent to a nonzero element")
        return self

    def is_zero(self) -> bool:
        return all(self.codomain.is_zero_element(self.column(j)) for j in range(self.domain.ngens))

    def equals(self, other: "ModuleMap") -> bool:
        return (self - other).is_zero()

    @cached_property
    def _solver(self):
        N = self.codomain
        dec = N._decomp
        G = matmul(dec.to_canon, self.matrix, inner=N.ngens) if dec.factors else []
        tors = [i for i, d in enumerate(dec.factors) if d]
        rows = [list(G[i]) + [dec.factors[i] if i == t else 0 for t in tors] for i in range(len(dec.factors))]
        return _Solver(rows, self.domain.ngens + len(tors))

    def preimage(self, y: Sequence[int]) -> Optional[list[int]]:
        """Some ``x`` with ``self(x) == y`` in the codomain, or None."""
        if not self.codomain.factors:
            return [0] * self.domain.ngens
        rhs = matvec(self.codomain._decomp.to_canon, y)
        sol = self._solver.solve(rhs)
        return None if sol is None else sol[: self.domain.ngens]

    @cached_property
    def kernel_lattice(self) -> list[list[int]]:
        """Hermite basis of ``{x in Z^a : self(x) = 0 in the codomain}``."""
        a = self.domain.ngens
        if not self.codomain.factors:
            return identity(a)
        gens = [v[:a] for v in self._solver.kernel()]
        return hermite_basis(gens + self.domain.lattice_gens, a)

    def is_injective(self) -> bool:
        M = self.domain
        return all(M.is_zero_element(v) for v in self.kernel_lattice)

    def is_surjective(self) -> bool:
        N = self.codomain
        return all(self.preimage(N.from_coords([1 if i == j else 0 for i in range(len(N.factors))])) is not None
                   for j in range(len(N.factors)))

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> "ModuleMap":
        """Inverse of an isomorphism (raises ValueError otherwise)."""
        if not self.is_isomorphism():
            raise ValueError("map is not an isomorphism")
        N = self.codomain
        cols = [self.preimage(N.generator(j)) for j in range(N.ngens)]
        return ModuleMap(N, self.domain, tuple(tuple(c[i] for c in cols) for i in range(self.domain.ngens)))

    def __repr__(self):
        return f"ModuleMap({self.domain} -> {self.codomain}, {[list(r) for r in self.matrix]})"

    def to_json(self):
        return [list(r) for r in self.matrix]


def block_map(domain: FgModule, codomain: FgModule, blocks, row_sizes, col_sizes) -> ModuleMap:
    """Assemble a map between direct sums from a dict ``{(i, j): matrix}``."""
    rows = [[0] * sum(col_sizes) for _ in range(sum(row_sizes))]
    roff = [sum(row_sizes[:i]) for i in range(len(row_sizes))]
    coff = [sum(col_sizes[:j]) for j in range(len(col_sizes))]
    for (i, j), mat in blocks.items():
        for r, row in enumerate(mat):
            target = rows[roff[i] + r]
            for c, x in enumerate(row):
                if x:
                    target[coff[j] + c] += x
    return ModuleMap(domain, codomain, rows)


def direct_sum(*modules: FgModule) -> tuple[FgModule, list[ModuleMap], list[ModuleMap]]:
    """Direct sum with its canonical injections and projections."""
    if not modules:
        raise ValueError("direct_sum needs at least one summand")
    _check_same_ring(*modules)
    ring = modules[0].ring
    total = sum(M.ngens for M in modules)
    rels = []
    off = 0
    for M in modules:
        for r in M.relations:
            rels.append(tuple([0] * off + list(r) + [0] * (total - off - M.ngens)))
        off += M.ngens
    S = FgModule(ring, total, tuple(rels))
    inj, proj = [], []
    off = 0
    for M in modules:
        inj.append(ModuleMap(M, S, tuple(tuple(1 if r == off + c else 0 for c in range(M.ngens)) for r in range(total))))
        proj.append(ModuleMap(S, M, tuple(tuple(1 if c == off + r else 0 for c in range(total)) for r in range(M.ngens))))
        off += M.ngens
    return S, inj, proj


def reduce_mod(M: FgModule, d: int) -> FgModule:
    """``M / dM``, which is ``R/(d) (x) M``; same generators, extra relations."""
    if d == 0:
        return M
    extra = tuple(tuple(d if i == j else 0 for j in range(M.ngens)) for i in range(M.ngens))
    return FgModule(M.ring, M.ngens, M.relations + extra)


def canonical_form(M: FgModule) -> tuple[CanonicalForm, ModuleMap, ModuleMap]:
    """Canonical form and mutually inverse isomorphisms ``M -> C`` and ``C -> M``."""
    C, to_c, from_c = M.simplified()
    return M.canonical, to_c, from_c


# ---------------------------------------------------------------------------
# Hom and tensor

@dataclass(frozen=True, eq=False)
class HomSpace:
    """``Hom(source, target)`` as a module in diagonal form.

    Generator ``k`` is the map sending canonical summand ``i`` of the source to
    ``scale`` times canonical summand ``j`` of the target.
    """

    source: FgModule
    target: FgModule
    module: FgModule
    pairs: tuple  # (i, j, scale, order)

    def decode(self, coords: Sequence[int]) -> ModuleMap:
        M, N = self.source, self.target
        kM, kN = len(M.factors), len(N.factors)
        C = [[0] * kM for _ in range(kN)]
        for (i, j, scale, _), c in zip(self.pairs, coords):
            if c:
                C[j][i] += c * scale
        if not kM or not kN:
            return ModuleMap.zero(M, N)
        F = matmul(matmul(N._decomp.from_canon, C, inner=kN), M._decomp.to_canon, inner=kM)
        return ModuleMap(M, N, F)

    def encode(self, f: ModuleMap) -> tuple:
        M, N = self.source, self.target
        kM, kN = len(M.factors), len(N.factors)
        if not self.pairs:
            return ()
        C = matmul(matmul(N._decomp.to_canon, f.matrix, inner=N.ngens), M._decomp.from_canon, inner=M.ngens)
        out = []
        for i, j, scale, order in self.pairs:
            c = C[j][i]
            e = N.factors[j]
            if e:
                c %= e
            q, r = divmod(c, scale)
            if r:
                raise IllFormedMap("map is not well defined on the canonical summands")
            out.append(q % order if order else q)
        return tuple(out)

    def basis(self) -> list[ModuleMap]:
        n = len(self.pairs)
        return [self.decode([1 if k == t else 0 for t in range(n)]) for k in range(n)]

    def postcompose_matrix(self, g: ModuleMap, other: "HomSpace") -> list[list[int]]:
        """Matrix of ``phi -> g o phi`` from this space to ``other``."""
        cols = [other.encode(g @ phi) for phi in self.basis()]
        return [[c[r] for c in cols] for r in range(len(other.pairs))]

    def precompose_matrix(self, h: ModuleMap, other: "HomSpace") -> list[list[int]]:
        """Matrix of ``phi -> phi o h`` from this space to ``other``."""
        cols = [other.encode(phi @ h) for phi in self.basis()]
        return [[c[r] for c in cols] for r in range(len(other.pairs))]


_HOM_CACHE: dict = {}


def hom_module(M: FgModule, N: FgModule) -> HomSpace:
    """``Hom(M, N)`` with decode/encode between coordinates and maps."""
    _check_same_ring(M, N)
    key = (M, N)
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit
    pairs = []
    for i, d in enumerate(M.factors):
        for j, e in enumerate(N.factors):
            if d == 0:
                pairs.append((i, j, 1, e))
            elif e == 0:
                continue
            else:
                g = gcd(d, e)
                if g > 1:
                    pairs.append((i, j, e // g, g))
    H = diagonal_module(M.ring, [p[3] for p in pairs])
    space = HomSpace(M, N, H, tuple(pairs))
    if len(_HOM_CACHE) > 20000:
        _HOM_CACHE.clear()
    _HOM_CACHE[key] = space
    return space


@dataclass(frozen=True, eq=False)
class TensorProduct:
    left: FgModule
    right: FgModule
    module: FgModule
    pairs: tuple  # (i, j, order)

    def bilinear(self, x: Sequence[int], y: Sequence[int]) -> tuple:
        """Coordinates of ``x (x) y`` on the generators of ``module``."""
        a = self.left.coords(x)
        b = self.right.coords(y)
        return tuple((a[i] * b[j]) % o if o else a[i] * b[j] for i, j, o in self.pairs)


def tensor_module(M: FgModule, N: FgModule) -> TensorProduct:
    _check_same_ring(M, N)
    pairs = []
    for i, d in enumerate(M.factors):
        for j, e in enumerate(N.factors):
            o = e if d == 0 else d if e == 0 else gcd(d, e)
            if o != 1:
                pairs.append((i, j, o))
    return TensorProduct(M, N, diagonal_module(M.ring, [p[2] for p in pairs]), tuple(pairs))


def tensor_map(f: ModuleMap, g: ModuleMap, src: Optional[TensorProduct] = None,
               dst: Optional[TensorProduct] = None) -> ModuleMap:
    """``f (x) g`` between the tensor products of domains and codomains."""
    src = src or tensor_module(f.domain, g.domain)
    dst = dst or tensor_module(f.codomain, g.codomain)
    QM = f.domain._decomp.from_canon
    QN = g.domain._decomp.from_canon
    cols = []
    for i, j, _ in src.pairs:
        x = f([row[i] for row in QM])
        y = g([row[j] for row in QN])
        cols.append(dst.bilinear(x, y))
    return ModuleMap(src.module, dst.module, tuple(tuple(c[r] for c in cols) for r in range(len(dst.pairs))))


# ---------------------------------------------------------------------------
# kernels, images, cokernels

def _quotient_of_lattice(ring: BaseRing, basis: Sequence[Sequence[int]], sub_gens: Sequence[Sequence[int]]):
    """``span(basis) / span(sub_gens)`` in diagonal form.

    Returns the module, the matrix taking its generators to ambient vectors,
    and a function sending an ambient vector of the big lattice to canonical
    coordinates.
    """
    rels = []
    for v in sub_gens:
        c = hnf_coords(basis, v)
        if c is None:
            raise ValueError("sub lattice is not contained in the lattice")
        rels.append(c)
    Q = FgModule(ring, len(basis), tuple(tuple(r) for r in rels))
    S, to_s, from_s = Q.simplified()
    ambient = matmul([list(col) for col in zip(*basis)], from_s.matrix, inner=len(basis)) if basis else []
    return S, to_s, ambient


@dataclass(frozen=True, eq=False)
class Subquotients:
    kernel: FgModule
    kernel_inclusion: ModuleMap
    image: FgModule
    coimage_projection: ModuleMap   # domain -> image
    image_inclusion: ModuleMap      # image -> codomain
    cokernel: FgModule
    cokernel_projection: ModuleMap


def map_subquotients(f: ModuleMap, check: bool = True) -> Subquotients:
    """Kernel, image and cokernel of ``f`` with their structure maps."""
    if check:
        f.check()
    M, N = f.domain, f.codomain
    ring = M.ring
    K = f.kernel_lattice
    a = M.ngens
    # kernel = K / L_M
    ker, _, amb = _quotient_of_lattice(ring, K, M.lattice_gens)
    if ker.ngens:
        kinc = ModuleMap(ker, M, amb)
    else:
        kinc = ModuleMap.zero(ker, M)
    # image = Z^a / K
    im_pres = FgModule(ring, a, tuple(tuple(v) for v in K))
    im, to_im, from_im = im_pres.simplified()
    coim = ModuleMap(M, im, to_im.matrix)
    iinc = f @ ModuleMap(im, M, from_im.matrix)
    # cokernel = N / (L_N + f(Z^a))
    cols = [tuple(f.column(j)) for j in range(a)]
    ck_pres = FgModule(ring, N.ngens, N.relations + tuple(cols))
    ck, to_ck, _ = ck_pres.simplified()
    proj = ModuleMap(N, ck, to_ck.matrix)
    return Subquotients(ker, kinc, im, coim, iinc, ck, proj)


# ---------------------------------------------------------------------------
# short exact sequences

@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    """``0 -> A --f--> B --g--> C -> 0``."""

    f: ModuleMap
    g: ModuleMap

    @property
    def A(self):
        return self.f.domain

    @property
    def B(self):
        return self.f.codomain

    @property
    def C(self):
        return self.g.codomain

    def exactness_failure(self) -> Optional[str]:
        if not (self.g @ self.f).is_zero():
            return "g o f != 0"
        if not self.f.is_injective():
            return "f is not injective"
        if not self.g.is_surjective():
            return "g is not surjective"
        for v in self.g.kernel_lattice:
            if self.f.preimage(v) is None:
                return "ker g is larger than im f"
        return None

    def check_exact(self) -> "ShortExactSequence":
        reason = self.exactness_failure()
        if reason:
            raise NotExact(reason)
        return self

    def modules(self):
        return (self.A, self.B, self.C)


@dataclass(frozen=True, eq=False)
class SplitResult:
    split: bool
    retraction: Optional[ModuleMap] = None
    section: Optional[ModuleMap] = None
    obstruction: Optional[str] = None


def split_analysis(seq: ShortExactSequence, check: bool = True) -> SplitResult:
    """Decide whether the sequence splits by solving for a retraction of ``f``."""
    if check:
        seq.check_exact()
    A, B, C = seq.modules()
    f, g = seq.f, seq.g
    HBA = hom_module(B, A)
    HAA = hom_module(A, A)
    phi = HBA.precompose_matrix(f, HAA)
    restrict = ModuleMap(HBA.module, HAA.module, phi if phi else tuple(() for _ in range(HAA.module.ngens)))
    target = HAA.encode(ModuleMap.identity(A))
    x = restrict.preimage(target)
    if x is None:
        return SplitResult(False, obstruction="identity of A is not the restriction of any map B -> A")
    r = HBA.decode(x)
    cols = []
    for j in range(C.ngens):
        b = g.preimage(C.generator(j))
        fb = f(r(b))
        cols.append([bi - ci for bi, ci in zip(b, fb)])
    s = ModuleMap(C, B, tuple(tuple(c[i] for c in cols) for i in range(B.ngens)))
    assert (r @ f).equals(ModuleMap.identity(A))
    assert (g @ s).equals(ModuleMap.identity(C))
    return SplitResult(True, retraction=r, section=s)


@dataclass(frozen=True)
class PurityClass:
    pure_projective: bool
    pure_injective: Optional[bool]
    justification: str


def purity_class(M: FgModule) -> PurityClass:
    """Pure projectivity / injectivity of a finitely generated module.

    Finitely generated modules over Z and Z/m are finitely presented, hence
    pure projective.  Finite modules are pure injective; a module with a free
    Z summand is not (the certificate lives in :mod:`purederive.tower`).
    """
    if M.is_finite():
        return PurityClass(True, True, "finitely-presented; finite")
    return PurityClass(True, False, "finitely-presented; free Z summand (Pext^1(Q, Z) != 0)")
