"""Exact arithmetic and linear algebra over Z and Z/m.

All matrices are plain Python integers (arbitrary precision).  The low level
helpers work on lists of rows; :class:`RingMatrix` is the immutable public
wrapper that knows which ring its entries live in.

Smith normal form over Z/m is obtained from the integer Smith form of a lift:
unimodular integer transforms stay invertible after reduction, and the
diagonal is rescaled by units so every entry becomes ``gcd(d, m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .errors import RingMismatch, ShapeMismatch

__all__ = [
    "BaseRing",
    "ZZ",
    "RingMatrix",
    "SmithForm",
    "SolveResult",
    "smith_normal_form",
    "solve_linear",
    "determinant",
]


@dataclass(frozen=True)
class BaseRing:
    """The integers (``modulus == 0``) or the integers modulo ``modulus``."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"modulus must be 0 or >= 2, got {self.modulus}")

    @classmethod
    def integers(cls) -> "BaseRing":
        return cls(0)

    @classmethod
    def mod(cls, m: int) -> "BaseRing":
        if m < 2:
            raise ValueError(f"Z/m needs m >= 2, got {m}")
        return cls(m)

    @property
    def is_integers(self) -> bool:
        return self.modulus == 0

    @property
    def is_finite(self) -> bool:
        return self.modulus != 0

    def reduce(self, x: int) -> int:
        return x % self.modulus if self.modulus else x

    def canonical_associate(self, x: int) -> int:
        """Nonnegative representative over Z; ``gcd(x, m)`` over Z/m."""
        if not self.modulus:
            return abs(x)
        return gcd(x, self.modulus) % self.modulus

    def divides(self, a: int, b: int) -> bool:
        a, b = self.canonical_associate(a), self.canonical_associate(b)
        if a == 0:
            return b == 0
        return b % a == 0

    def unit_normalizer(self, x: int) -> int:
        """A unit ``u`` with ``u * x`` equal to the canonical associate of ``x``."""
        if not self.modulus:
            return -1 if x < 0 else 1
        return _unit_to_gcd(x, self.modulus)

    def __str__(self):
        return f"Z/{self.modulus}" if self.modulus else "Z"

    def to_json(self) -> dict:
        if self.modulus:
            return {"kind": "Z/m", "m": self.modulus}
        return {"kind": "Z"}

    @classmethod
    def from_json(cls, data) -> "BaseRing":
        if isinstance(data, str):
            data = {"kind": "Z"} if data == "Z" else {"kind": "Z/m", "m": int(data.split("/")[1])}
        kind = data.get("kind")
        if kind == "Z":
            return cls(0)
        if kind == "Z/m":
            return cls.mod(int(data["m"]))
        raise ValueError(f"unknown ring kind {kind!r}")


ZZ = BaseRing(0)


def _unit_to_gcd(x: int, m: int) -> int:
    x %= m
    g = gcd(x, m)
    if g == m:
        return 1
    e, mm = x // g, m // g
    u = pow(e, -1, mm) if mm > 1 else 0
    while gcd(u, m) != 1:
        u += mm
    return u % m


# ---------------------------------------------------------------------------
# list-of-rows helpers

def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: Optional[int] = None):
    """Product of an ``r x k`` and a ``k x c`` matrix given as rows.

    ``inner`` must be passed when ``a`` has no rows and ``b`` might be empty too.
    """
    if not a:
        return []
    k = len(a[0]) if inner is None else inner
    if k == 0:
        cols = len(b[0]) if b else 0
        return [[0] * cols for _ in a]
    cols = len(b[0])
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


def transpose(a: Sequence[Sequence[int]], ncols: Optional[int] = None) -> list[list[int]]:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def _snf(a: Sequence[Sequence[int]], m: int, n: int):
    """Integer Smith form: returns ``U, S, V, Vinv`` with ``U a V = S``.

    ``S`` is diagonal with nonnegative entries d1 | d2 | ... followed by zeros.
    """
    S = [list(row) for row in a]
    U = identity(m)
    V = identity(n)
    Vi = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rs, rd = S[src], S[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        us, ud = U[src], U[dst]
        for k in range(m):
            if us[k]:
                ud[k] += q * us[k]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in S:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]
        vd, vs = Vi[dst], Vi[src]
        for k in range(n):
            if vd[k]:
                vs[k] -= q * vd[k]

    t = 0
    while t < min(m, n):
        best, best_abs = None, 0
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best_abs):
                    best, best_abs = (i, j), abs(v)
                    if best_abs == 1:
                        break
            if best_abs == 1:
                break
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    if S[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    if S[t][j]:
                        dirty = True
            if dirty:
                bi, bj, bv = t, t, abs(p)
                for i in range(t + 1, m):
                    if S[i][t] and abs(S[i][t]) < bv:
                        bi, bj, bv = i, t, abs(S[i][t])
                for j in range(t + 1, n):
                    if S[t][j] and abs(S[t][j]) < bv:
                        bi, bj, bv = t, j, abs(S[t][j])
                if bi != t:
                    swap_rows(t, bi)
                elif bj != t:
                    swap_cols(t, bj)
                continue
            bad = None
            for i in range(t + 1, m):
                row = S[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, S, V, Vi


def diagonal_of(S, m: int, n: int) -> list[int]:
    return [S[i][i] for i in range(min(m, n))]


def integer_kernel(a: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A basis of ``{x in Z^ncols : a x = 0}`` as a list of vectors."""
    m = len(a)
    if m == 0:
        return identity(ncols)
    _, S, V, _ = _snf(a, m, ncols)
    rank = sum(1 for d in diagonal_of(S, m, ncols) if d)
    return [[V[r][c] for r in range(ncols)] for c in range(rank, ncols)]


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int):
    """Solve ``a x = b`` over Z.

    Returns ``(x, kernel_basis, obstruction)`` where ``x`` is None when no
    integer solution exists and ``obstruction`` then holds the transformed
    right hand side residues that cannot be matched.
    """
    m = len(a)
    if m == 0:
        return [0] * ncols, identity(ncols), None
    U, S, V, _ = _snf(a, m, ncols)
    ub = matvec(U, b)
    diag = diagonal_of(S, m, ncols)
    rank = sum(1 for d in diag if d)
    y = [0] * ncols
    residue = []
    ok = True
    for i in range(m):
        if i < rank:
            q, r = divmod(ub[i], diag[i])
            residue.append(r)
            if r:
                ok = False
            y[i] = q
        else:
            residue.append(ub[i])
            if ub[i]:
                ok = False
    kernel = [[V[r][c] for r in range(ncols)] for c in range(rank, ncols)]
    if not ok:
        return None, kernel, residue
    return matvec(V, y), kernel, None


def hermite_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    col = 0
    while rows and col < dim:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // piv[col]
                for k in range(col, dim):
                    r[k] -= q * piv[k]
                rest.append(r)
            nz = [piv] + [r for r in rest if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        rows = [r for r in rows if not r[col] and any(r)]
        for r in basis:
            if r[col]:
                q = r[col] // piv[col]
                for k in range(col, dim):
                    r[k] -= q * piv[k]
        basis.append(piv)
        col += 1
    return basis


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    M = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# public matrix type

@dataclass(frozen=True)
class RingMatrix:
    ring: BaseRing
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if self.ring.modulus:
            object.__setattr__(self, "entries", tuple(x % self.ring.modulus for x in self.entries))
        else:
            object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    @classmethod
    def from_rows(cls, ring: BaseRing, rows, ncols: Optional[int] = None) -> "RingMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(ring, len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, ring: BaseRing, n: int) -> "RingMatrix":
        return cls.from_rows(ring, identity(n), n)

    @classmethod
    def zeros(cls, ring: BaseRing, r: int, c: int) -> "RingMatrix":
        return cls(ring, r, c, (0,) * (r * c))

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.ring != other.ring:
            raise RingMismatch("matrices over different rings")
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        prod = matmul(self.to_rows(), other.to_rows(), inner=self.cols)
        return RingMatrix.from_rows(self.ring, prod, other.cols)

    def transpose(self) -> "RingMatrix":
        return RingMatrix.from_rows(self.ring, transpose(self.to_rows(), self.cols), self.rows)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ShapeMismatch("determinant of a non-square matrix")
        return self.ring.reduce(determinant(self.to_rows()))

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def __repr__(self):
        return f"RingMatrix({self.ring}, {self.to_rows()})"


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == S`` with ``S`` diagonal, ``U`` and ``V`` invertible."""

    U: RingMatrix
    S: RingMatrix
    V: RingMatrix
    invariant_factors: tuple


def smith_normal_form(A: RingMatrix) -> SmithForm:
    ring, m, n = A.ring, A.rows, A.cols
    U, S, V, _ = _snf(A.to_rows(), m, n)
    if ring.modulus:
        mod = ring.modulus
        U = [[x % mod for x in r] for r in U]
        V = [[x % mod for x in r] for r in V]
        S = [[x % mod for x in r] for r in S]
        for i in range(min(m, n)):
            u = _unit_to_gcd(S[i][i], mod)
            if u != 1:
                U[i] = [(u * x) % mod for x in U[i]]
                S[i][i] = (u * S[i][i]) % mod
    factors = tuple(S[i][i] for i in range(min(m, n)) if S[i][i])
    return SmithForm(
        U=RingMatrix.from_rows(ring, U, m),
        S=RingMatrix.from_rows(ring, S, n),
        V=RingMatrix.from_rows(ring, V, n),
        invariant_factors=factors,
    )


@dataclass(frozen=True)
class SolveResult:
    solution: Optional[tuple]
    kernel: tuple
    obstruction: Optional[tuple] = None

    @property
    def solvable(self) -> bool:
        return self.solution is not None


def solve_linear(A: RingMatrix, b: Sequence[int]) -> SolveResult:
    """Solve ``A x = b`` over the ring of ``A``.

    The kernel is returned as a generating set of ``{x : A x = 0}``.  Over Z/m
    the system is lifted to ``[A | m I] (x, z) = b`` over Z.
    """
    if len(b) != A.rows:
        raise ShapeMismatch(f"right hand side has length {len(b)}, expected {A.rows}")
    ring = A.ring
    rows = A.to_rows()
    n = A.cols
    if not ring.modulus:
        x, kernel, obstruction = solve_integer(rows, list(b), n)
        kernel = hermite_basis(kernel, n)
        return SolveResult(
            solution=None if x is None else tuple(x),
            kernel=tuple(tuple(v) for v in kernel),
            obstruction=None if obstruction is None else tuple(obstruction),
        )
    mod = ring.modulus
    lifted = [row + [mod if i == j else 0 for j in range(A.rows)] for i, row in enumerate(rows)]
    x, kernel, obstruction = solve_integer(lifted, [v % mod for v in b], n + A.rows)
    kern = [[v % mod for v in vec[:n]] for vec in kernel]
    kern = hermite_basis(kern + [[mod if i == j else 0 for j in range(n)] for i in range(n)], n)
    kern = [[v % mod for v in vec] for vec in kern]
    kern = [v for v in kern if any(v)]
    return SolveResult(
        solution=None if x is None else tuple(v % mod for v in x[:n]),
        kernel=tuple(tuple(v) for v in kern),
        obstruction=None if obstruction is None else tuple(v % mod for v in obstruction),
    )
