import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from purederive.errors import ShapeMismatch
from purederive.ring import (
    BaseRing,
    RingMatrix,
    determinant,
    hermite_basis,
    integer_kernel,
    matmul,
    smith_normal_form,
    solve_linear,
)

ZZ = BaseRing.integers()


def minors_gcd(A, k):
    """gcd of all k x k minors, straight from the definition."""
    m, n = len(A), len(A[0]) if A else 0
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            g = math.gcd(g, determinant([[A[r][c] for c in cols] for r in rows]))
    return g


def invariant_factors_by_minors(A):
    m, n = len(A), len(A[0]) if A else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        d = minors_gcd(A, k)
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return tuple(out)


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices)
def test_snf_factors_match_determinantal_divisors(A):
    sf = smith_normal_form(RingMatrix.from_rows(ZZ, A))
    assert sf.invariant_factors == invariant_factors_by_minors(A)


@given(matrices)
def test_snf_is_a_unimodular_diagonalisation(A):
    M = RingMatrix.from_rows(ZZ, A)
    sf = smith_normal_form(M)
    assert (sf.U @ M @ sf.V).to_rows() == sf.S.to_rows()
    assert sf.S.is_diagonal()
    assert abs(sf.U.det()) == 1 and abs(sf.V.det()) == 1
    f = sf.invariant_factors
    assert all(b % a == 0 for a, b in zip(f, f[1:]))


@pytest.mark.parametrize("m", [4, 6, 8, 12])
def test_snf_over_zm(m):
    R = BaseRing.mod(m)
    rng = random.Random(m)
    for _ in range(40):
        A = [[rng.randrange(m) for _ in range(3)] for _ in range(3)]
        M = RingMatrix.from_rows(R, A)
        sf = smith_normal_form(M)
        assert (sf.U @ M @ sf.V).to_rows() == sf.S.to_rows()
        assert math.gcd(sf.U.det(), m) == 1 and math.gcd(sf.V.det(), m) == 1
        # diagonal entries are divisors of m, each dividing the next
        f = sf.invariant_factors
        assert all(m % d == 0 for d in f)
        assert all(b % a == 0 for a, b in zip(f, f[1:]))


def test_snf_known():
    sf = smith_normal_form(RingMatrix.from_rows(ZZ, [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert sf.invariant_factors == (2, 6, 12)


@given(matrices, st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_linear_over_z(A, x):
    n = len(A[0])
    b = [sum(r[j] * x[j] for j in range(n)) for r in A]
    res = solve_linear(RingMatrix.from_rows(ZZ, A), b)
    assert res.solvable
    assert [sum(r[j] * res.solution[j] for j in range(n)) for r in A] == b
    for k in res.kernel:
        assert all(sum(r[j] * k[j] for j in range(n)) == 0 for r in A)


def test_solve_linear_reports_unsolvable():
    res = solve_linear(RingMatrix.from_rows(ZZ, [[2]]), [1])
    assert not res.solvable


def test_solve_linear_over_zm_brute_force():
    R = BaseRing.mod(6)
    A = [[2, 3], [4, 0]]
    for b0, b1 in itertools.product(range(6), repeat=2):
        brute = any((2 * x + 3 * y - b0) % 6 == 0 and (4 * x - b1) % 6 == 0
                    for x, y in itertools.product(range(6), repeat=2))
        res = solve_linear(RingMatrix.from_rows(R, A), [b0, b1])
        assert res.solvable == brute
        if brute:
            x, y = res.solution
            assert (2 * x + 3 * y - b0) % 6 == 0 and (4 * x - b1) % 6 == 0


def test_solve_linear_shape():
    with pytest.raises(ShapeMismatch):
        solve_linear(RingMatrix.from_rows(ZZ, [[1, 2]]), [1, 2])


@given(matrices)
def test_integer_kernel_spans_kernel(A):
    n = len(A[0])
    K = integer_kernel(A, n)
    for k in K:
        assert all(sum(r[j] * k[j] for j in range(n)) == 0 for r in A)
    # rank-nullity over Q
    rank = len(invariant_factors_by_minors(A))
    assert len(K) == n - rank


def test_hermite_basis_is_echelon():
    B = hermite_basis([[2, 4, 6], [4, 8, 12], [1, 1, 1]], 3)
    assert len(B) == 2
    leads = [next(i for i, x in enumerate(r) if x) for r in B]
    assert leads == sorted(leads) and len(set(leads)) == len(leads)


def test_ring_basics():
    assert str(BaseRing.mod(8)) == "Z/8" and str(ZZ) == "Z"
    assert BaseRing.from_json(BaseRing.mod(8).to_json()) == BaseRing.mod(8)
    assert BaseRing.from_json("Z") == ZZ
    with pytest.raises(ValueError):
        BaseRing.mod(1)
    assert matmul([[1, 2]], [[3], [4]]) == [[11]]
