import random

import pytest

from purederive.errors import UnsupportedInjectiveBase
from purederive.generators import random_cocycle
from purederive.modules import ModuleMap, cyclic, map_subquotients
from purederive.ring import BaseRing
from purederive.tower import (
    INVERSE,
    Coboundary,
    Cocycle,
    EventuallyIso,
    MultiplicationBy,
    NotCoboundary,
    Tower,
    Undecided,
    all_ones_cocycle,
    cocycle_decide,
    colim_presentation,
    constant_tower,
    hocolim_resolution,
    holim_injective_resolution,
    pext1_colim,
    power_quotient_inverse_tower,
    pruefer_tower,
    rationals_tower,
    rationals_witness,
)

ZZ = BaseRing.integers()
Zm = cyclic(ZZ, 0)


def surviving_starts(factors, u, lo, hi):
    """Integers a_0 in [lo, hi] that extend to a_0, ..., a_k over Z with
    u = a_i - m_i a_(i+1) for every i < k."""
    out = []
    for a0 in range(lo, hi + 1):
        a = a0
        for m in factors:
            q, r = divmod(a - u, m)
            if r:
                break
            a = q
        else:
            out.append(a0)
    return out


@pytest.mark.parametrize("slope,offset", [(1, 2), (0, 3), (2, 2), (1, 3)])
def test_not_coboundary_against_congruence_search(slope, offset):
    T = Tower(ZZ, (Zm,), (), MultiplicationBy(slope, offset))
    for u in (1, -1):
        c = Cocycle(T, Zm, (), ((u,),))
        v = cocycle_decide(c, depth_limit=6)
        assert isinstance(v, NotCoboundary) and v.verify()
        for k, s, M in v.rows:
            if M > 50000:
                break
            factors = [slope * i + offset for i in range(k)]
            surv = surviving_starts(factors, u, -M, M)
            # survivors form one residue class mod M_k, namely u * s_k
            assert surv and all((a - u * s) % M == 0 for a in surv)
            r = v.exclusion_bound(k)
            assert not [a for a in surv if -r < a < r]


def test_rationals_residues_frozen():
    # values produced by the congruence search above for m_i = i + 2
    v = cocycle_decide(all_ones_cocycle(rationals_tower(), Zm), depth_limit=8)
    assert v.rows[-1] == (8, 46233, 362880)
    assert [r[1] for r in v.rows[:4]] == [1, 3, 9, 33]
    assert v.verify()
    assert [v.exclusion_bound(k) for k in range(1, 9)] == sorted(set(v.exclusion_bound(k) for k in range(1, 9)))


def test_rationals_shift_matrix_and_presentations():
    P = colim_presentation(rationals_tower(), 8)
    assert P.ok
    assert P.shift_matrix(4) == ((1, 0, 0), (-2, 1, 0), (0, -3, 1), (0, 0, -4))
    for T in (pruefer_tower(2), pruefer_tower(3), constant_tower(cyclic(ZZ, 6))):
        assert colim_presentation(T, 6).ok


def test_hocolim_bounds():
    assert hocolim_resolution(rationals_tower()).bound == 1
    assert hocolim_resolution(pruefer_tower(2)).bound == 1
    K = hocolim_resolution(constant_tower(cyclic(ZZ, 6)))
    assert K.ok and K.bound == 0 and K.reduced


def test_holim_injective():
    R8 = BaseRing.mod(8)
    res = holim_injective_resolution(power_quotient_inverse_tower(2, R8), depth=4)
    assert res.ok and res.bound == 0
    bad = Tower(ZZ, (Zm,), (), EventuallyIso(), INVERSE)
    with pytest.raises(UnsupportedInjectiveBase):
        holim_injective_resolution(bad)


@pytest.mark.parametrize("seed", range(4))
def test_cocycles_into_finite_targets_are_coboundaries(seed):
    rng = random.Random(seed)
    for T in (rationals_tower(), pruefer_tower(2), pruefer_tower(3), constant_tower(cyclic(ZZ, 4))):
        for d in (2, 4, 6, 9):
            N = cyclic(ZZ, d)
            assert pext1_colim(T, N).vanishes()
            c = random_cocycle(rng, T, N, prefix=3, eventually_zero=rng.random() < 0.2)
            v = cocycle_decide(c)
            assert isinstance(v, Coboundary)
            assert v.verify(10)


def test_lim_one_shapes():
    assert pext1_colim(pruefer_tower(2), Zm).zero_system()
    assert pext1_colim(rationals_tower(), Zm).vanishes() is None
    L = pext1_colim(rationals_tower(), cyclic(ZZ, 6))
    assert L.finite_homs()
    assert map_subquotients(L.restriction(0)).image.order() == 3


def test_undecided_outside_the_growth_case():
    T = Tower(ZZ, (Zm,), (), MultiplicationBy(0, 2))  # colimit Z[1/2]
    v = cocycle_decide(Cocycle(T, Zm, (), ((3,),)))
    assert isinstance(v, Undecided)


def test_witness_summary():
    w = rationals_witness()
    assert w["ppd"] == 1 and w["lower_bound"] == 1 and w["upper_bound"] == 1


def test_tower_maps():
    T = rationals_tower()
    assert T.map(3).matrix == ((5,),)
    assert T.transition(0, 3).matrix == ((24,),)
    P = pruefer_tower(2)
    assert str(P.stage(2)) == "Z/8" and P.map(0).matrix == ((2,),)
    P.validate(6)
    with pytest.raises(ValueError):
        Tower(ZZ, (Zm, Zm), (), EventuallyIso())
    assert isinstance(ModuleMap.identity(Zm), ModuleMap)
