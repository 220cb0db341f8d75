import itertools
import random

import pytest

from purederive.complexes import BoundedComplex, shift, stalk
from purederive.dimension import (
    classical_ext_Z,
    criteria_report,
    default_samples,
    pext,
    pgldim_probe,
    pid,
    ppd,
)
from purederive.errors import InconsistentCriteria
from purederive.generators import random_complex, random_finite_module, random_module
from purederive.modules import ModuleMap, cyclic, free
from purederive.purity import NEG_INF, purity_profile
from purederive.ring import BaseRing

ZZ = BaseRing.integers()
R8 = BaseRing.mod(8)


def _iso_type(M):
    return tuple(sorted(M.factors))


def brute_hom_count(M, N):
    m = M.ring.modulus
    maps = set()
    for ent in itertools.product(range(m), repeat=M.ngens * N.ngens):
        F = ModuleMap(M, N, tuple(tuple(ent[r * M.ngens:(r + 1) * M.ngens]) for r in range(N.ngens)))
        if F.is_well_defined():
            maps.add(tuple(N.coords(F.column(j)) for j in range(M.ngens)))
    return len(maps)


@pytest.mark.parametrize("m", [2, 3, 4, 6, 8, 9, 12])
def test_pext0_is_hom(m):
    R = BaseRing.mod(m)
    rng = random.Random(m)
    for _ in range(6):
        M = random_finite_module(rng, R, 2)
        N = random_finite_module(rng, R, 2)
        assert pext(stalk(M), stalk(N), 0).order() == brute_hom_count(M, N)


def test_known_values():
    Zm = free(ZZ, 1)
    X = BoundedComplex(ZZ, {-1: Zm, 0: Zm}, {-1: ModuleMap(Zm, Zm, ((2,),))})
    assert ppd(X)[0] == 1
    assert str(pext(X, stalk(cyclic(ZZ, 2)), 1)) == "Z/2"
    assert str(pext(stalk(cyclic(ZZ, 6)), stalk(cyclic(ZZ, 4)), 0)) == "Z/2"
    assert ppd(stalk(cyclic(ZZ, 6)))[0] == 0
    C = BoundedComplex(ZZ, {-1: Zm, 0: Zm}, {-1: ModuleMap(Zm, Zm, ((1,),))})
    assert ppd(C)[0] == NEG_INF


def test_pure_versus_classical():
    z2 = cyclic(ZZ, 2)
    assert pext(stalk(z2), stalk(z2), 1).is_zero()
    assert str(classical_ext_Z(z2, z2, 1)) == "Z/2"
    assert str(classical_ext_Z(cyclic(ZZ, 4), cyclic(ZZ, 6), 1)) == "Z/2"
    assert classical_ext_Z(free(ZZ, 1), z2, 1).is_zero()


def test_pext_vanishes_on_modules_over_z():
    rng = random.Random(5)
    for _ in range(10):
        M, N = random_module(rng, ZZ, 2), random_module(rng, ZZ, 2)
        for i in (1, 2):
            assert pext(stalk(M), stalk(N), i).is_zero()


@pytest.mark.parametrize("seed", range(3))
def test_routes_agree_over_z8(seed):
    rng = random.Random(10 + seed)
    for _ in range(6):
        X = random_complex(rng, R8, length=rng.randint(1, 3), max_gens=2, finite=True)
        Y = random_complex(rng, R8, length=rng.randint(1, 2), max_gens=2, finite=True)
        for i in (-1, 0, 1, 2):
            both = pext(X, Y, i, route="both")
            assert _iso_type(both) == _iso_type(pext(X, Y, i, route="injective"))


@pytest.mark.parametrize("seed", range(2))
def test_shift_compatibility(seed):
    rng = random.Random(20 + seed)
    for _ in range(5):
        ring = rng.choice([ZZ, R8])
        X = random_complex(rng, ring, length=2, max_gens=2)
        Y = random_complex(rng, ring, length=2, max_gens=2)
        for i, k in ((0, 1), (1, -1), (0, 2)):
            a = pext(X, shift(Y, k), i)
            b = pext(X, Y, i + k)
            assert _iso_type(a) == _iso_type(b)


@pytest.mark.parametrize("seed", range(3))
def test_dimensions_match_profile(seed):
    rng = random.Random(30 + seed)
    for _ in range(6):
        ring = rng.choice([ZZ, R8])
        X = random_complex(rng, ring, length=rng.randint(1, 3), max_gens=2)
        prof = purity_profile(X)
        v, rep = ppd(X)
        assert v == (NEG_INF if prof.is_pure_exact() else -prof.inf_p)
        assert rep.criterion4 == "consistent"
        assert len(set(rep.minimal.values())) == 1
        if ring.modulus:
            w, rep = pid(X)
            assert w == (NEG_INF if prof.is_pure_exact() else prof.sup_p)


def test_criteria_rows_monotone():
    Zm = free(ZZ, 1)
    X = BoundedComplex(ZZ, {-1: Zm, 0: Zm}, {-1: ModuleMap(Zm, Zm, ((2,),))})
    r0 = criteria_report(X, 0)
    r1 = criteria_report(X, 1)
    assert not any(r0.verdicts.values())
    assert all(r1.verdicts.values())


def test_pid_over_z4():
    R4 = BaseRing.mod(4)
    Y = BoundedComplex(R4, {0: cyclic(R4, 4), 1: cyclic(R4, 2)},
                       {0: ModuleMap(cyclic(R4, 4), cyclic(R4, 2), ((1,),))})
    assert pid(Y)[0] == 1
    assert pid(stalk(cyclic(R4, 2)))[0] == 0


def test_probe_over_finite_ring():
    R4 = BaseRing.mod(4)
    rng = random.Random(2)
    sample = [random_complex(rng, R4, length=2, max_gens=2) for _ in range(4)]
    p = pgldim_probe(R4, sample, n=0, with_towers=False)
    assert p.inequalities_hold and p.higher_pext_vanish and p.observed_bound == 0


def test_default_samples_nonempty():
    assert default_samples(ZZ) and default_samples(R8)


def test_inconsistency_error_is_pure_derive_error():
    from purederive.errors import PureDeriveError
    assert issubclass(InconsistentCriteria, PureDeriveError)
