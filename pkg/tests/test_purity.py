import itertools
import random

import pytest

from purederive.complexes import BoundedComplex, ChainMap, stalk
from purederive.generators import (
    random_chain_map,
    random_complex,
    random_short_exact,
    random_split_sequence,
)
from purederive.modules import ModuleMap, ShortExactSequence, cyclic, direct_sum, free
from purederive.purity import (
    NEG_INF,
    POS_INF,
    ExtendedInt,
    is_pure_quasi_iso,
    is_pure_sequence,
    purity_profile,
    range_cross_check,
    test_family as make_family,
)
from purederive.ring import BaseRing

ZZ = BaseRing.integers()


# -- oracle: over Z/m, Hom(Z/d, M) is the d-torsion M[d], so a complex is
# pure exact at n iff every torsion subcomplex X[d] is exact at n ------------

def _vectors(M):
    return itertools.product(range(M.ring.modulus), repeat=M.ngens)


def _torsion(M, d):
    return [x for x in _vectors(M) if M.is_zero_element([d * v for v in x])]


def brute_pure_exact_at(X, n):
    m = X.ring.modulus
    Xn, nxt = X.term(n), X.term(n + 1)
    if not Xn.ngens:
        return True
    for d in (e for e in range(1, m + 1) if m % e == 0):
        tors = _torsion(Xn, d)
        ker = {Xn.coords(x) for x in tors if nxt.is_zero_element(X.diff(n)(x))}
        im = {Xn.coords(X.diff(n - 1)(y)) for y in _torsion(X.term(n - 1), d)}
        if ker != im:
            return False
    return True


def brute_pure_sequence(seq):
    """Every d-torsion element of C lifts to a d-torsion element of B."""
    B, C = seq.B, seq.C
    m = B.ring.modulus
    for d in (e for e in range(2, m + 1) if m % e == 0):
        lifted = {C.coords(seq.g(b)) for b in _torsion(B, d)}
        if any(C.coords(c) not in lifted for c in _torsion(C, d)):
            return False
    return True


@pytest.mark.parametrize("seed", range(6))
def test_sequences_against_torsion_lifting(seed):
    rng = random.Random(seed)
    seen = set()
    for _ in range(20):
        R = BaseRing.mod(rng.choice([4, 8, 9, 12]))
        seq = random_short_exact(rng, R, max_gens=2)
        v = is_pure_sequence(seq)
        assert v.routes["cohn"] == v.routes["tensor"] == v.routes["split"]
        assert v.pure == brute_pure_sequence(seq)
        seen.add(v.pure)
    assert seen == {True, False}


def test_known_sequences():
    z2, z4 = cyclic(ZZ, 2), cyclic(ZZ, 4)
    bad = ShortExactSequence(ModuleMap(z2, z4, ((2,),)), ModuleMap(z4, z2, ((1,),)))
    v = is_pure_sequence(bad)
    assert not v and v.witness_modulus == 2
    Zm = free(ZZ, 1)
    mult = ShortExactSequence(ModuleMap(Zm, Zm, ((2,),)), ModuleMap(Zm, z2, ((1,),)))
    assert not is_pure_sequence(mult)
    rng = random.Random(1)
    for _ in range(10):
        assert is_pure_sequence(random_split_sequence(rng, ZZ))


@pytest.mark.parametrize("seed", range(4))
def test_profile_against_torsion_subcomplexes(seed):
    rng = random.Random(100 + seed)
    for _ in range(10):
        R = BaseRing.mod(rng.choice([4, 8, 6]))
        X = random_complex(rng, R, length=rng.randint(1, 3), max_gens=2)
        prof = purity_profile(X, cross_check=True)
        for n in range(X.lo - 1, X.hi + 2):
            assert prof.at(n).pure_exact == brute_pure_exact_at(X, n), n


@pytest.mark.parametrize("seed", range(3))
def test_profile_routes_agree_over_z(seed):
    rng = random.Random(200 + seed)
    for _ in range(10):
        X = random_complex(rng, ZZ, length=rng.randint(1, 4), max_gens=3)
        prof = purity_profile(X, cross_check=True)
        assert range_cross_check(X, prof).agree


def test_multiplication_by_two_profile():
    Zm = free(ZZ, 1)
    X = BoundedComplex(ZZ, {-1: Zm, 0: Zm}, {-1: ModuleMap(Zm, Zm, ((2,),))})
    p = purity_profile(X)
    assert (p.inf_p, p.sup_p) == (-1, 0)
    assert p.failing_degrees() == [-1, 0]
    assert not p.at(-1).pure_exact and p.at(-1).reason is not None


def test_contractible_is_pure_exact():
    Zm = free(ZZ, 1)
    C = BoundedComplex(ZZ, {0: Zm, 1: Zm}, {0: ModuleMap(Zm, Zm, ((1,),))})
    p = purity_profile(C)
    assert p.is_pure_exact() and p.inf_p == POS_INF and p.sup_p == NEG_INF


def test_exact_but_not_pure():
    z2, z4 = cyclic(ZZ, 2), cyclic(ZZ, 4)
    X = BoundedComplex.from_sequence(ZZ, 0, [z2, z4, z2], [((2,),), ((1,),)])
    assert X.validate() is None
    p = purity_profile(X)
    assert not p.is_pure_exact()
    assert all(p.at(n).reason != "H^%d != 0" % n for n in p.failing_degrees())


@pytest.mark.parametrize("seed", range(3))
def test_quasi_iso_routes(seed):
    rng = random.Random(300 + seed)
    for _ in range(8):
        R = rng.choice([ZZ, BaseRing.mod(4)])
        X = random_complex(rng, R, length=2, max_gens=2)
        Y = random_complex(rng, R, length=2, max_gens=2)
        f = random_chain_map(rng, X, Y)
        v = is_pure_quasi_iso(f)
        assert v.yes == v.hom_route
        assert bool(is_pure_quasi_iso(ChainMap.identity(X)))


def test_identity_and_padding():
    M = cyclic(ZZ, 6)
    S, inj, proj = direct_sum(M, cyclic(ZZ, 5))
    f = ChainMap(stalk(M), stalk(S), {0: inj[0]})
    v = is_pure_quasi_iso(f)
    assert not v and v.first_failing_degree is not None


def test_family_layout():
    fam = make_family(ZZ, 12)
    assert fam.moduli == (0, 2, 3, 4, 6, 12)
    capped = make_family(ZZ, 12, cap=3)
    assert capped.capped and capped.moduli == (0, 2, 3)
    assert make_family(BaseRing.mod(8), 0).moduli == (0, 2, 4)


def test_extended_int_order():
    assert NEG_INF < ExtendedInt.of(-100) < 0 < ExtendedInt.of(7) < POS_INF
    assert -NEG_INF == POS_INF and str(POS_INF) == "+inf"
    assert ExtendedInt.of(3) + 2 == 5 and POS_INF + 1 == POS_INF
    assert ExtendedInt.of(3).to_json() == 3 and NEG_INF.to_json() == "-inf"
