import random

import pytest

from purederive.complexes import BoundedComplex, ChainMap, null_homotopy, stalk
from purederive.errors import NotPureQuasiIso, PrereqFails, UnsupportedInjectiveBase
from purederive.generators import random_chain_map, random_complex
from purederive.modules import FgModule, ModuleMap, cyclic, free
from purederive.purity import POS_INF, purity_profile
from purederive.resolve import (
    Roof,
    homotopy_inverse,
    lift_along_resolutions,
    padded_preenvelope,
    padded_precover,
    pure_injective_resolution,
    pure_projective_resolution,
    roof_normalize,
    split_off_tail,
)
from purederive.ring import BaseRing

ZZ = BaseRing.integers()
R8 = BaseRing.mod(8)


def _certified(R):
    c = R.certificate
    if purity_profile(R.target).is_pure_exact():
        return c.ok and c.inf_p == POS_INF
    return c.ok


@pytest.mark.parametrize("seed", range(4))
def test_projective_resolutions_certified(seed):
    rng = random.Random(seed)
    for _ in range(6):
        ring = rng.choice([ZZ, R8])
        X = random_complex(rng, ring, length=rng.randint(1, 3), max_gens=2)
        for pc in (None, padded_precover(1), padded_precover(2)):
            R = pure_projective_resolution(X) if pc is None else pure_projective_resolution(X, pc)
            assert R.map.validate() is None
            assert _certified(R)


@pytest.mark.parametrize("seed", range(3))
def test_injective_resolutions_certified(seed):
    rng = random.Random(10 + seed)
    for _ in range(6):
        X = random_complex(rng, R8, length=rng.randint(1, 3), max_gens=2, finite=True)
        for pe in (None, padded_preenvelope):
            R = pure_injective_resolution(X) if pe is None else pure_injective_resolution(X, pe)
            assert R.map.validate() is None
            assert _certified(R)


def test_injective_base_needs_finite_terms():
    with pytest.raises(UnsupportedInjectiveBase):
        pure_injective_resolution(stalk(free(ZZ, 1)))


@pytest.mark.parametrize("seed", range(3))
def test_lifts_commute_up_to_homotopy(seed):
    rng = random.Random(20 + seed)
    for _ in range(5):
        ring = rng.choice([ZZ, R8])
        X = random_complex(rng, ring, length=2, max_gens=2, finite=bool(ring.modulus))
        Y = random_complex(rng, ring, length=2, max_gens=2, finite=bool(ring.modulus))
        f = random_chain_map(rng, X, Y)
        RX = pure_projective_resolution(X, padded_precover(1))
        RY = pure_projective_resolution(Y)
        fl, h = lift_along_resolutions(f, RX, RY)
        assert fl.validate() is None and h.verify()
        if ring.modulus:
            IX, IY = pure_injective_resolution(X, padded_preenvelope), pure_injective_resolution(Y)
            fl, h = lift_along_resolutions(f, IX, IY)
            assert fl.validate() is None and h.verify()


def test_resolutions_unique_up_to_homotopy():
    rng = random.Random(4)
    for _ in range(4):
        X = random_complex(rng, ZZ, length=2, max_gens=2)
        R1 = pure_projective_resolution(X)
        R2 = pure_projective_resolution(X, padded_precover(1))
        a, b, h1, h2 = homotopy_inverse(R1, R2)
        assert h1 is not None and h1.verify()
        assert h2 is not None and h2.verify()


def test_split_off_tail():
    Zm = free(ZZ, 1)
    X = BoundedComplex(ZZ, {-1: Zm, 0: Zm}, {-1: ModuleMap(Zm, Zm, ((2,),))})
    R = pure_projective_resolution(X, padded_precover(1))
    ts = split_off_tail(R, 1)
    assert ts.contraction.verify()
    assert ts.P1.lo is None or ts.P1.lo >= -1
    with pytest.raises(PrereqFails):
        split_off_tail(R, 0)


def test_split_off_tail_injective():
    R4 = BaseRing.mod(4)
    Y = BoundedComplex(R4, {0: cyclic(R4, 4), 1: cyclic(R4, 2)},
                       {0: ModuleMap(cyclic(R4, 4), cyclic(R4, 2), ((1,),))})
    I = pure_injective_resolution(Y, padded_preenvelope)
    ts = split_off_tail(I, 1)
    assert ts.contraction.verify()
    assert ts.P1.hi is None or ts.P1.hi <= 1
    with pytest.raises(PrereqFails):
        split_off_tail(I, 0)


def _example_roof():
    Zm = free(ZZ, 1)
    ZxZ2 = FgModule(ZZ, 2, ((0, 2),))
    z2, z4 = cyclic(ZZ, 2), cyclic(ZZ, 4)
    A = BoundedComplex(ZZ, {-1: Zm, 0: ZxZ2}, {-1: ModuleMap(Zm, ZxZ2, ((1,), (0,)))})
    s = ChainMap(A, stalk(z2), {0: ModuleMap(ZxZ2, z2, ((0, 1),))})
    a = ChainMap(A, stalk(z4), {0: ModuleMap(ZxZ2, z4, ((0, 2),))})
    return Roof(A, s, a)


def test_roof_routes_agree():
    r = _example_roof()
    st = roof_normalize(r, "stalk")
    li = roof_normalize(r, "lift")
    assert st.g.component(0).matrix == ((2,),)
    assert null_homotopy(st.g, li.g) is not None
    assert li.section_homotopy.verify() and li.equivalence.verify()
    assert st.truncation_certificate is not None and bool(st.truncation_certificate)


def test_roof_rejects_non_pure_left_leg():
    Zm = free(ZZ, 1)
    z2 = cyclic(ZZ, 2)
    A = BoundedComplex(ZZ, {-1: Zm, 0: Zm}, {-1: ModuleMap(Zm, Zm, ((2,),))})
    s = ChainMap(A, stalk(z2), {0: ModuleMap(Zm, z2, ((1,),))})
    with pytest.raises(NotPureQuasiIso):
        roof_normalize(Roof(A, s, s))
