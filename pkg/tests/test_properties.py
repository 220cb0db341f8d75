"""Invariants checked on generator output driven by hypothesis-chosen seeds."""

import random

from hypothesis import given, settings, strategies as st

from purederive.complexes import ChainMap, complex_sum, cone, is_contractible, null_homotopy, shift
from purederive.dimension import pext, ppd
from purederive.generators import random_chain_map, random_complex, random_hom, random_module
from purederive.modules import hom_module
from purederive.purity import NEG_INF, purity_profile
from purederive.ring import BaseRing

RINGS = (BaseRing.integers(), BaseRing.mod(4), BaseRing.mod(6), BaseRing.mod(8))
seeds = st.integers(0, 2 ** 32 - 1)
rings = st.sampled_from(RINGS)


def _complex(seed, ring, length=None):
    rng = random.Random(seed)
    return rng, random_complex(rng, ring, length=length or rng.randint(1, 3), max_gens=2)


@given(seeds, rings, st.integers(-2, 2))
def test_profile_shifts_with_the_complex(seed, ring, k):
    _, X = _complex(seed, ring)
    p, q = purity_profile(X), purity_profile(shift(X, k))
    assert q.inf_p == p.inf_p + (-k) and q.sup_p == p.sup_p + (-k)


@given(seeds, rings)
def test_profile_of_sum_is_union(seed, ring):
    rng, X = _complex(seed, ring)
    Y = random_complex(rng, ring, length=2, max_gens=2)
    S = complex_sum(X, Y)[0]
    a, b, c = purity_profile(X), purity_profile(Y), purity_profile(S)
    assert set(c.failing_degrees()) == set(a.failing_degrees()) | set(b.failing_degrees())


@given(seeds, rings)
def test_cone_of_identity_contractible_and_pure_exact(seed, ring):
    _, X = _complex(seed, ring)
    C = cone(ChainMap.identity(X)).cone
    assert is_contractible(C)
    assert purity_profile(C).is_pure_exact()


@given(seeds, rings)
def test_chain_map_composites(seed, ring):
    rng, X = _complex(seed, ring, 2)
    Y = random_complex(rng, ring, length=2, max_gens=2)
    f = random_chain_map(rng, X, Y)
    assert f.validate() is None
    h = null_homotopy(f - f)
    assert h is not None and h.verify()
    assert (ChainMap.identity(Y) @ f - f).is_zero()


@settings(max_examples=15)
@given(seeds, st.sampled_from(RINGS[:2]), st.integers(-1, 1))
def test_ppd_shifts(seed, ring, k):
    _, X = _complex(seed, ring)
    v, _ = ppd(X)
    w, _ = ppd(shift(X, k))
    assert w == (NEG_INF if v == NEG_INF else v + k)


@settings(max_examples=15)
@given(seeds, rings)
def test_pext_of_contractible_vanishes(seed, ring):
    rng, X = _complex(seed, ring)
    C = cone(ChainMap.identity(X)).cone
    for i in (-1, 0, 1):
        assert pext(C, X, i).is_zero()


@given(seeds, rings)
def test_hom_encode_decode(seed, ring):
    rng = random.Random(seed)
    M, N = random_module(rng, ring, 2), random_module(rng, ring, 2)
    f = random_hom(rng, M, N)
    H = hom_module(M, N)
    assert H.decode(H.encode(f)).equals(f)
    assert f.is_well_defined()
