import itertools
import random

import pytest

from purederive.complexes import (
    BoundedComplex,
    ChainMap,
    cone,
    homology,
    homology_at,
    homology_map,
    is_contractible,
    null_homotopy,
    shift,
    stalk,
    total_hom,
    truncate,
)
from purederive.errors import InvalidComplex
from purederive.generators import random_chain_map, random_complex, random_module
from purederive.modules import ModuleMap, cyclic, free
from purederive.purity import purity_profile, is_pure_quasi_iso
from purederive.ring import BaseRing

ZZ = BaseRing.integers()


def _classes(M, vectors):
    return {M.coords(v) for v in vectors}


def brute_homology_order(X, n):
    """|ker d^n| / |im d^(n-1)| by enumerating every element over Z/m."""
    m = X.ring.modulus
    Xn = X.term(n)
    if not Xn.ngens:
        return 1
    elems = list(itertools.product(range(m), repeat=Xn.ngens))
    ker = _classes(Xn, [x for x in elems if X.term(n + 1).is_zero_element(X.diff(n)(x))])
    prev = X.term(n - 1)
    im = _classes(Xn, [X.diff(n - 1)(y) for y in itertools.product(range(m), repeat=prev.ngens)])
    return len(ker) // len(im)


@pytest.mark.parametrize("seed", range(5))
def test_homology_orders_brute_force(seed):
    rng = random.Random(seed)
    for _ in range(12):
        R = BaseRing.mod(rng.choice([4, 6, 8]))
        X = random_complex(rng, R, length=rng.randint(1, 3), max_gens=2)
        for n in range(X.lo - 1, X.hi + 2):
            assert homology_at(X, n).order() == brute_homology_order(X, n)


def test_homology_over_z():
    Zm = free(ZZ, 1)
    X = BoundedComplex(ZZ, {-1: Zm, 0: Zm}, {-1: ModuleMap(Zm, Zm, ((2,),))})
    assert homology_at(X, -1).is_zero()
    assert str(homology_at(X, 0)) == "Z/2"
    H = homology(X, 0)
    assert H.class_of((1,)) != H.class_of((0,))


def test_invalid_complex_rejected():
    Zm = free(ZZ, 1)
    one = ModuleMap(Zm, Zm, ((1,),))
    X = BoundedComplex(ZZ, {0: Zm, 1: Zm, 2: Zm}, {0: one, 1: one})
    assert X.validate() == (1, "d o d != 0")
    with pytest.raises(InvalidComplex):
        X.check()


@pytest.mark.parametrize("seed", range(4))
def test_cone_and_shift_are_complexes(seed):
    rng = random.Random(10 + seed)
    for _ in range(10):
        R = rng.choice([ZZ, BaseRing.mod(4), BaseRing.mod(6)])
        X = random_complex(rng, R, length=rng.randint(1, 3), max_gens=2)
        Y = random_complex(rng, R, length=rng.randint(1, 3), max_gens=2)
        f = random_chain_map(rng, X, Y)
        assert f.validate() is None
        T = cone(f)
        assert T.cone.validate() is None
        assert T.inc.validate() is None and T.proj.validate() is None
        assert (T.proj @ T.inc).is_zero()
        for k in (-1, 1, 2):
            S = shift(X, k)
            assert S.validate() is None
            for n in X.terms:
                assert S.term(n - k) == X.term(n)


def test_cone_of_identity_is_contractible():
    rng = random.Random(3)
    for _ in range(8):
        X = random_complex(rng, ZZ, length=rng.randint(1, 3), max_gens=2)
        assert is_contractible(cone(ChainMap.identity(X)).cone)


@pytest.mark.parametrize("seed", range(3))
def test_cone_exact_iff_quasi_iso(seed):
    """Over Z/m: cone(f) is acyclic exactly when every H^n(f) is bijective."""
    rng = random.Random(20 + seed)
    for _ in range(10):
        R = BaseRing.mod(rng.choice([4, 8]))
        X = random_complex(rng, R, length=2, max_gens=2, start=0)
        Y = random_complex(rng, R, length=2, max_gens=2, start=0)
        f = random_chain_map(rng, X, Y)
        C = cone(f).cone
        acyclic = all(brute_homology_order(C, n) == 1 for n in range(-2, 3))
        qi = all(homology_map(f, n).is_injective() and homology_map(f, n).is_surjective() for n in range(-1, 3))
        assert acyclic == qi


def test_total_hom_cycles_are_chain_maps():
    rng = random.Random(5)
    for _ in range(10):
        R = rng.choice([ZZ, BaseRing.mod(8)])
        X = random_complex(rng, R, length=2, max_gens=2)
        Y = random_complex(rng, R, length=2, max_gens=2)
        G = total_hom(X, Y)
        assert G.complex.validate() is None
        f = random_chain_map(rng, X, Y)
        assert f.validate() is None
        assert G.decode_chain_map(G.encode_chain_map(f)).components.keys() <= set(X.terms)


def test_null_homotopy_found_and_verified():
    rng = random.Random(6)
    for _ in range(10):
        X = random_complex(rng, ZZ, length=2, max_gens=2)
        Y = random_complex(rng, ZZ, length=2, max_gens=2)
        h = random_chain_map(rng, X, Y)
        # d s + s d is null homotopic by construction
        G = total_hom(X, Y)
        if not G.complex.term(-1).ngens:
            continue
        s = [rng.randint(-2, 2) for _ in range(G.complex.term(-1).ngens)]
        img = G.complex.diff(-1)(s)
        f = G.decode_chain_map(img)
        H = null_homotopy(f)
        assert H is not None and H.verify()
        assert h.validate() is None


def test_multiplication_by_two_not_null_homotopic():
    z2 = stalk(cyclic(ZZ, 4))
    f = ChainMap(z2, z2, {0: ModuleMap(cyclic(ZZ, 4), cyclic(ZZ, 4), ((2,),))})
    assert null_homotopy(f) is None


@pytest.mark.parametrize("seed", range(3))
def test_truncations_are_pure_quasi_isos(seed):
    rng = random.Random(30 + seed)
    for _ in range(8):
        R = rng.choice([ZZ, BaseRing.mod(8)])
        X = random_complex(rng, R, length=rng.randint(2, 4), max_gens=2)
        p = purity_profile(X)
        if p.sup_p.is_finite:
            t = truncate(X, p.sup_p.value, "kernel_style")
            assert t.comparison.validate() is None
            assert t.complex.hi is None or t.complex.hi <= p.sup_p.value
            assert bool(is_pure_quasi_iso(t.comparison))
        if p.inf_p.is_finite:
            t = truncate(X, p.inf_p.value, "cokernel_style")
            assert t.complex.lo is None or t.complex.lo >= p.inf_p.value
            assert bool(is_pure_quasi_iso(t.comparison))


def test_stalk_and_describe():
    X = stalk(cyclic(ZZ, 3), 2)
    assert X.support() == (2, 2)
    assert X.describe() == "[2] Z/3"
    assert BoundedComplex.zero(ZZ).describe() == "0"
    assert random_module(random.Random(0), ZZ).ring == ZZ
