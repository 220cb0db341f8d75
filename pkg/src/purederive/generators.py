"""Seeded random instances for property tests and the verification harness."""

from __future__ import annotations

import random
from typing import Optional

from .complexes import BoundedComplex, ChainMap, total_hom
from .modules import FgModule, ModuleMap, ShortExactSequence, cyclic, direct_sum, hom_module, map_subquotients
from .ring import BaseRing

# small entries keep torsion orders (and therefore test families) small
_ENTRIES = (0, 0, 0, 1, -1, 2, 2, 3, 4, -2)


def random_module(rng: random.Random, ring: BaseRing, max_gens: int = 3, max_rels: int = 2) -> FgModule:
    g = rng.randint(1, max_gens)
    k = rng.randint(0, max_rels)
    m = ring.modulus
    rels = []
    for _ in range(k):
        if m:
            rels.append(tuple(rng.randrange(m) for _ in range(g)))
        else:
            rels.append(tuple(rng.choice(_ENTRIES) for _ in range(g)))
    return FgModule(ring, g, tuple(rels))


def random_finite_module(rng: random.Random, ring: BaseRing, max_gens: int = 3, max_order: int = 8) -> FgModule:
    """Direct sum of cyclics of order at most ``max_order``."""
    m = ring.modulus
    g = rng.randint(1, max_gens)
    if m:
        orders = [rng.choice([d for d in range(2, m + 1) if m % d == 0]) for _ in range(g)]
    else:
        orders = [rng.randint(2, max_order) for _ in range(g)]
    rels = tuple(tuple(d if i == j else 0 for j in range(g)) for i, d in enumerate(orders))
    return FgModule(ring, g, rels)


def random_hom(rng: random.Random, M: FgModule, N: FgModule, span: int = 3) -> ModuleMap:
    H = hom_module(M, N)
    coords = []
    for _, _, _, order in H.pairs:
        coords.append(rng.randrange(order) if order else rng.randint(-span, span))
    return H.decode(coords)


def random_complex(rng: random.Random, ring: BaseRing, length: Optional[int] = None, max_gens: int = 3,
                   start: Optional[int] = None, finite: bool = False) -> BoundedComplex:
    """A complex of at most ``length`` nonzero terms.

    Each differential is a random map out of the cokernel of the previous one,
    so ``d o d = 0`` holds by construction.
    """
    length = length if length is not None else rng.randint(1, 4)
    start = start if start is not None else rng.randint(-2, 1)
    mk = random_finite_module if finite else random_module
    mods = [mk(rng, ring, max_gens) for _ in range(length)]
    maps = []
    for k in range(length - 1):
        src, dst = mods[k], mods[k + 1]
        if k == 0:
            maps.append(random_hom(rng, src, dst))
            continue
        sq = map_subquotients(maps[-1], check=False)
        ck = sq.cokernel
        maps.append(random_hom(rng, ck, dst) @ sq.cokernel_projection)
    return BoundedComplex.from_sequence(ring, start, mods, maps)


def random_chain_map(rng: random.Random, X: BoundedComplex, Y: BoundedComplex, span: int = 2) -> ChainMap:
    """A random degree zero cycle of the Hom complex."""
    G = total_hom(X, Y)
    C = G.complex
    H0 = C.term(0)
    if not H0.ngens:
        return ChainMap.zero(X, Y)
    basis = C.diff(0).kernel_lattice
    coords = [0] * H0.ngens
    for b in basis:
        c = rng.randint(-span, span)
        if c:
            coords = [x + c * y for x, y in zip(coords, b)]
    return G.decode_chain_map(coords)


def random_short_exact(rng: random.Random, ring: BaseRing, max_gens: int = 3) -> ShortExactSequence:
    """``0 -> Ker g -> B -> Im g -> 0`` or ``0 -> Im f -> B -> Coker f -> 0`` for a random map."""
    B = random_module(rng, ring, max_gens)
    other = random_module(rng, ring, max_gens)
    if rng.random() < 0.5:
        g = random_hom(rng, B, other)
        sq = map_subquotients(g, check=False)
        return ShortExactSequence(sq.kernel_inclusion, sq.coimage_projection)
    f = random_hom(rng, other, B)
    sq = map_subquotients(f, check=False)
    return ShortExactSequence(sq.image_inclusion, sq.cokernel_projection)


def random_split_sequence(rng: random.Random, ring: BaseRing, max_gens: int = 2) -> ShortExactSequence:
    A = random_module(rng, ring, max_gens)
    C = random_module(rng, ring, max_gens)
    S, inj, proj = direct_sum(A, C)
    return ShortExactSequence(inj[0], proj[1])


def ring_from_name(name: str) -> BaseRing:
    if name in ("Z", "ZZ"):
        return BaseRing.integers()
    if name.startswith("Z/"):
        return BaseRing.mod(int(name[2:]))
    raise ValueError(f"unknown ring {name!r}")


def random_cocycle(rng: random.Random, tower, target: FgModule, prefix: int = 3, eventually_zero: bool = False):
    """Random entries on the first ``prefix`` stages; the tail repeats a random
    map out of stage ``prefix``, which stays well defined on later stages for
    every supported tail rule."""
    from .tower import Cocycle

    entries = tuple(random_hom(rng, tower.stage(i), target) for i in range(prefix))
    if eventually_zero:
        return Cocycle(tower, target, entries)
    tail = random_hom(rng, tower.stage(prefix), target)
    return Cocycle(tower, target, entries, tail.matrix)
