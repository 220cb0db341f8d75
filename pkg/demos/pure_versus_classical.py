"""
Pure and classical Ext over the integers
========================================

"""

from purederive import ZZ, classical_ext_Z, cyclic, pext, stalk

# every finitely generated abelian group is pure projective, so Pext^1
# between modules vanishes while the classical Ext^1 usually does not
for a, b in [(2, 2), (4, 6), (3, 9), (5, 7)]:
    M, N = cyclic(ZZ, a), cyclic(ZZ, b)
    print(f"Z/{a}, Z/{b}:", "Pext^1 =", pext(stalk(M), stalk(N), 1), " Ext^1 =", classical_ext_Z(M, N, 1))

# in degree 0 both are Hom
print(pext(stalk(cyclic(ZZ, 6)), stalk(cyclic(ZZ, 4)), 0))

# over Z/8 the projective and injective routes give the same group
from purederive import BaseRing
from purederive.generators import random_complex
import random

R8 = BaseRing.mod(8)
rng = random.Random(0)
X = random_complex(rng, R8, length=2, max_gens=2, finite=True)
Y = random_complex(rng, R8, length=2, max_gens=2, finite=True)
for i in range(-1, 3):
    print(i, pext(X, Y, i, route="projective"), pext(X, Y, i, route="injective"))
