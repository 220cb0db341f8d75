"""
Where a complex fails to be pure exact
======================================

"""

# the complex Z --2--> Z in degrees -1 and 0
from purederive import ZZ, BoundedComplex, ModuleMap, free, purity_profile

Z = free(ZZ, 1)
X = BoundedComplex(ZZ, {-1: Z, 0: Z}, {-1: ModuleMap(Z, Z, ((2,),))})
print(X.describe())

# it is exact in degree -1, yet the image 2Z is not a pure submodule of Z;
# Z/2 is the test module that sees it
prof = purity_profile(X, cross_check=True)
for n in range(-2, 2):
    v = prof.at(n)
    print(n, v.pure_exact, v.reason or "", v.witness_modulus or "")

print("inf_p =", prof.inf_p, " sup_p =", prof.sup_p)

# 0 -> Z/2 -> Z/4 -> Z/2 -> 0 is exact but not pure; split sequences always are
from purederive import ShortExactSequence, cyclic, is_pure_sequence

z2, z4 = cyclic(ZZ, 2), cyclic(ZZ, 4)
seq = ShortExactSequence(ModuleMap(z2, z4, ((2,),)), ModuleMap(z4, z2, ((1,),)))
print(is_pure_sequence(seq).to_json())
