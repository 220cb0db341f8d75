"""
Resolutions, Pext and the pure projective dimension
===================================================

"""

from purederive import ZZ, BoundedComplex, ModuleMap, free, cyclic, stalk
from purederive.resolve import padded_precover, pure_projective_resolution, split_off_tail

Z = free(ZZ, 1)
X = BoundedComplex(ZZ, {-1: Z, 0: Z}, {-1: ModuleMap(Z, Z, ((2,),))})

# a padded precover adds a free summand in every base case, so the resolvent
# carries a contractible tail next to the interesting part
R = pure_projective_resolution(X, padded_precover(1))
print(R.resolvent.describe())
print(R.certificate.to_json())

# splitting the tail off at n = 1 leaves a part that vanishes below degree -1
ts = split_off_tail(R, 1)
print("kept:", ts.P1.describe(), " tail:", ts.P2.describe())

# every criterion is evaluated on its own; they all switch on at n = 1
from purederive import ppd, criteria_report

print(criteria_report(X, 0).to_json()["criteria"])
print(criteria_report(X, 1).to_json()["criteria"])
value, report = ppd(X)
print("ppd =", value)

# Pext against a stalk: nonzero in degree 1
from purederive import pext

for i in range(-1, 3):
    print(i, pext(X, stalk(cyclic(ZZ, 2)), i))
