"""
The rationals as a colimit of copies of Z
=========================================

"""

from purederive import ZZ, cocycle_decide, colim_presentation, cyclic, hocolim_resolution, rationals_tower
from purederive.tower import all_ones_cocycle

# Z -2-> Z -3-> Z -4-> ...  has colimit Q
T = rationals_tower()

# the 1-shift map on the first four stages: blocks (1, -(i+2))
P = colim_presentation(T, 8)
for row in P.shift_matrix(4):
    print(row)
print("every truncation exact, monic and pure:", P.ok)

# the two-term homotopy colimit gives ppd(Q) <= 1
print("upper bound:", hocolim_resolution(T).bound)

# the all-ones cocycle into Z is not a coboundary: a_0 would have to be
# congruent to s_k modulo M_k = (k+1)! for every k, which no integer is
v = cocycle_decide(all_ones_cocycle(T, cyclic(ZZ, 0)), depth_limit=8)
for k, s, M in v.rows:
    print(k, s, M, v.exclusion_bound(k))
print("certificate verified:", v.verify())

# into a finite target the same cocycle is a coboundary, with an explicit witness
w = cocycle_decide(all_ones_cocycle(T, cyclic(ZZ, 6)))
print(w.rule, [w.entry(i).matrix for i in range(4)], w.verify(10))
