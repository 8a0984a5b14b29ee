"""Throwaway smoke: classic H1 values and the cyclic cross check."""
import sys

sys.path.insert(0, "src")

from cremona_lab.cohomology import LatticeAction, h1_cyclic, h1_invariants
from cremona_lab.groups import Permutation, close_generators, cyclic_group, symmetric_group
from cremona_lab.lattice import weyl_group

c2 = cyclic_group(2)

# sign module: H1 = Z/2
sign = LatticeAction(c2, [((-1,),)])
print("C2 sign:", h1_invariants(sign))

# swap module: permutation module, H1 = 0
swap = LatticeAction(c2, [((0, 1), (1, 0))])
print("C2 swap:", h1_invariants(swap))

# minus identity on Z^2: H1 = (Z/2)^2
minus = LatticeAction(c2, [((-1, 0), (0, -1))])
print("C2 -I:", h1_invariants(minus))

# C3 regular permutation module: H1 = 0
c3 = cyclic_group(3)
rot = LatticeAction(c3, [((0, 0, 1), (1, 0, 0), (0, 1, 0))])
print("C3 perm:", h1_invariants(rot))

# S3 permutation module on Z^3: H1 = 0
s3 = symmetric_group(3)
mats = []
for g in s3.generators:
    mats.append(tuple(tuple(1 if g(j) == i else 0 for j in range(3)) for i in range(3)))
print("S3 perm:", h1_invariants(LatticeAction(s3, mats)))

# cyclic cross check on every cyclic subgroup of W(5) and W(6)
for degree in (6, 5):
    w = weyl_group(degree)
    mismatches = 0
    seen = set()
    for g in w.perm_group.elements:
        n = g.order()
        if n == 1 or g.images in seen:
            continue
        # mark the cyclic subgroup as seen
        p = g
        while not p.is_identity():
            seen.add(p.images)
            p = p * g
        m = w.matrix_for(g)
        sub = close_generators([g])
        general = h1_invariants(LatticeAction(sub, [m]))
        special = h1_cyclic(m, n)
        if general != special:
            mismatches += 1
            print("MISMATCH", degree, g, general, special)
    print(f"deg {degree}: cyclic cross check done, mismatches={mismatches}")

# order 6 element of W(6) with H1 != 0? report the spectrum of values
w6 = weyl_group(6)
values = {}
for g in w6.perm_group.elements:
    m = w6.matrix_for(g)
    inv = h1_cyclic(m, g.order())
    values.setdefault((g.order(), inv), 0)
    values[(g.order(), inv)] += 1
print("W(6) cyclic H1 spectrum:", sorted(values.items()))
