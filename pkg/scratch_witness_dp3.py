"""Throwaway: order 3 isometry of the cubic surface lattice with big H1."""
import sys

sys.path.insert(0, "src")

from cremona_lab.cohomology import LatticeAction, h1_cyclic, h1_invariants
from cremona_lab.groups import close_generators
from cremona_lab.intlinalg import mat_mul
from cremona_lab.lattice import blowup_of_p2, invariant_rank, reflection, weyl_group

lat = blowup_of_p2(6)
pairs = [
    ((0, 1, -1, 0, 0, 0, 0), (0, 0, 1, -1, 0, 0, 0)),
    ((0, 0, 0, 0, 1, -1, 0), (0, 0, 0, 0, 0, 1, -1)),
    ((1, -1, -1, -1, 0, 0, 0), (1, 0, 0, 0, -1, -1, -1)),
]
# orthogonality audit of the three A2 blocks
flat = [r for p in pairs for r in p]
for i, a in enumerate(flat):
    for j, b in enumerate(flat):
        val = lat.pair(a, b)
        want = -2 if i == j else (1 if i // 2 == j // 2 else 0)
        assert val == want, (i, j, val, want)
print("A2 x A2 x A2 pairings confirmed")

sigma = None
for r1, r2 in pairs:
    m = mat_mul(reflection(lat, r1).matrix, reflection(lat, r2).matrix)
    sigma = m if sigma is None else mat_mul(sigma, m)

w = weyl_group(3)
perm = w.perm_of_matrix(sigma)
print("order:", perm.order())
print("invariant rank:", invariant_rank(lat, [sigma]))
print("h1 cyclic:", h1_cyclic(sigma, perm.order()))
sub = close_generators([perm])
print("h1 general:", h1_invariants(LatticeAction(sub, [sigma])))
print("matrix rows:")
for row in sigma:
    print(" ", row)
