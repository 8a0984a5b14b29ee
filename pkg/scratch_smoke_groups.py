"""Throwaway smoke: recognition, quotients, Goursat, timing."""
import sys
import time

sys.path.insert(0, "src")

from cremona_lab.groups import (
    GoursatData,
    Homomorphism,
    Permutation,
    alternating_group,
    block_projection,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    fiber_product,
    find_isomorphism,
    goursat_decompose,
    iso_type,
    quotient_by,
    symmetric_group,
    trivial_group,
)

t0 = time.time()
a5 = alternating_group(5)
subs = a5.subgroups()
print(f"A5 subgroups: {len(subs)}  ({time.time()-t0:.2f}s)")
print("A5 index<=4:", [h.order for h in a5.subgroups(max_index=4)])

t0 = time.time()
s5 = symmetric_group(5)
subs5 = s5.subgroups()
print(f"S5 subgroups: {len(subs5)}  ({time.time()-t0:.2f}s)")

# iso_type recognitions
cases = [
    ("C1", trivial_group(), "C1"),
    ("C6", cyclic_group(6), "C6"),
    ("S3", symmetric_group(3), "S3"),
    ("D4", dihedral_group(4), "D4"),
    ("D5", dihedral_group(5), "D5"),
    ("D6", dihedral_group(6), "S3 x C2"),
    ("D10", dihedral_group(10), "D5 x C2"),
    ("Q8", dicyclic_group(2), "Dic2"),
    ("Dic3", dicyclic_group(3), "Dic3"),
    ("A4", alternating_group(4), "A4"),
    ("S4", symmetric_group(4), "S4"),
    ("A5", a5, "A5"),
    ("S5", s5, "S5"),
]
for name, g, want in cases:
    got = str(iso_type(g))
    flag = "ok" if got == want else "MISMATCH"
    print(f"iso_type {name}: {got} (want {want}) {flag}")

# C2 x C2 abelian path
v4 = dihedral_group(2)
print("iso_type V4:", str(iso_type(v4)))

# quotient: S4 / V4 = S3
s4 = symmetric_group(4)
v4n = [
    Permutation.identity(4),
    Permutation.from_cycles(4, [(0, 1), (2, 3)]),
    Permutation.from_cycles(4, [(0, 2), (1, 3)]),
    Permutation.from_cycles(4, [(0, 3), (1, 2)]),
]
q, proj = quotient_by(s4, v4n)
print("S4/V4:", str(iso_type(q)), "order", q.order)

# find_isomorphism: F20 inside S5 vs itself with different generators
f20 = s5.subgroup(
    [Permutation.from_cycles(5, [(0, 1, 2, 3, 4)]), Permutation.from_cycles(5, [(1, 2, 4, 3)])]
)
print("F20 order:", f20.order, "tag:", str(iso_type(f20)))
t0 = time.time()
iso = find_isomorphism(f20, f20)
print("F20 self-iso found:", iso is not None, f"({time.time()-t0:.2f}s)")
print("F20 vs Dic5:", find_isomorphism(f20, dicyclic_group(5)) is not None)

# Goursat round trip: B = S3 x_{C2} S3 (order 18)
s3 = symmetric_group(3)
c2 = cyclic_group(2)
sgn = Homomorphism(s3, c2, [Permutation.from_cycles(2, [(0, 1)]) if s.order() == 2 else Permutation.identity(2) for s in s3.generators])
data = GoursatData(s3, s3, c2, sgn, sgn)
b = fiber_product(data)
print("S3 x_{C2} S3 order:", b.order, "degree:", b.degree)
pl = block_projection(b, 3, s3, "left")
pr = block_projection(b, 3, s3, "right")
redata = goursat_decompose(b, pl, pr)
b2 = fiber_product(redata)
print("round trip same elements:", set(p.images for p in b.elements) == set(p.images for p in b2.elements))
print("quotient tag:", str(iso_type(redata.quotient)))

# full product via trivial quotient
triv = trivial_group()
tmapl = Homomorphism(s3, triv, [Permutation.identity(1) for _ in s3.generators])
d5 = dihedral_group(5)
tmapr = Homomorphism(d5, triv, [Permutation.identity(1) for _ in d5.generators])
full = fiber_product(GoursatData(s3, d5, triv, tmapl, tmapr))
print("S3 x D5 order:", full.order, "tag:", str(iso_type(full)))

# graph subgroup: diagonal S3 in S3 x S3 via identity quotient
idq = Homomorphism(s3, s3, list(s3.generators))
diag = fiber_product(GoursatData(s3, s3, s3, idq, idq))
print("diagonal S3 order:", diag.order, "tag:", str(iso_type(diag)))
