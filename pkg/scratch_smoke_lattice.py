"""Throwaway smoke: lattice counts, Weyl orders, matrix round trips."""
import sys
import time

sys.path.insert(0, "src")

from cremona_lab.groups import iso_type
from cremona_lab.lattice import (
    blowup_of_p2,
    invariant_basis,
    invariant_rank,
    minus_one_classes,
    quadric,
    root_classes,
    weyl_group,
)

for k in range(0, 9):
    lat = blowup_of_p2(k)
    lines = minus_one_classes(lat)
    roots = root_classes(lat)
    print(f"k={k} degree={lat.degree} lines={len(lines)} roots={len(roots)}")

q = quadric()
print("quadric degree:", q.degree, "lines:", len(minus_one_classes(q)))

for degree in (6, 5, 4, 3):
    t0 = time.time()
    w = weyl_group(degree)
    dt = time.time() - t0
    print(f"W(deg {degree}): order={w.order} lines={len(w.lines)} ({dt:.2f}s)")

w6 = weyl_group(6)
print("W(6) tag:", str(iso_type(w6.perm_group)))
w5 = weyl_group(5)
print("W(5) tag:", str(iso_type(w5.perm_group)))

# matrix round trip on a random-ish element of W(4)
w4 = weyl_group(4)
p = w4.perm_group.elements[777]
m = w4.matrix_for(p)
assert w4.perm_of_matrix(m).images == p.images
print("W(4) matrix round trip ok; invariant rank of that element:", invariant_rank(w4.lattice, [m]))

# identity fixes everything
print("full invariant rank:", invariant_rank(w4.lattice, []))
print("invariant basis of W(6) full group:", invariant_basis(w6.lattice, [w6.matrix_for(g) for g in w6.perm_group.generators]))

t0 = time.time()
w3 = weyl_group(3)
sample = w3.perm_group.elements[12345]
m3 = w3.matrix_for(sample)
print("W(3) sample matrix reconstruction ok:", w3.perm_of_matrix(m3).images == sample.images, f"({time.time()-t0:.2f}s)")
