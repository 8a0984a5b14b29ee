"""Build the binary group catalog asset.

Each entry pairs a finite projective line subgroup with its special linear
preimage, shipped as a faithful permutation group plus the index of the
central involution.  Constructions are exact:

  * cyclic and dicyclic covers come from the library constructors,
  * the order 24 and order 120 covers are SL(2,3) and SL(2,5) acting on
    the nonzero vectors of the plane over F3 and F5,
  * the order 48 cover is the group of 48 unit quaternions with
    coordinates in Q(sqrt 2), realized through its left regular action.

Run from the repository root:  python3 scripts/build_binary_catalog.py
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cremona_lab.groups import (
    PermGroup,
    Permutation,
    alternating_group,
    close_generators,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    iso_type,
    quotient_by,
    symmetric_group,
)

OUT_PATH = Path(__file__).resolve().parent.parent / "src" / "cremona_lab" / "data" / "binary_catalog.json"

DIHEDRAL_RANGE = range(2, 13)
CYCLIC_RANGE = range(1, 13)


def sl2_permutation_group(p: int) -> PermGroup:
    """SL(2, p) acting on the p*p - 1 nonzero column vectors."""
    vectors = [(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def perm_of(matrix):
        (m00, m01), (m10, m11) = matrix
        images = []
        for a, b in vectors:
            images.append(index[((m00 * a + m01 * b) % p, (m10 * a + m11 * b) % p)])
        return Permutation(tuple(images))

    s = perm_of(((0, p - 1), (1, 0)))
    t = perm_of(((1, 1), (0, 1)))
    return close_generators([s, t], degree=len(vectors))


# Coefficients are pairs (u, v) standing for u + v*sqrt(2).

def cadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def cmul(x, y):
    return (x[0] * y[0] + 2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def cneg(x):
    return (-x[0], -x[1])


def qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    w = cadd(cmul(a0, b0), cneg(cadd(cmul(a1, b1), cadd(cmul(a2, b2), cmul(a3, b3)))))
    x = cadd(cadd(cmul(a0, b1), cmul(a1, b0)), cadd(cmul(a2, b3), cneg(cmul(a3, b2))))
    y = cadd(cadd(cmul(a0, b2), cneg(cmul(a1, b3))), cadd(cmul(a2, b0), cmul(a3, b1)))
    z = cadd(cadd(cmul(a0, b3), cmul(a1, b2)), cadd(cneg(cmul(a2, b1)), cmul(a3, b0)))
    return (w, x, y, z)


def binary_octahedral_group() -> PermGroup:
    zero = (Fraction(0), Fraction(0))
    half = (Fraction(1, 2), Fraction(0))
    root_half = (Fraction(0), Fraction(1, 2))  # sqrt(2)/2 = 1/sqrt(2)
    s = (half, half, half, half)  # (1 + i + j + k) / 2, order 6
    t = (root_half, root_half, zero, zero)  # (1 + i) / sqrt(2), order 8
    one = ((Fraction(1), Fraction(0)), zero, zero, zero)
    elements = {one}
    frontier = [one]
    while frontier:
        fresh = []
        for q in frontier:
            for g in (s, t):
                r = qmul(q, g)
                if r not in elements:
                    elements.add(r)
                    fresh.append(r)
        frontier = fresh
    assert len(elements) == 48, len(elements)
    ordered = sorted(elements)
    index = {q: i for i, q in enumerate(ordered)}

    def left_mult_perm(g):
        return Permutation(tuple(index[qmul(g, q)] for q in ordered))

    return close_generators([left_mult_perm(s), left_mult_perm(t)], degree=48)


def unique_involution_index(group: PermGroup) -> int:
    involutions = [i for i, g in enumerate(group.elements) if g.order() == 2]
    assert len(involutions) == 1, f"expected a unique involution, got {len(involutions)}"
    return involutions[0]


def validate(entry, reference: PermGroup) -> None:
    group = close_generators(
        [Permutation(tuple(images)) for images in entry["total"]["generators"]],
        degree=entry["total"]["degree"],
    )
    center = group.elements[entry["center_index"]]
    assert center.order() == 2
    assert all((center * g).images == (g * center).images for g in group.generators)
    assert group.order == 2 * reference.order
    quotient, _ = quotient_by(group, group.subgroup([center]).elements)
    assert iso_type(quotient) == iso_type(reference), (
        entry["base"], str(iso_type(quotient)), str(iso_type(reference)))


def entry_for(base_kind: str, base_n: int, total: PermGroup, reference: PermGroup) -> dict:
    entry = {
        "base": {"kind": base_kind, "n": base_n},
        "total": {
            "degree": total.degree,
            "generators": [list(g.images) for g in total.generators],
        },
        "center_index": unique_involution_index(total),
    }
    validate(entry, reference)
    return entry


def main() -> None:
    entries = []
    for n in CYCLIC_RANGE:
        entries.append(entry_for("cyclic", n, cyclic_group(2 * n), cyclic_group(n)))
    for n in DIHEDRAL_RANGE:
        entries.append(entry_for("dihedral", n, dicyclic_group(n), dihedral_group(n)))
    entries.append(entry_for("alt", 4, sl2_permutation_group(3), alternating_group(4)))
    entries.append(entry_for("sym", 4, binary_octahedral_group(), symmetric_group(4)))
    entries.append(entry_for("alt", 5, sl2_permutation_group(5), alternating_group(5)))
    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    OUT_PATH.write_text(json.dumps({"entries": entries}, indent=1) + "\n")
    print(f"wrote {len(entries)} entries to {OUT_PATH}")


if __name__ == "__main__":
    main()
