"""Throwaway oracle: subgroup counts by raw subset enumeration."""
import itertools
import sys

sys.path.insert(0, "src")

from cremona_lab.groups import (
    Permutation,
    alternating_group,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    symmetric_group,
)


def subset_subgroup_count(group):
    elts = group.elements
    n = len(elts)
    ident = group.identity
    others = [e for e in elts if not e.is_identity()]
    count = 0
    # subgroup orders divide n; enumerate subsets containing identity
    found = []
    for r in range(0, len(others) + 1):
        if (r + 1) != 1 and n % (r + 1) != 0:
            continue
        for combo in itertools.combinations(others, r):
            s = {ident.images} | {p.images for p in combo}
            ok = True
            for a in combo + (ident,):
                for b in combo + (ident,):
                    if (a * b).images not in s:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                count += 1
                found.append(frozenset(s))
    return count, found


for name, g in [
    ("C6", cyclic_group(6)),
    ("S3", symmetric_group(3)),
    ("D4", dihedral_group(4)),
    ("Q8", dicyclic_group(2)),
    ("Dic3", dicyclic_group(3)),
    ("A4", alternating_group(4)),
]:
    cnt, _ = subset_subgroup_count(g)
    mine = len(g.subgroups())
    print(f"{name}: subset-oracle={cnt} closure-enum={mine} order={g.order}")
