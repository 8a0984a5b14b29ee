"""Lifting obstructions for finite subgroups of the projective line.

A finite subgroup of PGL2 is cyclic, dihedral, or one of the three
polyhedral groups.  Its preimage in SL2 is a central extension by the
scalar involution, shipped as a permutation group in the catalog asset.
Two questions are answered here by finite search:

  * does a given central extension split (raw complement search), and
  * does the projective embedding lift to a 2-dimensional linear
    representation.

The second is not the first: a lift may use scalars of determinant other
than 1.  Writing m for the exponent of the subgroup, every linear lift
lands in the central product of the SL2 preimage with the scalars mu_2m,
so lift existence is a complement search in that amalgamated group.  The
odd dihedral groups are the cases where the two answers differ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product as iter_product
from typing import Optional

from .cohomology import FiniteAbelianGroup
from .errors import (
    CatalogValidationError,
    NotAProjectiveSubgroupTag,
    OrderBoundExceeded,
)
from .groups import (
    Homomorphism,
    IsoType,
    PermGroup,
    Permutation,
    alternating_group,
    close_generators,
    configured_order_bound,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    iso_type,
    quotient_by,
    symmetric_group,
)

__all__ = [
    "CentralExtension",
    "BinaryCatalogEntry",
    "as_projective_tag",
    "projective_group",
    "binary_catalog",
    "catalog_entry",
    "direct_product_with_c2",
    "extension_splits",
    "has_linear_lift",
    "amitsur_diag_p1p1",
]


@dataclass(frozen=True)
class CentralExtension:
    """A group with a distinguished central involution and named quotient."""

    total: PermGroup
    center_elt: Permutation
    quotient_type: IsoType

    def __post_init__(self):
        if self.center_elt not in self.total:
            raise CatalogValidationError("center element is not in the group")
        if self.center_elt.order() != 2:
            raise CatalogValidationError("center element does not have order 2")
        for g in self.total.generators:
            if (g * self.center_elt).images != (self.center_elt * g).images:
                raise CatalogValidationError("center element is not central")
        if self.total.order != 2 * self.quotient_type.order():
            raise CatalogValidationError(
                f"order {self.total.order} does not double "
                f"{self.quotient_type.order()}"
            )
        quotient, _ = self.quotient_with_projection()
        if iso_type(quotient) != self.quotient_type:
            raise CatalogValidationError(
                f"quotient has type {iso_type(quotient)}, "
                f"declared {self.quotient_type}"
            )

    def quotient_with_projection(self) -> tuple[PermGroup, Homomorphism]:
        center_group = self.total.subgroup([self.center_elt])
        return quotient_by(self.total, center_group.elements)


@dataclass(frozen=True)
class BinaryCatalogEntry:
    """A projective line subgroup together with its special linear cover."""

    base: IsoType
    extension: CentralExtension

    def __post_init__(self):
        if as_projective_tag(self.extension.quotient_type) != self.base:
            raise CatalogValidationError(
                f"extension quotient {self.extension.quotient_type} "
                f"does not match base {self.base}"
            )


def as_projective_tag(tag: IsoType) -> IsoType:
    """Normalize an isomorphism type to a projective line subgroup tag.

    The admissible outputs are Cyclic(n), Dihedral(n >= 2), Alt(4),
    Sym(4), Alt(5).  Recognized aliases (S2, S3, A3, Klein four products,
    odd dihedral or odd cyclic times C2) are folded in; anything else is
    rejected.
    """
    if tag.kind == "cyclic":
        if tag.n >= 1:
            return tag
    elif tag.kind == "dihedral":
        if tag.n == 1:
            return IsoType.cyclic(2)
        if tag.n >= 2:
            return tag
    elif tag.kind == "sym":
        if tag.n == 1:
            return IsoType.cyclic(1)
        if tag.n == 2:
            return IsoType.cyclic(2)
        if tag.n == 3:
            return IsoType.dihedral(3)
        if tag.n == 4:
            return tag
    elif tag.kind == "alt":
        if tag.n in (1, 2, 3):
            return IsoType.cyclic(1 if tag.n < 3 else 3)
        if tag.n in (4, 5):
            return tag
    elif tag.kind == "product" and len(tag.factors) == 2:
        first, second = tag.factors
        if second == IsoType.cyclic(2):
            if first == IsoType.cyclic(2):
                return IsoType.dihedral(2)
            inner = as_projective_tag(first)
            if inner.kind == "cyclic" and inner.n % 2 == 1:
                return IsoType.cyclic(2 * inner.n)
            if inner.kind == "dihedral" and inner.n % 2 == 1:
                return IsoType.dihedral(2 * inner.n)
    raise NotAProjectiveSubgroupTag(str(tag))


def projective_group(tag: IsoType) -> PermGroup:
    """A reference permutation group for an admissible projective tag."""
    tag = as_projective_tag(tag)
    if tag.kind == "cyclic":
        return cyclic_group(tag.n)
    if tag.kind == "dihedral":
        return dihedral_group(tag.n)
    if tag.kind == "alt":
        return alternating_group(tag.n)
    return symmetric_group(4)


def _load_entry(raw: dict) -> BinaryCatalogEntry:
    base = IsoType(raw["base"]["kind"], n=raw["base"]["n"])
    generators = [Permutation(tuple(images)) for images in raw["total"]["generators"]]
    total = close_generators(generators, degree=raw["total"]["degree"])
    index = raw["center_index"]
    if not 0 <= index < total.order:
        raise CatalogValidationError(f"center index {index} out of range")
    center = total.elements[index]
    reference = projective_group(base)
    extension = CentralExtension(total, center, iso_type(reference))
    return BinaryCatalogEntry(base, extension)


@lru_cache(maxsize=1)
def binary_catalog() -> tuple[BinaryCatalogEntry, ...]:
    """The shipped catalog, validated entry by entry at load."""
    payload = (
        resources.files("cremona_lab").joinpath("data/binary_catalog.json").read_text()
    )
    data = json.loads(payload)
    entries = tuple(_load_entry(raw) for raw in data["entries"])
    if len({e.base for e in entries}) != len(entries):
        raise CatalogValidationError("duplicate base tags in catalog")
    return entries


def catalog_entry(tag: IsoType) -> BinaryCatalogEntry:
    """Catalog entry for a tag, built on demand outside the shipped range."""
    tag = as_projective_tag(tag)
    for entry in binary_catalog():
        if entry.base == tag:
            return entry
    if tag.kind == "cyclic":
        total = cyclic_group(2 * tag.n)
    elif tag.kind == "dihedral":
        total = dicyclic_group(tag.n)
    else:
        raise CatalogValidationError(f"no catalog entry for {tag}")
    center = next(g for g in total.elements if g.order() == 2)
    reference = projective_group(tag)
    return BinaryCatalogEntry(tag, CentralExtension(total, center, iso_type(reference)))


def direct_product_with_c2(group: PermGroup) -> CentralExtension:
    """The split extension group x C2, with the new factor central."""
    d = group.degree
    gens = [Permutation(g.images + (d, d + 1)) for g in group.generators]
    swap = Permutation(tuple(range(d)) + (d + 1, d))
    total = close_generators(gens + [swap], degree=d + 2)
    return CentralExtension(total, swap, iso_type(group))


def extension_splits(ext: CentralExtension) -> bool:
    """Whether some subgroup maps isomorphically onto the quotient.

    A complement is generated by preimages of any quotient generating
    set, one of the two preimages per generator, so the search space is
    2^k closures with the order capped at half the group order.
    """
    if ext.total.order > configured_order_bound():
        raise OrderBoundExceeded(
            f"group order {ext.total.order} exceeds the configured bound"
        )
    quotient, projection = ext.quotient_with_projection()
    half = ext.total.order // 2
    preimages = []
    for q in quotient.generators:
        lifts = [g for g in ext.total.elements if projection(g).images == q.images]
        target_order = q.order()
        preimages.append([g for g in lifts if g.order() == target_order])
    for choice in iter_product(*preimages):
        try:
            closed = close_generators(
                list(choice), degree=ext.total.degree, order_bound=half
            )
        except OrderBoundExceeded:
            continue
        if closed.order == half:
            return True
    return False


def _pair_mul(total_mul, z, m):
    def mul(a, b):
        x, c = a
        y, d = b
        w = total_mul(x, y)
        e = c + d
        if e >= m:
            return (total_mul(w, z), e - m)
        return (w, e)

    return mul


def _pair_order(mul, identity_pair, pair, bound) -> int:
    power = pair
    for n in range(1, bound + 1):
        if power == identity_pair:
            return n
        power = mul(power, pair)
    raise OrderBoundExceeded("element order exceeded the search bound")


def _scalar_lift_splits(ext: CentralExtension) -> bool:
    """Complement search in the scalar amalgamation of the cover.

    Elements are pairs (x, c) with x in the cover and c mod 2m a scalar
    exponent, glued along (center, m) = identity; complements of the
    scalar kernel biject with linear lifts of the quotient embedding.
    """
    quotient, projection = ext.quotient_with_projection()
    m = quotient.exponent()
    z = ext.center_elt

    def total_mul(x, y):
        return x * y

    mul = _pair_mul(total_mul, z, m)
    identity_pair = (ext.total.identity, 0)
    order_cap = 2 * m * quotient.order
    candidate_lists = []
    for q in quotient.generators:
        lifts = [g for g in ext.total.elements if projection(g).images == q.images]
        target_order = q.order()
        candidates = []
        for x in lifts:
            for c in range(m):
                pair = (x, c)
                if _pair_order(mul, identity_pair, pair, order_cap) == target_order:
                    candidates.append(pair)
        candidate_lists.append(candidates)
    goal = quotient.order
    for choice in iter_product(*candidate_lists):
        seen = {(identity_pair[0].images, identity_pair[1])}
        frontier = [identity_pair]
        alive = True
        while frontier and alive:
            fresh = []
            for p in frontier:
                for s in choice:
                    nxt = mul(p, s)
                    key = (nxt[0].images, nxt[1])
                    if key not in seen:
                        seen.add(key)
                        if len(seen) > goal:
                            alive = False
                            break
                        fresh.append(nxt)
                if not alive:
                    break
            frontier = fresh
        if alive and len(seen) == goal:
            return True
    return False


def has_linear_lift(tag: IsoType) -> bool:
    """Whether the projective subgroup lifts to 2-dim linear matrices."""
    tag = as_projective_tag(tag)
    if tag.kind == "cyclic":
        return True
    return _scalar_lift_splits(catalog_entry(tag).extension)


def amitsur_diag_p1p1(tag: IsoType) -> FiniteAbelianGroup:
    """Obstruction group of the diagonal action on the product of lines."""
    if has_linear_lift(tag):
        return FiniteAbelianGroup(())
    return FiniteAbelianGroup((2,))
