"""Finite permutation groups by explicit element enumeration.

Groups here are small (every group this package meets has order at most a
few thousand, and most are far smaller), so the representation is blunt on
purpose: a group is its full sorted element list plus the generators that
produced it.  Closure is breadth first multiplication with a configurable
element bound, read from CREMONA_LAB_ORDER_BOUND when not passed explicitly.

Permutations act on 0-based points.  Composition follows functions:
(p * q)(i) == p(q(i)), so q applies first.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    DegreeMismatch,
    NotAGroup,
    NotAHomomorphism,
    NotAnAction,
    NotSurjective,
    OrderBoundExceeded,
)
from .intlinalg import abelian_invariants_from_divisors

__all__ = [
    "DEFAULT_ORDER_BOUND",
    "configured_order_bound",
    "Permutation",
    "PermGroup",
    "close_generators",
    "orbits",
    "Homomorphism",
    "quotient_by",
    "IsoType",
    "iso_type",
    "group_fingerprint",
    "find_isomorphism",
    "is_isomorphic",
    "GoursatData",
    "goursat_decompose",
    "fiber_product",
    "block_projection",
    "trivial_group",
    "cyclic_group",
    "dihedral_group",
    "symmetric_group",
    "alternating_group",
    "dicyclic_group",
]

DEFAULT_ORDER_BOUND = 10_000
_ENV_BOUND = "CREMONA_LAB_ORDER_BOUND"


def configured_order_bound() -> int:
    """Element bound for closures: the environment override or the default."""
    raw = os.environ.get(_ENV_BOUND)
    if raw is None:
        return DEFAULT_ORDER_BOUND
    try:
        value = int(raw)
    except ValueError as exc:
        raise OrderBoundExceeded(f"{_ENV_BOUND} is not an integer: {raw!r}") from exc
    if value < 1:
        raise OrderBoundExceeded(f"{_ENV_BOUND} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., n-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise NotAGroup(f"not a permutation of 0..{n - 1}: {self.images}")

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    @staticmethod
    def from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        """Build from disjoint cycles, e.g. from_cycles(4, [(0, 1, 2)])."""
        images = list(range(degree))
        for cycle in cycles:
            for i, pt in enumerate(cycle):
                images[pt] = cycle[(i + 1) % len(cycle)]
        return Permutation(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self.images) != len(other.images):
            raise DegreeMismatch(
                f"degree {len(self.images)} composed with degree {len(other.images)}"
            )
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def order(self) -> int:
        result = 1
        for cycle in self.cycles():
            result = math.lcm(result, len(cycle))
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return tuple(out)

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "Permutation(id)"
        text = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
        return f"Permutation({text})"


def _close(
    generators: Sequence[Permutation], degree: int, order_bound: int
) -> tuple[Permutation, ...]:
    identity = Permutation.identity(degree)
    seen: dict[tuple[int, ...], Permutation] = {identity.images: identity}
    frontier = [identity]
    while frontier:
        new_frontier = []
        for g in frontier:
            for s in generators:
                h = g * s
                if h.images not in seen:
                    seen[h.images] = h
                    new_frontier.append(h)
                    if len(seen) > order_bound:
                        raise OrderBoundExceeded(
                            f"closure exceeded {order_bound} elements"
                        )
        frontier = new_frontier
    return tuple(sorted(seen.values(), key=lambda p: p.images))


@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group with its full element list materialized.

    elements are sorted by image tuple, which fixes a deterministic order
    used everywhere downstream (wire formats index into it).
    """

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    _member: frozenset = field(repr=False, hash=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self._member

    def element_index(self, p: Permutation) -> int:
        """Position of p in the sorted element list."""
        lo, hi = 0, len(self.elements)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.elements[mid].images < p.images:
                lo = mid + 1
            else:
                hi = mid
        if lo >= len(self.elements) or self.elements[lo].images != p.images:
            raise NotAGroup(f"{p!r} is not an element of this group")
        return lo

    def is_abelian(self) -> bool:
        return all(
            (a * b).images == (b * a).images
            for i, a in enumerate(self.generators)
            for b in self.generators[i + 1 :]
        )

    def element_order_histogram(self) -> tuple[tuple[int, int], ...]:
        counts: dict[int, int] = {}
        for g in self.elements:
            o = g.order()
            counts[o] = counts.get(o, 0) + 1
        return tuple(sorted(counts.items()))

    def exponent(self) -> int:
        result = 1
        for o, _ in self.element_order_histogram():
            result = math.lcm(result, o)
        return result

    def subgroup(self, generators: Iterable[Permutation]) -> "PermGroup":
        """Subgroup generated by the given elements (must lie in the group)."""
        gens = tuple(generators)
        for g in gens:
            if g not in self:
                raise NotAGroup("generator outside the ambient group")
        return close_generators(gens, degree=self.degree, order_bound=self.order)

    def subgroup_from_elements(self, elements: Iterable[Permutation]) -> "PermGroup":
        elts = tuple(sorted(set(elements), key=lambda p: p.images))
        member = frozenset(p.images for p in elts)
        for a in elts:
            if a.inverse().images not in member:
                raise NotAGroup("element set not closed under inverse")
        gens = _small_generating_set(elts)
        return PermGroup(self.degree, gens, elts, member)

    def center_elements(self) -> tuple[Permutation, ...]:
        return tuple(
            g
            for g in self.elements
            if all((g * s).images == (s * g).images for s in self.generators)
        )

    def derived_subgroup(self) -> "PermGroup":
        seed = [
            a * b * a.inverse() * b.inverse()
            for a in self.generators
            for b in self.generators
        ]
        return self.normal_closure(seed)

    def normal_closure(self, seed: Iterable[Permutation]) -> "PermGroup":
        current = self.subgroup(tuple(seed))
        while True:
            conjugates = []
            for g in self.generators:
                ginv = g.inverse()
                for x in current.elements:
                    c = g * x * ginv
                    if c not in current:
                        conjugates.append(c)
            if not conjugates:
                return current
            current = self.subgroup(tuple(current.elements) + tuple(conjugates))

    def is_normal_subgroup(self, sub: "PermGroup") -> bool:
        return all(
            (g * x * g.inverse()) in sub
            for g in self.generators
            for x in sub.generators
        )

    def cyclic_subgroups(self) -> tuple["PermGroup", ...]:
        seen: dict[frozenset, PermGroup] = {}
        for g in self.elements:
            powers = [g]
            p = g
            while not p.is_identity():
                p = p * g
                powers.append(p)
            key = frozenset(q.images for q in powers)
            if key not in seen:
                seen[key] = self.subgroup_from_elements(powers)
        return tuple(sorted(seen.values(), key=_subgroup_sort_key))

    def subgroups(self, max_index: Optional[int] = None) -> tuple["PermGroup", ...]:
        """All subgroups, by closing joins of cyclic subgroups.

        Every subgroup is a join of cyclic ones, so the loop below reaches
        them all.  With max_index set, the enumeration still runs in full
        and the bound only filters the result.
        """
        cyclics = self.cyclic_subgroups()
        found: dict[frozenset, PermGroup] = {}
        trivial = self.subgroup_from_elements([self.identity])
        found[frozenset({self.identity.images})] = trivial
        for c in cyclics:
            found[frozenset(p.images for p in c.elements)] = c
        worklist = list(found.values())
        while worklist:
            sub = worklist.pop()
            for c in cyclics:
                gen = c.generators[0] if c.generators else self.identity
                if gen in sub:
                    continue
                joined = self.subgroup(tuple(sub.generators) + (gen,))
                key = frozenset(p.images for p in joined.elements)
                if key not in found:
                    found[key] = joined
                    worklist.append(joined)
        result = sorted(found.values(), key=_subgroup_sort_key)
        if max_index is not None:
            result = [h for h in result if h.order * max_index >= self.order]
        return tuple(result)


def _subgroup_sort_key(h: PermGroup):
    return (h.order, tuple(sorted(p.images for p in h.elements)))


def _small_generating_set(elements: tuple[Permutation, ...]) -> tuple[Permutation, ...]:
    if len(elements) == 1:
        return (elements[0],)
    degree = elements[0].degree
    order = len(elements)
    candidates = sorted(elements, key=lambda p: (-p.order(), p.images))
    gens: list[Permutation] = []
    closure = {Permutation.identity(degree).images}
    for cand in candidates:
        if cand.images in closure:
            continue
        gens.append(cand)
        closure = {p.images for p in _close(gens, degree, order)}
        if len(closure) == order:
            break
    if len(closure) != order:
        raise NotAGroup("element set is not closed under composition")
    return tuple(gens)


def close_generators(
    generators: Sequence[Permutation],
    degree: Optional[int] = None,
    order_bound: Optional[int] = None,
) -> PermGroup:
    """Group generated by the given permutations.

    Raises DegreeMismatch on inconsistent degrees and OrderBoundExceeded if
    the closure outgrows the bound.
    """
    if degree is None:
        if not generators:
            raise DegreeMismatch("no generators and no degree given")
        degree = generators[0].degree
    for g in generators:
        if g.degree != degree:
            raise DegreeMismatch(f"generator degree {g.degree}, expected {degree}")
    bound = order_bound if order_bound is not None else configured_order_bound()
    elements = _close(generators, degree, bound)
    member = frozenset(p.images for p in elements)
    return PermGroup(degree, tuple(generators), elements, member)


def trivial_group(degree: int = 1) -> PermGroup:
    return close_generators((), degree=degree)


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return trivial_group()
    gen = Permutation.from_cycles(n, [tuple(range(n))])
    return close_generators([gen])


def symmetric_group(n: int) -> PermGroup:
    if n <= 1:
        return trivial_group(max(n, 1))
    if n == 2:
        return cyclic_group(2)
    cycle = Permutation.from_cycles(n, [tuple(range(n))])
    swap = Permutation.from_cycles(n, [(0, 1)])
    return close_generators([cycle, swap])


def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return trivial_group(max(n, 1))
    if n == 3:
        return close_generators([Permutation.from_cycles(3, [(0, 1, 2)])])
    gens = [
        Permutation.from_cycles(n, [(0, 1, 2)]),
        Permutation.from_cycles(n, [tuple(range(n))])
        if n % 2 == 1
        else Permutation.from_cycles(n, [tuple(range(1, n))]),
    ]
    return close_generators(gens)


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n in its natural degree-n action (n >= 3).

    n = 1 gives C2 and n = 2 gives the Klein group on four points.
    """
    if n == 1:
        return cyclic_group(2)
    if n == 2:
        return close_generators(
            [
                Permutation.from_cycles(4, [(0, 1)]),
                Permutation.from_cycles(4, [(2, 3)]),
            ]
        )
    rotation = Permutation.from_cycles(n, [tuple(range(n))])
    reflection = Permutation(tuple((n - i) % n for i in range(n)))
    return close_generators([rotation, reflection])


def dicyclic_group(n: int) -> PermGroup:
    """Dicyclic group of order 4n in its regular degree-4n action.

    Points are indexed i + 2n*j for a^i b^j; the generators act by left
    multiplication.  n = 1 gives C4 and n = 2 the quaternion group.
    """
    if n < 1:
        raise NotAGroup(f"dicyclic parameter must be positive, got {n}")
    size = 4 * n
    two_n = 2 * n

    def index(i: int, j: int) -> int:
        return (i % two_n) + two_n * (j % 2)

    a_images = [0] * size
    b_images = [0] * size
    for i in range(two_n):
        for j in range(2):
            src = index(i, j)
            a_images[src] = index(i + 1, j)
            if j == 0:
                b_images[src] = index(-i, 1)
            else:
                b_images[src] = index(n - i, 0)
    return close_generators([Permutation(tuple(a_images)), Permutation(tuple(b_images))])


def orbits(
    group: PermGroup,
    action: Callable[[Permutation, object], object],
    points: Sequence[object],
) -> tuple[tuple[object, ...], ...]:
    """Orbit partition of the points under the group action.

    The action is validated on the generators: the identity must fix each
    point and action(s * t, p) must match action(s, action(t, p)).
    """
    identity = group.identity
    for p in points:
        if action(identity, p) != p:
            raise NotAnAction(f"identity moves the point {p!r}")
    for s in group.generators:
        for t in group.generators:
            st = s * t
            for p in points:
                if action(st, p) != action(s, action(t, p)):
                    raise NotAnAction(
                        f"compatibility fails on the point {p!r} for a generator pair"
                    )
    input_set = set(points)
    seen: set = set()
    out = []
    for start in points:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        frontier = [start]
        while frontier:
            nxt = []
            for p in frontier:
                for s in group.generators:
                    q = action(s, p)
                    if q not in seen:
                        seen.add(q)
                        orbit.append(q)
                        nxt.append(q)
            frontier = nxt
        orbit_set = set(orbit)
        ordered = [p for p in points if p in orbit_set]
        ordered.extend(p for p in orbit if p not in input_set)
        out.append(tuple(ordered))
    return tuple(out)


class Homomorphism:
    """A group homomorphism given by generator images, validated on build.

    The full element map is extended breadth first over the Cayley graph of
    the source; any inconsistent edge means the generator images do not
    define a homomorphism, reported as NotAHomomorphism.
    """

    def __init__(
        self,
        source: PermGroup,
        target: PermGroup,
        gen_images: Sequence[Permutation],
    ):
        if len(gen_images) != len(source.generators):
            raise NotAHomomorphism(
                f"{len(gen_images)} images for {len(source.generators)} generators"
            )
        for img in gen_images:
            if img not in target:
                raise NotAHomomorphism("generator image outside the target group")
        self.source = source
        self.target = target
        self.gen_images = tuple(gen_images)
        mapping: dict[tuple[int, ...], Permutation] = {
            source.identity.images: target.identity
        }
        frontier = [source.identity]
        while frontier:
            new_frontier = []
            for g in frontier:
                g_img = mapping[g.images]
                for s, s_img in zip(source.generators, self.gen_images):
                    h = g * s
                    h_img = g_img * s_img
                    known = mapping.get(h.images)
                    if known is None:
                        mapping[h.images] = h_img
                        new_frontier.append(h)
                    elif known.images != h_img.images:
                        raise NotAHomomorphism(
                            "generator images are inconsistent along a relation"
                        )
            frontier = new_frontier
        self._mapping = mapping

    def __call__(self, g: Permutation) -> Permutation:
        try:
            return self._mapping[g.images]
        except KeyError as exc:
            raise NotAGroup(f"{g!r} is not in the source group") from exc

    def image_elements(self) -> tuple[Permutation, ...]:
        seen = {}
        for img in self._mapping.values():
            seen[img.images] = img
        return tuple(sorted(seen.values(), key=lambda p: p.images))

    def is_surjective(self) -> bool:
        return len(self.image_elements()) == self.target.order

    def kernel_elements(self) -> tuple[Permutation, ...]:
        return tuple(
            g for g in self.source.elements if self._mapping[g.images].is_identity()
        )


def quotient_by(
    group: PermGroup, normal_elements: Sequence[Permutation]
) -> tuple[PermGroup, Homomorphism]:
    """Quotient by a normal subgroup, realized on its coset space.

    Returns the quotient as a permutation group of degree [G : N] together
    with the canonical projection.
    """
    n_set = frozenset(p.images for p in normal_elements)
    if group.identity.images not in n_set:
        raise NotAGroup("normal subgroup must contain the identity")
    sub = group.subgroup_from_elements(list(normal_elements))
    if not group.is_normal_subgroup(sub):
        raise NotAGroup("subgroup is not normal")
    coset_of: dict[tuple[int, ...], int] = {}
    cosets: list[Permutation] = []  # representative of each coset, discovery order
    for g in group.elements:
        if g.images in coset_of:
            continue
        rep_index = len(cosets)
        cosets.append(g)
        for x in sub.elements:
            coset_of[(g * x).images] = rep_index
    degree = len(cosets)

    def coset_perm(h: Permutation) -> Permutation:
        return Permutation(tuple(coset_of[(h * rep).images] for rep in cosets))

    gen_images = [coset_perm(s) for s in group.generators]
    quotient = close_generators(gen_images, degree=degree, order_bound=degree + 1)
    projection = Homomorphism(group, quotient, gen_images)
    if not projection.is_surjective():
        raise NotSurjective("quotient projection failed surjectivity")
    return quotient, projection


# ---------------------------------------------------------------------------
# Isomorphism type recognition


@dataclass(frozen=True)
class IsoType:
    """Tagged isomorphism type from a small catalog.

    kind is one of cyclic, dihedral, alt, sym, dicyclic, product, other.
    Products keep their factors sorted by descending order then name, so
    equality of tags is structural.
    """

    kind: str
    n: int = 0
    factors: tuple["IsoType", ...] = ()
    fingerprint: tuple = ()

    @staticmethod
    def cyclic(n: int) -> "IsoType":
        return IsoType("cyclic", n=n)

    @staticmethod
    def dihedral(n: int) -> "IsoType":
        return IsoType("dihedral", n=n)

    @staticmethod
    def alt(n: int) -> "IsoType":
        return IsoType("alt", n=n)

    @staticmethod
    def sym(n: int) -> "IsoType":
        return IsoType("sym", n=n)

    @staticmethod
    def dicyclic(n: int) -> "IsoType":
        return IsoType("dicyclic", n=n)

    @staticmethod
    def product(*factors: "IsoType") -> "IsoType":
        flat: list[IsoType] = []
        for f in factors:
            if f.kind == "product":
                flat.extend(f.factors)
            else:
                flat.append(f)
        flat.sort(key=lambda t: (-t.order(), str(t)))
        return IsoType("product", factors=tuple(flat))

    @staticmethod
    def other(order: int, fingerprint: tuple) -> "IsoType":
        return IsoType("other", n=order, fingerprint=fingerprint)

    def order(self) -> int:
        if self.kind == "cyclic":
            return self.n
        if self.kind == "dihedral":
            return 2 * self.n
        if self.kind == "alt":
            return math.factorial(self.n) // 2
        if self.kind == "sym":
            return math.factorial(self.n)
        if self.kind == "dicyclic":
            return 4 * self.n
        if self.kind == "product":
            result = 1
            for f in self.factors:
                result *= f.order()
            return result
        return self.n

    def __str__(self) -> str:
        if self.kind == "cyclic":
            return f"C{self.n}"
        if self.kind == "dihedral":
            return f"D{self.n}"
        if self.kind == "alt":
            return f"A{self.n}"
        if self.kind == "sym":
            return f"S{self.n}"
        if self.kind == "dicyclic":
            return f"Dic{self.n}"
        if self.kind == "product":
            return " x ".join(str(f) for f in self.factors)
        return f"Other(order={self.n})"


def group_fingerprint(group: PermGroup) -> tuple:
    """Relabeling-invariant fingerprint used for the Other tag and pruning."""
    derived = group.derived_subgroup()
    ab_quotient, _ = quotient_by(group, derived.elements)
    return (
        group.order,
        group.element_order_histogram(),
        _abelian_invariants(ab_quotient),
        len(group.center_elements()),
        derived.order,
    )


def _abelian_invariants(group: PermGroup) -> tuple[int, ...]:
    """Invariant factor chain of an abelian group, from element order counts."""
    if group.order == 1:
        return ()
    assert group.is_abelian()
    primaries: list[int] = []
    n = group.order
    p = 2
    prime_list = []
    while p * p <= n:
        if n % p == 0:
            prime_list.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        prime_list.append(n)
    for p in prime_list:
        # count elements killed by p^k, recover the partition of the p-part
        logs = [0]
        k = 1
        while True:
            count = sum(1 for g in group.elements if _power_is_identity(g, p**k))
            e = round(math.log(count, p))
            logs.append(e)
            if p**e == group_p_part(group.order, p):
                break
            k += 1
        parts = []
        for k in range(1, len(logs)):
            parts.append(logs[k] - logs[k - 1])
        # parts[k-1] = number of cyclic factors of order >= p^k
        exps = []
        for k, cnt in enumerate(parts, start=1):
            nxt = parts[k] if k < len(parts) else 0
            exps.extend([k] * (cnt - nxt))
        primaries.extend(p**e for e in exps)
    return abelian_invariants_from_divisors(tuple(primaries))


def group_p_part(order: int, p: int) -> int:
    result = 1
    while order % p == 0:
        order //= p
        result *= p
    return result


def _power_is_identity(g: Permutation, k: int) -> bool:
    return k % g.order() == 0


_SPLIT_ORDER_BOUND = 300


def iso_type(group: PermGroup) -> IsoType:
    """Canonical catalog tag of the abstract isomorphism type.

    Direct products are recognized before dihedral shapes, so groups like
    D6 report as S3 x C2.  Groups outside the catalog get the Other tag
    with a relabeling-invariant fingerprint.
    """
    order = group.order
    if order == 1:
        return IsoType.cyclic(1)
    if group.is_abelian():
        invariants = _abelian_invariants(group)
        if len(invariants) == 1:
            return IsoType.cyclic(invariants[0])
        return IsoType.product(*(IsoType.cyclic(d) for d in reversed(invariants)))
    if order <= _SPLIT_ORDER_BOUND:
        split = _direct_product_split(group)
        if split is not None:
            return split
    if order == 6:
        return IsoType.sym(3)
    dihedral_n = _match_dihedral(group)
    if dihedral_n is not None:
        return IsoType.dihedral(dihedral_n)
    dicyclic_n = _match_dicyclic(group)
    if dicyclic_n is not None:
        return IsoType.dicyclic(dicyclic_n)
    if order == 12:
        return IsoType.alt(4)
    fp = group_fingerprint(group)
    if order == 24 and fp == _reference_fingerprint("S4"):
        return IsoType.sym(4)
    if order == 60 and fp == _reference_fingerprint("A5"):
        return IsoType.alt(5)
    if order == 120 and fp == _reference_fingerprint("S5"):
        return IsoType.sym(5)
    if order == 360 and fp == _reference_fingerprint("A6"):
        return IsoType.alt(6)
    return IsoType.other(order, fp)


@lru_cache(maxsize=None)
def _reference_fingerprint(name: str) -> tuple:
    builders = {
        "S4": lambda: symmetric_group(4),
        "A5": lambda: alternating_group(5),
        "S5": lambda: symmetric_group(5),
        "A6": lambda: alternating_group(6),
    }
    return group_fingerprint(builders[name]())


def _match_dihedral(group: PermGroup) -> Optional[int]:
    order = group.order
    if order % 2 != 0 or order < 6:
        return None
    n = order // 2
    xs = [g for g in group.elements if g.order() == n]
    if not xs:
        return None
    for x in xs:
        rotation = _cyclic_elements(x)
        x_inv = x.inverse()
        for y in group.elements:
            if y.order() != 2 or y.images in rotation:
                continue
            if (y * x * y.inverse()).images == x_inv.images:
                return n
    return None


def _match_dicyclic(group: PermGroup) -> Optional[int]:
    order = group.order
    if order % 4 != 0 or order < 8:
        return None
    n = order // 4
    xs = [g for g in group.elements if g.order() == 2 * n]
    if not xs:
        return None
    for x in xs:
        rotation = _cyclic_elements(x)
        x_inv = x.inverse()
        x_n = x
        for _ in range(n - 1):
            x_n = x_n * x
        for y in group.elements:
            if y.images in rotation:
                continue
            if (y * y).images != x_n.images:
                continue
            if (y * x * y.inverse()).images == x_inv.images:
                return n
    return None


def _cyclic_elements(x: Permutation) -> frozenset:
    out = {Permutation.identity(x.degree).images}
    p = x
    while not p.is_identity():
        out.add(p.images)
        p = p * x
    return frozenset(out)


def _direct_product_split(group: PermGroup) -> Optional[IsoType]:
    candidates: dict[frozenset, PermGroup] = {}
    for g in group.elements:
        if g.is_identity():
            continue
        closure = group.normal_closure([g])
        if closure.order == group.order:
            continue
        key = frozenset(p.images for p in closure.elements)
        candidates.setdefault(key, closure)
    ordered = sorted(candidates.values(), key=_subgroup_sort_key)
    for i, n1 in enumerate(ordered):
        for n2 in ordered[i:]:
            if n1.order * n2.order != group.order:
                continue
            inter = sum(1 for p in n1.elements if p in n2)
            if inter != 1:
                continue
            return IsoType.product(iso_type(n1), iso_type(n2))
    return None


def find_isomorphism(g: PermGroup, h: PermGroup) -> Optional[Homomorphism]:
    """Search for an isomorphism g -> h; None if the groups differ.

    Candidates for each generator image are filtered by element order, and
    every full assignment is validated through the Homomorphism builder.
    """
    if g.order != h.order:
        return None
    if g.element_order_histogram() != h.element_order_histogram():
        return None
    gens = _small_generating_set(g.elements)
    base = g.subgroup(gens)
    if base.order != g.order:
        raise NotAGroup("generating set reconstruction failed")
    candidate_lists = [
        [x for x in h.elements if x.order() == s.order()] for s in gens
    ]

    def attempt(images: list[Permutation]) -> Optional[Homomorphism]:
        try:
            hom = Homomorphism(base, h, images)
        except NotAHomomorphism:
            return None
        if len(hom.image_elements()) == h.order:
            return hom
        return None

    def backtrack(index: int, chosen: list[Permutation]) -> Optional[Homomorphism]:
        if index == len(gens):
            return attempt(chosen)
        for cand in candidate_lists[index]:
            result = backtrack(index + 1, chosen + [cand])
            if result is not None:
                return result
        return None

    return backtrack(0, [])


def is_isomorphic(g: PermGroup, h: PermGroup) -> bool:
    return find_isomorphism(g, h) is not None


# ---------------------------------------------------------------------------
# Goursat decomposition of subgroups of a product


@dataclass(frozen=True)
class GoursatData:
    """The Goursat datum (A1, A2, D, phi, psi) of a subdirect product.

    left_map and right_map are surjections of the two factors onto the
    common quotient; the associated fiber product is
    {(a1, a2) : left_map(a1) == right_map(a2)}.
    """

    left: PermGroup
    right: PermGroup
    quotient: PermGroup
    left_map: Homomorphism
    right_map: Homomorphism

    def __post_init__(self) -> None:
        if not self.left_map.is_surjective():
            raise NotSurjective("left map onto the common quotient is not onto")
        if not self.right_map.is_surjective():
            raise NotSurjective("right map onto the common quotient is not onto")


def fiber_product(data: GoursatData) -> PermGroup:
    """The fiber product as a permutation group on the disjoint point sets.

    The first block of points carries the left factor, the second block the
    right factor; coordinate projections can be read back off the blocks.
    """
    dl = data.left.degree
    dr = data.right.degree
    elements = []
    by_image: dict[tuple[int, ...], list[Permutation]] = {}
    for a2 in data.right.elements:
        by_image.setdefault(data.right_map(a2).images, []).append(a2)
    for a1 in data.left.elements:
        key = data.left_map(a1).images
        for a2 in by_image.get(key, []):
            merged = tuple(a1.images) + tuple(dl + i for i in a2.images)
            elements.append(Permutation(merged))
    expected = data.left.order * data.right.order // data.quotient.order
    if len(elements) != expected:
        raise NotAGroup(
            f"fiber product size {len(elements)} does not match {expected}"
        )
    ambient = PermGroup(
        dl + dr,
        (),
        tuple(sorted(elements, key=lambda p: p.images)),
        frozenset(p.images for p in elements),
    )
    return ambient.subgroup_from_elements(elements)


def block_projection(
    product_group: PermGroup, left_degree: int, target: PermGroup, side: str
) -> Homomorphism:
    """Coordinate projection of a block-embedded subgroup of a product."""
    images = []
    for s in product_group.generators:
        if side == "left":
            restricted = Permutation(tuple(s.images[:left_degree]))
        else:
            restricted = Permutation(
                tuple(i - left_degree for i in s.images[left_degree:])
            )
        if restricted not in target:
            raise NotAGroup(f"projection leaves the {side} factor")
        images.append(restricted)
    return Homomorphism(product_group, target, images)


def goursat_decompose(
    b: PermGroup, proj_left: Homomorphism, proj_right: Homomorphism
) -> GoursatData:
    """Recover the Goursat datum of a subdirect product from its projections.

    Both projections must be onto their factors.  The common quotient is
    A1 / proj_left(ker proj_right), realized on its coset space.
    """
    if not proj_left.is_surjective():
        raise NotSurjective("projection onto the left factor is not onto")
    if not proj_right.is_surjective():
        raise NotSurjective("projection onto the right factor is not onto")
    left = proj_left.target
    right = proj_right.target
    kernel_right = proj_right.kernel_elements()
    n1 = sorted({proj_left(x).images for x in kernel_right})
    n1_elements = [Permutation(im) for im in n1]
    quotient, to_quotient = quotient_by(left, n1_elements)
    # psi sends a2 to the class of any partner a1 with (a1, a2) in B.
    partner: dict[tuple[int, ...], Permutation] = {}
    for x in b.elements:
        a2 = proj_right(x)
        if a2.images not in partner:
            partner[a2.images] = proj_left(x)
    psi_images = []
    for s in right.generators:
        a1 = partner.get(s.images)
        if a1 is None:
            raise NotSurjective("right projection misses a generator")
        psi_images.append(to_quotient(a1))
    left_map = Homomorphism(left, quotient, [to_quotient(s) for s in left.generators])
    right_map = Homomorphism(right, quotient, psi_images)
    return GoursatData(left, right, quotient, left_map, right_map)
