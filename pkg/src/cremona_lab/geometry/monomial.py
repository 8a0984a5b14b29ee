"""Monomial projective maps and their exact eigenspace decompositions.

A monomial map permutes the homogeneous coordinates and scales each one
by a root of unity.  The convention throughout: coordinate i lands in
slot perm(i), multiplied by scalings[i].  With that reading, composition
of maps matches composition of the underlying permutations, so a set of
monomial maps closes into a group without any order reversals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from ..errors import NotARootOfUnity, UnsupportedConductor
from ..groups import Permutation
from .cyclo import MAX_CONDUCTOR, Cyclotomic, cyclo

__all__ = [
    "MonomialMap",
    "Subspace",
    "fixed_subspaces",
    "normalize_point",
]

Vector = tuple[Cyclotomic, ...]

_ZERO = Cyclotomic.from_rational(0)
_ONE = Cyclotomic.from_rational(1)


def _root_of_unity_order(value: Cyclotomic) -> int:
    """Multiplicative order, or a NotARootOfUnity complaint."""
    if value.is_zero():
        raise NotARootOfUnity(f"{value!r} is zero")
    bound = value.m if value.m % 2 == 0 else 2 * value.m
    power = _ONE
    for k in range(1, bound + 1):
        power = power * value
        if power == _ONE:
            return k
    raise NotARootOfUnity(f"{value!r} is not a root of unity")


def _angle_of(value: Cyclotomic) -> tuple[int, int]:
    """Write a root of unity as zeta_M ** e with M its exact order."""
    order = _root_of_unity_order(value)
    for e in range(order):
        if cyclo(order, e) == value:
            return order, e
    raise NotARootOfUnity(f"{value!r} escaped its own order")  # pragma: no cover


def normalize_point(coords: Sequence[Cyclotomic]) -> Vector:
    """Scale a projective point so its first nonzero coordinate is 1."""
    pivot = next((c for c in coords if not c.is_zero()), None)
    if pivot is None:
        raise ValueError("the zero vector is not a projective point")
    inv = pivot.inv()
    return tuple(inv * c for c in coords)


@dataclass(frozen=True)
class MonomialMap:
    """A coordinate permutation composed with root-of-unity scalings."""

    dim: int
    perm: Permutation
    scalings: tuple[Cyclotomic, ...]

    def __post_init__(self) -> None:
        n = self.dim + 1
        if self.perm.degree != n or len(self.scalings) != n:
            raise ValueError(
                f"expected {n} coordinates, got perm degree {self.perm.degree} "
                f"and {len(self.scalings)} scalings"
            )
        for s in self.scalings:
            _root_of_unity_order(s)

    @staticmethod
    def identity(dim: int) -> "MonomialMap":
        return MonomialMap(dim, Permutation.identity(dim + 1), (_ONE,) * (dim + 1))

    @staticmethod
    def from_images(dim: int, images: Sequence[tuple[int, Cyclotomic]]) -> "MonomialMap":
        """Build from the substitution form: coordinate j of the image is
        scale * x[source], given as images[j] = (source, scale)."""
        n = dim + 1
        perm_images = [0] * n
        scalings: list[Cyclotomic] = [_ONE] * n
        for j, (source, scale) in enumerate(images):
            perm_images[source] = j
            scalings[source] = scale
        return MonomialMap(dim, Permutation(tuple(perm_images)), tuple(scalings))

    def apply(self, coords: Sequence[Cyclotomic]) -> Vector:
        out: list[Cyclotomic] = [_ZERO] * (self.dim + 1)
        for i, c in enumerate(coords):
            out[self.perm(i)] = self.scalings[i] * c
        return tuple(out)

    def apply_point(self, coords: Sequence[Cyclotomic]) -> Vector:
        return normalize_point(self.apply(coords))

    def __mul__(self, other: "MonomialMap") -> "MonomialMap":
        """self after other."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        perm = self.perm * other.perm
        scalings = tuple(
            other.scalings[i] * self.scalings[other.perm(i)]
            for i in range(self.dim + 1)
        )
        return MonomialMap(self.dim, perm, scalings)

    def inverse(self) -> "MonomialMap":
        inv_perm = self.perm.inverse()
        scalings = tuple(
            self.scalings[inv_perm(j)].inv() for j in range(self.dim + 1)
        )
        return MonomialMap(self.dim, inv_perm, scalings)

    def is_identity(self) -> bool:
        return self.perm.is_identity() and all(s == _ONE for s in self.scalings)

    def is_scalar(self) -> bool:
        return self.perm.is_identity() and all(
            s == self.scalings[0] for s in self.scalings
        )

    def order(self) -> int:
        """Order as a linear map."""
        power = self
        for k in range(1, 16_800 + 1):  # crude cap, far past any monomial order here
            if power.is_identity():
                return k
            power = power * self
        raise NotARootOfUnity(f"{self!r} has unreasonably large order")

    def matrix(self) -> tuple[Vector, ...]:
        n = self.dim + 1
        rows = [[_ZERO] * n for _ in range(n)]
        for i in range(n):
            rows[self.perm(i)][i] = self.scalings[i]
        return tuple(tuple(row) for row in rows)


@dataclass(frozen=True)
class Subspace:
    """An eigenspace of a monomial map, with its exact eigenvalue."""

    eigenvalue: Cyclotomic
    basis: tuple[Vector, ...]

    @property
    def projective_dim(self) -> int:
        return len(self.basis) - 1

    def points(self) -> tuple[Vector, ...]:
        """The subspace as projective points, when it is zero dimensional."""
        if self.projective_dim != 0:
            raise ValueError("subspace is not a single point")
        return (normalize_point(self.basis[0]),)


def _cycle_eigendata(
    mmap: MonomialMap, cycle: tuple[int, ...]
) -> list[tuple[Cyclotomic, Vector]]:
    """Eigenvalue and eigenvector contributions of one permutation cycle."""
    length = len(cycle)
    product = reduce(lambda a, b: a * b, (mmap.scalings[i] for i in cycle), _ONE)
    order, e = _angle_of(product)
    total = order * length
    out = []
    for j in range(length):
        # reduce the exponent fraction first, so eigenvalues that live in a
        # small field are accepted even when order * length overshoots
        frac = Fraction(e + j * order, total)
        lam = cyclo(frac.denominator, frac.numerator % frac.denominator)
        vec: list[Cyclotomic] = [_ZERO] * (mmap.dim + 1)
        vec[cycle[0]] = _ONE
        value = _ONE
        for idx in range(length - 1):
            value = value * mmap.scalings[cycle[idx]] / lam
            vec[cycle[idx + 1]] = value
        out.append((lam, tuple(vec)))
    return out


def fixed_subspaces(mmap: MonomialMap) -> tuple[Subspace, ...]:
    """Eigenspace decomposition of a monomial map.

    The fixed locus of the induced projective automorphism is exactly the
    union of the returned subspaces.  Ordering is deterministic: sorted by
    the eigenvalue's stored coordinates.
    """
    cycles = list(mmap.perm.cycles())
    moved = {i for cycle in cycles for i in cycle}
    cycles.extend((i,) for i in range(mmap.dim + 1) if i not in moved)
    buckets: dict[Cyclotomic, list[Vector]] = {}
    for cycle in cycles:
        for lam, vec in _cycle_eigendata(mmap, cycle):
            buckets.setdefault(lam, []).append(vec)
    def sort_key(lam: Cyclotomic):
        return (lam.m, tuple(lam.coeffs))
    return tuple(
        Subspace(lam, tuple(buckets[lam])) for lam in sorted(buckets, key=sort_key)
    )
