"""First group cohomology of integral lattice actions.

A cocycle is determined by its values on the chosen generators, so the
cocycle group is cut out of Z^(k*r) by one linear condition per redundant
edge of the Cayley graph.  H1 is that kernel modulo the coboundaries, read
off through Smith reduction.  Everything is exact integer arithmetic.

For cyclic groups the textbook description ker(norm)/im(sigma - 1) gives
an independent computation, kept here as a cross check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAHomomorphism, OrderBoundExceeded
from .groups import PermGroup
from .intlinalg import (
    Matrix,
    abelian_invariants_from_divisors,
    identity_matrix,
    integer_quotient_divisors,
    kernel_basis,
    mat_add,
    mat_mul,
    mat_scale,
    solve_integer_combination,
)
from .lattice import LatticeAction

__all__ = [
    "FiniteAbelianGroup",
    "H1Witness",
    "Ok",
    "h1",
    "h1_all_subgroups",
    "h1_invariants",
    "h1_cyclic",
]

MAX_RANK = 16


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite abelian group in elementary divisor form.

    divisors is the canonical chain d_1 | d_2 | ..., every entry at least
    2; the empty chain is the trivial group.
    """

    divisors: tuple[int, ...]

    def __post_init__(self):
        for d in self.divisors:
            if d < 2:
                raise ValueError(f"elementary divisor {d} below 2")
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a != 0:
                raise ValueError(f"divisor chain {self.divisors} is not nested")

    @property
    def is_trivial(self) -> bool:
        return not self.divisors

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.divisors[-1] if self.divisors else 1

    def __str__(self) -> str:
        if not self.divisors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.divisors)


@dataclass(frozen=True)
class H1Witness:
    """A subgroup with nonvanishing H1 of the restricted module."""

    subgroup: PermGroup
    h1: FiniteAbelianGroup

    def __post_init__(self):
        if self.h1.is_trivial:
            raise ValueError("a witness must carry a nontrivial H1")


class _OkType:
    __slots__ = ()

    def __repr__(self) -> str:
        return "Ok"


Ok = _OkType()


def h1(action: LatticeAction) -> FiniteAbelianGroup:
    """H1(G, L) in canonical elementary divisor form."""
    return FiniteAbelianGroup(h1_invariants(action))


def h1_all_subgroups(action: LatticeAction) -> _OkType | H1Witness:
    """Ok when H1 vanishes for every subgroup, else the first witness.

    Subgroups are visited by order, then by their sorted element images,
    so the reported witness does not depend on enumeration order.
    """
    subgroups = sorted(
        action.group.subgroups(),
        key=lambda h: (h.order, tuple(e.images for e in h.elements)),
    )
    for sub in subgroups:
        invariants = h1_invariants(action.restricted_to(sub))
        if invariants:
            return H1Witness(sub, FiniteAbelianGroup(invariants))
    return Ok


def h1_invariants(action: LatticeAction) -> tuple[int, ...]:
    """Invariant factors of H1(G, L) for the given lattice action.

    Returns the canonical divisor chain, so the trivial group of classes is
    the empty tuple and (3, 3) means two independent order 3 classes.
    """
    group = action.group
    k = len(group.generators)
    r = action.rank
    if k == 0 or r == 0:
        return ()
    if r > MAX_RANK:
        raise OrderBoundExceeded(f"module rank {r} exceeds bound {MAX_RANK}")
    # c(g) is an r x (k*r) integer functional of the generator values.
    zero = tuple(tuple(0 for _ in range(k * r)) for _ in range(r))
    functionals: dict[tuple[int, ...], Matrix] = {group.identity.images: zero}
    constraint_rows: list[tuple[int, ...]] = []
    frontier = [group.identity]
    while frontier:
        new_frontier = []
        for g in frontier:
            lg = functionals[g.images]
            mg = action.matrix_of(g)
            for index, s in enumerate(group.generators):
                h = g * s
                # c(g s) = c(g) + g . c(s)
                lh = _add_block(lg, mg, index, r, k)
                known = functionals.get(h.images)
                if known is None:
                    functionals[h.images] = lh
                    new_frontier.append(h)
                else:
                    for row_a, row_b in zip(known, lh):
                        if row_a != row_b:
                            constraint_rows.append(
                                tuple(x - y for x, y in zip(row_a, row_b))
                            )
        frontier = new_frontier
    if not constraint_rows:
        cocycles = tuple(
            tuple(1 if i == j else 0 for i in range(k * r)) for j in range(k * r)
        )
    else:
        cocycles = kernel_basis(tuple(constraint_rows))
    if not cocycles:
        return ()
    coboundaries = []
    for j in range(r):
        vector = []
        for ms in action.gen_matrices:
            for i in range(r):
                vector.append(ms[i][j] - (1 if i == j else 0))
        coboundaries.append(tuple(vector))
    coords = tuple(
        solve_integer_combination(cocycles, b) for b in coboundaries
    )
    divisors = integer_quotient_divisors(len(cocycles), coords)
    if any(d == 0 for d in divisors):
        raise NotAHomomorphism(
            "cohomology came out infinite; the input was not a finite action"
        )
    return abelian_invariants_from_divisors(divisors)


def _add_block(lg: Matrix, mg: Matrix, index: int, r: int, k: int) -> Matrix:
    """lg + mg placed in generator block index of an r x (k*r) functional."""
    out = []
    for i in range(r):
        row = list(lg[i])
        base = index * r
        for j in range(r):
            row[base + j] += mg[i][j]
        out.append(tuple(row))
    return tuple(out)


def h1_cyclic(matrix: Matrix, order: int) -> tuple[int, ...]:
    """H1 of a cyclic group via ker(norm) / im(generator - 1)."""
    r = len(matrix)
    norm = identity_matrix(r)
    power = identity_matrix(r)
    for _ in range(order - 1):
        power = mat_mul(power, matrix)
        norm = mat_add(norm, power)
    if mat_mul(power, matrix) != identity_matrix(r):
        raise NotAHomomorphism(f"matrix does not have order dividing {order}")
    kernel = kernel_basis(norm)
    if not kernel:
        return ()
    minus_one = mat_add(matrix, mat_scale(identity_matrix(r), -1))
    image_columns = tuple(
        tuple(minus_one[i][j] for i in range(r)) for j in range(r)
    )
    coords = tuple(
        solve_integer_combination(kernel, col) for col in image_columns
    )
    divisors = integer_quotient_divisors(len(kernel), coords)
    if any(d == 0 for d in divisors):
        raise NotAHomomorphism("cyclic cohomology came out infinite")
    return abelian_invariants_from_divisors(divisors)
