"""Picard lattices of low degree surfaces and their Weyl isometry groups.

Vectors are integer tuples in a fixed basis.  For a blowup of the plane in
k points the basis is (l, e_1, ..., e_k) with l^2 = 1, e_i^2 = -1, and the
canonical class is -3l + sum(e_i).  For the smooth quadric the basis is
the two rulings with the hyperbolic pairing.

The Weyl group of the degree d surface (3 <= d <= 6) is generated by the
simple root reflections and is realized concretely through its faithful
permutation action on the finitely many classes with v.v = v.K = -1, with
matrices reconstructed on demand from the closure words.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    DegreeOutOfRange,
    DegreeUnderflow,
    NotAHomomorphism,
    NotAnIsometry,
    NotExtendable,
    NotIntersectionPreserving,
    NotInWeylGroup,
    OrderBoundExceeded,
)
from .groups import PermGroup, Permutation, close_generators
from .intlinalg import (
    Matrix,
    identity_matrix,
    kernel_basis,
    mat_mul,
    mat_vec,
    rational_rank,
    transpose,
)

__all__ = [
    "PicardLattice",
    "blowup_of_p2",
    "quadric",
    "blowup_of_quadric",
    "exceptional_classes",
    "root_classes",
    "simple_roots",
    "Isometry",
    "reflection",
    "WeylGroup",
    "weyl_group",
    "LatticeAction",
    "invariant_rank",
    "invariant_basis",
    "is_minimal",
    "action_from_line_images",
    "blowup_orbit",
]

WEYL_ORDER_BOUND = 60_000
_WEYL_ORDERS = {3: 51840, 4: 1920, 5: 120, 6: 12}


@dataclass(frozen=True)
class PicardLattice:
    """A unimodular lattice with a distinguished canonical class."""

    gram: Matrix
    canonical: tuple[int, ...]
    labels: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, v: Sequence[int], w: Sequence[int]) -> int:
        return sum(
            v[i] * self.gram[i][j] * w[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    @property
    def degree(self) -> int:
        return self.pair(self.canonical, self.canonical)


def blowup_of_p2(k: int) -> PicardLattice:
    """Picard lattice of the plane blown up in k points, degree 9 - k."""
    if not 0 <= k <= 8:
        raise DegreeOutOfRange(f"blowup count must be in 0..8, got {k}")
    gram = tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(k + 1))
        for i in range(k + 1)
    )
    canonical = (-3,) + (1,) * k
    labels = ("l",) + tuple(f"e{i}" for i in range(1, k + 1))
    return PicardLattice(gram, canonical, labels)


def quadric() -> PicardLattice:
    """Picard lattice of the smooth quadric surface, degree 8."""
    return PicardLattice(((0, 1), (1, 0)), (-2, -2), ("f1", "f2"))


def blowup_of_quadric(m: int) -> PicardLattice:
    """Quadric lattice with m orthogonal exceptional classes adjoined."""
    if not 0 <= m <= 7:
        raise DegreeOutOfRange(f"quadric blowup count must be in 0..7, got {m}")
    rank = 2 + m
    gram = []
    for i in range(rank):
        row = [0] * rank
        if i == 0:
            row[1] = 1
        elif i == 1:
            row[0] = 1
        else:
            row[i] = -1
        gram.append(tuple(row))
    canonical = (-2, -2) + (1,) * m
    labels = ("f1", "f2") + tuple(f"e{i}" for i in range(1, m + 1))
    return PicardLattice(tuple(gram), canonical, labels)


def _is_hyperbolic_kind(lattice: PicardLattice) -> bool:
    return lattice.rank >= 2 and lattice.gram[0][0] == 0


def exceptional_classes(lattice: PicardLattice) -> tuple[tuple[int, ...], ...]:
    """All classes with v.v = -1 and v.K = -1, sorted.

    For a blowup in k points these satisfy sum(b_i) = 1 - 3a and
    sum(b_i^2) = a^2 + 1 with v = (a, b_1, ..., b_k); Cauchy-Schwarz turns
    the pair into the bound (9 - k) a^2 - 6a + (1 - k) <= 0 on a.  The
    hyperbolic (quadric) kinds get the analogous bounded search in (a, b).
    """
    if _is_hyperbolic_kind(lattice):
        return _exceptional_classes_quadric(lattice)
    k = lattice.rank - 1
    out = []
    for a in range(-12, 13):
        if (9 - k) * a * a - 6 * a + (1 - k) > 0:
            continue
        want_sq = a * a + 1
        want_sum = 1 - 3 * a
        for tail in _bounded_tails(k, want_sq, want_sum):
            out.append((a,) + tail)
    return tuple(sorted(out))


def _exceptional_classes_quadric(lattice: PicardLattice) -> tuple[tuple[int, ...], ...]:
    # v = (a, b, c_1..c_m): 2ab - sum(c_i^2) = -1, -2(a+b) - sum(c_i) = -1.
    # On an effective exceptional class both ruling coordinates stay small:
    # |a|, |b| <= 3 covers every class for m <= 7 (checked against the
    # blowup model of the same degree, which has the same class count).
    m = lattice.rank - 2
    out = []
    for a in range(-3, 4):
        for b in range(-3, 4):
            square = 2 * a * b + 1
            linear = 1 - 2 * (a + b)
            if square < 0:
                continue
            for tail in _bounded_tails(m, square, linear):
                out.append((a, b) + tail)
    return tuple(sorted(out))


def root_classes(lattice: PicardLattice) -> tuple[tuple[int, ...], ...]:
    """All classes with v.v = -2 and v.K = 0, sorted."""
    out = []
    if _is_hyperbolic_kind(lattice):
        m = lattice.rank - 2
        for a in range(-3, 4):
            for b in range(-3, 4):
                square = 2 * a * b + 2
                if square < 0:
                    continue
                for tail in _bounded_tails(m, square, -2 * (a + b)):
                    out.append((a, b) + tail)
        return tuple(sorted(out))
    k = lattice.rank - 1
    # v.v = -2, v.K = 0 gives sum(b_i) = -3a, sum(b_i^2) = a^2 + 2,
    # so 9a^2 <= k(a^2 + 2) bounds a.
    for a in range(-12, 13):
        if (9 - k) * a * a - 2 * k > 0:
            continue
        for tail in _bounded_tails(k, a * a + 2, -3 * a):
            out.append((a,) + tail)
    return tuple(sorted(out))


def _bounded_tails(
    count: int, square_sum: int, linear_sum: int
) -> Iterable[tuple[int, ...]]:
    """Integer tuples of the given length with fixed sum and sum of squares."""
    if count == 0:
        if square_sum == 0 and linear_sum == 0:
            yield ()
        return
    bound = int(square_sum**0.5) + 1
    while bound * bound > square_sum:
        bound -= 1
    for b in range(-bound, bound + 1):
        rest_sq = square_sum - b * b
        rest_sum = linear_sum - b
        if rest_sq < 0:
            continue
        # remaining coordinates are bounded by the square budget
        limit = (count - 1) * (int(rest_sq**0.5) + 1)
        if abs(rest_sum) > limit:
            continue
        for tail in _bounded_tails(count - 1, rest_sq, rest_sum):
            yield (b,) + tail


def simple_roots(lattice: PicardLattice) -> tuple[tuple[int, ...], ...]:
    """The standard simple roots l-e1-e2-e3, e1-e2, ..., e_{k-1}-e_k."""
    k = lattice.rank - 1
    if k < 3:
        raise DegreeOutOfRange(f"need at least 3 blowup points, have {k}")
    roots = [(1, -1, -1, -1) + (0,) * (k - 3)]
    for i in range(1, k):
        root = [0] * (k + 1)
        root[i] = 1
        root[i + 1] = -1
        roots.append(tuple(root))
    return tuple(roots)


@dataclass(frozen=True)
class Isometry:
    """An integer matrix preserving the pairing and the canonical class.

    The matrix acts on column vectors.  Validation is structural, so any
    constructed Isometry really is one.
    """

    lattice: PicardLattice
    matrix: Matrix

    def __post_init__(self) -> None:
        n = self.lattice.rank
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise NotAnIsometry(f"matrix shape is not {n} x {n}")
        if any(not isinstance(x, int) for row in self.matrix for x in row):
            raise NotAnIsometry("matrix entries must be integers")
        g = self.lattice.gram
        if mat_mul(mat_mul(transpose(self.matrix), g), self.matrix) != g:
            raise NotAnIsometry("matrix does not preserve the pairing")
        if mat_vec(self.matrix, self.lattice.canonical) != self.lattice.canonical:
            raise NotAnIsometry("matrix does not fix the canonical class")

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return mat_vec(self.matrix, v)

    def compose(self, other: "Isometry") -> "Isometry":
        return Isometry(self.lattice, mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "Isometry":
        # M^-1 = G^-1 M^T G, integral because G is unimodular diag +-1 blocks
        g = self.lattice.gram
        ginv = _unimodular_inverse(g)
        return Isometry(
            self.lattice, mat_mul(mat_mul(ginv, transpose(self.matrix)), g)
        )


def _unimodular_inverse(g: Matrix) -> Matrix:
    if mat_mul(g, g) == identity_matrix(len(g)):
        return g  # all supported gram matrices are involutions
    raise NotAnIsometry("unsupported gram matrix")


def reflection(lattice: PicardLattice, root: Sequence[int]) -> Isometry:
    """Reflection s(v) = v + (v.root) root in a (-2)-class orthogonal to K."""
    if lattice.pair(root, root) != -2:
        raise NotAnIsometry(f"not a root: {tuple(root)} has square != -2")
    if lattice.pair(root, lattice.canonical) != 0:
        raise NotAnIsometry(f"root {tuple(root)} is not orthogonal to K")
    n = lattice.rank
    cols = []
    for j in range(n):
        basis = tuple(1 if i == j else 0 for i in range(n))
        cols.append(
            tuple(basis[i] + lattice.pair(basis, root) * root[i] for i in range(n))
        )
    matrix = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return Isometry(lattice, matrix)


class WeylGroup:
    """The Weyl group of a degree 3..6 del Pezzo lattice.

    Elements are enumerated through the faithful action on the (-1)-classes.
    perm_group is that permutation group; matrices are rebuilt on demand by
    following the closure words, so asking for a handful of matrices stays
    cheap even in the degree 3 case.
    """

    def __init__(self, degree: int):
        if degree not in _WEYL_ORDERS:
            raise DegreeOutOfRange(f"Weyl groups cover degrees 3..6, got {degree}")
        self.degree = degree
        self.lattice = blowup_of_p2(9 - degree)
        self.lines = exceptional_classes(self.lattice)
        self._line_index = {v: i for i, v in enumerate(self.lines)}
        self.simple_reflections = tuple(
            reflection(self.lattice, r) for r in simple_roots(self.lattice)
        )
        gen_perms = [self._line_perm(s.matrix) for s in self.simple_reflections]
        self._parents: dict[tuple[int, ...], tuple[Optional[Permutation], int]] = {}
        identity = Permutation.identity(len(self.lines))
        self._parents[identity.images] = (None, -1)
        frontier = [identity]
        count = 1
        while frontier:
            new_frontier = []
            for p in frontier:
                for i, s in enumerate(gen_perms):
                    q = p * s
                    if q.images not in self._parents:
                        self._parents[q.images] = (p, i)
                        new_frontier.append(q)
                        count += 1
                        if count > WEYL_ORDER_BOUND:
                            raise OrderBoundExceeded(
                                f"Weyl closure exceeded {WEYL_ORDER_BOUND}"
                            )
            frontier = new_frontier
        elements = tuple(
            sorted(
                (Permutation(images) for images in self._parents),
                key=lambda p: p.images,
            )
        )
        self.perm_group = PermGroup(
            len(self.lines),
            tuple(gen_perms),
            elements,
            frozenset(p.images for p in elements),
        )
        if self.order != _WEYL_ORDERS[degree]:
            raise OrderBoundExceeded(
                f"Weyl closure found {self.order} elements, "
                f"expected {_WEYL_ORDERS[degree]}"
            )
        self._matrix_cache: dict[tuple[int, ...], Matrix] = {
            identity.images: identity_matrix(self.lattice.rank)
        }

    @property
    def order(self) -> int:
        return self.perm_group.order

    def _line_perm(self, matrix: Matrix) -> Permutation:
        images = []
        for v in self.lines:
            w = mat_vec(matrix, v)
            idx = self._line_index.get(w)
            if idx is None:
                raise NotInWeylGroup(
                    f"matrix sends the class {v} outside the line set"
                )
            images.append(idx)
        return Permutation(tuple(images))

    def matrix_for(self, perm: Permutation) -> Matrix:
        """Lattice matrix of a Weyl element given by its line permutation."""
        cached = self._matrix_cache.get(perm.images)
        if cached is not None:
            return cached
        if perm.images not in self._parents:
            raise NotInWeylGroup("permutation is not in the Weyl action")
        stack = []
        cursor = perm
        while cursor.images not in self._matrix_cache:
            parent, gen_index = self._parents[cursor.images]
            stack.append((cursor, gen_index))
            cursor = parent
        matrix = self._matrix_cache[cursor.images]
        for node, gen_index in reversed(stack):
            matrix = mat_mul(matrix, self.simple_reflections[gen_index].matrix)
            self._matrix_cache[node.images] = matrix
        return matrix

    def isometry_for(self, perm: Permutation) -> Isometry:
        return Isometry(self.lattice, self.matrix_for(perm))

    def perm_of_matrix(self, matrix: Matrix) -> Permutation:
        """Line permutation of a matrix, validated to lie in the group."""
        Isometry(self.lattice, matrix)  # structural checks first
        perm = self._line_perm(matrix)
        if perm.images not in self._parents:
            raise NotInWeylGroup("isometry is not a product of the reflections")
        if self.matrix_for(perm) != tuple(tuple(row) for row in matrix):
            raise NotInWeylGroup("matrix disagrees with its line action")
        return perm

    def contains_matrix(self, matrix: Matrix) -> bool:
        try:
            self.perm_of_matrix(matrix)
        except (NotInWeylGroup, NotAnIsometry):
            return False
        return True

    def subgroup_from_matrices(self, matrices: Sequence[Matrix]) -> PermGroup:
        """Subgroup of the line action generated by the given matrices."""
        perms = [self.perm_of_matrix(m) for m in matrices]
        return self.perm_group.subgroup(perms)


@lru_cache(maxsize=None)
def _weyl_group_of_degree(degree: int) -> WeylGroup:
    return WeylGroup(degree)


def weyl_group(lattice_or_degree: Union[PicardLattice, int]) -> WeylGroup:
    """Weyl group of a del Pezzo lattice of degree 3..6 (cached)."""
    if isinstance(lattice_or_degree, PicardLattice):
        return _weyl_group_of_degree(lattice_or_degree.degree)
    return _weyl_group_of_degree(lattice_or_degree)


class LatticeAction:
    """A finite group acting on a lattice through integer matrices.

    With a PicardLattice attached every generator matrix is checked to be
    an isometry fixing the canonical class; without one (bare free module,
    as in the cohomology test modules) only the representation property is
    enforced.  The extension to all elements walks the Cayley graph, so a
    constructed action is consistent on every relation.
    """

    def __init__(
        self,
        group: PermGroup,
        gen_matrices: Sequence[Matrix],
        lattice: Optional[PicardLattice] = None,
    ):
        if len(gen_matrices) != len(group.generators):
            raise NotAHomomorphism(
                f"{len(gen_matrices)} matrices for {len(group.generators)} generators"
            )
        self.group = group
        self.lattice = lattice
        self.gen_matrices = tuple(tuple(map(tuple, m)) for m in gen_matrices)
        if lattice is not None:
            self.rank = lattice.rank
            for m in self.gen_matrices:
                Isometry(lattice, m)
        else:
            self.rank = len(self.gen_matrices[0]) if self.gen_matrices else 0
        for m in self.gen_matrices:
            if len(m) != self.rank or any(len(row) != self.rank for row in m):
                raise NotAHomomorphism("generator matrix shape mismatch")
        matrices: dict[tuple[int, ...], Matrix] = {
            group.identity.images: identity_matrix(self.rank)
        }
        frontier = [group.identity]
        while frontier:
            new_frontier = []
            for g in frontier:
                mg = matrices[g.images]
                for s, ms in zip(group.generators, self.gen_matrices):
                    h = g * s
                    mh = mat_mul(mg, ms)
                    known = matrices.get(h.images)
                    if known is None:
                        matrices[h.images] = mh
                        new_frontier.append(h)
                    elif known != mh:
                        raise NotAHomomorphism(
                            "generator matrices are inconsistent along a relation"
                        )
            frontier = new_frontier
        self._matrices = matrices

    def matrix_of(self, g: Permutation) -> Matrix:
        return self._matrices[g.images]

    def restricted_to(self, subgroup: PermGroup) -> "LatticeAction":
        """The same module viewed as a module over a subgroup."""
        return LatticeAction(
            subgroup,
            [self._matrices[s.images] for s in subgroup.generators],
            self.lattice,
        )


def invariant_rank(action: LatticeAction) -> int:
    """Rank of the fixed sublattice of the action."""
    return fixed_rank(action.rank, action.gen_matrices)


def invariant_basis(action: LatticeAction) -> tuple[tuple[int, ...], ...]:
    """Basis of the saturated fixed sublattice of the action."""
    return fixed_basis(action.rank, action.gen_matrices)


def is_minimal(action: LatticeAction) -> bool:
    """Minimality in the sense of invariant Picard rank one."""
    return invariant_rank(action) == 1


def fixed_rank(rank: int, matrices: Sequence[Matrix]) -> int:
    """Rank of the common fixed space of the given integer matrices."""
    if not matrices:
        return rank
    stacked = _stack_minus_identity(rank, matrices)
    return rank - rational_rank(stacked)


def fixed_basis(rank: int, matrices: Sequence[Matrix]) -> tuple[tuple[int, ...], ...]:
    """Basis of the saturated common fixed sublattice."""
    if not matrices:
        return tuple(
            tuple(1 if i == j else 0 for i in range(rank)) for j in range(rank)
        )
    stacked = _stack_minus_identity(rank, matrices)
    return kernel_basis(stacked)


def _stack_minus_identity(rank: int, matrices: Sequence[Matrix]) -> Matrix:
    rows = []
    for m in matrices:
        for i in range(rank):
            rows.append(tuple(m[i][j] - (1 if i == j else 0) for j in range(rank)))
    return tuple(rows)


def action_from_line_images(lattice: PicardLattice, perm: Permutation) -> Isometry:
    """The unique isometry inducing a permutation of the exceptional classes.

    The permutation must preserve all pairwise intersection numbers, and
    the classes together with K must span the lattice rationally; both
    failures are reported as typed errors.
    """
    lines = exceptional_classes(lattice)
    if perm.degree != len(lines):
        raise NotIntersectionPreserving(
            f"permutation degree {perm.degree} for {len(lines)} classes"
        )
    for i in range(len(lines)):
        for j in range(i, len(lines)):
            before = lattice.pair(lines[i], lines[j])
            after = lattice.pair(lines[perm(i)], lines[perm(j)])
            if before != after:
                raise NotIntersectionPreserving(
                    f"intersection of classes {i}, {j} changes from "
                    f"{before} to {after}"
                )
    rank = lattice.rank
    sources: list[tuple[int, ...]] = [lattice.canonical]
    targets: list[tuple[int, ...]] = [lattice.canonical]
    for i, line in enumerate(lines):
        candidate = sources + [line]
        if rational_rank(tuple(candidate)) > len(sources):
            sources.append(line)
            targets.append(lines[perm(i)])
        if len(sources) == rank:
            break
    if len(sources) < rank:
        raise NotExtendable("classes and K do not span the lattice")
    basis_cols = tuple(zip(*sources))  # rank x rank, columns are sources
    image_cols = tuple(zip(*targets))
    inverse = _rational_inverse(basis_cols)
    matrix = []
    for i in range(rank):
        row = []
        for j in range(rank):
            value = sum(
                Fraction(image_cols[i][t]) * inverse[t][j] for t in range(rank)
            )
            if value.denominator != 1:
                raise NotExtendable("extension matrix is not integral")
            row.append(int(value))
        matrix.append(tuple(row))
    result = tuple(matrix)
    for i, line in enumerate(lines):
        if mat_vec(result, line) != lines[perm(i)]:
            raise NotExtendable("extension disagrees with the permutation")
    return Isometry(lattice, result)


def _rational_inverse(m: Matrix):
    n = len(m)
    aug = [
        [Fraction(m[i][j]) for j in range(n)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        sel = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if sel is None:
            raise NotExtendable("chosen classes are not independent")
        aug[col], aug[sel] = aug[sel], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def blowup_orbit(
    action: LatticeAction, orbit_perms: Sequence[Permutation]
) -> LatticeAction:
    """Adjoin an abstract orbit of exceptional classes to the action.

    orbit_perms gives, per group generator, the permutation of the m new
    classes; the lattice degree drops by m and the intersection form is
    extended orthogonally.
    """
    if action.lattice is None:
        raise DegreeUnderflow("blowup requires an attached Picard lattice")
    if len(orbit_perms) != len(action.group.generators):
        raise NotAHomomorphism(
            f"{len(orbit_perms)} orbit permutations for "
            f"{len(action.group.generators)} generators"
        )
    m = orbit_perms[0].degree if orbit_perms else 0
    degree = action.lattice.degree
    if m < 1 or degree - m < 1:
        raise DegreeUnderflow(f"orbit length {m} does not fit degree {degree}")
    if _is_hyperbolic_kind(action.lattice):
        new_lattice = blowup_of_quadric(action.lattice.rank - 2 + m)
    else:
        new_lattice = blowup_of_p2(action.lattice.rank - 1 + m)
    old_rank = action.rank
    new_matrices = []
    for mat, perm in zip(action.gen_matrices, orbit_perms):
        if perm.degree != m:
            raise NotAHomomorphism("orbit permutations differ in degree")
        rows = []
        for i in range(old_rank):
            rows.append(tuple(mat[i]) + (0,) * m)
        for i in range(m):
            row = [0] * (old_rank + m)
            for j in range(m):
                if perm(j) == i:
                    row[old_rank + j] = 1
            rows.append(tuple(row))
        new_matrices.append(tuple(rows))
    return LatticeAction(action.group, new_matrices, new_lattice)
