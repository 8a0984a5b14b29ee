"""Exact linear algebra over the integers and the rationals.

Matrices are tuples of row tuples.  Everything runs on Python integers and
Fractions, so there is no precision ceiling; Smith normal form follows the
classical elementary-operation algorithm with a smallest-pivot strategy,
which keeps entries tame at the sizes this package meets (a few hundred rows).

Index conventions are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Matrix",
    "identity_matrix",
    "mat_mul",
    "mat_vec",
    "transpose",
    "mat_add",
    "mat_scale",
    "mat_eq",
    "rational_rank",
    "SmithForm",
    "smith_normal_form",
    "kernel_basis",
    "integer_quotient_divisors",
    "solve_integer_combination",
    "abelian_invariants_from_divisors",
]

Matrix = tuple[tuple[int, ...], ...]


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Product a @ b of integer matrices."""
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c: int) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return a == b


def rational_rank(a: Matrix) -> int:
    """Rank of an integer (or Fraction) matrix over the rationals."""
    rows = [list(map(Fraction, row)) for row in a]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / pv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class SmithForm:
    """Decomposition u @ a @ v = d with u, v unimodular and d diagonal.

    vinv is the inverse of v, kept so kernel coordinates can be read off
    without a separate integer inversion.  Diagonal entries are nonnegative
    and each divides the next.
    """

    d: Matrix
    u: Matrix
    v: Matrix
    vinv: Matrix

    def diagonal(self) -> tuple[int, ...]:
        n = min(len(self.d), len(self.d[0]) if self.d else 0)
        return tuple(self.d[i][i] for i in range(n))


def _swap_rows(m: list[list[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: list[list[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: list[list[int]], dst: int, src: int, c: int) -> None:
    m[dst] = [x + c * y for x, y in zip(m[dst], m[src])]


def _add_col(m: list[list[int]], dst: int, src: int, c: int) -> None:
    for row in m:
        row[dst] += c * row[src]


def _negate_row(m: list[list[int]], i: int) -> None:
    m[i] = [-x for x in m[i]]


def _negate_col(m: list[list[int]], i: int) -> None:
    for row in m:
        row[i] = -row[i]


def smith_normal_form(a: Matrix) -> SmithForm:
    """Smith normal form with all four transformation matrices.

    Row operations accumulate into u, column operations into v, and the
    inverse column operations into vinv, so u @ a @ v == d and
    v @ vinv == identity hold exactly.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    d = [list(row) for row in a]
    u = [list(row) for row in identity_matrix(nrows)]
    v = [list(row) for row in identity_matrix(ncols)]
    vinv = [list(row) for row in identity_matrix(ncols)]

    def col_op_add(dst: int, src: int, c: int) -> None:
        # d @ (col_dst += c * col_src); inverse op on vinv is a row op.
        _add_col(d, dst, src, c)
        _add_col(v, dst, src, c)
        _add_row(vinv, src, dst, -c)

    def col_op_swap(i: int, j: int) -> None:
        _swap_cols(d, i, j)
        _swap_cols(v, i, j)
        _swap_rows(vinv, i, j)

    def col_op_negate(i: int) -> None:
        _negate_col(d, i)
        _negate_col(v, i)
        _negate_row(vinv, i)

    t = 0
    while t < min(nrows, ncols):
        # Find the nonzero entry of least magnitude in the remaining block.
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            _swap_rows(d, t, bi)
            _swap_rows(u, t, bi)
        if bj != t:
            col_op_swap(t, bj)
        while True:
            reduced = True
            for i in range(t + 1, nrows):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    _add_row(d, i, t, -q)
                    _add_row(u, i, t, -q)
                    if d[i][t] != 0:
                        _swap_rows(d, t, i)
                        _swap_rows(u, t, i)
                        reduced = False
            for j in range(t + 1, ncols):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    col_op_add(j, t, -q)
                    if d[t][j] != 0:
                        col_op_swap(t, j)
                        reduced = False
            if reduced:
                break
        if d[t][t] < 0:
            col_op_negate(t)
        # Enforce divisibility of the remaining block by the pivot.
        pivot = d[t][t]
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if d[i][j] % pivot != 0:
                    offender = (i, j)
                    break
            if offender:
                break
        if offender is not None:
            _add_row(d, t, offender[0], 1)
            _add_row(u, t, offender[0], 1)
            continue
        t += 1

    dt = tuple(tuple(row) for row in d)
    return SmithForm(
        d=dt,
        u=tuple(tuple(row) for row in u),
        v=tuple(tuple(row) for row in v),
        vinv=tuple(tuple(row) for row in vinv),
    )


def kernel_basis(a: Matrix) -> tuple[tuple[int, ...], ...]:
    """Basis of the integer kernel lattice {x : a @ x = 0}, as column vectors.

    The returned vectors generate the full kernel sublattice, not a finite
    index subgroup, because they are columns of a unimodular matrix.
    """
    if not a:
        return ()
    ncols = len(a[0])
    sf = smith_normal_form(a)
    diag = sf.diagonal()
    free = [j for j in range(ncols) if j >= len(diag) or diag[j] == 0]
    cols = tuple(zip(*sf.v))
    return tuple(tuple(cols[j]) for j in free)


def integer_quotient_divisors(ambient_rank: int, generators: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Invariant factors of Z^ambient_rank modulo the span of the generators.

    Returns the torsion chain followed by 0 once per free rank, so a finite
    quotient reports no zeros.  Factors equal to 1 are dropped.
    """
    if ambient_rank == 0:
        return ()
    if not generators:
        return (0,) * ambient_rank
    a = tuple(zip(*generators))  # columns are the generators
    sf = smith_normal_form(a)
    diag = sf.diagonal()
    torsion = [x for x in diag if x > 1]
    free = ambient_rank - sum(1 for x in diag if x != 0)
    return tuple(torsion) + (0,) * free


def solve_integer_combination(
    basis: tuple[tuple[int, ...], ...], target: tuple[int, ...]
) -> tuple[int, ...]:
    """Coefficients x with sum(x_i * basis_i) == target, which must exist in Z.

    The basis vectors must be linearly independent.  Raises ValueError when
    the target is outside the rational span or the coefficients are not
    integers, both of which indicate a caller bug here.
    """
    n = len(target)
    cols = len(basis)
    rows = [[Fraction(basis[j][i]) for j in range(cols)] + [Fraction(target[i])] for i in range(n)]
    pivot_row = 0
    pivots = []
    for col in range(cols):
        sel = None
        for r in range(pivot_row, n):
            if rows[r][col] != 0:
                sel = r
                break
        if sel is None:
            raise ValueError("basis vectors are linearly dependent")
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        pv = rows[pivot_row][col]
        rows[pivot_row] = [x / pv for x in rows[pivot_row]]
        for r in range(n):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    for r in range(pivot_row, n):
        if rows[r][cols] != 0:
            raise ValueError("target is outside the span of the basis")
    out = []
    for i in range(cols):
        value = rows[i][cols]
        if value.denominator != 1:
            raise ValueError("combination is not integral")
        out.append(int(value))
    return tuple(out)


def abelian_invariants_from_divisors(divisors: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical invariant-factor chain for a list of cyclic orders.

    Example: (2, 2, 3) becomes (2, 6).
    """
    primes: dict[int, list[int]] = {}
    for d in divisors:
        if d <= 1:
            continue
        n = d
        f = 2
        while f * f <= n:
            if n % f == 0:
                e = 0
                while n % f == 0:
                    n //= f
                    e += 1
                primes.setdefault(f, []).append(e)
            f += 1
        if n > 1:
            primes.setdefault(n, []).append(1)
    if not primes:
        return ()
    length = max(len(v) for v in primes.values())
    chain = [1] * length
    for p, exps in primes.items():
        exps = sorted(exps)
        padded = [0] * (length - len(exps)) + exps
        for i, e in enumerate(padded):
            chain[i] *= p**e
    return tuple(c for c in chain if c > 1)
