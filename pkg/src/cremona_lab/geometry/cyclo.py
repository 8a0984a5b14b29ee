"""Exact arithmetic in cyclotomic fields of conductor at most 60.

Elements are residues modulo the m-th cyclotomic polynomial with Fraction
coefficients, always stored at their minimal conductor, so structural
equality and hashing agree with field equality.  Mixed-conductor
arithmetic lifts to the lcm, which must stay inside the supported range.

Square roots are found for radicands of the shape rational times root of
unity; the rational part is handled by quadratic Gauss sums.  That covers
every discriminant arising from the shipped models, and anything else
fails loudly rather than approximately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Union

from ..errors import UnsupportedConductor

__all__ = [
    "MAX_CONDUCTOR",
    "Cyclotomic",
    "cyclo",
    "cyclo_sqrt",
    "euler_phi",
]

MAX_CONDUCTOR = 60

Scalar = Union[int, Fraction]

# Polynomials are coefficient tuples in ascending degree.


def _poly_trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    size = max(len(a), len(b))
    out = [Fraction(0)] * size
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _poly_trim(out)


def _poly_divmod(
    a: Sequence[Fraction], b: Sequence[Fraction]
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    rem = list(a)
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b) and _poly_trim(rem):
        rem = list(_poly_trim(rem))
        if len(rem) < len(b):
            break
        factor = rem[-1] / lead
        shift = len(rem) - len(b)
        quo[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] -= factor * c
    return _poly_trim(quo), _poly_trim(rem)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    out = m
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            out -= out // p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out -= out // n
    return out


@lru_cache(maxsize=None)
def _cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    # x^m - 1 divided by the cyclotomic polynomials of the proper divisors
    numerator = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    poly = _poly_trim(numerator)
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod(poly, _cyclotomic_polynomial(d))
            assert not rem
    return poly


def _check_conductor(m: int) -> None:
    if not 1 <= m <= MAX_CONDUCTOR:
        raise UnsupportedConductor(f"conductor {m} outside 1..{MAX_CONDUCTOR}")


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """x^k mod the m-th cyclotomic polynomial for k < 2*phi(m)."""
    phi = euler_phi(m)
    modulus = _cyclotomic_polynomial(m)
    table = []
    for k in range(2 * phi):
        mono = [Fraction(0)] * k + [Fraction(1)]
        _, rem = _poly_divmod(mono, modulus)
        padded = tuple(rem) + (Fraction(0),) * (phi - len(rem))
        table.append(padded)
    return tuple(table)


@lru_cache(maxsize=None)
def _reduce_power(m: int, k: int) -> tuple[Fraction, ...]:
    """x^k mod the m-th cyclotomic polynomial, padded to phi(m) entries."""
    phi = euler_phi(m)
    if k < 2 * phi:
        return _power_table(m)[k]
    mono = [Fraction(0)] * k + [Fraction(1)]
    _, rem = _poly_divmod(mono, _cyclotomic_polynomial(m))
    return tuple(rem) + (Fraction(0),) * (phi - len(rem))


@lru_cache(maxsize=None)
def _descent_data(m: int, d: int) -> tuple[tuple[Fraction, ...], ...]:
    """Coordinates of the Q(zeta_d) power basis inside Q(zeta_m)."""
    phi_m = euler_phi(m)
    phi_d = euler_phi(d)
    step = m // d
    basis = [_reduce_power(m, step * j) for j in range(phi_d)]
    return tuple(tuple(basis[j][i] for j in range(phi_d)) for i in range(phi_m))


def _try_descend(m: int, coeffs: tuple[Fraction, ...], d: int):
    rows = _descent_data(m, d)
    phi_m = euler_phi(m)
    phi_d = euler_phi(d)
    aug = [list(rows[i]) + [coeffs[i]] for i in range(phi_m)]
    rank = 0
    for col in range(phi_d):
        sel = next((r for r in range(rank, phi_m) if aug[r][col] != 0), None)
        if sel is None:
            return None
        aug[rank], aug[sel] = aug[sel], aug[rank]
        pivot = aug[rank]
        inv = Fraction(1) / pivot[col]
        for r in range(phi_m):
            if r != rank and aug[r][col] != 0:
                factor = aug[r][col] * inv
                for c in range(col, phi_d + 1):
                    aug[r][c] -= factor * pivot[c]
        rank += 1
    solution = [Fraction(0)] * phi_d
    for r in range(rank):
        col = next(c for c in range(phi_d) if aug[r][c] != 0)
        solution[col] = aug[r][phi_d] / aug[r][col]
    for r in range(rank, phi_m):
        if aug[r][phi_d] != 0:
            return None
    return tuple(solution)


def _make(m: int, coeffs: Sequence[Fraction]) -> "Cyclotomic":
    phi = euler_phi(m)
    vec = tuple(Fraction(c) for c in coeffs)
    assert len(vec) == phi
    if m == 1:
        return Cyclotomic(1, vec)
    if all(c == 0 for c in vec[1:]):
        return Cyclotomic(1, (vec[0],))
    # ascending scan, so the first divisor whose field contains the element
    # is minimal, because the cyclotomic fields intersect in the gcd field
    for d in sorted(x for x in range(2, m) if m % x == 0):
        down = _try_descend(m, vec, d)
        if down is not None:
            return Cyclotomic(d, down)
    return Cyclotomic(m, vec)


@dataclass(frozen=True)
class Cyclotomic:
    """An element of Q(zeta_m), stored at its minimal conductor."""

    m: int
    coeffs: tuple[Fraction, ...]

    def _lift(self, target: int) -> tuple[Fraction, ...]:
        if target == self.m:
            return self.coeffs
        step = target // self.m
        phi = euler_phi(target)
        out = [Fraction(0)] * phi
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for i, base in enumerate(_reduce_power(target, k * step)):
                out[i] += c * base
        return tuple(out)

    def _pair(self, other: "Cyclotomic") -> tuple[int, tuple[Fraction, ...], tuple[Fraction, ...]]:
        m = self.m * other.m // gcd(self.m, other.m)
        _check_conductor(m)
        return m, self._lift(m), other._lift(m)

    @staticmethod
    def from_rational(value: Scalar) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(value),))

    def __add__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        m, a, b = self._pair(other)
        return _make(m, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.m, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Cyclotomic":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Cyclotomic":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        m, a, b = self._pair(other)
        phi = euler_phi(m)
        powers = _power_table(m)
        out = [Fraction(0)] * phi
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y == 0:
                    continue
                prod = x * y
                for t, base in enumerate(powers[i + j]):
                    out[t] += prod * base
        return _make(m, tuple(out))

    __rmul__ = __mul__

    def inv(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return Cyclotomic(1, (Fraction(1) / self.coeffs[0],))
        # extended Euclid against the cyclotomic modulus
        modulus = _cyclotomic_polynomial(self.m)
        r0, r1 = modulus, _poly_trim(list(self.coeffs))
        s0, s1 = (), (Fraction(1),)
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        assert len(r0) == 1  # the modulus is irreducible, so the gcd is a unit
        scale = Fraction(1) / r0[0]
        phi = euler_phi(self.m)
        padded = tuple(c * scale for c in s0) + (Fraction(0),) * (phi - len(s0))
        return _make(self.m, padded[:phi])

    def __truediv__(self, other) -> "Cyclotomic":
        return self * _coerce(other).inv()

    def __rtruediv__(self, other) -> "Cyclotomic":
        return _coerce(other) * self.inv()

    def __pow__(self, exponent: int) -> "Cyclotomic":
        if exponent < 0:
            return self.inv() ** (-exponent)
        out = Cyclotomic.from_rational(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.m == 1

    def as_rational(self) -> Fraction:
        if self.m != 1:
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __repr__(self) -> str:
        if self.m == 1:
            return f"Cyclotomic({self.coeffs[0]})"
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"Cyclotomic(zeta{self.m}; [{terms}])"


def _coerce(value) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic.from_rational(value)
    raise TypeError(f"cannot coerce {value!r} into a cyclotomic number")


def cyclo(m: int, exponent: int = 1) -> Cyclotomic:
    """The root of unity zeta_m ** exponent."""
    _check_conductor(m)
    exponent %= m
    return _make(m, _reduce_power(m, exponent))


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = square * squarefree for positive n; returns (sqrt(square), squarefree)."""
    root, free = 1, 1
    d = 2
    while d * d <= n:
        count = 0
        while n % d == 0:
            n //= d
            count += 1
        root *= d ** (count // 2)
        if count % 2:
            free *= d
        d += 1
    return root, free * n


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> Cyclotomic:
    """Square root of an odd prime via the quadratic Gauss sum."""
    total = Cyclotomic.from_rational(0)
    for a in range(p):
        total = total + cyclo(p, (a * a) % p)
    # the sum is sqrt(p) or i*sqrt(p) according to p mod 4
    if p % 4 == 1:
        return total
    return total * cyclo(4, 3)  # divide out i


def _sqrt_rational(value: Fraction) -> Cyclotomic:
    if value == 0:
        return Cyclotomic.from_rational(0)
    num, den = abs(value.numerator), value.denominator
    scaled = num * den  # sqrt(n/d) = sqrt(n*d)/d
    root, free = _squarefree_split(scaled)
    out = Cyclotomic.from_rational(Fraction(root, den))
    n = free
    if n % 2 == 0:
        n //= 2
        out = out * (cyclo(8) + cyclo(8, 7))
    d = 3
    while d * d <= n:
        if n % d == 0:
            n //= d
            out = out * _sqrt_prime(d)
        d += 2
    if n > 1:
        out = out * _sqrt_prime(n)
    if value < 0:
        out = out * cyclo(4)
    return out


def cyclo_sqrt(value: Cyclotomic) -> Cyclotomic:
    """A square root of a rational multiple of a root of unity.

    Searches unit candidates so that the remaining radicand is rational,
    then builds the rational root from Gauss sums.  Radicands outside
    that shape are refused, as is any root that would need a conductor
    past the supported range.
    """
    value = _coerce(value)
    if value.is_zero():
        return Cyclotomic.from_rational(0)
    for m in (value.m, 2 * value.m):
        if m > MAX_CONDUCTOR:
            break
        for k in range(m):
            unit = cyclo(m, k)
            try:
                remainder = value / (unit * unit)
            except UnsupportedConductor:
                continue
            if remainder.is_rational():
                root = _sqrt_rational(remainder.as_rational()) * unit
                assert root * root == value
                return root
    raise UnsupportedConductor(
        f"no square root of {value!r} within the supported radicals"
    )
