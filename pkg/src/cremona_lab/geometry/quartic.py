"""A quartic del Pezzo surface cut out by a split diagonal pencil.

The surface lives in P4 as the intersection of two quadrics of the shape

    Q1 = q_a(x0, x1, x2) + c3 * x3^2,
    Q2 = q_b(x0, x1, x2) + c4 * x4^2,

with q_a, q_b nondegenerate diagonal conics.  Projecting away from
(x3, x4) sends every line of the surface to a plane line: a fiber of the
projection meets the surface in at most four points, never a line, so
nothing is lost.  A plane line lifts to a line on the surface exactly
when both restricted conics become perfect squares on it, which is the
condition that the line is tangent to both conics at once.  The duals of
two diagonal conics are again diagonal, so the common tangents come from
a linear solve in the squared dual coordinates, and each of the four
tangents carries four lines, one per choice of the two square roots.
That enumeration is exhaustive, and the count of sixteen distinct
verified lines is rechecked before anything downstream trusts it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from typing import Iterable, Optional, Sequence

from ..errors import (
    CremonaLabError,
    LineEnumerationFailure,
    PositiveDimensionalComponent,
)
from ..groups import PermGroup, Permutation, close_generators
from ..lattice import LatticeAction, action_from_line_images, blowup_of_p2, exceptional_classes
from .cyclo import Cyclotomic, cyclo, cyclo_sqrt
from .monomial import MonomialMap, Subspace, fixed_subspaces, normalize_point

__all__ = [
    "Line",
    "Orbit",
    "QuarticModel",
    "dp4_line_action",
    "lines_dp4",
    "quartic_model",
    "small_orbits_dp4",
]

Vector = tuple[Cyclotomic, ...]

_ZERO = Cyclotomic.from_rational(0)
_ONE = Cyclotomic.from_rational(1)


# ---------------------------------------------------------------------------
# linear algebra over the cyclotomic field


def _rref(rows: Iterable[Vector]) -> tuple[Vector, ...]:
    """Reduced row echelon form with zero rows dropped.

    The output is the canonical basis of the row span, so two spans are
    equal exactly when their reduced forms are equal.
    """
    work = [list(r) for r in rows]
    if not work:
        return ()
    width = len(work[0])
    rank = 0
    for col in range(width):
        sel = next((r for r in range(rank, len(work)) if not work[r][col].is_zero()), None)
        if sel is None:
            continue
        work[rank], work[sel] = work[sel], work[rank]
        inv = work[rank][col].inv()
        work[rank] = [inv * c for c in work[rank]]
        for r in range(len(work)):
            if r != rank and not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[rank])]
        rank += 1
    return tuple(tuple(row) for row in work[:rank])


def _nullspace(rows: Sequence[Vector]) -> tuple[Vector, ...]:
    """Basis of the right kernel of the given matrix."""
    if not rows:
        return ()
    width = len(rows[0])
    reduced = _rref(rows)
    pivots = []
    for row in reduced:
        col = next(c for c in range(width) if not row[c].is_zero())
        pivots.append(col)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        vec = [_ZERO] * width
        vec[fc] = _ONE
        for row, pc in zip(reduced, pivots):
            vec[pc] = -row[fc]
        basis.append(tuple(vec))
    return tuple(basis)


def _span_intersect(a: Sequence[Vector], b: Sequence[Vector]) -> tuple[Vector, ...]:
    """Canonical basis of span(a) intersected with span(b)."""
    if not a or not b:
        return ()
    width = len(a[0])
    # solve sum alpha_r a_r = sum beta_s b_s via the kernel of [a^T | -b^T]
    stacked = [
        tuple(a[r][i] for r in range(len(a))) + tuple(-b[s][i] for s in range(len(b)))
        for i in range(width)
    ]
    vectors = []
    for combo in _nullspace(stacked):
        vec = [_ZERO] * width
        for r in range(len(a)):
            if not combo[r].is_zero():
                vec = [x + combo[r] * y for x, y in zip(vec, a[r])]
        vectors.append(tuple(vec))
    return _rref(vectors)


def _point_key(point: Vector):
    return tuple((c.m, c.coeffs) for c in point)


# ---------------------------------------------------------------------------
# quadric forms


def _form_value(diag: Vector, u: Vector) -> Cyclotomic:
    return reduce(lambda x, y: x + y, (d * a * a for d, a in zip(diag, u)), _ZERO)


def _form_pair(diag: Vector, u: Vector, v: Vector) -> Cyclotomic:
    return reduce(lambda x, y: x + y, (d * a * b for d, a, b in zip(diag, u, v)), _ZERO)


def _on_surface(model: "QuarticModel", point: Vector) -> bool:
    return all(_form_value(d, point).is_zero() for d in model.quadrics)


# ---------------------------------------------------------------------------
# the model


def _proj_canonical(m: MonomialMap) -> MonomialMap:
    """Scale so the scaling of coordinate 0 is 1; projective normal form."""
    inv = m.scalings[0].inv()
    return MonomialMap(m.dim, m.perm, tuple(inv * s for s in m.scalings))


def _monomial_key(m: MonomialMap):
    return (m.perm.images, tuple((s.m, s.coeffs) for s in m.scalings))


@dataclass(frozen=True)
class QuarticModel:
    """Two diagonal quadrics in P4 and a monomial group preserving their pencil."""

    quadrics: tuple[Vector, Vector]
    generators: tuple[MonomialMap, ...]

    def __post_init__(self) -> None:
        for q in self.quadrics:
            if len(q) != 5:
                raise ValueError("quadrics must be diagonal forms on P4")
        span = _rref([self.quadrics[0], self.quadrics[1]])
        if len(span) != 2:
            raise ValueError("the two quadrics do not span a pencil")
        for g in self.generators:
            if g.dim != 4:
                raise ValueError("generators must act on P4")
            for q in self.quadrics:
                pulled = tuple(
                    q[g.perm(i)] * g.scalings[i] * g.scalings[i] for i in range(5)
                )
                if len(_rref([*span, pulled])) != 2:
                    raise ValueError(
                        "generator does not preserve the quadric pencil"
                    )

    def group_elements(self) -> tuple[MonomialMap, ...]:
        """The projective group generated by the model, in a fixed order."""
        return _closure(tuple(_proj_canonical(g) for g in self.generators))

    def regular_group(self) -> PermGroup:
        """The group as permutations of its own sorted element list."""
        elements = self.group_elements()
        index = {_monomial_key(m): i for i, m in enumerate(elements)}
        perms = []
        for g in self.generators:
            canon = _proj_canonical(g)
            images = tuple(
                index[_monomial_key(_proj_canonical(canon * h))] for h in elements
            )
            perms.append(Permutation(images))
        return close_generators(perms, degree=len(elements))

    def monomial_of(self, regular_perm: Permutation) -> MonomialMap:
        """Inverse of the regular representation, one permutation at a time."""
        elements = self.group_elements()
        identity_index = next(i for i, m in enumerate(elements) if m.is_identity())
        return elements[regular_perm(identity_index)]


@lru_cache(maxsize=8)
def _closure(generators: tuple[MonomialMap, ...]) -> tuple[MonomialMap, ...]:
    seen = {_monomial_key(g): g for g in generators}
    ident = MonomialMap.identity(generators[0].dim) if generators else None
    if ident is not None:
        seen.setdefault(_monomial_key(ident), ident)
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                prod = _proj_canonical(g * h)
                key = _monomial_key(prod)
                if key not in seen:
                    seen[key] = prod
                    nxt.append(prod)
        frontier = nxt
        if len(seen) > 10_000:
            raise CremonaLabError("monomial closure outgrew any expected model")
    return tuple(seen[k] for k in sorted(seen))


def quartic_model() -> QuarticModel:
    """The built-in quartic surface with its order 12 symmetry group."""
    z3 = cyclo(3)
    one, zero = _ONE, _ZERO
    q1 = (one, z3, z3 * z3, one, zero)
    q2 = (one, z3 * z3, z3, zero, one)
    gamma = MonomialMap.from_images(
        4, [(1, one), (2, one), (0, one), (3, z3), (4, z3 * z3)]
    )
    beta = MonomialMap.from_images(
        4, [(0, one), (2, one), (1, one), (4, -one), (3, one)]
    )
    return QuarticModel((q1, q2), (gamma, beta))


# ---------------------------------------------------------------------------
# the sixteen lines


@dataclass(frozen=True)
class Line:
    """A line in P4, stored by the reduced echelon basis of its span."""

    rows: tuple[Vector, Vector]

    @staticmethod
    def from_span(u: Vector, v: Vector) -> "Line":
        reduced = _rref([u, v])
        if len(reduced) != 2:
            raise ValueError("the two vectors do not span a line")
        return Line((reduced[0], reduced[1]))

    def meets(self, other: "Line") -> bool:
        """Two distinct lines in P4 meet iff their spans fail to be direct."""
        return len(_rref([*self.rows, *other.rows])) < 4

    def key(self):
        return tuple(_point_key(r) for r in self.rows)


def lines_dp4(model: QuarticModel) -> tuple[Line, ...]:
    """All sixteen lines, by exact elimination through the plane projection."""
    d1, d2 = model.quadrics
    a, b = d1[:3], d2[:3]
    if not (d1[4].is_zero() and d2[3].is_zero()):
        raise LineEnumerationFailure("quadrics are not in split diagonal shape")
    c3, c4 = d1[3], d2[4]
    if c3.is_zero() or c4.is_zero() or any(x.is_zero() for x in a + b):
        raise LineEnumerationFailure("a degenerate quadric leaves the charted family")
    inva = tuple(x.inv() for x in a)
    invb = tuple(x.inv() for x in b)
    # common tangents of the two plane conics: dual conics are diagonal with
    # coefficients inva, invb, and their intersection is linear in the squares
    w = (
        inva[1] * invb[2] - inva[2] * invb[1],
        inva[2] * invb[0] - inva[0] * invb[2],
        inva[0] * invb[1] - inva[1] * invb[0],
    )
    pivot = next((i for i in range(3) if not w[i].is_zero()), None)
    if pivot is None:
        raise LineEnumerationFailure("the dual conics coincide")
    scale = w[pivot].inv()
    roots = [cyclo_sqrt(scale * w[i]) for i in range(3)]
    free = [i for i in range(3) if i != pivot and not roots[i].is_zero()]
    if len(free) != 2:
        raise LineEnumerationFailure("common tangents are not in general position")
    tangents = []
    for signs in product((_ONE, -_ONE), repeat=2):
        y = list(roots)
        for s, i in zip(signs, free):
            y[i] = s * roots[i]
        tangents.append(tuple(y))

    found: dict = {}
    for y in tangents:
        p1 = tuple(y[i] * inva[i] for i in range(3))
        p2 = tuple(y[i] * invb[i] for i in range(3))
        # tangency and the dual membership make every mixed term vanish
        for value in (
            _form_value(a, p1),
            _form_value(b, p2),
            _form_pair(a, p1, p2),
            _form_pair(b, p1, p2),
        ):
            if not value.is_zero():
                raise LineEnumerationFailure("tangent bookkeeping failed to close")
        h = cyclo_sqrt(-_form_value(a, p2) / c3)
        g = cyclo_sqrt(-_form_value(b, p1) / c4)
        if h.is_zero() or g.is_zero():
            raise LineEnumerationFailure("a tangent degenerated into the surface")
        for sg, sh in product((_ONE, -_ONE), repeat=2):
            u = (*p1, _ZERO, sg * g)
            v = (*p2, sh * h, _ZERO)
            for diag in model.quadrics:
                if not (
                    _form_value(diag, u).is_zero()
                    and _form_value(diag, v).is_zero()
                    and _form_pair(diag, u, v).is_zero()
                ):
                    raise LineEnumerationFailure("candidate line misses the surface")
            line = Line.from_span(u, v)
            found[line.key()] = line
    if len(found) != 16:
        raise LineEnumerationFailure(f"found {len(found)} lines, expected 16")
    return tuple(found[k] for k in sorted(found))


# ---------------------------------------------------------------------------
# small orbits


@dataclass(frozen=True)
class Orbit:
    """A finite group orbit of points on the surface."""

    points: tuple[Vector, ...]

    @property
    def length(self) -> int:
        return len(self.points)


def _binary_roots(f: tuple[Cyclotomic, Cyclotomic, Cyclotomic]) -> list[tuple[Cyclotomic, Cyclotomic]]:
    """Projective roots of A s^2 + B st + C t^2, not identically zero."""
    A, B, C = f
    if A.is_zero():
        roots = [(_ONE, _ZERO)]
        if not B.is_zero():
            # t * (B s + C t): the second factor adds (-C : B)
            roots.append((-C, B))
        return roots
    disc = B * B - 4 * A * C
    if disc.is_zero():
        return [(-B, 2 * A)]
    r = cyclo_sqrt(disc)
    return [((-B + r), 2 * A), ((-B - r), 2 * A)]


def _binary_common_roots(
    f: tuple[Cyclotomic, Cyclotomic, Cyclotomic],
    g: tuple[Cyclotomic, Cyclotomic, Cyclotomic],
) -> list[tuple[Cyclotomic, Cyclotomic]]:
    """Common projective roots of two binary quadratics, neither zero."""
    A1, B1, C1 = f
    A2, B2, C2 = g
    res = (A1 * C2 - A2 * C1) ** 2 - (A1 * B2 - A2 * B1) * (B1 * C2 - B2 * C1)
    if not res.is_zero():
        return []
    proportional = (
        (A1 * B2 - A2 * B1).is_zero()
        and (A1 * C2 - A2 * C1).is_zero()
        and (B1 * C2 - B2 * C1).is_zero()
    )
    if proportional:
        return _binary_roots(f)
    if A1.is_zero() and A2.is_zero():
        return [(_ONE, _ZERO)]
    if A1.is_zero():
        f, g = g, f
        A1, B1, C1, A2, B2, C2 = A2, B2, C2, A1, B1, C1
    # A2*f - A1*g = t * (p s + q t), and t = 0 is excluded since A1 != 0
    p = A2 * B1 - A1 * B2
    q = A2 * C1 - A1 * C2
    assert not p.is_zero()  # otherwise the forms were proportional
    candidate = (-q, p)
    s, t = candidate
    if (A1 * s * s + B1 * s * t + C1 * t * t).is_zero() and (
        A2 * s * s + B2 * s * t + C2 * t * t
    ).is_zero():
        return [candidate]
    return []


def _component_points(model: QuarticModel, comp: tuple[Vector, ...]) -> list[Vector]:
    """Points of the surface inside a joint fixed subspace."""
    pdim = len(comp) - 1
    if pdim < 0:
        return []
    if pdim == 0:
        point = normalize_point(comp[0])
        return [point] if _on_surface(model, point) else []
    if pdim == 1:
        u, v = comp
        forms = []
        for diag in model.quadrics:
            forms.append(
                (_form_value(diag, u), 2 * _form_pair(diag, u, v), _form_value(diag, v))
            )
        zero1 = all(c.is_zero() for c in forms[0])
        zero2 = all(c.is_zero() for c in forms[1])
        if zero1 and zero2:
            raise PositiveDimensionalComponent(
                "a fixed line lies entirely on the surface"
            )
        if zero1:
            roots = _binary_roots(forms[1])
        elif zero2:
            roots = _binary_roots(forms[0])
        else:
            roots = _binary_common_roots(forms[0], forms[1])
        points = []
        for s, t in roots:
            coords = tuple(s * x + t * y for x, y in zip(u, v))
            point = normalize_point(coords)
            if _on_surface(model, point):
                points.append(point)
        return points
    # a fixed plane or larger: the restricted quadrics decide
    restricted = []
    for diag in model.quadrics:
        rows = [
            [_form_pair(diag, r, c) for c in comp] for r in comp
        ]
        restricted.append(all(all(e.is_zero() for e in row) for row in rows))
    if restricted[0] or restricted[1]:
        raise PositiveDimensionalComponent(
            "a fixed plane meets the surface in a curve"
        )
    raise CremonaLabError(
        "a fixed plane with a nondegenerate restricted pencil needs a finer "
        "decomposition than the shipped models ever produce"
    )


def small_orbits_dp4(model: QuarticModel, max_length: int = 3) -> tuple[Orbit, ...]:
    """Orbits of length at most max_length, by exact fixed locus analysis.

    A point in an orbit of length L has a stabilizer of index L, so it is
    enough to walk the subgroups of index up to max_length and intersect
    their joint eigenspaces with the surface.  Positive dimensional fixed
    loci on the surface are surfaced as errors, never silently resolved.
    """
    elements = model.group_elements()
    regular = model.regular_group()
    candidates: dict = {}
    for sub in regular.subgroups(max_index=max_length):
        gens = [model.monomial_of(p) for p in sub.generators]
        components: list[tuple[Vector, ...]] = [
            tuple(
                tuple(_ONE if i == j else _ZERO for j in range(5)) for i in range(5)
            )
        ]
        for g in gens:
            refined = []
            for comp in components:
                for space in fixed_subspaces(g):
                    inter = _span_intersect(comp, space.basis)
                    if inter:
                        refined.append(inter)
            components = refined
        seen_comps = set()
        for comp in components:
            key = tuple(_point_key(r) for r in comp)
            if key in seen_comps:
                continue
            seen_comps.add(key)
            for point in _component_points(model, comp):
                candidates[_point_key(point)] = point
    orbits: dict = {}
    for point in candidates.values():
        images = {}
        for g in elements:
            img = g.apply_point(point)
            images[_point_key(img)] = img
        if len(images) <= max_length:
            orbit_points = tuple(images[k] for k in sorted(images))
            orbits[frozenset(images)] = Orbit(orbit_points)
    ordered = sorted(orbits.values(), key=lambda o: (o.length, _point_key(o.points[0])))
    return tuple(ordered)


# ---------------------------------------------------------------------------
# transport to the Picard lattice


def _line_permutation(lines: tuple[Line, ...], index: dict, g: MonomialMap) -> Permutation:
    images = []
    for line in lines:
        moved = Line.from_span(g.apply(line.rows[0]), g.apply(line.rows[1]))
        where = index.get(moved.key())
        if where is None:
            raise LineEnumerationFailure("a generator does not permute the lines")
        images.append(where)
    return Permutation(tuple(images))


def _graph_isomorphism(adj_a, adj_b, n: int) -> Optional[tuple[int, ...]]:
    """Backtracking isomorphism between two adjacency matrices."""
    assignment: list[Optional[int]] = [None] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w]:
                continue
            ok = True
            for u in range(v):
                if adj_a[v][u] != adj_b[w][assignment[u]]:
                    ok = False
                    break
            if ok:
                assignment[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                assignment[v] = None
                used[w] = False
        return False

    return tuple(assignment) if extend(0) else None  # type: ignore[arg-type]


def dp4_line_action(model: QuarticModel) -> LatticeAction:
    """The induced action on the degree 4 Picard lattice.

    Lines are matched to the exceptional classes through their meeting
    graph, and each generator is extended from the class permutation to a
    full isometry, which revalidates every intersection number.
    """
    lines = lines_dp4(model)
    index = {line.key(): i for i, line in enumerate(lines)}
    gens = [_proj_canonical(g) for g in model.generators]
    line_perms = [_line_permutation(lines, index, g) for g in gens]
    geo_group = close_generators(line_perms, degree=len(lines))
    if geo_group.order != len(model.group_elements()):
        raise LineEnumerationFailure(
            "the line action is not faithful for this model"
        )
    lattice = blowup_of_p2(5)
    classes = exceptional_classes(lattice)
    n = len(classes)
    adj_geo = [
        [1 if i != j and lines[i].meets(lines[j]) else 0 for j in range(n)]
        for i in range(n)
    ]
    adj_lat = [
        [
            lattice.pair(classes[i], classes[j]) if i != j else 0
            for j in range(n)
        ]
        for i in range(n)
    ]
    matching = _graph_isomorphism(adj_geo, adj_lat, n)
    if matching is None:
        raise LineEnumerationFailure(
            "the meeting graph of the lines is not the exceptional graph"
        )
    transported = []
    for perm in line_perms:
        images = [0] * n
        for i in range(n):
            images[matching[i]] = matching[perm(i)]
        transported.append(Permutation(tuple(images)))
    matrices = [
        action_from_line_images(lattice, perm).matrix for perm in transported
    ]
    group = close_generators(transported, degree=n)
    return LatticeAction(group, matrices, lattice)
