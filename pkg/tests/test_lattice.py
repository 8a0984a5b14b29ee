"""Lattice pairings, class enumeration, Weyl closures and round trips."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona_lab.errors import (
    DegreeOutOfRange,
    DegreeUnderflow,
    NotAnIsometry,
    NotIntersectionPreserving,
    NotInWeylGroup,
)
from cremona_lab.groups import Permutation, cyclic_group, dihedral_group, iso_type, orbits
from cremona_lab.lattice import (
    Isometry,
    LatticeAction,
    action_from_line_images,
    blowup_of_p2,
    blowup_orbit,
    exceptional_classes,
    fixed_basis,
    fixed_rank,
    invariant_rank,
    is_minimal,
    quadric,
    reflection,
    root_classes,
    simple_roots,
    weyl_group,
)


def test_blowup_lattice_shape():
    lat = blowup_of_p2(6)
    assert lat.rank == 7
    assert lat.degree == 3
    assert lat.pair((1, 0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0)) == 1
    assert lat.pair((0, 1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0, 0)) == -1
    assert lat.pair((0, 1, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0, 0)) == 0


def test_quadric_lattice():
    lat = quadric()
    assert lat.degree == 8
    assert lat.pair((1, 0), (0, 1)) == 1
    assert lat.pair((1, 0), (1, 0)) == 0
    assert exceptional_classes(lat) == ()


LINE_COUNTS = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}
ROOT_COUNTS = {3: 8, 4: 20, 5: 40, 6: 72, 7: 126, 8: 240}


@pytest.mark.parametrize("k,count", sorted(LINE_COUNTS.items()))
def test_minus_one_class_counts(k, count):
    classes = exceptional_classes(blowup_of_p2(k))
    assert len(classes) == count
    lat = blowup_of_p2(k)
    for v in classes:
        assert lat.pair(v, v) == -1
        assert lat.pair(v, lat.canonical) == -1


@pytest.mark.parametrize("k,count", sorted(ROOT_COUNTS.items()))
def test_root_class_counts(k, count):
    lat = blowup_of_p2(k)
    roots = root_classes(lat)
    assert len(roots) == count
    for v in roots:
        assert lat.pair(v, v) == -2
        assert lat.pair(v, lat.canonical) == 0


def test_simple_roots_are_roots():
    lat = blowup_of_p2(6)
    for r in simple_roots(lat):
        assert lat.pair(r, r) == -2
        assert lat.pair(r, lat.canonical) == 0


def test_reflection_is_an_involution():
    lat = blowup_of_p2(5)
    for root in simple_roots(lat):
        s = reflection(lat, root)
        assert s.compose(s).matrix == tuple(
            tuple(1 if i == j else 0 for j in range(lat.rank))
            for i in range(lat.rank)
        )


def test_reflection_rejects_non_root():
    lat = blowup_of_p2(3)
    with pytest.raises(NotAnIsometry):
        reflection(lat, (0, 1, 0, 0))


def test_isometry_rejects_pairing_violation():
    lat = blowup_of_p2(1)
    with pytest.raises(NotAnIsometry):
        Isometry(lat, ((0, 1), (1, 0)))


def test_isometry_rejects_canonical_flip():
    lat = blowup_of_p2(1)
    with pytest.raises(NotAnIsometry):
        Isometry(lat, ((-1, 0), (0, -1)))


WEYL_ORDERS = {3: 51840, 4: 1920, 5: 120, 6: 12}


@pytest.mark.parametrize("degree,order", sorted(WEYL_ORDERS.items()))
def test_weyl_group_orders(degree, order):
    assert weyl_group(degree).order == order


def test_weyl_degree_range():
    with pytest.raises(DegreeOutOfRange):
        weyl_group(7)
    with pytest.raises(DegreeOutOfRange):
        weyl_group(2)


def test_weyl_tags():
    assert str(iso_type(weyl_group(6).perm_group)) == "S3 x C2"
    assert str(iso_type(weyl_group(5).perm_group)) == "S5"


@pytest.mark.parametrize("degree", [3, 4, 5, 6])
def test_weyl_transitive_on_lines(degree):
    w = weyl_group(degree)
    parts = orbits(w.perm_group, lambda s, p: s(p), list(range(len(w.lines))))
    assert len(parts) == 1


@pytest.mark.parametrize("degree", [3, 4, 5, 6])
def test_full_weyl_fixes_only_the_canonical_line(degree):
    w = weyl_group(degree)
    mats = [w.matrix_for(g) for g in w.perm_group.generators]
    assert fixed_rank(w.lattice.rank, mats) == 1
    (basis_vector,) = fixed_basis(w.lattice.rank, mats)
    k = w.lattice.rank - 1
    assert basis_vector in ((-3,) + (1,) * k, (3,) + (-1,) * k)


def test_matrix_round_trip_degree_4():
    w = weyl_group(4)
    for index in (0, 7, 100, 1000, 1919):
        p = w.perm_group.elements[index]
        m = w.matrix_for(p)
        assert w.perm_of_matrix(m).images == p.images


def test_matrix_for_rejects_foreign_permutation():
    w = weyl_group(6)
    foreign = Permutation.from_cycles(6, [(0, 1)])
    if foreign in w.perm_group:
        foreign = Permutation.from_cycles(6, [(0, 2)])
    assert foreign not in w.perm_group
    with pytest.raises(NotInWeylGroup):
        w.matrix_for(foreign)


def test_subgroup_from_matrices():
    w = weyl_group(5)
    mats = [w.matrix_for(g) for g in w.perm_group.generators[:2]]
    sub = w.subgroup_from_matrices(mats)
    assert sub.order <= w.order
    assert w.order % sub.order == 0


_W5 = weyl_group(5)


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from(_W5.perm_group.elements),
    st.sampled_from(_W5.lines),
    st.sampled_from(_W5.lines),
)
def test_weyl_matrices_preserve_pairing(p, v, w):
    m = _W5.matrix_for(p)
    iso = Isometry(_W5.lattice, m)
    assert _W5.lattice.pair(iso.apply(v), iso.apply(w)) == _W5.lattice.pair(v, w)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(_W5.perm_group.elements))
def test_matrix_for_is_a_homomorphism(p):
    q = _W5.perm_group.generators[0]
    left = _W5.matrix_for(p * q)
    from cremona_lab.intlinalg import mat_mul

    right = mat_mul(_W5.matrix_for(p), _W5.matrix_for(q))
    assert left == right


def test_action_from_line_images_recovers_weyl_matrices():
    w = weyl_group(4)
    for index in (1, 13, 500):
        p = w.perm_group.elements[index]
        iso = action_from_line_images(w.lattice, p)
        assert iso.matrix == w.matrix_for(p)


def test_action_from_line_images_rejects_bad_permutation():
    lat = blowup_of_p2(3)
    bad = Permutation((1, 0, 2, 3, 4, 5))
    with pytest.raises(NotIntersectionPreserving):
        action_from_line_images(lat, bad)


def test_lattice_action_matches_weyl_matrices():
    w = weyl_group(6)
    mats = [w.matrix_for(g) for g in w.perm_group.generators]
    action = LatticeAction(w.perm_group, mats, w.lattice)
    for p in w.perm_group.elements:
        assert action.matrix_of(p) == w.matrix_for(p)
    assert invariant_rank(action) == 1
    assert is_minimal(action)


def test_lattice_action_restriction_grows_invariants():
    w = weyl_group(6)
    mats = [w.matrix_for(g) for g in w.perm_group.generators]
    action = LatticeAction(w.perm_group, mats, w.lattice)
    trivial = action.restricted_to(w.perm_group.subgroup([]))
    assert invariant_rank(trivial) == w.lattice.rank


def test_blowup_orbit_of_five_points():
    base = LatticeAction(dihedral_group(5), [((1,),), ((1,),)], blowup_of_p2(0))
    rot = Permutation((1, 2, 3, 4, 0))
    ref = Permutation((0, 4, 3, 2, 1))
    bigger = blowup_orbit(base, [rot, ref])
    assert bigger.lattice.degree == 4
    assert invariant_rank(bigger) == 2
    assert not is_minimal(bigger)
    for old, new in zip(base.gen_matrices, bigger.gen_matrices):
        assert tuple(row[:1] for row in new[:1]) == old


def test_blowup_orbit_on_quadric():
    eye = ((1, 0), (0, 1))
    base = LatticeAction(cyclic_group(2), [eye], quadric())
    smaller = blowup_orbit(base, [Permutation((0,))])
    assert smaller.lattice.degree == 7
    assert smaller.lattice.rank == 3
    assert invariant_rank(smaller) == 3


def test_blowup_orbit_underflow():
    eye = tuple(tuple(1 if i == j else 0 for j in range(9)) for i in range(9))
    base = LatticeAction(cyclic_group(2), [eye], blowup_of_p2(8))
    with pytest.raises(DegreeUnderflow):
        blowup_orbit(base, [Permutation((0,))])
