"""Permutation group engine: closure, recognition, quotients, Goursat."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona_lab.errors import (
    NotAGroup,
    NotAHomomorphism,
    NotAnAction,
    OrderBoundExceeded,
)
from cremona_lab.groups import (
    GoursatData,
    Homomorphism,
    IsoType,
    Permutation,
    alternating_group,
    block_projection,
    close_generators,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    fiber_product,
    find_isomorphism,
    goursat_decompose,
    group_fingerprint,
    iso_type,
    orbits,
    quotient_by,
    symmetric_group,
    trivial_group,
)


def test_composition_applies_right_factor_first():
    p = Permutation.from_cycles(3, [(0, 1)])
    q = Permutation.from_cycles(3, [(1, 2)])
    assert (p * q)(1) == p(q(1)) == p(2) == 2
    assert (p * q).images == (1, 2, 0)


def test_inverse_and_order():
    c = Permutation.from_cycles(6, [(0, 1, 2), (3, 4)])
    assert c.order() == 6
    assert (c * c.inverse()).is_identity()


def test_rejects_non_permutation():
    with pytest.raises(NotAGroup):
        Permutation((0, 0, 1))


def test_closure_s3():
    g = symmetric_group(3)
    assert g.order == 6
    assert [p.images for p in g.elements] == sorted(p.images for p in g.elements)


def test_order_bound_enforced():
    gens = symmetric_group(5).generators
    with pytest.raises(OrderBoundExceeded):
        close_generators(gens, order_bound=100)


def test_order_bound_env_override(monkeypatch):
    monkeypatch.setenv("CREMONA_LAB_ORDER_BOUND", "50")
    with pytest.raises(OrderBoundExceeded):
        close_generators(symmetric_group(5).generators)
    monkeypatch.setenv("CREMONA_LAB_ORDER_BOUND", "200")
    assert close_generators(symmetric_group(5).generators).order == 120


_S4 = symmetric_group(4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(_S4.elements), min_size=1, max_size=3))
def test_closure_order_satisfies_lagrange(gens):
    h = close_generators(gens, degree=4)
    assert 24 % h.order == 0
    for a in h.elements:
        assert a.inverse() in h
        for b in h.generators:
            assert a * b in h


# Counts frozen from an independent brute-force subset enumeration.
SUBGROUP_COUNTS = [
    (cyclic_group(6), 4),
    (symmetric_group(3), 6),
    (dihedral_group(4), 10),
    (dicyclic_group(2), 6),
    (dicyclic_group(3), 8),
    (alternating_group(4), 10),
]


@pytest.mark.parametrize("group,count", SUBGROUP_COUNTS)
def test_subgroup_counts(group, count):
    assert len(group.subgroups()) == count


def test_a5_subgroup_lattice():
    a5 = alternating_group(5)
    subs = a5.subgroups()
    assert len(subs) == 59
    orders = sorted({h.order for h in subs})
    assert orders == [1, 2, 3, 4, 5, 6, 10, 12, 60]
    assert [h.order for h in a5.subgroups(max_index=4)] == [60]


def test_s5_subgroup_count():
    assert len(symmetric_group(5).subgroups()) == 156


RECOGNITION = [
    (trivial_group(), "C1"),
    (cyclic_group(6), "C6"),
    (dihedral_group(2), "C2 x C2"),
    (symmetric_group(3), "S3"),
    (dihedral_group(4), "D4"),
    (dihedral_group(5), "D5"),
    (dihedral_group(6), "S3 x C2"),
    (dihedral_group(10), "D5 x C2"),
    (dicyclic_group(2), "Dic2"),
    (dicyclic_group(3), "Dic3"),
    (alternating_group(4), "A4"),
    (symmetric_group(4), "S4"),
    (alternating_group(5), "A5"),
    (symmetric_group(5), "S5"),
]


@pytest.mark.parametrize("group,name", RECOGNITION)
def test_iso_type_recognition(group, name):
    assert str(iso_type(group)) == name


def test_iso_type_product_tag_is_canonical():
    tag = IsoType.product(IsoType.cyclic(2), IsoType.sym(3))
    assert tag == IsoType.product(IsoType.sym(3), IsoType.cyclic(2))
    assert str(tag) == "S3 x C2"
    assert tag.order() == 12


def test_frobenius_group_gets_other_tag():
    s5 = symmetric_group(5)
    f20 = s5.subgroup(
        [
            Permutation.from_cycles(5, [(0, 1, 2, 3, 4)]),
            Permutation.from_cycles(5, [(1, 2, 4, 3)]),
        ]
    )
    tag = iso_type(f20)
    assert tag.kind == "other"
    assert tag.order() == 20
    assert find_isomorphism(f20, dicyclic_group(5)) is None
    assert find_isomorphism(f20, f20) is not None


def test_fingerprint_ignores_generating_set():
    alt = close_generators(
        [
            Permutation.from_cycles(4, [(0, 1)]),
            Permutation.from_cycles(4, [(1, 2)]),
            Permutation.from_cycles(4, [(2, 3)]),
        ]
    )
    assert group_fingerprint(alt) == group_fingerprint(symmetric_group(4))


def test_quotient_s4_by_klein_four():
    s4 = symmetric_group(4)
    klein = [
        Permutation.identity(4),
        Permutation.from_cycles(4, [(0, 1), (2, 3)]),
        Permutation.from_cycles(4, [(0, 2), (1, 3)]),
        Permutation.from_cycles(4, [(0, 3), (1, 2)]),
    ]
    q, proj = quotient_by(s4, klein)
    assert q.order == 6
    assert str(iso_type(q)) == "S3"
    assert sorted(p.images for p in proj.kernel_elements()) == sorted(
        p.images for p in klein
    )


def test_quotient_requires_normality():
    s3 = symmetric_group(3)
    flip = [Permutation.identity(3), Permutation.from_cycles(3, [(0, 1)])]
    with pytest.raises(NotAGroup):
        quotient_by(s3, flip)


def test_homomorphism_rejects_bad_images():
    s3 = symmetric_group(3)
    c2 = cyclic_group(2)
    swap = Permutation.from_cycles(2, [(0, 1)])
    with pytest.raises(NotAHomomorphism):
        # sends the 3-cycle generator to an involution
        Homomorphism(s3, c2, [swap, swap])


def test_sign_homomorphism():
    s3 = symmetric_group(3)
    c2 = cyclic_group(2)
    swap = Permutation.from_cycles(2, [(0, 1)])
    images = [
        swap if s.order() == 2 else Permutation.identity(2) for s in s3.generators
    ]
    sgn = Homomorphism(s3, c2, images)
    assert sgn.is_surjective()
    assert len(sgn.kernel_elements()) == 3


def test_orbits_natural_action():
    g = close_generators([Permutation.from_cycles(5, [(0, 1, 2)])])
    result = orbits(g, lambda s, p: s(p), list(range(5)))
    assert result == ((0, 1, 2), (3,), (4,))


def test_orbits_rejects_non_action():
    g = symmetric_group(3)
    with pytest.raises(NotAnAction):
        orbits(g, lambda s, p: (p + 1) % 3, [0, 1, 2])


def _sign_map(s3, c2):
    swap = Permutation.from_cycles(2, [(0, 1)])
    images = [
        swap if s.order() == 2 else Permutation.identity(2) for s in s3.generators
    ]
    return Homomorphism(s3, c2, images)


def test_fiber_product_over_c2():
    s3 = symmetric_group(3)
    c2 = cyclic_group(2)
    sgn = _sign_map(s3, c2)
    b = fiber_product(GoursatData(s3, s3, c2, sgn, sgn))
    assert b.order == 18
    assert b.degree == 6


def test_goursat_round_trip():
    s3 = symmetric_group(3)
    c2 = cyclic_group(2)
    sgn = _sign_map(s3, c2)
    b = fiber_product(GoursatData(s3, s3, c2, sgn, sgn))
    left = block_projection(b, 3, s3, "left")
    right = block_projection(b, 3, s3, "right")
    data = goursat_decompose(b, left, right)
    assert data.quotient.order == 2
    again = fiber_product(data)
    assert {p.images for p in again.elements} == {p.images for p in b.elements}


def test_goursat_diagonal():
    s3 = symmetric_group(3)
    ident = Homomorphism(s3, s3, list(s3.generators))
    diag = fiber_product(GoursatData(s3, s3, s3, ident, ident))
    assert diag.order == 6
    assert str(iso_type(diag)) == "S3"


def test_goursat_full_product():
    s3 = symmetric_group(3)
    d5 = dihedral_group(5)
    triv = trivial_group()
    to_triv_l = Homomorphism(s3, triv, [Permutation.identity(1)] * len(s3.generators))
    to_triv_r = Homomorphism(d5, triv, [Permutation.identity(1)] * len(d5.generators))
    full = fiber_product(GoursatData(s3, d5, triv, to_triv_l, to_triv_r))
    assert full.order == 60
    assert str(iso_type(full)) == "D5 x S3"


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(_S4.elements), st.sampled_from(_S4.elements))
def test_conjugation_preserves_order(a, b):
    assert (a * b * a.inverse()).order() == b.order()
