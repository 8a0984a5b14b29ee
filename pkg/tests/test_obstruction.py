"""Catalog integrity, splitting searches, and the lift obstruction table."""

from __future__ import annotations

import pytest

from cremona_lab.errors import CatalogValidationError, NotAProjectiveSubgroupTag
from cremona_lab.groups import (
    IsoType,
    Permutation,
    alternating_group,
    close_generators,
    cyclic_group,
    dihedral_group,
    iso_type,
    symmetric_group,
)
from cremona_lab.obstruction import (
    CentralExtension,
    amitsur_diag_p1p1,
    as_projective_tag,
    binary_catalog,
    catalog_entry,
    direct_product_with_c2,
    extension_splits,
    has_linear_lift,
    projective_group,
)


def test_catalog_loads_with_distinct_bases():
    entries = binary_catalog()
    assert len(entries) == 26
    assert len({e.base for e in entries}) == 26
    for entry in entries:
        assert entry.extension.total.order == 2 * entry.base.order()


def test_polyhedral_covers_have_unique_involution():
    for kind, n, order8 in (("alt", 4, False), ("sym", 4, True), ("alt", 5, False)):
        entry = catalog_entry(IsoType(kind, n=n))
        total = entry.extension.total
        involutions = [g for g in total.elements if g.order() == 2]
        assert involutions == [entry.extension.center_elt]
        # order 8 elements separate this double cover of S4 from the
        # other one, which has plenty of involutions
        assert any(g.order() == 8 for g in total.elements) == order8


RAW_SPLIT_TABLE = [
    (IsoType.dihedral(2), False),  # quaternion group over the Klein four
    (IsoType.dihedral(3), False),
    (IsoType.dihedral(4), False),
    (IsoType.dihedral(5), False),
    (IsoType.dihedral(6), False),
    (IsoType.alt(4), False),
    (IsoType.sym(4), False),
    (IsoType.alt(5), False),
    (IsoType.cyclic(3), True),
    (IsoType.cyclic(5), True),
    (IsoType.cyclic(4), False),
    (IsoType.cyclic(6), False),
]


@pytest.mark.parametrize("tag,expected", RAW_SPLIT_TABLE, ids=str)
def test_extension_splits_table(tag, expected):
    # every dicyclic cover has a unique involution, which lands in any
    # even order subgroup, so no dihedral cover splits, odd n included
    assert extension_splits(catalog_entry(tag).extension) is expected


def test_every_product_with_c2_splits():
    for entry in binary_catalog():
        base = projective_group(entry.base)
        ext = direct_product_with_c2(base)
        assert ext.quotient_type == iso_type(base)
        assert extension_splits(ext)


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclic_always_lifts(n):
    assert has_linear_lift(IsoType.cyclic(n))


@pytest.mark.parametrize("n", range(2, 13))
def test_dihedral_lift_parity(n):
    assert has_linear_lift(IsoType.dihedral(n)) is (n % 2 == 1)


def test_polyhedral_groups_do_not_lift():
    assert not has_linear_lift(IsoType.alt(4))
    assert not has_linear_lift(IsoType.sym(4))
    assert not has_linear_lift(IsoType.alt(5))


def test_amitsur_support():
    nontrivial = set()
    for entry in binary_catalog():
        if not amitsur_diag_p1p1(entry.base).is_trivial:
            nontrivial.add(entry.base)
    expected = {IsoType.dihedral(n) for n in range(2, 13, 2)}
    expected |= {IsoType.alt(4), IsoType.sym(4), IsoType.alt(5)}
    assert nontrivial == expected
    assert amitsur_diag_p1p1(IsoType.alt(4)).divisors == (2,)
    assert amitsur_diag_p1p1(IsoType.cyclic(7)).divisors == ()


NORMALIZATION_TABLE = [
    (IsoType.sym(2), IsoType.cyclic(2)),
    (IsoType.sym(3), IsoType.dihedral(3)),
    (IsoType.alt(3), IsoType.cyclic(3)),
    (IsoType.dihedral(1), IsoType.cyclic(2)),
    (IsoType.product(IsoType.cyclic(2), IsoType.cyclic(2)), IsoType.dihedral(2)),
    (IsoType.product(IsoType.sym(3), IsoType.cyclic(2)), IsoType.dihedral(6)),
    (IsoType.product(IsoType.dihedral(5), IsoType.cyclic(2)), IsoType.dihedral(10)),
    (IsoType.product(IsoType.cyclic(3), IsoType.cyclic(2)), IsoType.cyclic(6)),
]


@pytest.mark.parametrize("tag,expected", NORMALIZATION_TABLE, ids=str)
def test_projective_tag_normalization(tag, expected):
    assert as_projective_tag(tag) == expected


@pytest.mark.parametrize(
    "tag",
    [
        IsoType.dicyclic(3),
        IsoType.alt(6),
        IsoType.sym(5),
        IsoType.product(IsoType.cyclic(4), IsoType.cyclic(2)),
        IsoType.product(IsoType.alt(4), IsoType.cyclic(2)),
        IsoType.other(20, ()),
    ],
    ids=str,
)
def test_projective_tag_rejections(tag):
    with pytest.raises(NotAProjectiveSubgroupTag):
        as_projective_tag(tag)


def test_recognized_group_tags_round_trip():
    # tags computed from groups, not only hand-built ones
    assert as_projective_tag(iso_type(dihedral_group(6))) == IsoType.dihedral(6)
    assert as_projective_tag(iso_type(dihedral_group(2))) == IsoType.dihedral(2)
    assert as_projective_tag(iso_type(symmetric_group(3))) == IsoType.dihedral(3)
    assert as_projective_tag(iso_type(cyclic_group(12))) == IsoType.cyclic(12)
    assert as_projective_tag(iso_type(alternating_group(5))) == IsoType.alt(5)


def test_central_extension_validation():
    s4 = symmetric_group(4)
    transposition = Permutation((1, 0, 2, 3))
    with pytest.raises(CatalogValidationError):
        CentralExtension(s4, transposition, IsoType.cyclic(12))
    c4 = cyclic_group(4)
    flip = Permutation((2, 3, 0, 1))
    with pytest.raises(CatalogValidationError):
        CentralExtension(c4, flip, IsoType.cyclic(3))


def test_on_demand_entries_beyond_catalog():
    entry = catalog_entry(IsoType.dihedral(15))
    assert entry.extension.total.order == 60
    assert has_linear_lift(IsoType.dihedral(15))
    assert not has_linear_lift(IsoType.dihedral(14))
