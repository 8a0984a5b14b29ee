"""Cohomology pipeline against hand oracles and the cyclic formula."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona_lab.cohomology import (
    FiniteAbelianGroup,
    H1Witness,
    Ok,
    h1,
    h1_all_subgroups,
    h1_cyclic,
    h1_invariants,
)
from cremona_lab.groups import Permutation, close_generators, cyclic_group, symmetric_group
from cremona_lab.lattice import LatticeAction, blowup_of_p2, invariant_rank, weyl_group


def _perm_matrix(p: Permutation):
    n = p.degree
    return tuple(
        tuple(1 if p(j) == i else 0 for j in range(n)) for i in range(n)
    )


def _block_diag(a, b):
    n, m = len(a), len(b)
    out = [tuple(a[i]) + (0,) * m for i in range(n)]
    out += [(0,) * n + tuple(b[i]) for i in range(m)]
    return tuple(out)


def test_sign_action_has_order_two_cohomology():
    action = LatticeAction(cyclic_group(2), [((-1,),)])
    assert h1(action).divisors == (2,)
    witness = h1_all_subgroups(action)
    assert isinstance(witness, H1Witness)
    assert witness.subgroup.order == 2
    assert witness.h1.divisors == (2,)


def test_minus_identity_rank_two():
    action = LatticeAction(cyclic_group(2), [((-1, 0), (0, -1))])
    assert h1(action).divisors == (2, 2)


def test_swap_module_is_invisible():
    action = LatticeAction(cyclic_group(2), [((0, 1), (1, 0))])
    assert h1(action).is_trivial
    assert h1_all_subgroups(action) is Ok


def test_trivial_action_of_s3():
    group = symmetric_group(3)
    eye = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    action = LatticeAction(group, [eye for _ in group.generators])
    assert h1(action).is_trivial


def test_natural_s3_module():
    group = symmetric_group(3)
    action = LatticeAction(group, [_perm_matrix(s) for s in group.generators])
    assert h1_all_subgroups(action) is Ok


# An order 3 isometry of the cubic surface lattice with invariant rank 1
# and nonvanishing cohomology, found by searching W(E6) and frozen here.
CUBIC_WITNESS_MATRIX = (
    (4, 1, 1, 1, 2, 2, 2),
    (-2, -1, -1, 0, -1, -1, -1),
    (-2, 0, -1, -1, -1, -1, -1),
    (-2, -1, 0, -1, -1, -1, -1),
    (-1, 0, 0, 0, -1, -1, 0),
    (-1, 0, 0, 0, 0, -1, -1),
    (-1, 0, 0, 0, -1, 0, -1),
)


def test_cubic_surface_witness():
    action = LatticeAction(cyclic_group(3), [CUBIC_WITNESS_MATRIX], blowup_of_p2(6))
    assert invariant_rank(action) == 1
    assert h1(action).divisors == (3, 3)
    assert h1_cyclic(CUBIC_WITNESS_MATRIX, 3) == (3, 3)
    witness = h1_all_subgroups(action)
    assert isinstance(witness, H1Witness)
    assert witness.subgroup.order == 3
    assert not witness.h1.is_trivial


@pytest.mark.parametrize("degree", [5, 6])
def test_cyclic_cross_check_on_weyl_subgroups(degree):
    w = weyl_group(degree)
    for sub in w.perm_group.cyclic_subgroups():
        generator = next(g for g in sub.elements if g.order() == sub.order)
        matrix = w.matrix_for(generator)
        action = LatticeAction(sub.subgroup([generator]), [matrix])
        invariants = h1_invariants(action)
        assert invariants == h1_cyclic(matrix, sub.order)
        exponent = invariants[-1] if invariants else 1
        assert sub.order % exponent == 0


def test_stable_invariance_under_permutation_summand():
    shift = _perm_matrix(Permutation((1, 2, 0)))
    plain = LatticeAction(cyclic_group(3), [CUBIC_WITNESS_MATRIX])
    padded = LatticeAction(
        cyclic_group(3), [_block_diag(CUBIC_WITNESS_MATRIX, shift)]
    )
    assert h1(padded).divisors == h1(plain).divisors == (3, 3)

    sign_and_swap = LatticeAction(
        cyclic_group(2), [_block_diag(((-1,),), ((0, 1), (1, 0)))]
    )
    assert h1(sign_and_swap).divisors == (2,)


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_h1_of_permutation_modules_vanishes(data):
    n = data.draw(st.integers(min_value=2, max_value=5))
    raw = data.draw(
        st.lists(st.permutations(range(n)), min_size=1, max_size=2)
    )
    group = close_generators([Permutation(tuple(p)) for p in raw], degree=n)
    action = LatticeAction(group, [_perm_matrix(s) for s in group.generators])
    assert h1_invariants(action) == ()


def test_divisor_chain_validation():
    assert FiniteAbelianGroup(()).is_trivial
    assert str(FiniteAbelianGroup((2, 4))) == "Z/2 x Z/4"
    assert FiniteAbelianGroup((2, 4)).order == 8
    assert FiniteAbelianGroup((3, 3)).exponent == 3
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1, 2))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((3, 2))
    with pytest.raises(ValueError):
        H1Witness(cyclic_group(2), FiniteAbelianGroup(()))
