from itertools import permutations

import pytest

from flatconn.errors import ClosureCapError
from flatconn.groups import (
    SubgroupSet,
    catalog_group,
    compose_perms,
    cycle_label,
    enumerate_subgroups,
    group_from_permutations,
    invert_perm,
    is_normal,
    subgroup_closure,
    CATALOG_GROUP_NAMES,
)


def brute_force_closure(degree, gens):
    """Independent oracle: close a set of permutations under composition."""
    elems = {tuple(range(degree))}
    while True:
        new = {compose_perms(p, q) for p in elems for q in list(gens) + list(elems)} - elems
        if not new:
            return elems
        elems |= new


def test_s3_from_transposition_and_cycle():
    g = group_from_permutations(3, [(1, 0, 2), (1, 2, 0)])
    assert g.order == 6
    assert set(g.perms) == set(permutations(range(3)))
    assert set(g.perms) == brute_force_closure(3, [(1, 0, 2), (1, 2, 0)])
    # breadth-first numbering pinned by hand
    assert g.labels == ("e", "(01)", "(012)", "(02)", "(12)", "(021)")


def test_trivial_group():
    g = group_from_permutations(1, [])
    assert g.order == 1
    assert g.labels == ("e",)


def test_cyclic_from_four_cycle():
    g = group_from_permutations(4, [(1, 2, 3, 0)])
    assert g.order == 4
    # index k is the k-th power of the generator
    for k in range(4):
        assert g.mul(k, 1) == (k + 1) % 4


def test_left_to_right_composition():
    # apply (01) then (012): 0 -> 1 -> 2
    assert compose_perms((1, 0, 2), (1, 2, 0)) == (2, 1, 0)
    assert cycle_label((2, 1, 0)) == "(02)"
    assert invert_perm((1, 2, 0)) == (2, 0, 1)


def test_non_bijective_generator_rejected():
    with pytest.raises(ValueError):
        group_from_permutations(3, [(0, 0, 2)])


def test_closure_cap():
    with pytest.raises(ClosureCapError):
        group_from_permutations(4, [(1, 0, 2, 3), (1, 2, 3, 0)], cap=10)


def test_permutation_action_matches_table():
    for name in ("S3", "D4", "A4", "S4"):
        g = catalog_group(name)
        specs = {
            "S3": [(1, 0, 2), (1, 2, 0)],
            "D4": [(1, 2, 3, 0), (0, 3, 2, 1)],
            "A4": [(1, 2, 0, 3), (1, 0, 3, 2)],
            "S4": [(1, 0, 2, 3), (1, 2, 3, 0)],
        }
        for p in specs[name]:
            i = g.perms.index(tuple(p))
            for j in range(g.order):
                assert g.perms[g.product[j][i]] == compose_perms(g.perms[j], p)


def test_identity_and_inverse_axioms():
    for name in CATALOG_GROUP_NAMES:
        g = catalog_group(name)
        g.check_associativity()
        for i in range(g.order):
            assert g.mul(0, i) == i == g.mul(i, 0)
            assert g.mul(i, g.inv(i)) == 0


def test_subgroup_closure_a3(s3):
    a3 = subgroup_closure(s3, [2])
    assert a3.label_list() == ["e", "(012)", "(021)"]


def test_subgroup_closure_trivial(s3):
    assert subgroup_closure(s3, []).members == (0,)


def test_subgroup_closure_whole_group(s3):
    assert len(subgroup_closure(s3, [1, 2])) == 6


def test_subgroup_closure_idempotent():
    for name in ("S3", "D4", "A4"):
        g = catalog_group(name)
        for sub in enumerate_subgroups(g):
            again = subgroup_closure(g, sub.members)
            assert again.members == sub.members


def test_is_normal(s3):
    a3 = subgroup_closure(s3, [2])
    assert is_normal(s3, a3)
    assert not is_normal(s3, subgroup_closure(s3, [1]))
    assert is_normal(s3, subgroup_closure(s3, [1, 2]))


def test_enumerate_subgroups_s3(s3):
    subs = enumerate_subgroups(s3)
    assert len(subs) == 6
    assert sorted(len(s) for s in subs) == [1, 2, 2, 2, 3, 6]


def test_enumerate_subgroups_z4(z4):
    subs = enumerate_subgroups(z4)
    assert [s.members for s in subs] == [(0,), (0, 2), (0, 1, 2, 3)]


def test_enumerate_subgroups_trivial():
    g = group_from_permutations(1, [])
    assert len(enumerate_subgroups(g)) == 1


def test_enumerate_subgroups_lagrange():
    for name in CATALOG_GROUP_NAMES:
        g = catalog_group(name)
        for sub in enumerate_subgroups(g):
            assert g.order % len(sub) == 0
            # construction re-checks the subgroup axioms
            SubgroupSet(g, sub.members)


def test_enumerate_subgroups_order_bound():
    big = group_from_permutations(65, [tuple(list(range(1, 65)) + [0])])
    with pytest.raises(ValueError):
        enumerate_subgroups(big)


def test_evaluate_word(s3):
    # a b a^-1 with a -> (01), b -> (012): (01)(012)(01)
    val = s3.evaluate_word([1, 2], ((0, 1), (1, 1), (0, -1)))
    assert s3.label(val) == "(021)"


def test_catalog_orders():
    expected = {"Z2": 2, "Z3": 3, "Z4": 4, "Z6": 6, "S3": 6, "D4": 8, "A4": 12, "S4": 24}
    for name, order in expected.items():
        assert catalog_group(name).order == order


def test_unknown_catalog_name():
    with pytest.raises(ValueError):
        catalog_group("Q8")
