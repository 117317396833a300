import random

import pytest

from flatconn.complexes import Presentation, pi1_presentation, spanning_tree
from flatconn.errors import EnumerationCapError, IncompleteAutomatonError
from flatconn.groups import catalog_group, subgroup_closure
from flatconn.subgroups import (
    SubgroupSpec,
    automata_equal,
    automaton_from_quotient,
    automaton_from_spec,
    is_normal_subgroup,
    membership,
    reidemeister_schreier,
    stallings_core,
    todd_coxeter,
)
from flatconn.words import reduce_word

FREE2 = Presentation(generators=(0, 1), relators=())

A = (0, 1)
B = (1, 1)
A_ = (0, -1)
B_ = (1, -1)

INDEX2 = [(A, A), (B,), (A, B, A_)]  # kernel of the a-parity map


def test_stallings_index_two():
    aut = stallings_core(INDEX2, 2)
    assert aut.complete
    assert aut.state_count == 2
    assert aut.forward == ((1, 0), (0, 1))


def test_stallings_infinite_index():
    aut = stallings_core([(A,)], 2)
    assert not aut.complete
    assert aut.state_count == 1
    assert aut.forward == ((0,), (None,))


def test_stallings_empty():
    aut = stallings_core([], 2)
    assert aut.state_count == 1
    assert aut.forward == ((None,), (None,))
    assert not aut.complete


def test_membership_examples():
    aut = stallings_core(INDEX2, 2)
    assert membership(aut, (A, A))
    assert not membership(aut, (A, B))
    assert membership(aut, ())


def test_membership_incomplete_core():
    aut = stallings_core([(A,)], 2)
    assert membership(aut, (A,))
    assert not membership(aut, (B,))  # undefined transition: not a member


def test_membership_invariant_under_free_reduction():
    rng = random.Random(3)
    aut = stallings_core(INDEX2, 2)
    for _ in range(100):
        w = tuple((rng.randrange(2), rng.choice((1, -1))) for _ in range(rng.randint(0, 8)))
        k = rng.randint(0, len(w))
        sym, sign = rng.randrange(2), rng.choice((1, -1))
        padded = w[:k] + ((sym, sign), (sym, -sign)) + w[k:]
        assert membership(aut, padded) == membership(aut, w)
        assert membership(aut, reduce_word(w)) == membership(aut, w)


def test_automata_equal_reflexive():
    aut = stallings_core(INDEX2, 2)
    assert automata_equal(aut, aut)


def test_automata_equal_across_constructions(z2):
    core = stallings_core(INDEX2, 2)
    quot = automaton_from_quotient([1, 0], z2, subgroup_closure(z2, ()))
    assert automata_equal(core, quot)


def test_automata_not_equal_different_index(s3):
    a3 = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, [2]))
    ker = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, ()))
    assert a3.state_count == 2 and ker.state_count == 6
    assert not automata_equal(a3, ker)


def test_automata_equal_requires_complete():
    core = stallings_core([(A,)], 2)
    with pytest.raises(IncompleteAutomatonError):
        automata_equal(core, core)


def test_quotient_automaton_a3(s3):
    aut = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, [2]))
    assert aut.state_count == 2
    assert aut.forward[0] == (1, 0)  # a swaps the two cosets
    assert aut.forward[1] == (0, 1)  # b fixes both


def test_quotient_automaton_whole_group(s3):
    aut = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, [1, 2]))
    assert aut.state_count == 1


def test_quotient_automaton_cayley(s3):
    aut = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, ()))
    assert aut.state_count == 6
    assert aut.complete


def test_quotient_rejects_bad_relator_image(s3):
    rel = ((0, 1), (1, 1), (0, -1), (1, -1))
    with pytest.raises(ValueError, match="relator"):
        automaton_from_quotient([1, 3], s3, subgroup_closure(s3, ()), relators=[rel])


def test_todd_coxeter_torus_index_two(torus):
    pres = pi1_presentation(torus, spanning_tree(torus))
    aut = todd_coxeter(pres, [(A,), (B, B)])
    assert aut.complete
    assert aut.state_count == 2


def test_todd_coxeter_index_one(torus):
    pres = pi1_presentation(torus, spanning_tree(torus))
    aut = todd_coxeter(pres, [(A,), (B,)])
    assert aut.state_count == 1


def test_todd_coxeter_cap_exceeded(torus):
    pres = pi1_presentation(torus, spanning_tree(torus))
    with pytest.raises(EnumerationCapError, match="did not complete within cap"):
        todd_coxeter(pres, [(A,)], cap=1000)


def test_todd_coxeter_agrees_with_quotient(torus, z2):
    pres = pi1_presentation(torus, spanning_tree(torus))
    tc = todd_coxeter(pres, [(B,), (A, A)])
    quot = automaton_from_quotient([1, 0], z2, subgroup_closure(z2, ()), relators=pres.relators)
    assert automata_equal(tc, quot)


def test_normality(s3, z2):
    ker = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, ()))
    assert is_normal_subgroup(ker)
    assert is_normal_subgroup(stallings_core(INDEX2, 2))
    nonnormal = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, [1]))
    assert nonnormal.state_count == 3
    assert not is_normal_subgroup(nonnormal)


def test_schreier_index_one():
    aut = stallings_core([(A,), (B,)], 2)
    assert reidemeister_schreier(aut, FREE2) == [(A,), (B,)]


def test_schreier_index_two_count():
    aut = stallings_core(INDEX2, 2)
    gens = reidemeister_schreier(aut, FREE2)
    assert len(gens) == 2 * (2 - 1) + 1


def test_schreier_kernel_count(s3):
    ker = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, ()))
    gens = reidemeister_schreier(ker, FREE2)
    assert len(gens) == 6 * (2 - 1) + 1


def test_schreier_generators_are_members(s3):
    for sub_seed in ((), (1,), (2,)):
        aut = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, sub_seed))
        for w in reidemeister_schreier(aut, FREE2):
            assert membership(aut, w)


def test_schreier_index_consistency(s3):
    for sub_seed in ((), (1,), (2,)):
        aut = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, sub_seed))
        gens = reidemeister_schreier(aut, FREE2)
        assert len(gens) == aut.state_count * (2 - 1) + 1


def test_stallings_round_trip(s3):
    for sub_seed in ((), (1,), (2,)):
        aut = automaton_from_quotient([1, 2], s3, subgroup_closure(s3, sub_seed))
        gens = reidemeister_schreier(aut, FREE2)
        rebuilt = stallings_core(gens, 2)
        assert automata_equal(aut, rebuilt)


def test_spec_routing(torus, s3):
    pres_free = FREE2
    spec = SubgroupSpec(kind="words", words=tuple(INDEX2))
    aut = automaton_from_spec(spec, pres_free)
    assert aut.state_count == 2
    pres_torus = pi1_presentation(torus, spanning_tree(torus))
    spec2 = SubgroupSpec(kind="words", words=((A,), (B, B)))
    aut2 = automaton_from_spec(spec2, pres_torus)
    assert aut2.state_count == 2
    spec3 = SubgroupSpec(kind="quotient", subgroup=(2,))
    aut3 = automaton_from_spec(spec3, pres_free, default_group=s3, default_images=[1, 2])
    assert aut3.state_count == 2


def test_spec_unknown_kind():
    with pytest.raises(ValueError):
        SubgroupSpec(kind="mystery")


def test_canonical_numbering_is_bfs():
    # state 1 must be the a-successor of state 0
    aut = stallings_core(INDEX2, 2)
    assert aut.forward[0][0] == 1
    assert aut.trace((A, A)) == 0
    assert aut.trace((A,)) == 1


def test_todd_coxeter_recovers_finite_group_orders():
    # two-generator torsion presentations with classically known orders
    from flatconn.complexes import BaseComplex, Edge

    cases = [
        ([(A, A), (B, B, B), (A, B, A, B)], 6),  # dihedral of order 6
        ([(A, A), (B, B, B), (A, B, A, B, A, B)], 12),  # even permutations of 4 points
    ]
    for relators, order in cases:
        c = BaseComplex(1, [Edge(0, 0, 0), Edge(1, 0, 0)], relators=relators)
        pres = pi1_presentation(c, spanning_tree(c))
        assert todd_coxeter(pres, []).state_count == order


def test_todd_coxeter_lattice_indices(torus):
    # sublattices of Z^2: the index is |det| of the generator matrix
    pres = pi1_presentation(torus, spanning_tree(torus))
    assert todd_coxeter(pres, [(A, B), (A_, B)]).state_count == 2
    assert todd_coxeter(pres, [(A, A, B), (B, B, B)]).state_count == 6


def test_stallings_kernel_of_z3_map():
    z3 = catalog_group("Z3")
    words = [(A, A, A), (B,), (A, B, A_), (A, A, B, A_, A_)]
    core = stallings_core(words, 2)
    quot = automaton_from_quotient([1, 0], z3, subgroup_closure(z3, ()))
    assert core.state_count == 3
    assert automata_equal(core, quot)
