from collections import Counter

import pytest

from oracles import all_pairs_derived_subgroup, hall_subgroup_counts, transitive_pair_subgroup_count

from dsp.abelianization import AbelianInvariants
from dsp.coset_enum import CosetTable, coset_action, enumerate_cosets, is_normal, verify_table
from dsp.errors import BudgetExhausted, OrderTooLarge
from dsp.finite_quotients import (
    FiniteGroupRep,
    GaloisCoverDatum,
    conjugacy_class_size,
    corollary_check,
    galois_closure,
    is_binary_icosahedral,
    is_perfect_finite,
    low_index_subgroups,
    permutation_image,
    regular_table,
)
from dsp.presentation import Presentation, parse_presentation
from dsp.subgroup_rewriting import subgroup_generators

S5 = FiniteGroupRep.generated_by([(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], 5)
A5 = FiniteGroupRep.generated_by([(1, 2, 0, 3, 4), (1, 2, 3, 4, 0)], 5)


def test_trivial_image():
    rep = permutation_image(CosetTable(2, ((0, 0, 0, 0),)))
    assert rep.order == 1
    assert is_perfect_finite(rep)


def test_s3_image(s3):
    rep = permutation_image(enumerate_cosets(s3, [], 100))
    assert rep.order == 6
    assert not is_perfect_finite(rep)


def test_binary_icosahedral_image(binary_icosahedral):
    rep = permutation_image(enumerate_cosets(binary_icosahedral, [], 1000))
    assert rep.order == 120
    assert is_perfect_finite(rep)
    assert is_binary_icosahedral(rep)
    assert len(all_pairs_derived_subgroup(rep.elements)) == 120


def test_s5_and_a5_are_not_binary_icosahedral():
    assert S5.order == 120 and A5.order == 60
    assert not is_binary_icosahedral(S5)
    assert len(all_pairs_derived_subgroup(S5.elements)) == 60
    assert is_perfect_finite(A5)
    assert not is_binary_icosahedral(A5)


@pytest.mark.parametrize("group", [S5, A5], ids=["S5", "A5"])
def test_perfect_check_matches_all_pairs_oracle(group):
    assert is_perfect_finite(group) == (len(all_pairs_derived_subgroup(group.elements)) == group.order)


def test_order_cap(binary_icosahedral):
    t = enumerate_cosets(binary_icosahedral, [], 1000)
    with pytest.raises(OrderTooLarge):
        permutation_image(t, explicit_cap=100)
    rep = FiniteGroupRep(3, ((1, 2, 0),), 3)
    with pytest.raises(OrderTooLarge):
        is_perfect_finite(rep)


def test_low_index_free_group_index_two(free2):
    tables = low_index_subgroups(free2, 2)
    assert Counter(t.index for t in tables) == {1: 1, 2: 3}


def test_low_index_z2():
    tables = low_index_subgroups(parse_presentation("gens: a\nrel: a^2"), 3)
    assert sorted(t.index for t in tables) == [1, 2]


def test_low_index_class_counts_free_group(free2):
    tables = low_index_subgroups(free2, 5)
    classes = Counter(t.index for t in tables)
    assert [classes[n] for n in range(1, 6)] == [1, 3, 7, 26, 97]


def test_hall_oracles_agree():
    assert hall_subgroup_counts(2, 5) == [transitive_pair_subgroup_count(k) for k in range(1, 6)]


def test_low_index_totals_match_hall_recursion(free2):
    totals = Counter()
    for t in low_index_subgroups(free2, 5):
        totals[t.index] += conjugacy_class_size(t)
    assert [totals[n] for n in range(1, 6)] == hall_subgroup_counts(2, 5)


def test_low_index_tables_are_valid_and_deterministic(s3, q8):
    for p in (s3, q8):
        tables = low_index_subgroups(p, 8)
        assert tables == low_index_subgroups(p, 8)
        for t in tables:
            assert verify_table(p, subgroup_generators(t), t)


def test_low_index_finite_group_classes(s3, q8):
    assert sorted(t.index for t in low_index_subgroups(s3, 6)) == [1, 2, 3, 6]
    assert sorted(t.index for t in low_index_subgroups(q8, 8)) == [1, 2, 2, 2, 4, 8]


def test_low_index_node_budget(free2):
    with pytest.raises(BudgetExhausted) as exc:
        low_index_subgroups(free2, 5, node_budget=50)
    assert exc.value.partial


def test_galois_closure_of_normal_subgroup(s3):
    t = next(t for t in low_index_subgroups(s3, 2) if t.index == 2)
    d = galois_closure(s3, t)
    assert d.core_table.index == 2
    assert d.deck.order == 2


def test_galois_closure_of_non_normal_subgroup(s3):
    t = enumerate_cosets(s3, [(1,)], 100)
    d = galois_closure(s3, t)
    assert d.core_table.index == 6
    assert d.deck.order == 6
    assert d.cover_invariants.is_perfect


def test_galois_closure_free_group_index_two(free2):
    t = next(t for t in low_index_subgroups(free2, 2) if t.index == 2)
    d = galois_closure(free2, t)
    assert d.deck.order == 2
    assert d.cover_invariants == AbelianInvariants(3, ())
    assert corollary_check(d) == "no-claim"


@pytest.mark.parametrize("text", ["gens: a b", "gens: x y\nrel: x^2 y^-3",
                                  "gens: a b\nrel: a^2\nrel: b^3\nrel: a b a b"])
def test_galois_datum_invariants(text):
    p = parse_presentation(text)
    for t in low_index_subgroups(p, 4):
        d = galois_closure(p, t)
        assert is_normal(d.core_table, d.core_generators)
        assert d.deck.order == d.core_table.index
        assert d.core_table.index % t.index == 0
        # the core lies in every conjugate of the subgroup
        for w in d.core_generators:
            assert all(coset_action(t, w, c) == c for c in range(t.index))


def test_binary_icosahedral_regular_cover_is_lemma_window(binary_icosahedral):
    t = enumerate_cosets(binary_icosahedral, [], 1000)
    d = galois_closure(binary_icosahedral, t)
    assert d.deck.order == 120
    assert d.cover_invariants.is_perfect
    assert corollary_check(d) == "lemma-window"


def test_trivial_deck_is_lemma_window(binary_icosahedral):
    t = enumerate_cosets(binary_icosahedral, [(1,), (2,)], 10)
    assert corollary_check(galois_closure(binary_icosahedral, t)) == "lemma-window"


def test_alternating_group_is_lemma_anomaly():
    p = parse_presentation("gens: a b\nrel: a^2\nrel: b^3\nrel: a b a b a b a b a b")
    d = galois_closure(p, enumerate_cosets(p, [], 100))
    assert d.deck.order == 60
    assert corollary_check(d) == "lemma-anomaly"


def synthetic_order_240_datum():
    """Deck group S5 x C2 (order 240) with trivial cover homology, built by hand."""
    deck = FiniteGroupRep.generated_by(
        [(1, 2, 3, 4, 0, 5, 6), (1, 0, 2, 3, 4, 5, 6), (0, 1, 2, 3, 4, 6, 5)], 7)
    base = Presentation(("a", "b", "c"), ())
    return GaloisCoverDatum(base, regular_table(deck), deck, AbelianInvariants(0, ()))


def test_synthetic_datum_triggers_corollary_violation():
    d = synthetic_order_240_datum()
    assert d.deck.order == 240 == d.core_table.index
    assert corollary_check(d) == "corollary-violation"


def test_no_claim_when_cover_homology_nontrivial():
    d = synthetic_order_240_datum()
    d = GaloisCoverDatum(d.base, d.core_table, d.deck, AbelianInvariants(1, ()))
    assert corollary_check(d) == "no-claim"
