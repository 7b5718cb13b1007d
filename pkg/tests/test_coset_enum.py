import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus_files
from oracles import Q8_IMAGES, S3_IMAGES, evaluate_word, perm_closure

from dsp.coset_enum import CosetTable, coset_action, enumerate_cosets, is_normal, verify_table
from dsp.errors import BudgetExhausted
from dsp.finite_quotients import low_index_subgroups
from dsp.presentation import parse_presentation
from dsp.subgroup_rewriting import subgroup_generators
from dsp.derived_series import abelian_kernel_table

Z2 = parse_presentation("gens: a\nrel: a^2")


def test_s3_order_matches_concrete_model(s3):
    identity = (0, 1, 2)
    # the model satisfies the relators, so it is a quotient; its order is the oracle
    assert all(evaluate_word(r, S3_IMAGES, identity) == identity for r in s3.relators)
    t = enumerate_cosets(s3, [], 100)
    assert t.index == len(perm_closure(S3_IMAGES)) == 6
    assert verify_table(s3, [], t)


def test_q8_order_matches_concrete_model(q8):
    t = enumerate_cosets(q8, [], 100)
    assert t.index == len(perm_closure(Q8_IMAGES)) == 8


def test_binary_icosahedral_order(binary_icosahedral):
    start = time.perf_counter()
    t = enumerate_cosets(binary_icosahedral, [], 1000)
    assert t.index == 120
    assert time.perf_counter() - start < 5
    assert verify_table(binary_icosahedral, [], t)


def test_subgroup_index_lagrange(s3):
    t = enumerate_cosets(s3, [(1,)], 100)
    assert t.index == 6 // 2
    assert verify_table(s3, [(1,)], t)


def test_budget_exhausted_on_infinite_index(free2):
    with pytest.raises(BudgetExhausted) as exc:
        enumerate_cosets(free2, [], 50)
    assert exc.value.resource == "max_cosets"
    assert exc.value.high_water == 50


def test_determinism(binary_icosahedral):
    a = enumerate_cosets(binary_icosahedral, [(1, 2)], 1000)
    b = enumerate_cosets(binary_icosahedral, [(1, 2)], 1000)
    assert a == b


def test_verify_rejects_swapped_entry(s3):
    t = enumerate_cosets(s3, [], 100)
    rows = [list(r) for r in t.rows]
    rows[0][0], rows[0][2] = rows[0][2], rows[0][0]
    bad = CosetTable(t.ngens, tuple(tuple(r) for r in rows))
    assert not verify_table(s3, [], bad)


def test_hand_built_z2_table():
    t = CosetTable(1, ((1, 1), (0, 0)))
    assert verify_table(Z2, [], t)
    assert coset_action(t, (1,), 0) == 1
    assert coset_action(t, (1, 1), 0) == 0
    assert coset_action(t, (), 1) == 1


def test_verify_rejects_subgroup_generator_not_fixing_base():
    t = CosetTable(1, ((1, 1), (0, 0)))
    assert not verify_table(Z2, [(1,)], t)


def test_relators_fix_every_coset(s3):
    t = enumerate_cosets(s3, [], 100)
    for r in s3.relators:
        for c in range(t.index):
            assert coset_action(t, r, c) == c


def test_non_normal_subgroup(s3):
    t = enumerate_cosets(s3, [(1,)], 100)
    assert not is_normal(t, [(1,)])
    # brute-force conjugation in the concrete model: b^-1 a b is not in <a>
    identity = (0, 1, 2)
    a = evaluate_word((1,), S3_IMAGES, identity)
    conj = evaluate_word((-2, 1, 2), S3_IMAGES, identity)
    assert conj not in {identity, a}


def test_kernel_of_abelianization_is_normal(q8, s3):
    for p in (q8, s3):
        t = abelian_kernel_table(p)
        assert is_normal(t, subgroup_generators(t))


def test_index_two_subgroups_are_normal(free2, s3):
    for p in (free2, s3):
        for t in low_index_subgroups(p, 2):
            if t.index == 2:
                assert is_normal(t, subgroup_generators(t))


def _fixes_every_coset(t, gens):
    return all(coset_action(t, h, c) == c for h in gens for c in range(t.index))


@pytest.mark.parametrize("text", ["gens: a b", "gens: a b\nrel: a^2\nrel: b^3\nrel: a b a b",
                                  "gens: x y\nrel: x^2 y^-3"])
def test_is_normal_agrees_with_definition(text):
    p = parse_presentation(text)
    for t in low_index_subgroups(p, 5):
        gens = subgroup_generators(t)
        assert is_normal(t, gens) == _fixes_every_coset(t, gens)


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.name)
def test_finite_corpus_tables_verify(path):
    p = parse_presentation(path.read_text())
    try:
        t = enumerate_cosets(p, [], 2000)
    except BudgetExhausted:
        return
    assert verify_table(p, [], t)
    g = [t.permutation(k) for k in range(1, p.ngens + 1)]
    for k in range(1, p.ngens + 1):
        inv = tuple(t.act(c, -k) for c in range(t.index))
        assert all(inv[g[k - 1][c]] == c for c in range(t.index))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=4), max_size=2))
def test_producer_checker_agreement_on_s3_subgroups(gens):
    p = parse_presentation("gens: a b\nrel: a^2\nrel: b^3\nrel: a b a b")
    gens = [tuple(g) for g in gens]
    t = enumerate_cosets(p, gens, 1000)
    assert 6 % t.index == 0
    assert verify_table(p, gens, t)
