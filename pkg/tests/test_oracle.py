"""The independent oracle: parsing membership, exhaustive enumeration,
density witness search, and the seeded grammar generator.

Everything here is search over derivations; nothing touches the affix-pair
algebra, so oracle results can arbitrate between the two decision routes.
"""

import pytest

from lexorder.grammar import parse_grammar
from lexorder.oracle import (
    derives_self_embedding,
    earley_member,
    enumerate_binary,
    enumerate_words,
    find_quasidense_witness,
    min_lengths,
    random_grammar,
    self_embedding_prefixes,
    verify_decreasing,
    verify_witness,
)


def G(text):
    return parse_grammar("alphabet: 0 < 1\nstart: S\n" + text)


ANBN = G("S -> 0 S 1 | 0 1\n")
DENSE = G("S -> 0 0 S | 1 1 S | 0 1\n")


# --- membership ---


def test_earley_member_basic():
    assert earley_member(ANBN, "S", "01")
    assert earley_member(ANBN, "S", "000111")
    assert not earley_member(ANBN, "S", "0011X"[:4] + "1")  # 00111
    assert not earley_member(ANBN, "S", "")
    assert not earley_member(ANBN, "S", "10")


def test_earley_member_epsilon_and_units():
    g = G("S -> A B\nA -> eps | 0 A\nB -> C\nC -> 1\n")
    assert earley_member(g, "S", "1")
    assert earley_member(g, "S", "001")
    assert not earley_member(g, "S", "0")
    assert earley_member(g, "A", "")


def test_earley_member_nonstart_symbol():
    g = G("S -> A 1\nA -> 0\n")
    assert earley_member(g, "A", "0")
    assert not earley_member(g, "A", "01")


# --- shortest lengths and enumeration ---


def test_min_lengths():
    g = G("S -> A B\nA -> eps | 0 A\nB -> 1 B | 1\nC -> C 0\n")
    floor = min_lengths(g)
    assert floor == {"S": 1, "A": 0, "B": 1, "C": None}


def test_enumerate_matches_hand_lists():
    assert enumerate_binary(ANBN, 6) == ["000111", "0011", "01"]
    assert enumerate_binary(DENSE, 4) == ["0001", "01", "1101"]
    assert enumerate_binary(ANBN, 1) == []


def test_enumerate_includes_empty_word():
    g = G("S -> eps | 0 S\n")
    assert enumerate_binary(g, 2) == ["", "0", "00"]


def test_enumerate_sorts_prefixes_first():
    g = G("S -> 0 | 0 0 | 0 1 | 1\n")
    assert enumerate_binary(g, 2) == ["0", "00", "01", "1"]


def test_enumerate_handles_nullable_recursion():
    # the sentential forms blow up here; word counting must not
    g = G("S -> 0 0 0 | 0 A 1 1 | S B\nA -> 1 0 1 | B | A\nB -> 1 1 1 | 0 1 | eps\n")
    words = enumerate_binary(g, 6)
    assert "000" in words and len(words) < 64


def test_enumerate_word_cap():
    g = G("S -> 0 S | 1 S | 0 | 1\n")
    with pytest.raises(RuntimeError, match="exceeded"):
        enumerate_words(g, 10, queue_limit=100)


def test_enumerate_unit_style_rules_reach_closure():
    g = G("S -> A\nA -> B\nB -> 1 0\n")
    assert enumerate_binary(g, 2) == ["10"]


# --- self embedding and density witnesses ---


def test_self_embedding_prefixes_anbn():
    assert self_embedding_prefixes(ANBN, "S", 6) == [
        "0", "00", "000", "0000", "00000", "000000",
    ]


def test_self_embedding_prefixes_dense():
    prefixes = self_embedding_prefixes(DENSE, "S", 6)
    assert prefixes[:2] == ["00", "11"]


def test_find_quasidense_witness_dense():
    assert find_quasidense_witness(DENSE, 8) == ("S", "00", "11")


def test_find_quasidense_witness_none_when_scattered():
    assert find_quasidense_witness(ANBN, 10) is None
    assert find_quasidense_witness(G("S -> 0 S | 1\n"), 10) is None


def test_find_quasidense_witness_ordered_output():
    g = G("S -> 1 1 S | 0 0 S | 0 1\n")
    nt, u, v = find_quasidense_witness(g, 8)
    assert (nt, u, v) == ("S", "00", "11")  # left below right


def test_derives_self_embedding():
    assert derives_self_embedding(ANBN, "S", "0")
    assert derives_self_embedding(ANBN, "S", "00")
    assert derives_self_embedding(ANBN, "S", "")
    assert not derives_self_embedding(ANBN, "S", "1")
    assert derives_self_embedding(DENSE, "S", "0011")


def test_verify_witness():
    assert verify_witness(DENSE, "S", "00", "11")
    assert verify_witness(DENSE, "S", "0011", "11")
    assert not verify_witness(DENSE, "S", "0", "00")  # comparable
    assert not verify_witness(DENSE, "S", "01", "10")  # 10 not derivable
    assert not verify_witness(DENSE, "A", "00", "11")  # no such symbol


def test_verify_decreasing():
    assert verify_decreasing(ANBN, "S", ["01", "0011", "000111"])
    assert not verify_decreasing(ANBN, "S", ["0011", "0011"])  # not strict
    assert not verify_decreasing(ANBN, "S", ["01"])  # too short
    assert not verify_decreasing(ANBN, "S", ["01", "0010"])  # not in language
    assert not verify_decreasing(ANBN, "S", ["0011", "01"])  # wrong direction


# --- random grammars ---


def test_random_grammar_deterministic():
    a = random_grammar(42)
    b = random_grammar(42)
    assert a == b
    assert a.rules == b.rules


def test_random_grammar_varies_with_seed():
    assert any(random_grammar(i) != random_grammar(i + 1) for i in range(5))


def test_random_grammar_shape_bounds():
    for seed in range(30):
        g = random_grammar(seed)
        assert 1 <= len(g.nonterminals) <= 5
        assert g.start == "N0"
        for rule in g.rules:
            assert len(rule.rhs) <= 4
        for nt in g.nonterminals:
            assert 1 <= len(g.rules_by_lhs[nt]) <= 4
