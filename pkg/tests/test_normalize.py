"""Each normalization stage in isolation, then the pipeline as a whole.

Language preservation is checked by exhaustive enumeration on both sides,
which keeps every expectation independent of the code under test.
"""

import pytest

from lexorder.grammar import Rule, parse_grammar, validate
from lexorder.normalize import (
    EmptyLanguageError,
    collapse_unit_cycles,
    count_words_saturating,
    eliminate_left_recursion,
    inline_singletons,
    normalize_pipeline,
    nullable_set,
    remove_epsilon,
    remove_useless,
)
from lexorder.oracle import enumerate_binary, random_grammar


def G(text):
    return parse_grammar("alphabet: 0 < 1\nstart: S\n" + text)


def test_remove_useless_drops_unreachable_and_unproductive():
    g = G("S -> 0 | A 1\nA -> A 0\nB -> 1\n")
    out = remove_useless(g)
    assert out.nonterminals == frozenset({"S"})
    assert out.rules == (Rule("S", ("0",)),)


def test_remove_useless_empty_language():
    with pytest.raises(EmptyLanguageError) as info:
        remove_useless(G("S -> S 0\n"))
    assert info.value.had_epsilon is False


def test_nullable_set():
    g = G("S -> A B | 1\nA -> eps | 0\nB -> A A\nC -> 0\n")
    assert nullable_set(g) == {"S", "A", "B"}


def test_remove_epsilon_flags_and_rewrites():
    out, had = remove_epsilon(G("S -> eps | 0 S\n"))
    assert had is True
    assert set(out.rules) == {Rule("S", ("0", "S")), Rule("S", ("0",))}
    out, had = remove_epsilon(G("S -> 0 S 1 | 0 1\n"))
    assert had is False


def test_remove_epsilon_only_empty_word():
    with pytest.raises(EmptyLanguageError) as info:
        remove_epsilon(G("S -> eps\n"))
    assert info.value.had_epsilon is True


def test_collapse_unit_cycles():
    g = G("S -> A | 0\nA -> S | A 1\n")
    out = collapse_unit_cycles(g)
    # S and A generate the same language; the cycle merges into one name
    assert len(out.nonterminals) == 1
    assert "unit-cycle: none" or not any(
        f.startswith("unit-cycle") for f in validate(out)
    )


def test_eliminate_left_recursion_direct():
    g = G("S -> S 1 | 0\n")
    out = eliminate_left_recursion(g)
    assert not any(f.startswith("left-recursive") for f in validate(out))
    assert enumerate_binary(out, 6) == enumerate_binary(g, 6)


def test_eliminate_left_recursion_indirect():
    g = G("S -> A 0 | 1\nA -> S 1\n")
    out = eliminate_left_recursion(g)
    assert not any(f.startswith("left-recursive") for f in validate(out))
    assert enumerate_binary(out, 7) == enumerate_binary(g, 7)


def test_count_words_saturating():
    g = G("S -> 0 | 1\nA -> 0\nB -> B 0 | 1\n")
    assert count_words_saturating(g, "S") == 2
    assert count_words_saturating(g, "A") == 1
    assert count_words_saturating(g, "B") == 2


def test_inline_singletons():
    g = G("S -> A 1 | 1 S\nA -> 0 0\n")
    out, subs, degenerate = inline_singletons(g)
    assert subs == {"A": "00"}
    assert degenerate is None
    assert Rule("S", ("0", "0", "1")) in out.rules
    assert "A" not in out.nonterminals


def test_inline_singletons_degenerate():
    g = G("S -> A A\nA -> 0\n")
    out, subs, degenerate = inline_singletons(g)
    assert degenerate == "00"


def test_pipeline_flags_epsilon_and_preserves_language():
    norm = normalize_pipeline(G("S -> eps | 0 S\n"))
    assert norm.had_epsilon is True
    assert not norm.is_degenerate
    # language minus the empty word survives every stage
    assert enumerate_binary(norm.grammar, 5) == ["0", "00", "000", "0000", "00000"]


def test_pipeline_empty_language():
    with pytest.raises(EmptyLanguageError):
        normalize_pipeline(G("S -> S 0\n"))
    with pytest.raises(EmptyLanguageError) as info:
        normalize_pipeline(G("S -> eps | A\nA -> A 0\n"))
    assert info.value.had_epsilon is True


def test_pipeline_degenerate_single_word():
    norm = normalize_pipeline(G("S -> 0 1\n"))
    assert norm.is_degenerate
    assert norm.degenerate_word == "01"


def test_pipeline_output_shape():
    norm = normalize_pipeline(
        G("S -> A | 0 S 1\nA -> eps | A 1 | B\nB -> 1 B | 1\n")
    )
    g = norm.grammar
    assert validate(g) == []
    for nt in g.nonterminals:
        assert count_words_saturating(g, nt) >= 2


@pytest.mark.parametrize("seed", range(40))
def test_pipeline_preserves_language_on_random_grammars(seed):
    g = random_grammar(seed)
    try:
        norm = normalize_pipeline(g)
    except EmptyLanguageError:
        words = enumerate_binary(g, 7)
        assert words in ([], [""])
        return
    before = [w for w in enumerate_binary(g, 7) if w]
    if norm.is_degenerate:
        assert before == [norm.degenerate_word] or before == []
        return
    assert before == enumerate_binary(norm.grammar, 7)
    assert norm.had_epsilon == ("" in enumerate_binary(g, 7))


def test_pipeline_encodes_wider_alphabets():
    g = parse_grammar("alphabet: a < b < c\nstart: S\nS -> a S c | b\n")
    norm = normalize_pipeline(g)
    assert norm.grammar.alphabet.letters == ("0", "1")
    # a->00 b->01 c->10: words (00)^n 01 (10)^n
    assert enumerate_binary(norm.grammar, 6) == ["000110", "01"]
