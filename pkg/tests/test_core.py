import itertools

import pytest
from hypothesis import given, strategies as st

from rwlab.core import (
    EMPTY,
    Alphabet,
    ParseError,
    ValidationError,
    formal_inverse,
    instantiate_schema,
    parse_presentation,
    pretty_print,
    word,
    word_str,
)
from rwlab.casestudy import preset

P_FILE = """
# free-group system
letters a a' b b'
inverse a a'
inverse b b'
order a a' b b'
rule I_a : a a' -> ε
rule I_a' : a' a -> ε
rule I_b : b b' -> ε
rule I_b' : b' b -> ε
"""


def test_parse_free_group_file():
    p = parse_presentation(P_FILE)
    assert len(p.alphabet.letters) == 4
    assert len(p.rules) == 4
    assert p.rule_named("I_a").lhs == ("a", "a'")
    assert p.rule_named("I_a").rhs == EMPTY


def test_parse_full_case_study_file(Q):
    # 5 letters and 17 rules: 4 cancellations, 4 commutations, 4 swaps, 5 absorptions
    text = pretty_print(Q)
    p = parse_presentation(text)
    assert len(p.alphabet.letters) == 5
    assert len(p.rules) == 17
    kinds = {"I": 0, "K": 0, "C": 0, "Z": 0}
    for r in p.rules:
        kinds[r.name[0]] += 1
    assert kinds == {"I": 4, "K": 4, "C": 4, "Z": 5}


def test_parse_rejects_symmetric_pair():
    bad = P_FILE + "rule R1 : a b -> b a\nrule R2 : b a -> a b\n"
    with pytest.raises(ParseError):
        parse_presentation(bad)


def test_parse_rejects_undeclared_letter():
    with pytest.raises(ParseError) as exc:
        parse_presentation("letters a\nrule R : a c -> a\n")
    assert exc.value.line == 2


def test_parse_rejects_duplicate_name():
    with pytest.raises(ParseError):
        parse_presentation("letters a b\nrule R : a -> b\nrule R : a b -> b\n")


@pytest.mark.parametrize(
    "w, expected",
    [("a b", "b' a'"), ("", ""), ("a a' b", "b' a a'")],
)
def test_formal_inverse_examples(P, w, expected):
    assert formal_inverse(word(w), P.alphabet) == word(expected)


def test_formal_inverse_rejects_h(Qbar):
    with pytest.raises(ValidationError):
        formal_inverse(word("a h"), Qbar.alphabet)


@given(
    st.lists(st.sampled_from(["a", "a'", "b", "b'"]), max_size=10).map(tuple)
)
def test_formal_inverse_is_an_involution(w):
    alphabet = preset("P").alphabet
    assert formal_inverse(formal_inverse(w, alphabet), alphabet) == w


def test_instantiate_swap_schema_base(Qbar):
    rule = instantiate_schema(Qbar.schema_named("Cb_pp"), EMPTY)
    assert rule.lhs == word("h a b")
    assert rule.rhs == word("h b a")


def test_instantiate_swap_schema_general(Qbar):
    # exponents -1, +1 with variable a b'
    rule = instantiate_schema(Qbar.schema_named("Cb_mp"), word("a b'"))
    assert rule.lhs == word("h a b' a' b")
    assert rule.rhs == word("h a b' b a'")
    assert rule.origin.variable == word("a b'")


def test_instantiate_rejects_out_of_range(Qbar):
    with pytest.raises(ValidationError):
        instantiate_schema(Qbar.schema_named("Cb_pp"), word("h"))


def test_schema_instantiation_matches_pattern_exhaustively(Qbar):
    schema = Qbar.schema_named("Cb_pm")
    letters = schema.variable_range
    for n in range(7):
        for v in itertools.product(letters, repeat=n):
            rule = instantiate_schema(schema, v)
            assert rule.lhs == schema.lhs_prefix + v + schema.lhs_suffix
            assert rule.rhs == schema.rhs_prefix + v + schema.rhs_suffix


@pytest.mark.parametrize("name", ["P", "Q", "Qbar", "M4", "N4"])
def test_parse_print_round_trip(name):
    p = preset(name)
    assert parse_presentation(pretty_print(p)) == p


def test_word_str_round_trip():
    assert word_str(EMPTY) == "ε"
    assert word(word_str(word("a b' h"))) == ("a", "b'", "h")


def test_alphabet_rejects_self_inverse():
    with pytest.raises(ValidationError):
        Alphabet(("a",), (("a", "a"),))
