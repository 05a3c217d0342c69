import pytest
from hypothesis import given
from hypothesis import strategies as st

from raagsep.words import (
    Letter,
    WordSyntaxError,
    commutator,
    format_word,
    inverse,
    letter_length,
    parse_word,
    power,
)

names = st.from_regex(r"[A-Za-z][A-Za-z0-9_.]{0,3}", fullmatch=True)
letters = st.tuples(names, st.integers(-50, 50)).map(lambda t: Letter(*t))


def test_parse_examples():
    assert parse_word("a b^-2") == (("a", 1), ("b", -2))
    assert parse_word("1") == ()
    assert parse_word("") == ()
    assert parse_word("  x.2^+3   t1 ") == (("x.2", 3), ("t1", 1))


@pytest.mark.parametrize(
    "text, column",
    [("a^", 2), ("a b^x", 4), ("a^-", 2), ("3a", 1), ("a^2b", 4), ("a,b", 2), ("a ^2", 3)],
)
def test_syntax_errors_point_at_the_column(text, column):
    with pytest.raises(WordSyntaxError) as info:
        parse_word(text)
    assert info.value.column == column


def test_undeclared_generator():
    with pytest.raises(WordSyntaxError) as info:
        parse_word("a c", names={"a", "b"})
    assert info.value.column == 3
    assert "undeclared" in str(info.value)


def test_format():
    assert format_word(()) == "1"
    assert format_word(parse_word("a^1 b^-1 c^0")) == "a b^-1 c^0"


def test_group_helpers():
    w = parse_word("a b^2")
    assert inverse(w) == parse_word("b^-2 a^-1")
    assert power(w, 2) == w + w
    assert power(w, -1) == inverse(w)
    assert power(w, 0) == ()
    assert commutator(parse_word("a"), parse_word("b")) == parse_word("a b a^-1 b^-1")
    assert letter_length(w) == 3


@given(st.lists(letters, max_size=8))
def test_print_then_parse_is_identity(word):
    word = tuple(word)
    text = format_word(word)
    assert parse_word(text) == word
    # canonical spacing is a fixed point of parse-then-print
    assert format_word(parse_word(text)) == text


@given(st.lists(letters, min_size=1, max_size=6), st.lists(st.sampled_from([" ", "  ", "\t"]), min_size=6, max_size=6))
def test_spacing_does_not_matter(word, gaps):
    word = tuple(word)
    tokens = format_word(word).split(" ")
    text = "".join(g + t for g, t in zip(gaps, tokens)) + " "
    assert parse_word(text) == word
