"""Letter-level words and the textual word grammar.

A word is a tuple of :class:`Letter` values ``(name, exponent)``.  The text
form is ``token (space token)*`` where a token is ``name`` or
``name^<signed int>``; ``"1"`` or the empty string is the identity.
"""

from __future__ import annotations

import re
from collections.abc import Collection, Iterable
from typing import NamedTuple

__all__ = [
    "Letter",
    "Word",
    "WordSyntaxError",
    "parse_word",
    "format_word",
    "inverse",
    "power",
    "commutator",
    "letter_length",
]

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_.]*")
_INT = re.compile(r"[+-]?[0-9]+")


class Letter(NamedTuple):
    name: str
    exp: int


Word = tuple[Letter, ...]


class WordSyntaxError(ValueError):
    """Bad word text; ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        self.column = column
        super().__init__(f"column {column}: {message}")


def parse_word(text: str, names: Collection[str] | None = None) -> Word:
    """Parse ``text``; when ``names`` is given every generator must be in it."""
    stripped = text.strip()
    if stripped in ("", "1"):
        return ()
    letters = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _NAME.match(text, i)
        if m is None:
            raise WordSyntaxError(f"expected a generator name, found {text[i]!r}", i + 1)
        name = m.group()
        start = i
        i = m.end()
        exp = 1
        if i < n and text[i] == "^":
            caret = i
            e = _INT.match(text, i + 1)
            if e is None:
                raise WordSyntaxError("expected a signed integer after '^'", caret + 1)
            exp = int(e.group())
            i = e.end()
        if i < n and not text[i].isspace():
            raise WordSyntaxError(f"unexpected character {text[i]!r}", i + 1)
        if names is not None and name not in names:
            raise WordSyntaxError(f"undeclared generator {name!r}", start + 1)
        letters.append(Letter(name, exp))
    return tuple(letters)


def format_word(word: Iterable[Letter]) -> str:
    tokens = [name if exp == 1 else f"{name}^{exp}" for name, exp in word]
    return " ".join(tokens) if tokens else "1"


def inverse(word: Iterable[Letter]) -> Word:
    return tuple(Letter(name, -exp) for name, exp in reversed(tuple(word)))


def power(word: Iterable[Letter], k: int) -> Word:
    word = tuple(word)
    if k < 0:
        word, k = inverse(word), -k
    return word * k


def commutator(x: Iterable[Letter], y: Iterable[Letter]) -> Word:
    """``x y x^-1 y^-1``."""
    x, y = tuple(x), tuple(y)
    return x + y + inverse(x) + inverse(y)


def letter_length(word: Iterable[Letter]) -> int:
    return sum(abs(exp) for _, exp in word)
