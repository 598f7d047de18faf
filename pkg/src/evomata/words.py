"""Finite alphabets and words over them.

Symbols are printable string tokens (usually single characters). The empty
string is reserved as the epsilon marker in transition tables and is not a
legal symbol.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ConfigError, InputError

#: Marker used for epsilon moves in NFA/PDA transition tables.
EPSILON = ""


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of distinct symbols; the order fixes word enumeration."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ConfigError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ConfigError(f"duplicate symbols in alphabet: {self.symbols}")
        for sym in self.symbols:
            if not isinstance(sym, str) or sym == EPSILON or not sym.isprintable():
                raise ConfigError(f"symbol must be a non-empty printable token, got {sym!r}")

    @classmethod
    def of(cls, *symbols: str) -> "Alphabet":
        return cls(tuple(symbols))

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.symbols

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def word(self, text: Iterable[str]) -> "Word":
        """Build a word from a string (one symbol per character) or symbol iterable."""
        return Word(self, tuple(text))

    def words_of_length(self, length: int) -> Iterator["Word"]:
        """All words of exactly `length`, in lexicographic order of the alphabet."""
        for combo in itertools.product(self.symbols, repeat=length):
            yield Word(self, combo)

    def iter_words(self, max_length: int) -> Iterator["Word"]:
        """All words of length 0..max_length, shortest first."""
        for length in range(max_length + 1):
            yield from self.words_of_length(length)


@dataclass(frozen=True)
class Word:
    """A finite sequence of symbols over a declared alphabet; () is epsilon."""

    alphabet: Alphabet
    symbols: tuple[str, ...]

    def __post_init__(self):
        for sym in self.symbols:
            if sym not in self.alphabet:
                raise InputError(f"symbol {sym!r} not in alphabet {self.alphabet.symbols}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __str__(self) -> str:
        return "".join(self.symbols) if self.symbols else "ε"
