from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .helpers import ALPHABET

__all__ = ("Program", "tokenize")

_ALPHABET_SET = frozenset(ALPHABET)


@dataclass(frozen=True, slots=True)
class Program:
    """An immutable token sequence. Every token is a single character of :data:`ALPHABET`."""

    text: str = ""

    def __post_init__(self):
        stray = set(self.text) - _ALPHABET_SET
        if stray:
            raise ValueError(f"tokens outside the alphabet: {''.join(sorted(stray))!r}; use tokenize() instead")

    def __len__(self) -> int:
        return len(self.text)

    def __iter__(self) -> Iterator[str]:
        return iter(self.text)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Program(self.text[item])
        return self.text[item]

    def __add__(self, other: Program) -> Program:
        return Program(self.text + other.text)

    def __str__(self) -> str:
        return self.text


def tokenize(text: str) -> Program:
    """One token per character; characters outside the alphabet are dropped."""
    return Program("".join(ch for ch in text if ch in _ALPHABET_SET))
