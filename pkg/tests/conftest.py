"""Shared fixtures: the hand-derived golden set and digit helpers."""

from __future__ import annotations

import pytest

from trie_extent.core import Alphabet, StringSet, Symbols

# Three binary strings whose compacted trie, extents, and statistics were
# derived by hand and are frozen as goldens throughout the suite.
GOLDEN_LINES = ("001001010", "00100110100100010", "001001101001001")

GOLDEN_STATS = {
    "external_count": 3,
    "external_extent_sum": 41,  # 9 + 17 + 15
    "internal_extent_sum": 20,  # 6 + 14
    "trie_measure": 21,  # (6+1) + (2+1) + (7+1) + (2+1) + (0+1) - 1
}


def digits(text: str) -> Symbols:
    """Parse a digit string into a symbol tuple: '0210' -> (0, 2, 1, 0)."""
    return tuple(int(ch) for ch in text)


def string_set(sigma: int, *texts: str) -> StringSet:
    return StringSet(Alphabet(sigma), [digits(t) for t in texts])


@pytest.fixture
def golden_set() -> StringSet:
    return string_set(2, *GOLDEN_LINES)
