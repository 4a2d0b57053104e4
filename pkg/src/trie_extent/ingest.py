"""Line-oriented ingestion of string sets.

Two input formats:

* ``bits``: every line is a run of ``0``/``1`` characters; the alphabet
  is binary.
* ``text``: arbitrary UTF-8 lines; each distinct byte of the encoded line
  becomes a symbol id, assigned in order of first appearance.  The
  byte-to-symbol table is preserved on the parse result so reports can
  invert it.

By default a prefix clash between lines is an error naming the offending
line numbers.  With ``append_sentinel=True`` a fresh symbol (one past the
derived alphabet) is appended to every line instead, which makes any set
of distinct lines prefix-free at the cost of growing sigma by one.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .core import (
    Alphabet,
    DuplicateStringError,
    EmptySetError,
    PrefixViolationError,
    StringSet,
    Symbols,
)

FORMATS = ("bits", "text")


class InputError(ValueError):
    """Unparseable or invalid input; the message names offending lines."""


@dataclass(frozen=True)
class ParsedInput:
    string_set: StringSet
    source_format: str
    symbol_bytes: tuple[int, ...] | None
    sentinel_symbol: int | None

    @property
    def sigma(self) -> int:
        return self.string_set.alphabet.sigma


_BITS = {"0": 0, "1": 1}


def parse_lines(
    lines: Sequence[str],
    *,
    source_format: str = "bits",
    append_sentinel: bool = False,
    sigma: int | None = None,
) -> ParsedInput:
    if source_format not in FORMATS:
        raise InputError(f"unknown format {source_format!r}, expected one of {FORMATS}")

    symbol_bytes: tuple[int, ...] | None = None
    rows: list[Symbols] = []
    if source_format == "bits":
        for number, line in enumerate(lines, 1):
            try:
                rows.append(tuple(_BITS[ch] for ch in line))
            except KeyError:
                raise InputError(
                    f"line {number}: bits format allows only 0/1 characters"
                ) from None
        derived_sigma = 2
    else:
        mapping: dict[int, int] = {}
        for line in lines:
            rows.append(
                tuple(mapping.setdefault(b, len(mapping)) for b in line.encode("utf-8"))
            )
        symbol_bytes = tuple(mapping)  # insertion order == symbol id order
        derived_sigma = max(len(mapping), 1)

    if sigma is not None:
        if sigma < derived_sigma:
            raise InputError(
                f"requested alphabet size {sigma} but the input uses {derived_sigma} symbols"
            )
        derived_sigma = sigma

    sentinel: int | None = None
    if append_sentinel:
        sentinel = derived_sigma
        derived_sigma += 1
        rows = [row + (sentinel,) for row in rows]

    try:
        string_set = StringSet(Alphabet(derived_sigma), rows)
    except DuplicateStringError as exc:
        raise InputError(
            f"duplicate string: lines {exc.first_index + 1} and "
            f"{exc.second_index + 1} are identical"
        ) from exc
    except PrefixViolationError as exc:
        raise InputError(
            f"prefix violation: line {exc.prefix_index + 1} is a proper prefix of "
            f"line {exc.extended_index + 1} (use a sentinel to allow this)"
        ) from exc
    except EmptySetError as exc:
        raise InputError("input contains no strings") from exc

    return ParsedInput(string_set, source_format, symbol_bytes, sentinel)


def load(
    path: str | None,
    *,
    source_format: str = "bits",
    append_sentinel: bool = False,
    sigma: int | None = None,
) -> ParsedInput:
    """Parse a file, or stdin when path is None or ``-``."""
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_lines(
        text.splitlines(),
        source_format=source_format,
        append_sentinel=append_sentinel,
        sigma=sigma,
    )
