"""Compacted tries over finite alphabets and their extent statistics.

A compacted trie collapses the unary chains of an ordinary trie into
per-node label strings (compacted paths), so every internal node branches.
Built from a nonempty prefix-free set of symbol strings, the structure
supports exact accounting of extent lengths, and this module ships
verifiers that machine-check the governing identities on any constructed
trie:

* binary tries: external extent sum = internal extent sum + trie measure
* general tries: the degree-weighted form of the same identity, together
  with the node-degree balance equation
* binary tries with at least two strings: the mean internal extent is
  bounded by the mean string length minus 3/2 - 1/n

Symbols are dense integers ``0 .. sigma-1``; mapping raw text or bytes to
symbol ids is the ingestion layer's job (:mod:`trie_extent.ingest`).  All
statistics are exact integers or rationals; nothing here goes through
floating point except the final logarithm of :func:`space_bound_bits`.

A :class:`Trie` and its :class:`TrieStats` are immutable after
construction and safe to share read-only across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

Symbols = tuple[int, ...]


class StringSetError(ValueError):
    """Raised when a collection of strings cannot form a valid set."""


class EmptySetError(StringSetError):
    pass


class DuplicateStringError(StringSetError):
    """Two input strings are identical.

    ``first_index`` and ``second_index`` are positions in the sequence as
    it was passed in, before canonical ordering.
    """

    def __init__(self, first_index: int, second_index: int):
        super().__init__(
            f"duplicate string: positions {first_index} and {second_index} are identical"
        )
        self.first_index = first_index
        self.second_index = second_index


class PrefixViolationError(StringSetError):
    """One input string is a proper prefix of another.

    ``prefix_index`` is the position of the shorter string,
    ``extended_index`` the position of the string it prefixes.
    """

    def __init__(self, prefix_index: int, extended_index: int):
        super().__init__(
            f"prefix violation: position {prefix_index} is a proper prefix "
            f"of position {extended_index}"
        )
        self.prefix_index = prefix_index
        self.extended_index = extended_index


@dataclass(frozen=True)
class Alphabet:
    """A finite alphabet whose symbols are the integers ``0 .. sigma-1``."""

    sigma: int

    def __post_init__(self):
        if self.sigma < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.sigma}")

    @property
    def is_binary(self) -> bool:
        return self.sigma == 2


# Marker key for the provisional trie used during validation; symbol ids are
# nonnegative, so -1 can never collide with a child edge.
_END = -1


def _validate_strings(alphabet: Alphabet, strings: tuple[Symbols, ...]) -> None:
    """Reject duplicates and prefix violations in one O(total length) pass.

    Inserts every string into a provisional uncompacted trie; a terminal
    marker met mid-walk or a nonempty subtree met at the end pins down the
    offending pair by input position.
    """
    sigma = alphabet.sigma
    root: dict = {}
    for index, s in enumerate(strings):
        for position, sym in enumerate(s):
            if not 0 <= sym < sigma:
                raise StringSetError(
                    f"symbol {sym} at position {position} of string {index} "
                    f"is outside the alphabet 0..{sigma - 1}"
                )
        node = root
        for sym in s:
            if _END in node:
                raise PrefixViolationError(node[_END], index)
            node = node.setdefault(sym, {})
        if _END in node:
            raise DuplicateStringError(node[_END], index)
        if node:
            raise PrefixViolationError(index, _any_terminal_below(node))
        node[_END] = index


def _any_terminal_below(node: dict) -> int:
    while _END not in node:
        node = next(iter(node.values()))
    return node[_END]


@dataclass(frozen=True)
class StringSet:
    """A nonempty, duplicate-free, prefix-free set of symbol strings.

    Construction validates all three invariants and canonicalizes the
    element order to lexicographic, so equal sets compare equal and every
    traversal downstream is deterministic.
    """

    alphabet: Alphabet
    strings: tuple[Symbols, ...]

    def __init__(self, alphabet: Alphabet, strings: Iterable[Iterable[int]]):
        object.__setattr__(self, "alphabet", alphabet)
        normalized = tuple(tuple(s) for s in strings)
        if not normalized:
            raise EmptySetError("a string set must contain at least one string")
        _validate_strings(alphabet, normalized)
        object.__setattr__(self, "strings", tuple(sorted(normalized)))

    def __len__(self) -> int:
        return len(self.strings)

    def __iter__(self) -> Iterator[Symbols]:
        return iter(self.strings)

    def __contains__(self, item) -> bool:
        return tuple(item) in set(self.strings)

    @property
    def total_length(self) -> int:
        return sum(len(s) for s in self.strings)


@dataclass
class TrieNode:
    """One node of a compacted trie.

    ``children`` maps edge symbols to subtries in ascending symbol order;
    it is empty exactly for external nodes, and internal nodes always
    carry at least two entries.
    """

    compacted_path: Symbols
    children: dict[int, "TrieNode"]

    @property
    def is_external(self) -> bool:
        return not self.children


@dataclass
class Trie:
    """A compacted trie plus cached traversal tables.

    Nodes are addressed by preorder index (root is 0, children visited in
    ascending symbol order); indices stay valid for the lifetime of the
    trie.  Instances are immutable after construction.
    """

    alphabet: Alphabet
    root: TrieNode
    node_count: int
    external_count: int
    _tables: tuple | None = field(default=None, repr=False, compare=False)

    def _ensure_tables(self) -> tuple:
        if self._tables is None:
            order: list[TrieNode] = []
            names: list[Symbols] = []
            extents: list[Symbols] = []
            stack: list[tuple[TrieNode, Symbols]] = [(self.root, ())]
            while stack:
                node, node_name = stack.pop()
                ext = node_name + node.compacted_path
                order.append(node)
                names.append(node_name)
                extents.append(ext)
                for sym in sorted(node.children, reverse=True):
                    stack.append((node.children[sym], ext + (sym,)))
            self._tables = (tuple(order), tuple(names), tuple(extents))
        return self._tables

    def preorder(self) -> tuple[TrieNode, ...]:
        """All nodes in preorder (ascending symbol order at each branch)."""
        return self._ensure_tables()[0]

    def node(self, ref: int) -> TrieNode:
        return self.preorder()[ref]

    def name(self, ref: int) -> Symbols:
        """The labelled path into the node, excluding its own compacted path.

        Empty for the root; for any other node it equals the parent's
        extent extended by the edge symbol.
        """
        return self._ensure_tables()[1][ref]

    def extent(self, ref: int) -> Symbols:
        """Longest common prefix of the strings below the node.

        For an external node this is the full string it represents; it
        always equals ``name(ref) + compacted_path``.
        """
        return self._ensure_tables()[2][ref]

    def external_refs(self) -> tuple[int, ...]:
        return tuple(i for i, nd in enumerate(self.preorder()) if nd.is_external)


def _common_prefix_len(a: Symbols, b: Symbols, start: int) -> int:
    limit = min(len(a), len(b))
    i = start
    while i < limit and a[i] == b[i]:
        i += 1
    return i - start


def build_trie(s: StringSet) -> Trie:
    """Build the compacted trie of a string set.

    A singleton set becomes a single external node labelled with its only
    string.  Otherwise the root's compacted path is the longest common
    prefix of the set, with one child per continuation symbol, each built
    recursively from the strings that continue with that symbol.

    Construction is iterative, so deep tries (for example near-linear
    shapes) do not hit the interpreter recursion limit.
    """
    strs = s.strings  # lexicographically sorted; groups are contiguous runs
    root_box: dict[int, TrieNode] = {}
    stack: list[tuple[int, int, int, dict[int, TrieNode], int]] = [
        (0, len(strs), 0, root_box, 0)
    ]
    node_count = 0
    external_count = 0
    while stack:
        lo, hi, depth, parent, edge = stack.pop()
        first = strs[lo]
        if hi - lo == 1:
            node = TrieNode(first[depth:], {})
            external_count += 1
        else:
            cut = depth + _common_prefix_len(first, strs[hi - 1], depth)
            node = TrieNode(first[depth:cut], {})
            # Prefix-freeness guarantees every string in the run extends past
            # the common prefix, so strs[i][cut] is always in range.
            groups = []
            i = lo
            while i < hi:
                sym = strs[i][cut]
                j = i + 1
                while j < hi and strs[j][cut] == sym:
                    j += 1
                groups.append((i, j, sym))
                i = j
            for glo, ghi, sym in reversed(groups):
                stack.append((glo, ghi, cut + 1, node.children, sym))
        node_count += 1
        # Reverse-order pushes make siblings pop in ascending symbol order,
        # so insertion order in every children dict is ascending.
        parent[edge] = node
    return Trie(s.alphabet, root_box[0], node_count, external_count)


def strings_of(t: Trie) -> StringSet:
    """Recover the string set a trie represents.

    External nodes enumerated in preorder yield their extents in
    lexicographic order; the result round-trips ``build_trie`` exactly.
    """
    return StringSet(t.alphabet, (t.extent(i) for i in t.external_refs()))


@dataclass(frozen=True)
class TrieStats:
    """Exact statistic bundle of a compacted trie.

    ``extent_sum_by_degree`` and ``node_count_by_degree`` are keyed by the
    number of children (0 and 2..sigma; degree 1 cannot occur).  The
    external/internal sums and the external count restate the degree
    tables for convenience.  All fields are plain integers; the mean
    string length is exposed as an exact rational.
    """

    sigma: int
    external_count: int
    external_extent_sum: int
    internal_extent_sum: int
    trie_measure: int
    extent_sum_by_degree: dict[int, int]
    node_count_by_degree: dict[int, int]

    @property
    def mean_string_length(self) -> Fraction:
        return Fraction(self.external_extent_sum, self.external_count)


def compute_stats(t: Trie) -> TrieStats:
    """Compute all trie statistics in one traversal.

    Tracks the running name length down each branch; a node's extent
    length is its name length plus its compacted-path length, and the trie
    measure accumulates path length + 1 per node, minus one at the end.
    """
    sigma = t.alphabet.sigma
    degrees = (0, *range(2, sigma + 1))
    extent_sums = {d: 0 for d in degrees}
    node_counts = {d: 0 for d in degrees}
    measure = 0
    stack: list[tuple[TrieNode, int]] = [(t.root, 0)]
    while stack:
        node, name_len = stack.pop()
        degree = len(node.children)
        if degree not in extent_sums:
            raise ValueError(
                f"malformed trie: node with {degree} children under alphabet size {sigma}"
            )
        extent_len = name_len + len(node.compacted_path)
        measure += len(node.compacted_path) + 1
        extent_sums[degree] += extent_len
        node_counts[degree] += 1
        for child in node.children.values():
            stack.append((child, extent_len + 1))
    return TrieStats(
        sigma=sigma,
        external_count=node_counts[0],
        external_extent_sum=extent_sums[0],
        internal_extent_sum=sum(extent_sums[d] for d in degrees if d >= 2),
        trie_measure=measure - 1,
        extent_sum_by_degree=extent_sums,
        node_count_by_degree=node_counts,
    )


def verify_binary_identity(st: TrieStats) -> bool:
    """Check external sum = internal sum + trie measure, exactly.

    Holds for every well-formed binary trie; a ``False`` return signals an
    implementation bug, which is exactly what this verifier exists to
    catch.  Stats over a non-binary alphabet are rejected; use
    :func:`verify_general_identity` for those.
    """
    if st.sigma != 2:
        raise ValueError(
            f"binary identity is defined for sigma = 2, got sigma = {st.sigma}"
        )
    return st.external_extent_sum == st.internal_extent_sum + st.trie_measure


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of the general identity verification.

    ``extent_identity``: external extent sum equals the degree-weighted
    internal extent sum plus the trie measure.
    ``degree_identity``: the degree-weighted internal node count equals
    the external count minus one.
    Truthy iff both hold.
    """

    extent_identity: bool
    degree_identity: bool

    def __bool__(self) -> bool:
        return self.extent_identity and self.degree_identity


def verify_general_identity(st: TrieStats) -> IdentityCheck:
    """Check both exact identities for tries over any alphabet size.

    For sigma = 2 the extent identity coincides with
    :func:`verify_binary_identity`, since the only weighted term is the
    degree-2 sum with weight one.
    """
    weighted_extents = sum(
        (d - 1) * st.extent_sum_by_degree.get(d, 0) for d in range(2, st.sigma + 1)
    )
    weighted_counts = sum(
        (d - 1) * st.node_count_by_degree.get(d, 0) for d in range(2, st.sigma + 1)
    )
    return IdentityCheck(
        extent_identity=st.extent_sum_by_degree.get(0, 0)
        == weighted_extents + st.trie_measure,
        degree_identity=weighted_counts == st.external_count - 1,
    )


def verify_internal_extent_bound(st: TrieStats) -> bool:
    """Check mean internal extent <= mean string length - 3/2 + 1/n.

    Evaluated as the cross-multiplied integer comparison
    ``2*n*I <= (n-1)*(2*E - 3*n + 2)`` so no rounding can mask a
    violation.  Defined for binary tries with at least two strings.
    """
    if st.sigma != 2:
        raise ValueError("internal extent bound is defined for binary tries only")
    n = st.external_count
    if n < 2:
        raise ValueError(f"internal extent bound requires at least 2 strings, got {n}")
    lhs = 2 * n * st.internal_extent_sum
    rhs = (n - 1) * (2 * st.external_extent_sum - 3 * n + 2)
    return lhs <= rhs


def space_bound_bits(st: TrieStats) -> float:
    """Information bound, in bits, for storing a compacted binary trie.

    Equals the trie measure plus log2 of (measure choose 2n-2): the paths
    payload costs measure - 2n + 2 bits, the binomial counts the ways the
    2n-2 remaining slots split it into per-node segments.  The binomial is
    evaluated in exact big-integer arithmetic before the logarithm, which
    keeps the result within 1e-9 bits of the true value.
    """
    if st.sigma != 2:
        raise ValueError("space bound is defined for binary tries only")
    slots = 2 * st.external_count - 2
    if st.trie_measure < slots:
        raise ValueError(
            f"corrupted stats: trie measure {st.trie_measure} is below the "
            f"structural minimum {slots}"
        )
    return st.trie_measure + math.log2(math.comb(st.trie_measure, slots))
