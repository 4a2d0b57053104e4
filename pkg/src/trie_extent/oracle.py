"""Brute-force reference computations and seeded instance generation.

Everything here recomputes trie quantities from first principles by
scanning string prefixes, without touching the compacted structure that
:mod:`trie_extent.core` builds.  The implementations are deliberately
naive: they exist to cross-check the fast path, so independence matters
more than speed.

All functions are pure; the generators confine their randomness to a
:class:`random.Random` seeded per call, so identical configs always
produce identical sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Alphabet, StringSet, Symbols, TrieStats


class UncompactedNode:
    __slots__ = ("children", "terminal")

    def __init__(self):
        self.children: dict[int, UncompactedNode] = {}
        self.terminal = False


@dataclass
class UncompactedTrie:
    """Plain symbol-per-edge trie: one node per distinct prefix."""

    root: UncompactedNode
    node_count: int


def build_uncompacted(s: StringSet) -> UncompactedTrie:
    root = UncompactedNode()
    count = 1
    for string in s.strings:
        node = root
        for sym in string:
            child = node.children.get(sym)
            if child is None:
                child = UncompactedNode()
                node.children[sym] = child
                count += 1
            node = child
        node.terminal = True
    return UncompactedTrie(root, count)


def edge_count(u: UncompactedTrie) -> int:
    """Number of edges; for a trie built from a set this equals its trie measure."""
    return u.node_count - 1


def path_lengths(u: UncompactedTrie) -> tuple[int, int]:
    """Classical (external, internal) path lengths of the plain trie.

    External path length sums the depths of leaves, internal path length
    the depths of non-leaf nodes.
    """
    external = 0
    internal = 0
    stack = [(u.root, 0)]
    while stack:
        node, depth = stack.pop()
        if node.children:
            internal += depth
            for child in node.children.values():
                stack.append((child, depth + 1))
        else:
            external += depth
    return external, internal


def stats_by_definition(s: StringSet) -> TrieStats:
    """Recompute every trie statistic straight from the definitions.

    The compacted trie's internal nodes correspond exactly to the
    branching prefixes of the set (prefixes followed by at least two
    distinct symbols), its external nodes to the strings themselves, and
    the trie measure to the number of distinct nonempty prefixes.  No part
    of this relies on the compacted structure, parent links, or the
    recursive construction.
    """
    sigma = s.alphabet.sigma
    continuations: dict[Symbols, set[int]] = {}
    prefixes: set[Symbols] = set()
    for string in s.strings:
        for i, sym in enumerate(string):
            continuations.setdefault(string[:i], set()).add(sym)
            prefixes.add(string[: i + 1])

    degrees = (0, *range(2, sigma + 1))
    extent_sums = {d: 0 for d in degrees}
    node_counts = {d: 0 for d in degrees}
    extent_sums[0] = s.total_length
    node_counts[0] = len(s)
    for prefix, symbols in continuations.items():
        if len(symbols) >= 2:
            extent_sums[len(symbols)] += len(prefix)
            node_counts[len(symbols)] += 1
    return TrieStats(
        sigma=sigma,
        external_count=node_counts[0],
        external_extent_sum=extent_sums[0],
        internal_extent_sum=sum(extent_sums[d] for d in degrees if d >= 2),
        trie_measure=len(prefixes),
        extent_sum_by_degree=extent_sums,
        node_count_by_degree=node_counts,
    )


@dataclass(frozen=True)
class GeneratorConfig:
    sigma: int
    n_max: int
    len_max: int
    seed: int

    def __post_init__(self):
        if self.sigma < 2:
            raise ValueError(f"generator needs sigma >= 2, got {self.sigma}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if self.len_max < 1:
            raise ValueError(f"len_max must be >= 1, got {self.len_max}")


def generate_prefix_free(cfg: GeneratorConfig) -> StringSet:
    """Draw a random prefix-free set, deterministically in the seed.

    The set is grown as a random branching tree: each step either emits a
    single random string or picks a shared label, at least two distinct
    continuation symbols, and recurses.  Distinct branching symbols make
    prefix-freeness hold by construction, with no rejection sampling.
    The leaf budget is drawn uniformly from 1..n_max; a branch is only
    abandoned (collapsing to one leaf) when the length budget runs out,
    so the realized size can fall below the drawn budget but never above.
    """
    rng = random.Random(cfg.seed)
    target = rng.randint(1, cfg.n_max)
    return StringSet(Alphabet(cfg.sigma), _grow(rng, cfg.sigma, target, cfg.len_max))


def _random_string(rng: random.Random, sigma: int, max_len: int) -> Symbols:
    return tuple(rng.randrange(sigma) for _ in range(rng.randint(0, max_len)))


def _grow(rng: random.Random, sigma: int, leaves: int, max_len: int) -> list[Symbols]:
    if leaves == 1 or max_len < 1:
        return [_random_string(rng, sigma, max(max_len, 0))]
    # Bias the shared label short (min of two uniforms) so length budget
    # survives enough branching levels to reach the leaf target.
    cap = max_len - 1
    label_len = min(rng.randint(0, cap), rng.randint(0, cap))
    label = tuple(rng.randrange(sigma) for _ in range(label_len))
    fanout = rng.randint(2, min(sigma, leaves))
    symbols = sorted(rng.sample(range(sigma), fanout))
    out: list[Symbols] = []
    for sym, share in zip(symbols, _composition(rng, leaves, fanout)):
        for tail in _grow(rng, sigma, share, max_len - label_len - 1):
            out.append(label + (sym,) + tail)
    return out


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    """Split total into `parts` positive summands, uniformly at random."""
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0, *cuts, total]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def complete_code_set(cfg: GeneratorConfig) -> StringSet:
    """Random binary set whose compacted trie has every path empty.

    Grows a complete binary code by repeatedly splitting a random leaf
    into its two one-symbol extensions, so every internal node of the
    resulting trie branches immediately and every leaf label is consumed
    by edges alone.  These sets exercise the classical special case where
    the trie measure collapses to 2n - 2.
    """
    if cfg.sigma != 2:
        raise ValueError("complete code sets are generated over sigma = 2 only")
    rng = random.Random(cfg.seed)
    target = rng.randint(1, cfg.n_max)
    leaves: list[Symbols] = [()]
    while len(leaves) < target:
        open_slots = [i for i, leaf in enumerate(leaves) if len(leaf) < cfg.len_max]
        if not open_slots:
            break
        stem = leaves.pop(rng.choice(open_slots))
        leaves.append(stem + (0,))
        leaves.append(stem + (1,))
    return StringSet(Alphabet(2), leaves)


def linear_trie_set(n: int) -> StringSet:
    """The n-string binary family whose trie is a left path with empty paths.

    Elements are 0^k 1 for k = 0..n-2 plus 0^(n-1).  Closed forms:
    external extent sum n(n+1)/2 - 1 and internal extent sum
    (n-2)(n-1)/2, which realize the internal extent bound's worst case.
    """
    if n < 2:
        raise ValueError(f"linear family requires n >= 2, got {n}")
    strings = [(0,) * k + (1,) for k in range(n - 1)]
    strings.append((0,) * (n - 1))
    return StringSet(Alphabet(2), strings)
