"""Compacted tries, extent statistics, and a succinct binary-trie codec."""

from .codec import (
    BadHeaderError,
    BoundReport,
    CodecError,
    EncodedTrie,
    InvalidShapeError,
    PaddingError,
    PayloadUnderflowError,
    UnsupportedAlphabetError,
    bound_report,
    decode,
    encode,
    measured_size_bits,
)
from .core import (
    Alphabet,
    DuplicateStringError,
    EmptySetError,
    IdentityCheck,
    PrefixViolationError,
    StringSet,
    StringSetError,
    Trie,
    TrieNode,
    TrieStats,
    build_trie,
    compute_stats,
    space_bound_bits,
    strings_of,
    verify_binary_identity,
    verify_general_identity,
    verify_internal_extent_bound,
)
from .ingest import InputError, ParsedInput, load, parse_lines
from .oracle import (
    GeneratorConfig,
    UncompactedTrie,
    build_uncompacted,
    complete_code_set,
    edge_count,
    generate_prefix_free,
    linear_trie_set,
    path_lengths,
    stats_by_definition,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BadHeaderError",
    "BoundReport",
    "CodecError",
    "DuplicateStringError",
    "EmptySetError",
    "EncodedTrie",
    "GeneratorConfig",
    "IdentityCheck",
    "InputError",
    "InvalidShapeError",
    "PaddingError",
    "ParsedInput",
    "PayloadUnderflowError",
    "PrefixViolationError",
    "StringSet",
    "StringSetError",
    "Trie",
    "TrieNode",
    "TrieStats",
    "UncompactedTrie",
    "UnsupportedAlphabetError",
    "bound_report",
    "build_trie",
    "build_uncompacted",
    "complete_code_set",
    "compute_stats",
    "decode",
    "edge_count",
    "encode",
    "generate_prefix_free",
    "linear_trie_set",
    "load",
    "measured_size_bits",
    "parse_lines",
    "path_lengths",
    "space_bound_bits",
    "stats_by_definition",
    "strings_of",
    "verify_binary_identity",
    "verify_general_identity",
    "verify_internal_extent_bound",
]
