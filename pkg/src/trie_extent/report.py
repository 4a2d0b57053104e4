"""Report assembly: JSON statistic reports, CSV summaries, and figures.

The JSON layout is versioned as ``report_v1``; its schema ships in
``docs/report_v1.schema.json``.  The mean string length appears both as a
decimal and as the exact (sum, count) integer pair so downstream consumers
never have to argue about rounding.
"""

from __future__ import annotations

import csv
from pathlib import Path

from . import codec, oracle
from .core import (
    build_trie,
    compute_stats,
    space_bound_bits,
    strings_of,
    verify_binary_identity,
    verify_general_identity,
    verify_internal_extent_bound,
)
from .ingest import ParsedInput

SCHEMA_VERSION = "report_v1"


def stats_report(parsed: ParsedInput, *, include_encoding: bool = False) -> dict:
    """Build the full report_v1 document for one input set."""
    st = compute_stats(build_trie(parsed.string_set))
    general = verify_general_identity(st)
    binary = verify_binary_identity(st) if st.sigma == 2 else None
    is_binary_pair = st.sigma == 2 and st.external_count >= 2
    bound_check = verify_internal_extent_bound(st) if is_binary_pair else None

    encoded = None
    if include_encoding and st.sigma == 2:
        encoded = codec.bound_report(build_trie(parsed.string_set)).as_dict()

    mean = st.mean_string_length
    return {
        "schema": SCHEMA_VERSION,
        "format": parsed.source_format,
        "alphabet": {
            "sigma": st.sigma,
            "symbol_bytes": list(parsed.symbol_bytes)
            if parsed.symbol_bytes is not None
            else None,
            "sentinel_symbol": parsed.sentinel_symbol,
        },
        "external_count": st.external_count,
        "external_extent_sum": st.external_extent_sum,
        "internal_extent_sum": st.internal_extent_sum,
        "trie_measure": st.trie_measure,
        "mean_string_length": {
            "exact": [st.external_extent_sum, st.external_count],
            "decimal": float(mean),
        },
        "extent_sum_by_degree": {str(d): v for d, v in st.extent_sum_by_degree.items()},
        "node_count_by_degree": {str(d): v for d, v in st.node_count_by_degree.items()},
        "identities": {
            "binary": binary,
            "general": {
                "extent_identity": general.extent_identity,
                "degree_identity": general.degree_identity,
            },
        },
        "internal_extent_bound": bound_check,
        "space_bound_bits": space_bound_bits(st) if st.sigma == 2 else None,
        "encoded": encoded,
    }


def identities_hold(report: dict) -> bool:
    """True iff every identity check applicable to the input came back true."""
    checks = [
        report["identities"]["binary"],
        report["identities"]["general"]["extent_identity"],
        report["identities"]["general"]["degree_identity"],
        report["internal_extent_bound"],
    ]
    return all(c for c in checks if c is not None)


def cross_check(name: str, parsed: ParsedInput) -> tuple[dict, list[str]]:
    """Verify one set against the brute-force oracle; returns (row, failures).

    Checks, in order: trie measure against the uncompacted edge count,
    the fast statistics against the definition-level recomputation, the
    exact identities, and (for binary sets) the codec round trip plus the
    achieved size against the information bound.
    """
    failures: list[str] = []
    trie = build_trie(parsed.string_set)
    st = compute_stats(trie)

    edges = oracle.edge_count(oracle.build_uncompacted(parsed.string_set))
    if edges != st.trie_measure:
        failures.append(f"trie measure {st.trie_measure} != uncompacted edges {edges}")
    if oracle.stats_by_definition(parsed.string_set) != st:
        failures.append("definition-level statistics disagree with the traversal")
    if not verify_general_identity(st):
        failures.append("general extent identity failed")

    row = {
        "file": name,
        "sigma": st.sigma,
        "external_count": st.external_count,
        "external_extent_sum": st.external_extent_sum,
        "internal_extent_sum": st.internal_extent_sum,
        "trie_measure": st.trie_measure,
        "bound_bits": None,
        "measured_bits": None,
        "size_ratio": None,
        "status": "ok",
    }
    if st.sigma == 2:
        if not verify_binary_identity(st):
            failures.append("binary extent identity failed")
        if st.external_count >= 2 and not verify_internal_extent_bound(st):
            failures.append("internal extent bound failed")
        rep = codec.bound_report(trie)
        row["bound_bits"] = rep.bound_bits
        row["measured_bits"] = rep.measured_bits
        row["size_ratio"] = rep.ratio
        decoded = codec.decode(codec.encode(trie))
        if strings_of(decoded) != strings_of(trie):
            failures.append("codec round trip lost strings")

    if failures:
        row["status"] = "mismatch"
    return row, failures


SUMMARY_FIELDS = (
    "file",
    "sigma",
    "external_count",
    "external_extent_sum",
    "internal_extent_sum",
    "trie_measure",
    "bound_bits",
    "measured_bits",
    "size_ratio",
    "status",
)


def write_summary(rows: list[dict], directory: Path) -> list[Path]:
    """Write summary.csv plus benchmark figures; returns the paths written."""
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    csv_path = directory / "summary.csv"
    with csv_path.open("w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=SUMMARY_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if row[k] is None else row[k]) for k in SUMMARY_FIELDS})
    written.append(csv_path)
    written.extend(_render_figures(rows, directory))
    return written


def _render_figures(rows: list[dict], directory: Path) -> list[Path]:
    measured = [
        (row["bound_bits"], row["measured_bits"], row["size_ratio"])
        for row in rows
        if row["measured_bits"] is not None
    ]
    if not measured:
        return []

    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    written = []
    bounds = [m[0] for m in measured]
    sizes = [m[1] for m in measured]

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.scatter(bounds, sizes, s=14, alpha=0.6, edgecolors="none")
    top = max(max(bounds, default=1), max(sizes, default=1))
    ax.plot([0, top], [0, top], lw=1, color="gray", linestyle="--", label="bound = size")
    ax.set_xlabel("information bound [bits]")
    ax.set_ylabel("encoded size [bits]")
    ax.set_title("Encoded trie size vs. information bound")
    ax.legend(loc="lower right")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    scatter_path = directory / "bound_vs_measured.png"
    fig.savefig(scatter_path, dpi=150)
    plt.close(fig)
    written.append(scatter_path)

    ratios = [m[2] for m in measured if m[2] is not None]
    if ratios:
        fig, ax = plt.subplots(figsize=(6.0, 4.5))
        ax.hist(ratios, bins=min(30, max(5, len(ratios) // 4)), color="#4878a8")
        ax.set_xlabel("encoded size / information bound")
        ax.set_ylabel("sets")
        ax.set_title("Overhead of the streaming format")
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        hist_path = directory / "size_ratio_hist.png"
        fig.savefig(hist_path, dpi=150)
        plt.close(fig)
        written.append(hist_path)
    return written
