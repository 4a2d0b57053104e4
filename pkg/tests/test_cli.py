"""CLI surface: commands, exit codes, JSON schema, and the report path."""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from trie_extent.cli import main

from conftest import GOLDEN_LINES

SCHEMA = json.loads(
    (Path(__file__).parents[1] / "docs" / "report_v1.schema.json").read_text()
)


def write_lines(path: Path, lines) -> Path:
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def golden_file(tmp_path) -> Path:
    return write_lines(tmp_path / "golden.txt", GOLDEN_LINES)


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestStats:
    def test_golden_report(self, capsys, golden_file):
        code, out, _ = run_cli(capsys, "stats", str(golden_file))
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, SCHEMA)
        assert doc["external_count"] == 3
        assert doc["external_extent_sum"] == 41
        assert doc["internal_extent_sum"] == 20
        assert doc["trie_measure"] == 21
        assert doc["identities"]["binary"] is True
        assert doc["identities"]["general"]["extent_identity"] is True
        assert doc["internal_extent_bound"] is True
        assert doc["mean_string_length"]["exact"] == [41, 3]
        assert doc["space_bound_bits"] == pytest.approx(33.547, abs=1e-3)

    def test_single_line(self, capsys, tmp_path):
        path = write_lines(tmp_path / "one.txt", ["0110"])
        code, out, _ = run_cli(capsys, "stats", str(path))
        assert code == 0
        doc = json.loads(out)
        assert doc["external_count"] == 1
        assert doc["external_extent_sum"] == doc["trie_measure"] == 4
        assert doc["internal_extent_sum"] == 0
        assert doc["internal_extent_bound"] is None

    def test_prefix_violation_names_lines(self, capsys, tmp_path):
        path = write_lines(tmp_path / "bad.txt", ["01", "010"])
        code, _, err = run_cli(capsys, "stats", str(path))
        assert code == 2
        assert "line 1" in err and "line 2" in err

    def test_sentinel_resolves_prefix_violation(self, capsys, tmp_path):
        path = write_lines(tmp_path / "bad.txt", ["01", "010"])
        code, out, _ = run_cli(capsys, "stats", str(path), "--sentinel")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, SCHEMA)
        assert doc["alphabet"]["sigma"] == 3
        assert doc["alphabet"]["sentinel_symbol"] == 2
        assert doc["identities"]["binary"] is None  # no longer binary

    def test_text_format_reports_mapping(self, capsys, tmp_path):
        path = write_lines(tmp_path / "words.txt", ["ab", "ac", "b"])
        code, out, _ = run_cli(capsys, "stats", str(path), "--format", "text")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, SCHEMA)
        assert doc["alphabet"]["sigma"] == 3
        assert doc["alphabet"]["symbol_bytes"] == [ord("a"), ord("b"), ord("c")]
        assert doc["identities"]["general"]["extent_identity"] is True
        assert doc["identities"]["general"]["degree_identity"] is True

    def test_bad_characters_name_the_line(self, capsys, tmp_path):
        path = write_lines(tmp_path / "bad.txt", ["01", "0x1"])
        code, _, err = run_cli(capsys, "stats", str(path))
        assert code == 2
        assert "line 2" in err

    def test_encoded_size_flag(self, capsys, golden_file):
        code, out, _ = run_cli(capsys, "stats", str(golden_file), "--encoded-size")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, SCHEMA)
        assert doc["encoded"]["measured_bits"] == 41

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "stats", str(tmp_path / "nope.txt"))
        assert code == 2
        assert "cannot read" in err

    def test_stdin(self, capsys, monkeypatch, tmp_path):
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO("0110\n"))
        code, out, _ = run_cli(capsys, "stats")
        assert code == 0
        assert json.loads(out)["external_count"] == 1

    def test_empty_input(self, capsys, tmp_path):
        empty = tmp_path / "empty.txt"
        empty.write_text("")
        code, _, err = run_cli(capsys, "stats", str(empty))
        assert code == 2
        assert "no strings" in err

    def test_single_symbol_alphabet(self, capsys, tmp_path):
        path = write_lines(tmp_path / "unary.txt", ["aaa"])
        code, out, _ = run_cli(capsys, "stats", str(path), "--format", "text")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, SCHEMA)
        assert doc["alphabet"]["sigma"] == 1
        assert doc["external_extent_sum"] == doc["trie_measure"] == 3

    def test_identity_failure_exits_3(self, capsys, golden_file, monkeypatch):
        """A false identity in the report must surface as the bug-signal code."""
        from trie_extent import cli

        original = cli.report.stats_report

        def doctored(parsed, include_encoding=False):
            doc = original(parsed, include_encoding=include_encoding)
            doc["identities"]["binary"] = False
            return doc

        monkeypatch.setattr(cli.report, "stats_report", doctored)
        code, _, _ = run_cli(capsys, "stats", str(golden_file))
        assert code == 3


class TestEncodeDecode:
    def test_round_trip(self, capsys, golden_file, tmp_path):
        out_path = tmp_path / "golden.ctrie"
        code, out, _ = run_cli(capsys, "encode", str(golden_file), "--out", str(out_path))
        assert code == 0
        assert json.loads(out)["measured_bits"] == 41
        assert out_path.exists()

        code, out, _ = run_cli(capsys, "decode", str(out_path))
        assert code == 0
        assert out.splitlines() == sorted(GOLDEN_LINES)

    def test_decode_truncated(self, capsys, golden_file, tmp_path):
        out_path = tmp_path / "golden.ctrie"
        run_cli(capsys, "encode", str(golden_file), "--out", str(out_path))
        out_path.write_bytes(out_path.read_bytes()[:-1])
        code, _, err = run_cli(capsys, "decode", str(out_path))
        assert code == 4
        assert "codec error" in err

    def test_encode_nonbinary_is_a_codec_error(self, capsys, tmp_path):
        path = write_lines(tmp_path / "wide.txt", ["ab", "ac", "b"])
        code, _, err = run_cli(
            capsys, "encode", str(path), "--format", "text", "--out", str(tmp_path / "x.ctrie")
        )
        assert code == 4
        assert "binary-only" in err


class TestGen:
    def test_deterministic_across_runs(self, capsys, tmp_path):
        for directory in ("a", "b"):
            code, _, _ = run_cli(
                capsys, "gen", "--out", str(tmp_path / directory),
                "--seed", "42", "--count", "2",
            )
            assert code == 0
        for name in ("set_0000.txt", "set_0001.txt"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_generated_files_pass_stats(self, capsys, tmp_path):
        run_cli(capsys, "gen", "--out", str(tmp_path), "--seed", "7", "--count", "5")
        for path in sorted(tmp_path.glob("set_*.txt")):
            code, out, _ = run_cli(capsys, "stats", str(path))
            assert code == 0

    def test_wide_alphabet_identity_via_stats(self, capsys, tmp_path):
        run_cli(capsys, "gen", "--out", str(tmp_path), "--sigma", "6", "--seed", "3", "--count", "3")
        for path in sorted(tmp_path.glob("set_*.txt")):
            code, out, _ = run_cli(capsys, "stats", str(path), "--format", "text")
            assert code == 0
            doc = json.loads(out)
            assert doc["identities"]["general"]["extent_identity"] is True
            assert doc["identities"]["general"]["degree_identity"] is True

    def test_linear_family_file(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "gen", "--out", str(tmp_path), "--linear", "4")
        assert code == 0
        path = tmp_path / "linear_0004.txt"
        assert path.read_text().splitlines() == ["000", "001", "01", "1"]
        code, out, _ = run_cli(capsys, "stats", str(path))
        doc = json.loads(out)
        assert doc["external_extent_sum"] == 9
        assert doc["internal_extent_sum"] == 3

    def test_linear_family_closed_forms_via_cli(self, capsys, tmp_path):
        for n in range(2, 51):
            code, out, _ = run_cli(capsys, "gen", "--out", str(tmp_path), "--linear", str(n))
            assert code == 0
            code, out, _ = run_cli(capsys, "stats", out.strip())
            assert code == 0
            doc = json.loads(out)
            assert doc["external_count"] == n
            assert doc["external_extent_sum"] == n * (n + 1) // 2 - 1
            assert doc["internal_extent_sum"] == (n - 2) * (n - 1) // 2

    def test_invalid_configs(self, capsys, tmp_path):
        assert run_cli(capsys, "gen", "--out", str(tmp_path), "--sigma", "1")[0] == 2
        assert run_cli(capsys, "gen", "--out", str(tmp_path), "--sigma", "11")[0] == 2
        assert run_cli(capsys, "gen", "--out", str(tmp_path), "--count", "0")[0] == 2
        assert run_cli(capsys, "gen", "--out", str(tmp_path), "--n-max", "0")[0] == 2
        assert run_cli(capsys, "gen", "--out", str(tmp_path), "--linear", "1")[0] == 2


class TestVerify:
    def test_clean_directory(self, capsys, tmp_path):
        corpus = tmp_path / "corpus"
        run_cli(capsys, "gen", "--out", str(corpus), "--seed", "11", "--count", "8")
        code, out, _ = run_cli(capsys, "verify", str(corpus))
        assert code == 0
        assert "8 ok" in out

    def test_report_dir_writes_csv_and_figures(self, capsys, tmp_path):
        corpus = tmp_path / "corpus"
        run_cli(capsys, "gen", "--out", str(corpus), "--seed", "5", "--count", "6")
        report_dir = tmp_path / "report"
        code, out, _ = run_cli(
            capsys, "verify", str(corpus), "--report-dir", str(report_dir)
        )
        assert code == 0
        summary = report_dir / "summary.csv"
        assert summary.exists()
        lines = summary.read_text().splitlines()
        assert lines[0].startswith("file,sigma,external_count")
        assert len(lines) == 7  # header + 6 rows
        assert (report_dir / "bound_vs_measured.png").exists()
        assert (report_dir / "size_ratio_hist.png").exists()

    def test_unparseable_file_exits_2(self, capsys, tmp_path):
        corpus = tmp_path / "corpus"
        run_cli(capsys, "gen", "--out", str(corpus), "--seed", "1", "--count", "2")
        write_lines(corpus / "broken.txt", ["01", "010"])
        code, out, _ = run_cli(capsys, "verify", str(corpus))
        assert code == 2
        assert "FAIL broken.txt" in out

    def test_not_a_directory(self, capsys, tmp_path):
        assert run_cli(capsys, "verify", str(tmp_path / "missing"))[0] == 2

    def test_empty_directory(self, capsys, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        assert run_cli(capsys, "verify", str(empty))[0] == 2


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "trie_extent", "--help"],
        capture_output=True,
        text=True,
        cwd=Path(__file__).parents[1],
    )
    assert result.returncode == 0
    assert "stats" in result.stdout and "verify" in result.stdout
