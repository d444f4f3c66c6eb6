"""Tests for CLI commands."""

import json
from pathlib import Path

import pytest
from conftest import SENTENCE_PREDICTION, SENTENCE_REFERENCE, read_jsonl, write_jsonl
from typer.testing import CliRunner

from s2leval.cli.autocomplete import complete_metric_name, complete_mode
from s2leval.cli.main import EXIT_DATA, EXIT_OK, EXIT_USAGE, app, run

runner = CliRunner()


@pytest.fixture
def eval_files(temp_dir: Path) -> tuple[Path, Path]:
    """Id-keyed prediction and reference files in different orders."""
    predictions = write_jsonl(
        temp_dir / "pred.jsonl",
        [{"id": "b", "latex": "$X$"}, {"id": "a", "latex": r"$\dfrac{1}{2}$"}],
    )
    references = write_jsonl(
        temp_dir / "ref.jsonl",
        [{"id": "a", "latex": r"\frac{1}{2}"}, {"id": "b", "latex": "x"}],
    )
    return predictions, references


def test_version() -> None:
    """Test --version flag."""
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert "s2leval v" in result.output


def test_help() -> None:
    """Test --help flag lists every command."""
    result = runner.invoke(app, ["--help"])
    assert result.exit_code == 0
    for command in ("normalize", "validate", "filter", "dedup", "stratify", "evaluate"):
        assert command in result.output


class TestNormalizeCommand:
    """Tests for the normalize command."""

    def test_normalizes_lines(self, temp_dir: Path) -> None:
        """Test each line is written in canonical form."""
        source = temp_dir / "in.txt"
        source.write_text("\\dfrac{ 1 }{ 2 }\n\n\\sum_i^n i\n", encoding="utf-8")
        target = temp_dir / "out.txt"
        result = runner.invoke(app, ["normalize", str(source), "-o", str(target)])
        assert result.exit_code == EXIT_OK
        assert target.read_text(encoding="utf-8") == "\\frac{1}{2}\n\n\\sum_{i}^{n}i\n"

    def test_failed_line_kept(self, temp_dir: Path) -> None:
        """Test an unparseable line is kept as-is and sets exit code 2."""
        source = temp_dir / "in.txt"
        source.write_text("x^2\n\\frac{1}{2\n", encoding="utf-8")
        target = temp_dir / "out.txt"
        result = runner.invoke(app, ["normalize", str(source), "-o", str(target)])
        assert result.exit_code == EXIT_DATA
        assert target.read_text(encoding="utf-8") == "x^{2}\n\\frac{1}{2\n"
        assert "did not parse" in result.output

    def test_lowercase_and_strip(self, temp_dir: Path) -> None:
        """Test the profile flags."""
        source = temp_dir / "in.txt"
        source.write_text("\\displaystyle X\n", encoding="utf-8")
        target = temp_dir / "out.txt"
        result = runner.invoke(
            app,
            ["normalize", str(source), "-o", str(target), "--lowercase", "--strip-presentation"],
        )
        assert result.exit_code == EXIT_OK
        assert target.read_text(encoding="utf-8") == "x\n"

    def test_stdout(self, temp_dir: Path) -> None:
        """Test output goes to stdout by default."""
        source = temp_dir / "in.txt"
        source.write_text("a\\le b\n", encoding="utf-8")
        result = runner.invoke(app, ["normalize", str(source)])
        assert result.exit_code == EXIT_OK
        assert "a\\leq b" in result.output

    def test_missing_input(self, temp_dir: Path) -> None:
        """Test a missing file is a data error with a suggestion."""
        result = runner.invoke(app, ["normalize", str(temp_dir / "nope.txt")])
        assert result.exit_code == EXIT_DATA
        assert "Error" in result.output
        assert "Solution" in result.output


class TestDatasetCommands:
    """Tests for validate, filter, dedup and stratify."""

    def test_validate_reports_problems(self, corpus_file: Path, temp_dir: Path) -> None:
        """Test violations and malformed lines are listed."""
        findings = temp_dir / "findings.jsonl"
        result = runner.invoke(app, ["validate", str(corpus_file), "-o", str(findings)])
        assert result.exit_code == EXIT_DATA
        rows = read_jsonl(findings)
        assert rows[0] == {"id": "broken", "violations": ["invalid-latex"]}
        assert rows[1]["line"] == 5

    def test_validate_clean(self, temp_dir: Path) -> None:
        """Test a clean corpus exits 0."""
        corpus = write_jsonl(
            temp_dir / "clean.jsonl",
            [
                {
                    "id": "a",
                    "language": "eng",
                    "annotation_type": "human",
                    "source": "other",
                    "format": "equations",
                    "latex": "x^2+y^2",
                    "pronunciations": ["x squared plus y squared"],
                }
            ],
        )
        result = runner.invoke(app, ["validate", str(corpus)])
        assert result.exit_code == EXIT_OK
        assert "valid" in result.output

    def test_validate_config_threshold(self, temp_dir: Path) -> None:
        """Test --config supplies the text-only threshold."""
        corpus = write_jsonl(
            temp_dir / "corpus.jsonl",
            [
                {
                    "id": "half-text",
                    "language": "eng",
                    "annotation_type": "human",
                    "source": "other",
                    "format": "equations",
                    "latex": r"\text{ab}+c",
                    "pronunciations": ["a b plus c"],
                }
            ],
        )
        assert runner.invoke(app, ["validate", str(corpus)]).exit_code == EXIT_OK

        config = temp_dir / "filter.yml"
        config.write_text("text_only_command_ratio: 0.5\n", encoding="utf-8")
        findings = temp_dir / "findings.jsonl"
        result = runner.invoke(
            app, ["validate", str(corpus), "-c", str(config), "-o", str(findings)]
        )
        assert result.exit_code == EXIT_DATA
        assert read_jsonl(findings) == [{"id": "half-text", "violations": ["text-only"]}]

    def test_validate_missing_config(self, corpus_file: Path, temp_dir: Path) -> None:
        """Test a missing validate config file is a usage error."""
        result = runner.invoke(
            app, ["validate", str(corpus_file), "--config", str(temp_dir / "missing.yml")]
        )
        assert result.exit_code == EXIT_USAGE

    def test_filter_streams(self, corpus_file: Path, temp_dir: Path) -> None:
        """Test kept and rejected files partition the input."""
        kept = temp_dir / "kept.jsonl"
        rejected = temp_dir / "rejected.jsonl"
        result = runner.invoke(
            app,
            ["filter", str(corpus_file), "--kept", str(kept), "--rejected", str(rejected)],
        )
        assert result.exit_code == EXIT_OK
        assert [row["id"] for row in read_jsonl(kept)] == ["clean", "dup"]
        reasons = [row["reason"] for row in read_jsonl(rejected)]
        assert reasons == ["too-short", "invalid-latex", "parse-input"]
        assert "Kept 2, rejected 3 of 5" in result.output

    def test_filter_dedup(self, corpus_file: Path, temp_dir: Path) -> None:
        """Test --dedup rejects the later duplicate."""
        kept = temp_dir / "kept.jsonl"
        result = runner.invoke(app, ["filter", str(corpus_file), "--kept", str(kept), "--dedup"])
        assert result.exit_code == EXIT_OK
        rows = read_jsonl(kept)
        assert [row["id"] for row in rows] == ["clean"]
        assert "family_key" in rows[0]

    def test_filter_config(self, corpus_file: Path, temp_dir: Path) -> None:
        """Test thresholds from a YAML file."""
        config = temp_dir / "filter.yml"
        config.write_text("min_equation_chars: 1\n", encoding="utf-8")
        kept = temp_dir / "kept.jsonl"
        result = runner.invoke(
            app, ["filter", str(corpus_file), "-c", str(config), "--kept", str(kept)]
        )
        assert result.exit_code == EXIT_OK
        assert [row["id"] for row in read_jsonl(kept)] == ["clean", "short", "dup"]

    def test_filter_missing_config(self, corpus_file: Path, temp_dir: Path) -> None:
        """Test a missing config file is a usage error."""
        result = runner.invoke(
            app, ["filter", str(corpus_file), "-c", str(temp_dir / "missing.yml")]
        )
        assert result.exit_code == EXIT_USAGE
        assert "Configuration file not found" in result.output

    def test_dedup(self, corpus_file: Path, temp_dir: Path) -> None:
        """Test exact duplicates are dropped and families tagged."""
        output = temp_dir / "dedup.jsonl"
        result = runner.invoke(app, ["dedup", str(corpus_file), "-o", str(output)])
        assert result.exit_code == EXIT_OK
        rows = read_jsonl(output)
        assert [row["id"] for row in rows] == ["clean", "short", "broken"]
        assert all("family_key" in row for row in rows)

    def test_dedup_family_cap(self, temp_dir: Path) -> None:
        """Test --family-cap limits near-duplicates."""
        base = {
            "language": "eng",
            "annotation_type": "human",
            "source": "generated",
            "format": "equations",
            "pronunciations": ["cosine"],
        }
        corpus = write_jsonl(
            temp_dir / "corpus.jsonl",
            [
                {**base, "id": "a", "latex": r"\cos(\alpha)"},
                {**base, "id": "b", "latex": r"\cos(\omega)"},
            ],
        )
        output = temp_dir / "dedup.jsonl"
        result = runner.invoke(
            app, ["dedup", str(corpus), "-o", str(output), "--family-cap", "1"]
        )
        assert result.exit_code == EXIT_OK
        assert [row["id"] for row in read_jsonl(output)] == ["a"]

    def test_stratify_manifest(self, corpus_file: Path, temp_dir: Path) -> None:
        """Test the JSON manifest."""
        manifest = temp_dir / "manifest.json"
        result = runner.invoke(app, ["stratify", str(corpus_file), "-o", str(manifest)])
        assert result.exit_code == EXIT_OK
        data = json.loads(manifest.read_text(encoding="utf-8"))
        assert data["by_equation_length"]["10-20"] == 3
        assert data["out_of_range"] == 1
        assert data["record_count"] == 4

    def test_stratify_table(self, corpus_file: Path) -> None:
        """Test the table format."""
        result = runner.invoke(app, ["stratify", str(corpus_file), "--format", "table"])
        assert result.exit_code == EXIT_OK
        assert "Equations by length" in result.output
        assert "10-20" in result.output


class TestEvaluateCommand:
    """Tests for the evaluate command."""

    def test_json_report(self, eval_files: tuple[Path, Path], temp_dir: Path) -> None:
        """Test a report file is written."""
        predictions, references = eval_files
        output = temp_dir / "report.json"
        result = runner.invoke(
            app,
            ["evaluate", "--pred", str(predictions), "--ref", str(references), "-o", str(output)],
        )
        assert result.exit_code == EXIT_OK
        data = json.loads(output.read_text(encoding="utf-8"))
        assert data["record_count"] == 2
        assert data["scopes"]["equation"]["cer"] == 0.0
        assert data["compilation_rate"] == 1.0

    def test_table_report(self, eval_files: tuple[Path, Path]) -> None:
        """Test the table format on stdout."""
        predictions, references = eval_files
        result = runner.invoke(
            app,
            ["evaluate", "--pred", str(predictions), "--ref", str(references), "-f", "table"],
        )
        assert result.exit_code == EXIT_OK
        assert "Compilation rate: 100.00%" in result.output

    def test_metric_selection(self, eval_files: tuple[Path, Path], temp_dir: Path) -> None:
        """Test --metrics restricts the computed metrics."""
        predictions, references = eval_files
        output = temp_dir / "report.json"
        result = runner.invoke(
            app,
            [
                "evaluate",
                "--pred",
                str(predictions),
                "--ref",
                str(references),
                "--metrics",
                "cer,chrf",
                "-o",
                str(output),
            ],
        )
        assert result.exit_code == EXIT_OK
        scores = json.loads(output.read_text(encoding="utf-8"))["scopes"]["equation"]
        assert scores["chrf"] == pytest.approx(1.0)
        assert scores["bleu"] is None

    def test_unknown_metric(self, eval_files: tuple[Path, Path]) -> None:
        """Test an unknown metric name is a usage error."""
        predictions, references = eval_files
        result = runner.invoke(
            app,
            ["evaluate", "--pred", str(predictions), "--ref", str(references)]
            + ["--metrics", "meteor"],
        )
        assert result.exit_code == EXIT_USAGE
        assert "Unknown metric" in result.output

    def test_no_normalize(self, eval_files: tuple[Path, Path], temp_dir: Path) -> None:
        """Test --no-normalize scores raw text."""
        predictions, references = eval_files
        output = temp_dir / "report.json"
        result = runner.invoke(
            app,
            [
                "evaluate",
                "--pred",
                str(predictions),
                "--ref",
                str(references),
                "--no-normalize",
                "--metrics",
                "cer",
                "-o",
                str(output),
            ],
        )
        assert result.exit_code == EXIT_OK
        data = json.loads(output.read_text(encoding="utf-8"))
        assert data["scopes"]["equation"]["cer"] > 0.0
        assert data["config_echo"]["normalize"] is False

    def test_sentences_mode(self, temp_dir: Path) -> None:
        """Test plain-text sentence files."""
        predictions = temp_dir / "pred.txt"
        references = temp_dir / "ref.txt"
        predictions.write_text(SENTENCE_PREDICTION + "\n", encoding="utf-8")
        references.write_text(SENTENCE_REFERENCE + "\n", encoding="utf-8")
        output = temp_dir / "report.json"
        result = runner.invoke(
            app,
            [
                "evaluate",
                "--pred",
                str(predictions),
                "--ref",
                str(references),
                "--mode",
                "sentences",
                "--metrics",
                "cer",
                "--separator",
                "",
                "--delimit",
                "-o",
                str(output),
            ],
        )
        assert result.exit_code == EXIT_OK
        scopes = json.loads(output.read_text(encoding="utf-8"))["scopes"]
        assert list(scopes) == ["sentence", "text", "equation"]
        assert scopes["equation"]["cer"] == pytest.approx(0.2727, abs=0.02)

    def test_config_file_and_override(
        self, eval_files: tuple[Path, Path], temp_dir: Path
    ) -> None:
        """Test flags override the YAML config."""
        predictions, references = eval_files
        config = temp_dir / "eval.yml"
        config.write_text("aggregate: macro\nmetrics: [cer]\n", encoding="utf-8")
        output = temp_dir / "report.json"
        result = runner.invoke(
            app,
            [
                "evaluate",
                "--pred",
                str(predictions),
                "--ref",
                str(references),
                "-c",
                str(config),
                "--aggregate",
                "micro",
                "-o",
                str(output),
            ],
        )
        assert result.exit_code == EXIT_OK
        echo = json.loads(output.read_text(encoding="utf-8"))["config_echo"]
        assert echo["aggregate"] == "micro"
        assert echo["metrics"] == ["cer"]

    def test_record_mismatch(self, temp_dir: Path) -> None:
        """Test files of different lengths are a data error."""
        predictions = temp_dir / "pred.txt"
        references = temp_dir / "ref.txt"
        predictions.write_text("x\ny\n", encoding="utf-8")
        references.write_text("x\n", encoding="utf-8")
        result = runner.invoke(
            app, ["evaluate", "--pred", str(predictions), "--ref", str(references)]
        )
        assert result.exit_code == EXIT_DATA
        assert "line 2" in result.output

    def test_missing_ref_option(self, eval_files: tuple[Path, Path]) -> None:
        """Test --ref is required."""
        predictions, _ = eval_files
        result = runner.invoke(app, ["evaluate", "--pred", str(predictions)])
        assert result.exit_code != EXIT_OK


class TestRun:
    """Tests for the non-exiting runner."""

    def test_version(self) -> None:
        """Test a successful run returns 0."""
        assert run(["--version"]) == EXIT_OK

    def test_usage_error(self) -> None:
        """Test unknown options return 1."""
        assert run(["evaluate", "--bogus"]) == EXIT_USAGE

    def test_data_error(self, temp_dir: Path) -> None:
        """Test data errors return 2."""
        assert run(["normalize", str(temp_dir / "missing.txt")]) == EXIT_DATA

    def test_success(self, temp_dir: Path) -> None:
        """Test a clean normalize run returns 0."""
        source = temp_dir / "in.txt"
        source.write_text("x\n", encoding="utf-8")
        assert run(["normalize", str(source), "-o", str(temp_dir / "out.txt")]) == EXIT_OK


class TestAutocomplete:
    """Tests for shell completion helpers."""

    def test_metric_prefix(self) -> None:
        """Test completion of the last comma-separated entry."""
        assert complete_metric_name("cer,ch") == ["cer,chrf", "cer,chrfpp"]

    def test_metric_excludes_chosen(self) -> None:
        """Test already chosen metrics are not offered again."""
        assert "cer,cer" not in complete_metric_name("cer,")
        assert complete_metric_name("") == [
            "cer",
            "wer",
            "rouge1",
            "bleu",
            "sacre_style_bleu",
            "chrf",
            "chrfpp",
            "texbleu_proxy",
        ]

    def test_mode(self) -> None:
        """Test mode completion."""
        assert complete_mode("s") == ["sentences"]
        assert complete_mode("") == ["equations", "sentences"]
