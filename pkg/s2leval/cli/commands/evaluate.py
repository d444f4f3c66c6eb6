"""
Evaluate command.

Scores a prediction file against a reference file and writes the report.
"""

from pathlib import Path
from typing import Any

from rich.console import Console

from s2leval.config.loader import load_eval_config
from s2leval.config.models import ALL_METRICS, EvalConfig
from s2leval.dataset.io import output_stream
from s2leval.evaluation.harness import evaluate
from s2leval.evaluation.models import EvalReport
from s2leval.evaluation.report import ReportFormat, format_percent, report
from s2leval.utils.errors import InvalidConfigError

console = Console(stderr=True)


def parse_metric_list(value: str | None) -> tuple[str, ...] | None:
    """
    Split a comma-separated --metrics value.

    Raises:
        InvalidConfigError: If a name is not a known metric
    """
    if value is None:
        return None
    names = tuple(name.strip() for name in value.split(",") if name.strip())
    unknown = [name for name in names if name not in ALL_METRICS]
    if unknown:
        raise InvalidConfigError(
            message=f"Unknown metric(s): {', '.join(unknown)}",
            suggestion=f"Choose from: {', '.join(ALL_METRICS)}",
        )
    return names


def build_eval_config(
    config_path: Path | None = None,
    mode: str | None = None,
    strip_presentation: bool | None = None,
    normalize: bool | None = None,
    separator: str | None = None,
    delimit: bool | None = None,
    metrics: str | None = None,
    aggregate: str | None = None,
    workers: int | None = None,
) -> EvalConfig:
    """Load the YAML config (if any) and apply flag overrides; None means "not given"."""
    overrides: dict[str, Any] = {
        "mode": mode,
        "strip_presentation_both_sides": strip_presentation,
        "normalize": normalize,
        "equation_separator": separator,
        "delimit_equations": delimit,
        "metrics": parse_metric_list(metrics),
        "aggregate": aggregate,
        "workers": workers,
    }
    return load_eval_config(config_path, **overrides)


def evaluate_command(
    prediction_path: Path,
    reference_path: Path,
    config: EvalConfig,
    fmt: ReportFormat = "json",
    output_path: Path | None = None,
) -> EvalReport:
    """
    Run an evaluation and write the report.

    Args:
        prediction_path: Predictions (JSON lines or plain text)
        reference_path: References in the same format
        config: Evaluation protocol
        fmt: "json" or "table"
        output_path: Report destination (stdout when None)

    Returns:
        The EvalReport

    Raises:
        InputFileError, RecordMismatchError, EmptyCorpusError: On bad inputs
    """
    result = evaluate(prediction_path, reference_path, config)
    payload = report(result, fmt).decode("utf-8")

    with output_stream(output_path) as stream:
        stream.write(payload)

    if output_path is not None:
        console.print(
            f"[green]✓[/green] Evaluated {result.record_count} record(s), "
            f"compilation rate {format_percent(result.compilation_rate)}% → {output_path}"
        )
    return result
