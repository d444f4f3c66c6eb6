"""
Report rendering: schema-stable JSON or a fixed-width text table.

Table cells are percentages with two decimals; JSON keeps full precision.
"""

from io import StringIO
from typing import Literal

from rich import box
from rich.console import Console
from rich.table import Table

from s2leval.config.models import ALL_METRICS
from s2leval.evaluation.models import EvalReport
from s2leval.utils.errors import EmptyCorpusError

ReportFormat = Literal["json", "table"]

TABLE_WIDTH = 100

METRIC_LABELS: dict[str, str] = {
    "cer": "CER",
    "wer": "WER",
    "rouge1": "ROUGE-1",
    "bleu": "BLEU",
    "sacre_style_bleu": "sBLEU",
    "chrf": "chrF",
    "chrfpp": "chrF++",
    "texbleu_proxy": "TeXBLEU*",
}

SCOPE_LABELS: dict[str, str] = {"sentence": "Sent.", "text": "Text", "equation": "Eq."}


def format_percent(value: float) -> str:
    """
    Fraction as a two-decimal percentage without the sign.

    Example:
        >>> format_percent(0.2721)
        '27.21'
    """
    return f"{value * 100:.2f}"


def render_json(report: EvalReport) -> str:
    """Indented JSON with a trailing newline; key order follows the model."""
    return report.model_dump_json(indent=2) + "\n"


def render_table(report: EvalReport, width: int = TABLE_WIDTH) -> str:
    """
    Plain-text table of scopes by metrics, followed by the corpus summary.

    Args:
        report: Evaluation result
        width: Console width in columns

    Returns:
        Table text without color codes
    """
    present = {name for _, scores in report.ordered_scopes() for name in scores.values()}
    metrics = [m for m in ALL_METRICS if m in present]

    table = Table(box=box.ASCII, title="Evaluation (percent)", show_lines=False)
    table.add_column("Scope", no_wrap=True)
    for metric in metrics:
        table.add_column(METRIC_LABELS[metric], justify="right", no_wrap=True)

    for scope, scores in report.ordered_scopes():
        values = scores.values()
        table.add_row(
            SCOPE_LABELS.get(scope, scope),
            *(format_percent(values[m]) if m in values else "-" for m in metrics),
        )

    buffer = StringIO()
    console = Console(
        file=buffer,
        width=width,
        color_system=None,
        force_terminal=False,
        highlight=False,
        emoji=False,
    )
    console.print(table)
    console.print(f"Compilation rate: {format_percent(report.compilation_rate)}%")
    console.print(f"Records: {report.record_count}")
    console.print(f"Failed parses: {report.failed_parses}")
    console.print(f"Degenerate references: {report.degenerate_warnings}")
    return buffer.getvalue()


def report(eval_report: EvalReport, fmt: ReportFormat = "json") -> bytes:
    """
    Render a report as UTF-8 bytes.

    Raises:
        EmptyCorpusError: If the report covers no records
    """
    if eval_report.record_count == 0:
        raise EmptyCorpusError("no records", suggestion="Nothing was evaluated; check the inputs")
    text = render_json(eval_report) if fmt == "json" else render_table(eval_report)
    return text.encode("utf-8")
