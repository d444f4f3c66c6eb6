"""Main CLI entry point for s2leval with comprehensive error handling."""

import sys
from collections.abc import Sequence
from enum import StrEnum
from pathlib import Path
from typing import NoReturn

import click
import typer
from rich.console import Console
from rich.markup import escape

from s2leval import __version__
from s2leval.cli.autocomplete import complete_metric_name, complete_mode
from s2leval.cli.commands import (
    build_eval_config,
    dedup_command,
    evaluate_command,
    filter_command,
    normalize_command,
    stratify_command,
    validate_command,
)
from s2leval.evaluation.report import ReportFormat
from s2leval.utils.errors import (
    ConfigNotFoundError,
    DataError,
    InvalidConfigError,
    ParseError,
    RecordMismatchError,
    S2lError,
)
from s2leval.utils.log import configure_logging

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

app = typer.Typer(
    name="s2leval",
    help="Speech-to-LaTeX normalization, evaluation and corpus tooling",
    no_args_is_help=True,
    add_completion=True,
)
console = Console(stderr=True)


class OutputFormat(StrEnum):
    JSON = "json"
    TABLE = "table"


class Mode(StrEnum):
    EQUATIONS = "equations"
    SENTENCES = "sentences"


class Aggregate(StrEnum):
    MICRO = "micro"
    MACRO = "macro"


def _report_format(fmt: OutputFormat) -> ReportFormat:
    return "table" if fmt is OutputFormat.TABLE else "json"


# Normalize command
@app.command()
def normalize(
    input_file: Path = typer.Argument(..., help="One LaTeX formula per line", metavar="FILE"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write here instead of stdout"),
    strip_presentation: bool = typer.Option(
        False, "--strip-presentation", help="Also remove layout-only commands"
    ),
    lowercase: bool = typer.Option(False, "--lowercase", help="Lowercase the output"),
) -> None:
    """
    Normalize LaTeX formulas line by line.

    Examples:

      s2leval normalize formulas.txt                 # Canonical form per line

      s2leval normalize - --strip-presentation < in.txt
    """
    try:
        failures = normalize_command(input_file, output, strip_presentation, lowercase)
    except S2lError as e:
        _handle_s2l_error(e)
    except Exception as e:
        _handle_unexpected_error(e)
    if failures:
        raise typer.Exit(EXIT_DATA)


@app.command()
def validate(
    input_file: Path = typer.Argument(..., help="JSON-lines corpus", metavar="FILE"),
    config: Path | None = typer.Option(None, "--config", "-c", help="YAML filter thresholds"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write findings here"),
) -> None:
    """
    Check corpus records and list their violations.

    Exits with code 2 when any record has a problem.
    """
    try:
        problems = validate_command(input_file, output, config)
    except S2lError as e:
        _handle_s2l_error(e)
    except Exception as e:
        _handle_unexpected_error(e)
    if problems:
        raise typer.Exit(EXIT_DATA)


@app.command("filter")
def filter_cmd(
    input_file: Path = typer.Argument(..., help="JSON-lines corpus", metavar="FILE"),
    config: Path | None = typer.Option(None, "--config", "-c", help="YAML filter thresholds"),
    kept: Path | None = typer.Option(None, "--kept", help="Kept records (default: stdout)"),
    rejected: Path | None = typer.Option(
        None, "--rejected", help="Rejected records with a 'reason' field"
    ),
    dedup: bool = typer.Option(False, "--dedup", help="Also reject exact duplicates"),
) -> None:
    """
    Filter a corpus into kept and rejected streams.

    Examples:

      s2leval filter corpus.jsonl --kept clean.jsonl --rejected rejected.jsonl

      s2leval filter corpus.jsonl --config filter.yml --dedup > clean.jsonl
    """
    try:
        filter_command(input_file, config, kept, rejected, deduplicate=dedup)
    except S2lError as e:
        _handle_s2l_error(e)
    except Exception as e:
        _handle_unexpected_error(e)


@app.command("dedup")
def dedup_cmd(
    input_file: Path = typer.Argument(..., help="JSON-lines corpus", metavar="FILE"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write here instead of stdout"),
    family_cap: int | None = typer.Option(
        None, "--family-cap", min=1, help="Keep at most N near-duplicates per family"
    ),
) -> None:
    """Remove exact duplicates and tag near-duplicate families."""
    try:
        dedup_command(input_file, output, family_cap)
    except S2lError as e:
        _handle_s2l_error(e)
    except Exception as e:
        _handle_unexpected_error(e)


@app.command()
def stratify(
    input_file: Path = typer.Argument(..., help="JSON-lines corpus", metavar="FILE"),
    config: Path | None = typer.Option(None, "--config", "-c", help="YAML bucket edges"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write the JSON manifest here"),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or table"),
) -> None:
    """
    Histogram equation lengths and equations per sentence.

    Examples:

      s2leval stratify corpus.jsonl -o manifest.json

      s2leval stratify corpus.jsonl --format table
    """
    try:
        stratify_command(input_file, config, output, _report_format(fmt))
    except S2lError as e:
        _handle_s2l_error(e)
    except Exception as e:
        _handle_unexpected_error(e)


@app.command()
def evaluate(
    pred: Path = typer.Option(..., "--pred", help="Predictions (JSON lines or plain text)"),
    ref: Path = typer.Option(..., "--ref", help="References in the same format"),
    config: Path | None = typer.Option(None, "--config", "-c", help="YAML evaluation config"),
    mode: Mode | None = typer.Option(
        None, "--mode", help="equations or sentences", autocompletion=complete_mode
    ),
    strip_presentation: bool | None = typer.Option(
        None,
        "--strip-presentation/--keep-presentation",
        help="Strip layout-only commands on both sides",
        show_default=False,
    ),
    normalize_flag: bool | None = typer.Option(
        None,
        "--normalize/--no-normalize",
        help="Score normalized LaTeX (or dollar-stripped raw text)",
        show_default=False,
    ),
    separator: str | None = typer.Option(
        None, "--separator", help="Joiner between extracted equations"
    ),
    delimit: bool | None = typer.Option(
        None,
        "--delimit/--no-delimit",
        help="Wrap each extracted equation in $...$",
        show_default=False,
    ),
    metrics: str | None = typer.Option(
        None,
        "--metrics",
        help="Comma-separated metric names",
        autocompletion=complete_metric_name,
    ),
    aggregate: Aggregate | None = typer.Option(
        None, "--aggregate", help="micro or macro CER/WER averaging"
    ),
    workers: int | None = typer.Option(None, "--workers", min=1, help="Scoring processes"),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or table"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write the report here"),
) -> None:
    """
    Score predictions against references.

    Examples:

      s2leval evaluate --pred pred.jsonl --ref ref.jsonl

      s2leval evaluate --pred p.txt --ref r.txt --mode sentences --format table
    """
    try:
        eval_config = build_eval_config(
            config_path=config,
            mode=mode.value if mode else None,
            strip_presentation=strip_presentation,
            normalize=normalize_flag,
            separator=separator,
            delimit=delimit,
            metrics=metrics,
            aggregate=aggregate.value if aggregate else None,
            workers=workers,
        )
        evaluate_command(pred, ref, eval_config, _report_format(fmt), output)
    except S2lError as e:
        _handle_s2l_error(e)
    except Exception as e:
        _handle_unexpected_error(e)


# Version callback
def version_callback(show_version: bool) -> None:
    """Show version and exit."""
    if show_version:
        typer.echo(f"s2leval v{__version__}")
        raise typer.Exit()


# Main callback
@app.callback()
def main(
    version: bool = typer.Option(
        False,
        "--version",
        "-V",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit",
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log debug details"),
) -> None:
    """s2leval - Speech-to-LaTeX evaluation toolkit."""
    configure_logging(verbose=verbose, console=console)


# Error handlers
def _error_headline(error: S2lError) -> str:
    if isinstance(error, ParseError):
        return f"{error.kind} at byte {error.position}: {error.message}"
    return error.message


def _handle_s2l_error(error: S2lError) -> NoReturn:
    """Handle S2lError with formatted output."""
    console.print(f"\n[red]❌ Error:[/red] {escape(_error_headline(error))}\n")

    if error.suggestion:
        console.print("[bold]💡 Solution:[/bold]")
        console.print(f"   {escape(error.suggestion)}\n")

    if error.doc_link:
        console.print("[bold]📚 Documentation:[/bold]")
        console.print(f"   {error.doc_link}\n")

    # Specific error handling
    if isinstance(error, ConfigNotFoundError):
        console.print("[dim]Omit [cyan]--config[/cyan] to run with the defaults[/dim]\n")
    elif isinstance(error, InvalidConfigError):
        console.print("[dim]Run [cyan]s2leval evaluate --help[/cyan] to see valid options[/dim]\n")
    elif isinstance(error, RecordMismatchError):
        console.print("[dim]Predictions and references must pair one-to-one[/dim]\n")

    raise typer.Exit(EXIT_DATA if isinstance(error, DataError | ParseError) else EXIT_USAGE)


def _handle_unexpected_error(error: Exception) -> NoReturn:
    """Handle unexpected errors."""
    console.print(f"\n[red]❌ Unexpected Error:[/red] {escape(str(error))}\n")
    console.print("[dim]This might be a bug. Please report it with the command you ran.[/dim]\n")
    raise typer.Exit(EXIT_USAGE)


def run(argv: Sequence[str] | None = None) -> int:
    """
    Run the CLI and return its exit code instead of exiting.

    Usage errors (unknown flags, missing options) print the usage text on
    standard error and return 1.
    """
    args = list(argv) if argv is not None else sys.argv[1:]
    try:
        result = app(args=args, prog_name="s2leval", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        console.print("\n[yellow]Aborted[/yellow]")
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


def entrypoint() -> None:
    """Console-script entry point."""
    sys.exit(run())


if __name__ == "__main__":
    entrypoint()
