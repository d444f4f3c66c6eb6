"""
Corpus commands: validate, filter, dedup and stratify.

Machine-readable streams (JSON lines, JSON manifests) go to stdout or the
requested files; summaries go to stderr.
"""

from collections.abc import Iterator
from contextlib import ExitStack
from pathlib import Path
from typing import Literal

from rich.console import Console
from rich.table import Table

from s2leval.config.loader import load_filter_config, load_stratify_config
from s2leval.dataset.dedup import DedupRegistry, cap_families, iter_dedup
from s2leval.dataset.filtering import RejectReason, iter_filter
from s2leval.dataset.io import dump_json_line, output_stream
from s2leval.dataset.records import MalformedLine, SampleRecord, only_records, read_records
from s2leval.dataset.stratify import StratumReport, stratify
from s2leval.dataset.validation import validate_record

console = Console(stderr=True)


def _reason_table(title: str, counts: dict[str, int]) -> Table:
    table = Table(title=f"[bold]{title}[/bold]")
    table.add_column("Reason", style="cyan", no_wrap=True)
    table.add_column("Records", justify="right")
    for reason, count in counts.items():
        table.add_row(reason, str(count))
    return table


def validate_command(
    input_path: Path, output_path: Path | None = None, config_path: Path | None = None
) -> int:
    """
    Check every record and report its violations.

    Writes one {"id", "violations"} line per record with at least one
    violation, and one {"line", "error"} line per malformed input line.

    Args:
        input_path: JSON-lines corpus
        output_path: Destination for the findings (stdout when None)
        config_path: YAML FilterConfig supplying the text-only threshold (defaults when None)

    Returns:
        Number of records or lines with problems
    """
    config = load_filter_config(config_path)
    counts: dict[str, int] = {}
    checked = problems = 0

    with output_stream(output_path) as stream:
        for item in read_records(input_path):
            checked += 1
            if isinstance(item, MalformedLine):
                problems += 1
                reason = RejectReason.PARSE_INPUT.value
                counts[reason] = counts.get(reason, 0) + 1
                stream.write(dump_json_line({"line": item.line_number, "error": item.error}))
                stream.write("\n")
                continue

            violations = validate_record(item, config)
            if not violations:
                continue
            problems += 1
            for violation in violations:
                counts[violation.value] = counts.get(violation.value, 0) + 1
            stream.write(
                dump_json_line({"id": item.id, "violations": [v.value for v in violations]})
            )
            stream.write("\n")

    if problems:
        console.print(_reason_table("Violations", counts))
        console.print(f"\n[red]✗[/red] {problems} of {checked} record(s) have problems\n")
    else:
        console.print(f"[green]✓[/green] All {checked} record(s) are valid")
    return problems


def filter_command(
    input_path: Path,
    config_path: Path | None = None,
    kept_path: Path | None = None,
    rejected_path: Path | None = None,
    deduplicate: bool = False,
) -> tuple[int, int]:
    """
    Split a corpus into kept and rejected JSON-lines streams.

    Args:
        input_path: JSON-lines corpus
        config_path: YAML FilterConfig (defaults when None)
        kept_path: Destination for kept records (stdout when None)
        rejected_path: Destination for rejections with a "reason" field
                       (rejections are only counted when None)
        deduplicate: Also reject exact duplicates and tag family keys

    Returns:
        (kept, rejected) counts
    """
    config = load_filter_config(config_path)
    registry = DedupRegistry() if deduplicate else None
    counts: dict[str, int] = {}
    kept = rejected = 0

    with ExitStack() as stack:
        kept_stream = stack.enter_context(output_stream(kept_path))
        rejected_stream = (
            stack.enter_context(output_stream(rejected_path)) if rejected_path else None
        )
        for decision in iter_filter(read_records(input_path), config, registry):
            if decision.reason is None:
                kept += 1
                kept_stream.write(dump_json_line(decision.item.to_json()))
                kept_stream.write("\n")
                continue
            rejected += 1
            counts[decision.reason.value] = counts.get(decision.reason.value, 0) + 1
            if rejected_stream is not None:
                rejected_stream.write(
                    dump_json_line(decision.item.to_json(reason=decision.reason.value))
                )
                rejected_stream.write("\n")

    ordered = {r.value: counts[r.value] for r in RejectReason if r.value in counts}
    if ordered:
        console.print(_reason_table("Rejections", ordered))
    console.print(f"[green]✓[/green] Kept {kept}, rejected {rejected} of {kept + rejected}")
    return kept, rejected


def dedup_command(
    input_path: Path,
    output_path: Path | None = None,
    family_cap: int | None = None,
) -> tuple[int, int]:
    """
    Remove exact duplicates and tag near-duplicate families.

    Args:
        input_path: JSON-lines corpus
        output_path: Destination for kept records (stdout when None)
        family_cap: Keep at most this many records per family

    Returns:
        (kept, removed) counts
    """
    total = duplicates = 0

    def unique() -> Iterator[SampleRecord]:
        nonlocal total, duplicates
        for record, is_duplicate in iter_dedup(only_records(read_records(input_path))):
            total += 1
            if is_duplicate:
                duplicates += 1
            else:
                yield record

    stream_records = unique()
    if family_cap is not None:
        stream_records = cap_families(stream_records, family_cap)

    kept = 0
    with output_stream(output_path) as stream:
        for record in stream_records:
            kept += 1
            stream.write(dump_json_line(record.to_json()))
            stream.write("\n")

    console.print(
        f"[green]✓[/green] Kept {kept} of {total} record(s): "
        f"{duplicates} exact duplicate(s), {total - duplicates - kept} over the family cap"
    )
    return kept, total - kept


def _stratum_tables(report: StratumReport) -> list[Table]:
    lengths = Table(title="[bold]Equations by length[/bold]")
    lengths.add_column("Characters", style="cyan")
    lengths.add_column("Equations", justify="right")
    for label, count in report.by_equation_length.items():
        lengths.add_row(label, str(count))

    counts = Table(title="[bold]Sentences by equation count[/bold]")
    counts.add_column("Equations", style="cyan")
    counts.add_column("Sentences", justify="right")
    for label, count in report.by_equations_per_sentence.items():
        counts.add_row(label, str(count))
    return [lengths, counts]


def stratify_command(
    input_path: Path,
    config_path: Path | None = None,
    output_path: Path | None = None,
    fmt: Literal["json", "table"] = "json",
) -> StratumReport:
    """
    Build the stratification manifest of a corpus.

    Args:
        input_path: JSON-lines corpus
        config_path: YAML StratifyConfig (defaults when None)
        output_path: Destination for the JSON manifest; with fmt="json" and no
                     path the manifest goes to stdout
        fmt: "json" writes the manifest; "table" prints histograms to stdout

    Returns:
        The StratumReport
    """
    config = load_stratify_config(config_path)
    report = stratify(only_records(read_records(input_path)), config)

    if output_path is not None or fmt == "json":
        with output_stream(output_path) as stream:
            stream.write(report.model_dump_json(indent=2))
            stream.write("\n")

    if fmt == "table":
        table_console = Console(width=100)
        for table in _stratum_tables(report):
            table_console.print(table)
        table_console.print(
            f"Out of range: {report.out_of_range}  No equations: {report.no_equations}  "
            f"Unsegmentable: {report.unsegmentable}"
        )
    return report
