"""
Normalize command.

Reads one LaTeX formula per line and writes its canonical form per line.
"""

import logging
from pathlib import Path

from rich.console import Console

from s2leval.config.models import NormalizationConfig
from s2leval.dataset.io import iter_lines, output_stream
from s2leval.normalizer.pipeline import normalize_string
from s2leval.utils.errors import ParseError

logger = logging.getLogger(__name__)

console = Console(stderr=True)


def normalize_command(
    input_path: Path,
    output_path: Path | None = None,
    strip_presentation: bool = False,
    lowercase: bool = False,
) -> int:
    """
    Normalize a file of formulas line by line.

    Lines that fail to parse are written unchanged and reported.

    Args:
        input_path: One formula per line ("-" for stdin)
        output_path: Destination file (stdout when None)
        strip_presentation: Also drop layout-only commands
        lowercase: Lowercase the output

    Returns:
        Number of lines that failed to parse

    Raises:
        InputFileError: If the input cannot be read
    """
    config = NormalizationConfig(
        strip_presentation=strip_presentation, lowercase_output=lowercase
    )
    failures = 0
    with output_stream(output_path) as stream:
        for line_number, line in iter_lines(input_path):
            try:
                stream.write(normalize_string(line, config) if line.strip() else line)
            except ParseError as e:
                failures += 1
                logger.warning(
                    "line %d: %s at byte %d: %s", line_number, e.kind, e.position, e.message
                )
                stream.write(line)
            stream.write("\n")

    if failures:
        console.print(f"[yellow]⚠[/yellow] {failures} line(s) did not parse and were kept as-is")
    return failures
