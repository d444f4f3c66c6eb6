"""
Line-oriented file IO shared by the dataset and evaluation commands.
"""

import json
import sys
from collections.abc import Iterable, Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any, TextIO

from s2leval.utils.errors import InputFileError

STDIN_PATH = Path("-")


def _read_stream(stream: TextIO, label: str) -> Iterator[tuple[int, str]]:
    line_number = 0
    try:
        for line_number, line in enumerate(stream, start=1):
            yield line_number, line.rstrip("\r\n")
    except UnicodeDecodeError as e:
        raise InputFileError(
            f"{label}: line {line_number + 1} is not valid UTF-8",
            suggestion="Re-encode the file as UTF-8",
        ) from e


def iter_lines(path: Path) -> Iterator[tuple[int, str]]:
    """
    Yield (line_number, text) pairs, 1-based, without line terminators.

    A path of "-" reads standard input.

    Raises:
        InputFileError: If the file is missing, unreadable or not UTF-8
    """
    if path == STDIN_PATH:
        yield from _read_stream(sys.stdin, "<stdin>")
        return

    try:
        handle = path.open(encoding="utf-8", newline="")
    except FileNotFoundError as e:
        raise InputFileError(
            f"Input file not found: {path}",
            suggestion="Check the path or run from the directory that contains the file",
        ) from e
    except OSError as e:
        raise InputFileError(f"Cannot read {path}: {e.strerror or e}") from e

    with handle:
        yield from _read_stream(handle, str(path))


def dump_json_line(row: dict[str, Any]) -> str:
    """Serialize one object as a compact, key-ordered-as-given JSON line."""
    return json.dumps(row, ensure_ascii=False)


def write_json_lines(rows: Iterable[dict[str, Any]], stream: TextIO) -> int:
    """
    Write objects as JSON lines.

    Returns:
        Number of lines written
    """
    count = 0
    for row in rows:
        stream.write(dump_json_line(row))
        stream.write("\n")
        count += 1
    return count


@contextmanager
def output_stream(path: Path | None) -> Iterator[TextIO]:
    """
    UTF-8 output file, or stdout for None or "-".

    Files are closed on exit; stdout is only flushed.

    Raises:
        InputFileError: If the file cannot be created
    """
    if path is None or path == STDIN_PATH:
        yield sys.stdout
        sys.stdout.flush()
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        handle = path.open("w", encoding="utf-8", newline="\n")
    except OSError as e:
        raise InputFileError(
            f"Cannot write {path}: {e.strerror or e}",
            suggestion="Check that the output directory is writable",
        ) from e
    with handle:
        yield handle
