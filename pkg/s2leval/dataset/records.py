"""
Corpus record model and JSON-lines ingestion.

One SampleRecord per line, UTF-8, field names as in the model. Lines that are
not valid JSON or fail validation become MalformedLine items so a filter run
can route them to the rejected stream instead of aborting.
"""

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from s2leval.dataset.io import iter_lines
from s2leval.normalizer.pipeline import strip_dollar_delimiters

logger = logging.getLogger(__name__)

Language = Literal["eng", "rus"]
AnnotationType = Literal["human", "artificial"]
Source = Literal["mathbridge", "textteller", "generated", "proofpile", "other"]
RecordFormat = Literal["equations", "sentences"]


class SampleRecord(BaseModel):
    """One corpus item: a formula or a sentence with inline math, plus pronunciations."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    id: str = Field(..., description="Stable record identifier")
    language: Language = Field(..., description="Pronunciation language")
    annotation_type: AnnotationType = Field(..., description="Human or TTS-generated audio")
    source: Source = Field(..., description="Where the formula was collected")
    format: RecordFormat = Field(..., description="Bare equation or mixed sentence")
    latex: str = Field(..., description="Equation, or sentence with $-delimited math")
    pronunciations: tuple[str, ...] = Field(
        default=(), description="Spoken forms paired with the LaTeX"
    )
    audio_path: str | None = Field(default=None, description="Relative path of the recording")
    family_key: str | None = Field(
        default=None, description="Near-duplicate family assigned by dedup"
    )

    @field_validator("pronunciations", mode="before")
    @classmethod
    def validate_pronunciations(cls, v: Any) -> Any:
        """Accept a single string as a one-element list."""
        if isinstance(v, str):
            return (v,)
        return v

    @property
    def is_sentence(self) -> bool:
        return self.format == "sentences"

    def shortest_pronunciation(self) -> str | None:
        """Shortest non-blank pronunciation, or None."""
        spoken = [p.strip() for p in self.pronunciations if p.strip()]
        return min(spoken, key=len) if spoken else None

    def to_json(self, **extra: Any) -> dict[str, Any]:
        """
        JSON-safe dict for output streams.

        family_key is omitted until dedup assigns one; extra keys (such as a
        rejection reason) are appended after the record fields.
        """
        data = self.model_dump(mode="json")
        if data["family_key"] is None:
            del data["family_key"]
        data.update(extra)
        return data


@dataclass(frozen=True, slots=True)
class MalformedLine:
    """An input line that could not be read as a SampleRecord."""

    line_number: int
    raw: str
    error: str

    def to_json(self, **extra: Any) -> dict[str, Any]:
        return {"line": self.line_number, "raw": self.raw, "error": self.error, **extra}


def ingest(record: SampleRecord) -> SampleRecord:
    """Strip dollar delimiters from equations-format LaTeX."""
    if record.format != "equations":
        return record
    stripped = strip_dollar_delimiters(record.latex).strip()
    if stripped == record.latex:
        return record
    return record.model_copy(update={"latex": stripped})


def parse_record_lines(
    lines: Iterable[tuple[int, str]],
) -> Iterator[SampleRecord | MalformedLine]:
    """
    Parse numbered JSON lines into records.

    Blank lines are skipped. Each record passes through ingest().
    """
    for line_number, line in lines:
        if not line.strip():
            continue
        try:
            record = SampleRecord.model_validate_json(line)
        except ValidationError as e:
            first = e.errors()[0]
            location = ".".join(str(part) for part in first["loc"])
            error = f"{location}: {first['msg']}" if location else first["msg"]
            logger.debug("line %d is not a record: %s", line_number, error)
            yield MalformedLine(line_number, line, error)
            continue
        yield ingest(record)


def read_records(path: Path) -> Iterator[SampleRecord | MalformedLine]:
    """
    Stream records from a JSON-lines file.

    Raises:
        InputFileError: If the file cannot be opened or decoded
    """
    yield from parse_record_lines(iter_lines(path))


def only_records(items: Iterable[SampleRecord | MalformedLine]) -> Iterator[SampleRecord]:
    """Drop malformed lines, logging each one."""
    for item in items:
        if isinstance(item, MalformedLine):
            logger.warning("skipping malformed line %d: %s", item.line_number, item.error)
            continue
        yield item
