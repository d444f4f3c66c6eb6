"""
Segmentation of mixed prose/math sentences.

Inline math is delimited by single dollars, with \\( \\) and \\[ \\] accepted
as aliases. Escaped dollars (\\$) are literal text. Every segment keeps its
delimiters and byte span so the source can be rebuilt exactly.
"""

import logging
import re
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

from s2leval.config.models import NormalizationConfig
from s2leval.normalizer.pipeline import normalize_string, strip_dollar_delimiters
from s2leval.utils.errors import ParseError, ParseErrorKind
from s2leval.utils.hash import utf8_length

logger = logging.getLogger(__name__)

_CLOSERS = {"$": "$", "\\(": "\\)", "\\[": "\\]"}

# A backslash escape is consumed whole so "\$" and "\\" never act as delimiters
_SCAN_RE = re.compile(r"\\[()\[\]]|\\.|\$", re.DOTALL)
_WHITESPACE_RUN_RE = re.compile(r"\s+")


class SegmentKind(StrEnum):
    """Prose or inline math."""

    TEXT = "text"
    MATH = "math"


@dataclass(frozen=True, slots=True)
class Segment:
    """One span of a sentence; span is the byte range of content in the source."""

    kind: SegmentKind
    content: str
    span: tuple[int, int]
    open_delimiter: str = ""
    close_delimiter: str = ""

    @property
    def is_math(self) -> bool:
        return self.kind == SegmentKind.MATH

    def source_text(self) -> str:
        """Content with its delimiters restored."""
        return self.open_delimiter + self.content + self.close_delimiter


def segment(sentence: str) -> list[Segment]:
    """
    Split a sentence into ordered Text and Math segments.

    Args:
        sentence: Prose with inline math

    Returns:
        Segments in source order; adjacent text is merged

    Raises:
        ParseError: UnbalancedDollar (or for \\( \\[ a mismatched closer) at
            the byte offset of the unpaired opening delimiter

    Example:
        >>> [s.content for s in segment("Hence, $c_{n-2}$ wins.")]
        ['Hence, ', 'c_{n-2}', ' wins.']
    """
    segments: list[Segment] = []
    text_start = 0
    open_match: re.Match[str] | None = None

    def byte_at(index: int) -> int:
        return utf8_length(sentence[:index])

    for match in _SCAN_RE.finditer(sentence):
        token = match.group(0)

        if open_match is None:
            if token not in _CLOSERS:
                continue
            if match.start() > text_start:
                content = sentence[text_start : match.start()]
                segments.append(
                    Segment(
                        SegmentKind.TEXT,
                        content,
                        (byte_at(text_start), byte_at(match.start())),
                    )
                )
            open_match = match
            continue

        if token == "$" and open_match.group(0) != "$":
            raise ParseError(
                ParseErrorKind.UNBALANCED_DOLLAR,
                byte_at(match.start()),
                f"'$' inside '{open_match.group(0)}' math",
                suggestion="Escape literal dollars as \\$",
            )
        if token == _CLOSERS[open_match.group(0)]:
            content = sentence[open_match.end() : match.start()]
            segments.append(
                Segment(
                    SegmentKind.MATH,
                    content,
                    (byte_at(open_match.end()), byte_at(match.start())),
                    open_delimiter=open_match.group(0),
                    close_delimiter=token,
                )
            )
            text_start = match.end()
            open_match = None

    if open_match is not None:
        raise ParseError(
            ParseErrorKind.UNBALANCED_DOLLAR,
            byte_at(open_match.start()),
            f"'{open_match.group(0)}' is never closed",
            suggestion="Close every inline formula or escape literal dollars as \\$",
        )

    if text_start < len(sentence):
        segments.append(
            Segment(
                SegmentKind.TEXT,
                sentence[text_start:],
                (byte_at(text_start), utf8_length(sentence)),
            )
        )
    return segments


def count_equations(sentence: str) -> int:
    """Number of inline formulas in a sentence."""
    return sum(1 for s in segment(sentence) if s.is_math)


def _normalize_formula(content: str, config: NormalizationConfig) -> str:
    try:
        return normalize_string(content, config)
    except ParseError as e:
        logger.debug("formula kept raw after parse failure: %s", e)
        raw = strip_dollar_delimiters(content)
        return raw.lower() if config.lowercase_output else raw


def equations_concat(
    segments: Sequence[Segment],
    config: NormalizationConfig | None = None,
    separator: str = " ",
    delimit: bool = False,
) -> str:
    """
    Join the normalized formulas of a sentence.

    Args:
        segments: Output of segment()
        config: Normalization applied to each formula; None keeps formulas as written
        separator: String placed between formulas
        delimit: Re-wrap each formula in $...$ before joining

    Returns:
        Concatenated formulas; text segments are ignored. A formula that
        does not parse is included as written (dollar-stripped).
    """
    formulas: list[str] = []
    for seg in segments:
        if not seg.is_math:
            continue
        formula = _normalize_formula(seg.content, config) if config else seg.content
        formulas.append(f"${formula}$" if delimit else formula)
    return separator.join(formulas)


def text_only(segments: Sequence[Segment]) -> str:
    """
    Join the prose of a sentence with whitespace runs collapsed.

    Example:
        >>> text_only(segment("a $x$ b"))
        'a b'
    """
    prose = "".join(s.content for s in segments if not s.is_math)
    return _WHITESPACE_RUN_RE.sub(" ", prose).strip()


def sentence_string(segments: Sequence[Segment], config: NormalizationConfig | None = None) -> str:
    """Rebuild the whole sentence with each formula normalized in place."""
    lowercase = config is not None and config.lowercase_output
    parts: list[str] = []
    for seg in segments:
        if seg.is_math:
            formula = _normalize_formula(seg.content, config) if config else seg.content
            parts.append(f"${formula}$")
        else:
            parts.append(seg.content.lower() if lowercase else seg.content)
    return "".join(parts)
