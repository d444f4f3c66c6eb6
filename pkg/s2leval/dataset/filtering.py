"""
Corpus filtering.

Every input item ends up in exactly one of the kept or rejected streams.
A rejection carries the first failing reason, checked in this order:
parse-input, record violations, too-short, too-long, length-ratio, and
duplicate when deduplication is enabled.
"""

import logging
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from enum import StrEnum

from s2leval.config.models import FilterConfig, NormalizationConfig
from s2leval.dataset.dedup import DedupRegistry, dedup_key, family_key
from s2leval.dataset.records import MalformedLine, SampleRecord
from s2leval.dataset.validation import Violation, validate_record
from s2leval.normalizer.pipeline import normalize_string
from s2leval.segmenter.segments import segment, sentence_string

logger = logging.getLogger(__name__)


class RejectReason(StrEnum):
    """Why an item left the kept stream."""

    PARSE_INPUT = "parse-input"
    EMPTY_FIELD = Violation.EMPTY_FIELD.value
    MISSING_PRONUNCIATION = Violation.MISSING_PRONUNCIATION.value
    INVALID_LATEX = Violation.INVALID_LATEX.value
    LATEX_CONTAINS_DOLLAR = Violation.LATEX_CONTAINS_DOLLAR.value
    PRONUNCIATION_CONTAINS_LATEX = Violation.PRONUNCIATION_CONTAINS_LATEX.value
    TEXT_ONLY = Violation.TEXT_ONLY.value
    TOO_SHORT = "too-short"
    TOO_LONG = "too-long"
    LENGTH_RATIO = "length-ratio"
    DUPLICATE = "duplicate"


@dataclass(frozen=True, slots=True)
class Rejection:
    """A rejected item and its first failing reason."""

    item: SampleRecord | MalformedLine
    reason: RejectReason

    def to_json(self) -> dict[str, object]:
        return self.item.to_json(reason=self.reason.value)


@dataclass(frozen=True, slots=True)
class FilterDecision:
    """Outcome for one input item; reason is None when the item is kept."""

    item: SampleRecord | MalformedLine
    reason: RejectReason | None = None

    @property
    def kept(self) -> bool:
        return self.reason is None


@dataclass
class FilterResult:
    """Collected kept and rejected streams."""

    kept: list[SampleRecord] = field(default_factory=list)
    rejected: list[Rejection] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.kept) + len(self.rejected)

    def reason_counts(self) -> dict[str, int]:
        """Rejections per reason, in reason order."""
        counts = Counter(r.reason for r in self.rejected)
        return {reason.value: counts[reason] for reason in RejectReason if counts[reason]}


def formula_lengths(record: SampleRecord) -> list[int]:
    """Character length of each normalized formula in a valid record."""
    canonical = NormalizationConfig.canonical()
    if not record.is_sentence:
        return [len(normalize_string(record.latex, canonical))]
    return [
        len(normalize_string(s.content, canonical)) for s in segment(record.latex) if s.is_math
    ]


def normalized_length(record: SampleRecord) -> int:
    """Length of the normalized equation, or of the whole normalized sentence."""
    canonical = NormalizationConfig.canonical()
    if not record.is_sentence:
        return len(normalize_string(record.latex, canonical))
    return len(sentence_string(segment(record.latex), canonical))


def check_record(record: SampleRecord, config: FilterConfig) -> RejectReason | None:
    """
    First failing filter check for a parsed record, or None to keep it.

    Example:
        A record with latex "x" is rejected as too-short under the defaults.
    """
    violations = validate_record(record, config)
    if violations:
        return RejectReason(violations[0].value)

    lengths = formula_lengths(record)
    if any(length < config.min_equation_chars for length in lengths):
        return RejectReason.TOO_SHORT
    if any(length > config.max_equation_chars for length in lengths):
        return RejectReason.TOO_LONG

    # validate_record guarantees a non-blank pronunciation here
    spoken = record.shortest_pronunciation() or ""
    if normalized_length(record) > config.max_latex_to_pronunciation_ratio * len(spoken):
        return RejectReason.LENGTH_RATIO
    return None


def iter_filter(
    items: Iterable[SampleRecord | MalformedLine],
    config: FilterConfig | None = None,
    registry: DedupRegistry | None = None,
) -> Iterator[FilterDecision]:
    """
    Decide every item in input order.

    Args:
        items: Records and malformed lines from read_records()
        config: Thresholds (defaults to FilterConfig())
        registry: When given, exact duplicates of earlier kept records are
                  rejected and kept records are tagged with their family key
    """
    config = config or FilterConfig()
    for item in items:
        if isinstance(item, MalformedLine):
            logger.info("line %d rejected: %s", item.line_number, RejectReason.PARSE_INPUT)
            yield FilterDecision(item, RejectReason.PARSE_INPUT)
            continue

        reason = check_record(item, config)
        if reason is None and registry is not None:
            if registry.register(dedup_key(item)):
                item = item.model_copy(update={"family_key": family_key(item)})
            else:
                reason = RejectReason.DUPLICATE

        if reason is not None:
            logger.info("record %s rejected: %s", item.id, reason)
        yield FilterDecision(item, reason)


def filter_corpus(
    items: Iterable[SampleRecord | MalformedLine],
    config: FilterConfig | None = None,
    registry: DedupRegistry | None = None,
) -> FilterResult:
    """
    Split a corpus into kept records and rejections.

    Returns:
        FilterResult; len(kept) + len(rejected) equals the number of items
    """
    result = FilterResult()
    for decision in iter_filter(items, config, registry):
        if decision.reason is None:
            assert isinstance(decision.item, SampleRecord)
            result.kept.append(decision.item)
        else:
            result.rejected.append(Rejection(decision.item, decision.reason))
    return result
