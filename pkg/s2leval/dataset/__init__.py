"""Corpus preparation: validation, filtering, deduplication and stratification."""

from s2leval.dataset.dedup import DedupRegistry, cap_families, dedup, dedup_key, family_key
from s2leval.dataset.filtering import (
    FilterDecision,
    FilterResult,
    Rejection,
    RejectReason,
    filter_corpus,
    iter_filter,
)
from s2leval.dataset.records import MalformedLine, SampleRecord, read_records
from s2leval.dataset.stratify import StratumReport, stratify
from s2leval.dataset.validation import Violation, validate_record

__all__ = [
    "DedupRegistry",
    "FilterDecision",
    "FilterResult",
    "MalformedLine",
    "RejectReason",
    "Rejection",
    "SampleRecord",
    "StratumReport",
    "Violation",
    "cap_families",
    "dedup",
    "dedup_key",
    "family_key",
    "filter_corpus",
    "iter_filter",
    "read_records",
    "stratify",
    "validate_record",
]
