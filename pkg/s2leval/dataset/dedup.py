"""
Exact and near-duplicate detection.

Exact duplicates share a normalized-LaTeX key and are removed. Near
duplicates (cos(alpha) ... cos(omega)) share a family key built from the
normalized formula with every single-letter identifier and Greek letter
replaced by a placeholder; they are kept and tagged so a sampler can cap
each family.
"""

import logging
from collections import Counter
from collections.abc import Callable, Iterable, Iterator

from s2leval.config.models import NormalizationConfig
from s2leval.dataset.records import SampleRecord
from s2leval.grammar import default_grammar
from s2leval.latex.parser import parse
from s2leval.latex.render import render
from s2leval.normalizer.pipeline import normalize, normalize_string, strip_dollar_delimiters
from s2leval.normalizer.rules import placeholder_identifiers
from s2leval.segmenter.segments import segment
from s2leval.utils.errors import ParseError
from s2leval.utils.hash import generate_key_hash

logger = logging.getLogger(__name__)


def canonical_formula(latex: str) -> str:
    """Canonically normalized formula; unparseable input falls back to its stripped text."""
    try:
        return normalize_string(latex, NormalizationConfig.canonical())
    except ParseError:
        return strip_dollar_delimiters(latex).strip()


def family_formula(latex: str) -> str:
    """
    Normalized formula with identifiers replaced by a placeholder.

    Example:
        >>> family_formula(r"\\cos(\\alpha)") == family_formula(r"\\cos(\\omega)")
        True
    """
    grammar = default_grammar()
    try:
        tree = normalize(parse(strip_dollar_delimiters(latex), grammar), grammar=grammar)
    except ParseError:
        return strip_dollar_delimiters(latex).strip()
    return render(placeholder_identifiers(tree, grammar))


def _record_key_text(record: SampleRecord, formula_key: Callable[[str], str]) -> str:
    if not record.is_sentence:
        return formula_key(record.latex)
    try:
        segments = segment(record.latex)
    except ParseError:
        return record.latex.strip()
    # Prose compares case- and spacing-insensitively
    return "".join(
        f"${formula_key(s.content)}$" if s.is_math else " ".join(s.content.split()).lower()
        for s in segments
    )


def dedup_key(record: SampleRecord) -> str:
    """Hash of the record's normalized LaTeX, scoped by format."""
    return generate_key_hash(f"{record.format}:{_record_key_text(record, canonical_formula)}")


def family_key(record: SampleRecord) -> str:
    """Hash of the record's placeholder form, scoped by format."""
    return generate_key_hash(f"{record.format}:{_record_key_text(record, family_formula)}")


class DedupRegistry:
    """
    Set of seen exact-duplicate keys.

    One registry is the single writer for a run; per-shard registries can be
    combined with merge() before a reconciliation pass.
    """

    def __init__(self, keys: Iterable[str] = ()) -> None:
        self._keys: set[str] = set(keys)

    def __contains__(self, key: object) -> bool:
        return key in self._keys

    def __len__(self) -> int:
        return len(self._keys)

    def register(self, key: str) -> bool:
        """Record a key; True when it was not seen before."""
        if key in self._keys:
            return False
        self._keys.add(key)
        return True

    def merge(self, other: "DedupRegistry") -> "DedupRegistry":
        """Union of two registries (neither input is modified)."""
        return DedupRegistry(self._keys | other._keys)

    def keys(self) -> frozenset[str]:
        return frozenset(self._keys)


def iter_dedup(
    records: Iterable[SampleRecord], registry: DedupRegistry | None = None
) -> Iterator[tuple[SampleRecord, bool]]:
    """
    Tag every record with its family key and flag exact duplicates.

    Yields:
        (record with family_key set, is_duplicate) in input order; the first
        occurrence of a key is never a duplicate
    """
    registry = registry if registry is not None else DedupRegistry()
    for record in records:
        tagged = record.model_copy(update={"family_key": family_key(record)})
        is_new = registry.register(dedup_key(record))
        if not is_new:
            logger.debug("duplicate record %s", record.id)
        yield tagged, not is_new


def dedup(
    records: Iterable[SampleRecord], registry: DedupRegistry | None = None
) -> Iterator[SampleRecord]:
    """
    Drop exact duplicates, keeping first occurrences with their family key.

    Args:
        records: Input stream
        registry: Shared key registry (a fresh one when omitted)
    """
    for record, is_duplicate in iter_dedup(records, registry):
        if not is_duplicate:
            yield record


def cap_families(records: Iterable[SampleRecord], cap: int) -> Iterator[SampleRecord]:
    """
    Keep at most `cap` records per family key, in input order.

    Records without a family key are always kept.
    """
    if cap < 1:
        raise ValueError(f"family cap must be at least 1, got {cap}")
    seen: Counter[str] = Counter()
    for record in records:
        if record.family_key is None:
            yield record
            continue
        seen[record.family_key] += 1
        if seen[record.family_key] <= cap:
            yield record
