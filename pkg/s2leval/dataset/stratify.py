"""
Corpus stratification histograms.

Equation lengths are normalized-LaTeX character counts bucketed over
half-open intervals [lo, hi); the last bucket is open above. Sentences are
also bucketed by how many inline formulas they contain.
"""

import logging
from collections.abc import Iterable

from pydantic import BaseModel, Field

from s2leval.config.models import StratifyConfig
from s2leval.dataset.dedup import canonical_formula
from s2leval.dataset.records import SampleRecord
from s2leval.segmenter.segments import segment
from s2leval.utils.errors import ParseError

logger = logging.getLogger(__name__)


def length_labels(edges: tuple[int, ...]) -> list[str]:
    """
    Bucket labels for the given edges.

    Example:
        >>> length_labels((3, 10, 20))
        ['3-10', '10-20', '20+']
    """
    labels = [f"{lo}-{hi}" for lo, hi in zip(edges, edges[1:], strict=False)]
    labels.append(f"{edges[-1]}+")
    return labels


def count_labels(max_count_bucket: int) -> list[str]:
    """Labels '1' .. str(max-1) followed by an open-ended f'{max}+'."""
    return [str(n) for n in range(1, max_count_bucket)] + [f"{max_count_bucket}+"]


def length_bucket(length: int, edges: tuple[int, ...]) -> str | None:
    """Label of the bucket holding `length`, or None below the first edge."""
    if length < edges[0]:
        return None
    labels = length_labels(edges)
    for label, hi in zip(labels, edges[1:], strict=False):
        if length < hi:
            return label
    return labels[-1]


def count_bucket(count: int, max_count_bucket: int) -> str | None:
    """Label for an equations-per-sentence count, or None for zero."""
    if count < 1:
        return None
    if count >= max_count_bucket:
        return f"{max_count_bucket}+"
    return str(count)


class StratumReport(BaseModel):
    """Histograms over equation length and equations per sentence."""

    by_equation_length: dict[str, int] = Field(
        default_factory=dict, description="Equation count per length bucket"
    )
    by_equations_per_sentence: dict[str, int] = Field(
        default_factory=dict, description="Sentence count per formula-count bucket"
    )
    out_of_range: int = Field(default=0, ge=0, description="Equations shorter than the first edge")
    no_equations: int = Field(default=0, ge=0, description="Sentences without inline math")
    unsegmentable: int = Field(default=0, ge=0, description="Sentences with unbalanced delimiters")
    max_equation_length: int = Field(default=0, ge=0, description="Longest equation seen")
    max_equations_per_sentence: int = Field(
        default=0, ge=0, description="Most formulas seen in one sentence"
    )
    record_count: int = Field(default=0, ge=0, description="Records folded into the report")

    @classmethod
    def empty(cls, config: StratifyConfig | None = None) -> "StratumReport":
        """Report with every bucket present at zero."""
        config = config or StratifyConfig()
        return cls(
            by_equation_length=dict.fromkeys(length_labels(config.length_edges), 0),
            by_equations_per_sentence=dict.fromkeys(count_labels(config.max_count_bucket), 0),
        )

    def merge(self, other: "StratumReport") -> "StratumReport":
        """Combine two reports built with the same configuration."""
        if list(self.by_equation_length) != list(other.by_equation_length) or list(
            self.by_equations_per_sentence
        ) != list(other.by_equations_per_sentence):
            raise ValueError("cannot merge reports with different bucket layouts")
        return StratumReport(
            by_equation_length={
                k: v + other.by_equation_length[k] for k, v in self.by_equation_length.items()
            },
            by_equations_per_sentence={
                k: v + other.by_equations_per_sentence[k]
                for k, v in self.by_equations_per_sentence.items()
            },
            out_of_range=self.out_of_range + other.out_of_range,
            no_equations=self.no_equations + other.no_equations,
            unsegmentable=self.unsegmentable + other.unsegmentable,
            max_equation_length=max(self.max_equation_length, other.max_equation_length),
            max_equations_per_sentence=max(
                self.max_equations_per_sentence, other.max_equations_per_sentence
            ),
            record_count=self.record_count + other.record_count,
        )


def _add_equation(report: StratumReport, length: int, edges: tuple[int, ...]) -> None:
    report.max_equation_length = max(report.max_equation_length, length)
    label = length_bucket(length, edges)
    if label is None:
        report.out_of_range += 1
    else:
        report.by_equation_length[label] += 1


def stratify(
    records: Iterable[SampleRecord], config: StratifyConfig | None = None
) -> StratumReport:
    """
    Fold records into a StratumReport.

    Args:
        records: Corpus records (equations and/or sentences)
        config: Bucket edges (defaults to StratifyConfig())

    Returns:
        Report where every equation lands in one length bucket (or
        out_of_range) and every segmentable sentence with math lands in one
        count bucket
    """
    config = config or StratifyConfig()
    report = StratumReport.empty(config)
    for record in records:
        report.record_count += 1
        if not record.is_sentence:
            _add_equation(report, len(canonical_formula(record.latex)), config.length_edges)
            continue

        try:
            formulas = [s.content for s in segment(record.latex) if s.is_math]
        except ParseError as e:
            logger.debug("record %s is unsegmentable: %s", record.id, e)
            report.unsegmentable += 1
            continue

        if not formulas:
            report.no_equations += 1
            continue
        report.max_equations_per_sentence = max(report.max_equations_per_sentence, len(formulas))
        label = count_bucket(len(formulas), config.max_count_bucket)
        if label is not None:
            report.by_equations_per_sentence[label] += 1
        for formula in formulas:
            _add_equation(report, len(canonical_formula(formula)), config.length_edges)

    logger.debug("stratified %d records", report.record_count)
    return report
