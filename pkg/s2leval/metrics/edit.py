"""
Levenshtein alignment and the CER/WER error rates built on it.

edit_ops() fills the full DP table and backtracks with a fixed preference
(substitution/match, then deletion, then insertion) so the S/D/I split is
deterministic.
"""

import logging
from array import array
from collections.abc import Hashable, Sequence
from dataclasses import dataclass

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class EditOps:
    """Substitution, deletion and insertion counts against a reference of length N."""

    substitutions: int = 0
    deletions: int = 0
    insertions: int = 0
    reference_length: int = 0

    @property
    def distance(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    @property
    def is_degenerate(self) -> bool:
        """Empty reference scored against a non-empty hypothesis."""
        return self.reference_length == 0 and self.insertions > 0

    def __add__(self, other: "EditOps") -> "EditOps":
        return EditOps(
            self.substitutions + other.substitutions,
            self.deletions + other.deletions,
            self.insertions + other.insertions,
            self.reference_length + other.reference_length,
        )

    def rate(self) -> float:
        """
        (S + D + I) / N.

        An empty reference yields the hypothesis length (distance / 1) and
        logs a degenerate-reference warning; two empty sequences yield 0.
        """
        if self.reference_length == 0:
            if self.insertions:
                logger.warning(
                    "degenerate reference: empty reference against %d hypothesis units",
                    self.insertions,
                )
            return float(self.insertions)
        return self.distance / self.reference_length


def edit_ops(reference: Sequence[Hashable], hypothesis: Sequence[Hashable]) -> EditOps:
    """
    Minimal unit-cost alignment of hypothesis against reference.

    Args:
        reference: Reference characters or tokens
        hypothesis: Hypothesis characters or tokens

    Returns:
        EditOps with counts from the canonical backtrace

    Example:
        >>> edit_ops("abc", "axc")
        EditOps(substitutions=1, deletions=0, insertions=0, reference_length=3)
    """
    n, m = len(reference), len(hypothesis)
    if n == 0 or m == 0:
        return EditOps(0, n, m, n)

    # table[i][j]: distance between reference[:i] and hypothesis[:j]
    table = [array("L", range(m + 1))]
    for i in range(1, n + 1):
        row = array("L", [i]) * (m + 1)
        prev = table[i - 1]
        ref_item = reference[i - 1]
        for j in range(1, m + 1):
            cost = 0 if ref_item == hypothesis[j - 1] else 1
            row[j] = min(prev[j - 1] + cost, prev[j] + 1, row[j - 1] + 1)
        table.append(row)

    substitutions = deletions = insertions = 0
    i, j = n, m
    while i > 0 or j > 0:
        current = table[i][j]
        if i > 0 and j > 0:
            cost = 0 if reference[i - 1] == hypothesis[j - 1] else 1
            if current == table[i - 1][j - 1] + cost:
                substitutions += cost
                i, j = i - 1, j - 1
                continue
        if i > 0 and current == table[i - 1][j] + 1:
            deletions += 1
            i -= 1
            continue
        insertions += 1
        j -= 1

    return EditOps(substitutions, deletions, insertions, n)


def char_ops(reference: str, hypothesis: str) -> EditOps:
    """Character-level edit operations."""
    return edit_ops(reference, hypothesis)


def word_ops(reference: str, hypothesis: str) -> EditOps:
    """Whitespace-token edit operations."""
    return edit_ops(reference.split(), hypothesis.split())


def cer(reference: str, hypothesis: str) -> float:
    """
    Character error rate (S + D + I) / N.

    Args:
        reference: Normalized (and lowercased) reference
        hypothesis: Normalized (and lowercased) hypothesis

    Returns:
        Error rate as a fraction; may exceed 1 when insertions dominate

    Example:
        >>> cer("abcd", "abed")
        0.25
    """
    return char_ops(reference, hypothesis).rate()


def wer(reference: str, hypothesis: str) -> float:
    """Word error rate over whitespace tokens."""
    return word_ops(reference, hypothesis).rate()
