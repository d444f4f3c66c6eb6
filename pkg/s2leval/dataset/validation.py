"""
Record validation checks.

Violations are data, not errors: validate_record returns every failing
check and never raises.
"""

import re
from enum import StrEnum

from s2leval.config.models import FilterConfig
from s2leval.dataset.records import SampleRecord
from s2leval.latex.nodes import (
    Command,
    Fraction,
    MathNode,
    Radical,
    Symbol,
    TextBlock,
    is_space,
    walk,
)
from s2leval.latex.parser import try_parse
from s2leval.latex.tokens import TokenKind, tokenize
from s2leval.metrics.compile import compile_check
from s2leval.normalizer.pipeline import strip_dollar_delimiters
from s2leval.segmenter.segments import Segment, segment
from s2leval.utils.errors import ParseError

_LATEX_COMMAND_RE = re.compile(r"\\[A-Za-z]+")


class Violation(StrEnum):
    """Closed set of record checks, in reporting order."""

    EMPTY_FIELD = "empty-field"
    MISSING_PRONUNCIATION = "missing-pronunciation"
    INVALID_LATEX = "invalid-latex"
    LATEX_CONTAINS_DOLLAR = "latex-contains-dollar"
    PRONUNCIATION_CONTAINS_LATEX = "pronunciation-contains-latex"
    TEXT_ONLY = "text-only"


def text_atom_counts(node: MathNode) -> tuple[int, int]:
    """
    Count (text atoms, math atoms) in a tree.

    Each non-whitespace character of a text block counts as one text atom;
    every symbol, command, fraction and radical counts as one math atom.
    Explicit spacing does not count.
    """
    text_atoms = math_atoms = 0
    for current in walk(node):
        match current:
            case TextBlock(raw):
                text_atoms += sum(1 for char in raw if not char.isspace())
            case Symbol():
                if not is_space(current):
                    math_atoms += 1
            case Command() | Fraction() | Radical():
                math_atoms += 1
    return text_atoms, math_atoms


def text_atom_ratio(node: MathNode) -> float:
    """Share of atoms that sit inside \\text-like blocks; 0 for an empty tree."""
    text_atoms, math_atoms = text_atom_counts(node)
    total = text_atoms + math_atoms
    return text_atoms / total if total else 0.0


def _has_unescaped_dollar(latex: str) -> bool:
    return any(t.kind == TokenKind.DOLLAR for t in tokenize(latex))


def _formulas(record: SampleRecord) -> list[str] | None:
    """Formulas of a record; None when a sentence cannot be segmented."""
    if not record.is_sentence:
        return [record.latex]
    try:
        segments: list[Segment] = segment(record.latex)
    except ParseError:
        return None
    return [s.content for s in segments if s.is_math]


def _is_text_only(formulas: list[str], threshold: float) -> bool:
    if not formulas:
        # A sentence with no inline math is prose, not a formula entry
        return True
    text_atoms = math_atoms = 0
    for formula in formulas:
        tree = try_parse(strip_dollar_delimiters(formula))
        if tree is None:
            return False
        text_count, math_count = text_atom_counts(tree)
        text_atoms += text_count
        math_atoms += math_count
    total = text_atoms + math_atoms
    return total > 0 and text_atoms / total >= threshold


def validate_record(record: SampleRecord, config: FilterConfig | None = None) -> list[Violation]:
    """
    Run every check on a record.

    Args:
        record: Record to check
        config: Supplies the text-only threshold (defaults to FilterConfig())

    Returns:
        Violations in enum order; empty for a clean record

    A record with latex "\\frac{1}{2" yields [Violation.INVALID_LATEX].
    """
    config = config or FilterConfig()
    found: set[Violation] = set()

    if not record.id.strip() or not record.latex.strip():
        found.add(Violation.EMPTY_FIELD)
    if record.shortest_pronunciation() is None:
        found.add(Violation.MISSING_PRONUNCIATION)
    if any(_LATEX_COMMAND_RE.search(p) for p in record.pronunciations):
        found.add(Violation.PRONUNCIATION_CONTAINS_LATEX)

    if record.latex.strip():
        if not record.is_sentence and _has_unescaped_dollar(record.latex):
            found.add(Violation.LATEX_CONTAINS_DOLLAR)

        formulas = _formulas(record)
        if formulas is None or not all(compile_check(f) for f in formulas):
            found.add(Violation.INVALID_LATEX)
        elif _is_text_only(formulas, config.text_only_command_ratio):
            found.add(Violation.TEXT_ONLY)

    return [v for v in Violation if v in found]
