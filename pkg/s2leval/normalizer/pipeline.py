"""
Normalization entry points.

normalize() applies the enabled rewrite rules until the tree stops changing;
normalize_string() wraps it with dollar stripping, parsing, rendering and
optional lowercasing.
"""

import logging
from functools import lru_cache

from s2leval.config.models import NormalizationConfig
from s2leval.grammar import Grammar, default_grammar
from s2leval.latex.nodes import MathNode
from s2leval.latex.parser import parse
from s2leval.latex.render import render
from s2leval.latex.tokens import TokenKind, tokenize
from s2leval.normalizer.rules import normalize_pass, strip_presentation_tree

logger = logging.getLogger(__name__)

MAX_PASSES = 8


def normalize(
    node: MathNode,
    config: NormalizationConfig | None = None,
    grammar: Grammar | None = None,
) -> MathNode:
    """
    Rewrite an AST into canonical form.

    Args:
        node: Parsed formula
        config: Enabled rules (defaults to the canonical profile)
        grammar: Command tables (defaults to the packaged grammar)

    Returns:
        Normalized tree; normalizing it again returns an equal tree
    """
    config = config or NormalizationConfig.canonical()
    grammar = grammar or default_grammar()

    current = node
    for _ in range(MAX_PASSES):
        candidate = current
        if config.strip_presentation:
            candidate = strip_presentation_tree(candidate, grammar)
        candidate = normalize_pass(candidate, config, grammar)
        if candidate == current:
            return candidate
        current = candidate

    logger.warning("normalization did not reach a fixpoint after %d passes", MAX_PASSES)
    return current


def strip_presentation(node: MathNode, grammar: Grammar | None = None) -> MathNode:
    """
    Remove layout-only commands, then re-normalize.

    Drops \\displaystyle-style switches, \\left/\\right/\\big sizing and thin
    spacing; \\operatorname{X} becomes \\X for built-in operators and
    \\text{X} otherwise.
    """
    return normalize(node, NormalizationConfig.presentation(), grammar)


def strip_dollar_delimiters(latex: str) -> str:
    """Remove unescaped '$' characters; '\\$' is kept."""
    return "".join(t.text for t in tokenize(latex) if t.kind != TokenKind.DOLLAR)


@lru_cache(maxsize=8192)
def _normalize_string(latex: str, config: NormalizationConfig, grammar: Grammar) -> str:
    source = strip_dollar_delimiters(latex) if config.strip_dollars else latex
    rendered = render(normalize(parse(source, grammar), config, grammar))
    return rendered.lower() if config.lowercase_output else rendered


def normalize_string(
    latex: str,
    config: NormalizationConfig | None = None,
    grammar: Grammar | None = None,
) -> str:
    """
    Normalize LaTeX source text.

    Args:
        latex: Formula, optionally wrapped in dollar delimiters
        config: Normalization profile (defaults to the canonical profile)
        grammar: Command tables (defaults to the packaged grammar)

    Returns:
        Canonical rendering (lowercased when configured)

    Raises:
        ParseError: If the formula does not parse

    Example:
        >>> normalize_string(r"\\sum_i^n i")
        '\\\\sum_{i}^{n}i'
    """
    return _normalize_string(
        latex, config or NormalizationConfig.canonical(), grammar or default_grammar()
    )
