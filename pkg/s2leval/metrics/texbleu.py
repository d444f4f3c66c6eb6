"""
Token-level BLEU over normalized LaTeX.

This is a structural proxy: formulas are parsed, normalized and re-tokenized
so command names, symbols and braces become BLEU tokens. It is not the
embedding-based TeXBLEU metric and is reported under its own name.
"""

import logging
import re

from s2leval.config.models import BleuConfig, NormalizationConfig
from s2leval.latex.tokens import TokenKind, tokenize
from s2leval.metrics.ngram import bleu_tokens
from s2leval.normalizer.pipeline import normalize_string
from s2leval.utils.errors import ParseError

logger = logging.getLogger(__name__)

TEXBLEU_CONFIG = BleuConfig(max_order=4, smoothing="add-one")

# Fallback for unparseable input: commands, escapes, letter runs, numbers, single symbols
_FALLBACK_TOKEN_RE = re.compile(r"\\[A-Za-z]+|\\.|[A-Za-z]+|\d+|\S", re.DOTALL)


def latex_tokens(latex: str) -> list[str]:
    """
    Tokens of the normalized formula, case preserved.

    Unparseable input falls back to a character-class tokenizer.
    """
    try:
        canonical = normalize_string(latex, NormalizationConfig.canonical())
    except ParseError as e:
        logger.debug("texbleu_proxy fallback tokenization: %s", e)
        return _FALLBACK_TOKEN_RE.findall(latex)
    return [t.text for t in tokenize(canonical) if t.kind != TokenKind.WHITESPACE]


def texbleu_proxy(reference: str, hypothesis: str) -> float:
    """
    BLEU (order 4, add-one smoothing) over normalized LaTeX tokens.

    Example:
        >>> texbleu_proxy(r"\\frac{1}{2}", r"\\frac{1}{2}")
        1.0
    """
    ref_tokens = latex_tokens(reference)
    hyp_tokens = latex_tokens(hypothesis)
    if not ref_tokens and not hyp_tokens:
        return 1.0
    return bleu_tokens([ref_tokens], hyp_tokens, TEXBLEU_CONFIG)
