"""
Word n-gram metrics: ROUGE-1 and BLEU with whitespace or international tokenization.
"""

import functools
import logging
import math
from collections import Counter
from collections.abc import Callable, Sequence

from sacrebleu.tokenizers.tokenizer_intl import TokenizerV14International

from s2leval.config.models import BleuConfig

logger = logging.getLogger(__name__)

Tokens = Sequence[str]


@functools.lru_cache(maxsize=1)
def _intl_tokenizer() -> TokenizerV14International:
    return TokenizerV14International()


def tokenize_whitespace(text: str) -> list[str]:
    """Split on runs of whitespace."""
    return text.split()


def tokenize_international(text: str) -> list[str]:
    """
    sacrebleu's intl tokenization: punctuation and symbols become their own
    tokens, except punctuation between two digits (1,000 or 3.14).

    Example:
        >>> tokenize_international(r"\\frac{a}{b}")
        ['\\\\', 'frac', '{', 'a', '}', '{', 'b', '}']
    """
    return _intl_tokenizer()(text).split()


TOKENIZERS: dict[str, Callable[[str], list[str]]] = {
    "whitespace": tokenize_whitespace,
    "intl": tokenize_international,
}


def extract_ngrams(tokens: Tokens, n: int) -> Counter[tuple[str, ...]]:
    """Counts of the order-n n-grams of a token sequence."""
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge1(reference: str, hypothesis: str) -> float:
    """
    Clipped unigram recall over whitespace tokens.

    Example:
        >>> rouge1("a a b", "a c")
        0.3333333333333333
    """
    ref_counts = Counter(tokenize_whitespace(reference))
    hyp_counts = Counter(tokenize_whitespace(hypothesis))
    total = sum(ref_counts.values())
    if total == 0:
        if hyp_counts:
            logger.warning("degenerate reference: empty reference for ROUGE-1")
            return 0.0
        return 1.0
    overlap = sum((ref_counts & hyp_counts).values())
    return overlap / total


def _closest_ref_length(hyp_length: int, ref_lengths: list[int]) -> int:
    """Reference length closest to the hypothesis; ties go to the shorter one."""
    return min(ref_lengths, key=lambda length: (abs(length - hyp_length), length))


def bleu_tokens(
    references: Sequence[Tokens], hypothesis: Tokens, config: BleuConfig | None = None
) -> float:
    """
    BLEU over pre-tokenized input.

    Orders for which the hypothesis has no n-grams are dropped and the
    remaining weights renormalized.
    """
    config = config or BleuConfig()
    if not references:
        raise ValueError("bleu needs at least one reference")

    ref_lengths = [len(r) for r in references]
    hyp_length = len(hypothesis)
    if hyp_length == 0:
        return 1.0 if min(ref_lengths) == 0 else 0.0
    if max(ref_lengths) == 0:
        logger.warning("degenerate reference: all BLEU references are empty")
        return 0.0

    weights = config.effective_weights()
    log_terms: list[tuple[float, float]] = []
    for n in range(1, config.max_order + 1):
        hyp_ngrams = extract_ngrams(hypothesis, n)
        total = sum(hyp_ngrams.values())
        if total == 0:
            break

        max_ref_counts: Counter[tuple[str, ...]] = Counter()
        for ref in references:
            max_ref_counts |= extract_ngrams(ref, n)
        correct = sum((hyp_ngrams & max_ref_counts).values())

        if correct == 0:
            if config.smoothing == "none":
                return 0.0
            precision = 1.0 / (total + 1)
        else:
            precision = correct / total
        log_terms.append((weights[n - 1], math.log(precision)))

    weight_sum = sum(w for w, _ in log_terms)
    if weight_sum == 0:
        return 0.0
    log_precision = sum(w * lp for w, lp in log_terms) / weight_sum

    ref_length = _closest_ref_length(hyp_length, ref_lengths)
    brevity_penalty = 1.0 if hyp_length >= ref_length else math.exp(1 - ref_length / hyp_length)
    return brevity_penalty * math.exp(log_precision)


def bleu(references: Sequence[str], hypothesis: str, config: BleuConfig | None = None) -> float:
    """
    Sentence BLEU = BP * exp(sum w_n log p_n) with clipped n-gram precisions.

    Args:
        references: One or more reference strings
        hypothesis: Hypothesis string
        config: Order, weights, tokenizer and smoothing

    Returns:
        Score in [0, 1]

    Raises:
        ValueError: If references is empty

    Example:
        >>> bleu(["the cat"], "the the", BleuConfig(max_order=1))
        0.5
    """
    config = config or BleuConfig()
    tokenize = TOKENIZERS[config.tokenizer]
    return bleu_tokens([tokenize(r) for r in references], tokenize(hypothesis), config)


def sacre_style_bleu(references: Sequence[str], hypothesis: str) -> float:
    """BLEU over the international tokenization."""
    return bleu(references, hypothesis, BleuConfig.sacre_style())
