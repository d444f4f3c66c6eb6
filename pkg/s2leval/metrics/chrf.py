"""
Character n-gram F-score (chrF, and chrF++ as its order-2 variant).

Scores come from sacrebleu's CHRF with word n-grams off and no epsilon
smoothing, rescaled from 0-100 to [0, 1].
"""

import functools

from sacrebleu.metrics import CHRF
from sacrebleu.metrics.helpers import extract_all_char_ngrams

from s2leval.config.models import ChrfConfig


@functools.lru_cache(maxsize=16)
def _chrf_metric(max_n: int, beta: float) -> CHRF:
    return CHRF(char_order=max_n, word_order=0, beta=beta, eps_smoothing=False)


def chrf_statistics(reference: str, hypothesis: str, max_n: int = 6) -> tuple[float, float]:
    """
    Average character n-gram precision and recall over orders 1..max_n.

    Whitespace is removed first; orders where either side has no n-grams
    are skipped.

    Returns:
        (chrP, chrR); (0, 0) when no order applies
    """
    hyp_orders = extract_all_char_ngrams(hypothesis, max_n)
    ref_orders = extract_all_char_ngrams(reference, max_n)

    precision = recall = 0.0
    effective_order = 0
    for hyp_ngrams, ref_ngrams in zip(hyp_orders, ref_orders, strict=True):
        hyp_total = sum(hyp_ngrams.values())
        ref_total = sum(ref_ngrams.values())
        if hyp_total == 0 or ref_total == 0:
            continue
        common = sum((hyp_ngrams & ref_ngrams).values())
        precision += common / hyp_total
        recall += common / ref_total
        effective_order += 1

    if effective_order == 0:
        return 0.0, 0.0
    return precision / effective_order, recall / effective_order


def chrf(reference: str, hypothesis: str, config: ChrfConfig | None = None) -> float:
    """
    chrF_beta over whitespace-free character n-grams.

    Args:
        reference: Reference string
        hypothesis: Hypothesis string
        config: max_n and beta (chrF defaults: 6 and 2)

    Returns:
        Score in [0, 1]; 1.0 when both are empty, 0.0 when exactly one is

    Example:
        >>> round(chrf("abc", "abd", ChrfConfig(max_n=1)), 4)
        0.6667
    """
    config = config or ChrfConfig()
    ref_empty = not reference.split()
    hyp_empty = not hypothesis.split()
    if ref_empty and hyp_empty:
        return 1.0
    if ref_empty or hyp_empty:
        return 0.0
    score = _chrf_metric(config.max_n, config.beta).sentence_score(hypothesis, [reference])
    return min(max(score.score / 100, 0.0), 1.0)


def chrfpp(reference: str, hypothesis: str, beta: float = 2.0) -> float:
    """chrF with character order 2."""
    return chrf(reference, hypothesis, ChrfConfig(max_n=2, beta=beta))
