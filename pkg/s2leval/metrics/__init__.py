"""Evaluation metrics: edit-distance rates, n-gram scores and compile checks."""

from s2leval.metrics.chrf import chrf, chrf_statistics, chrfpp
from s2leval.metrics.compile import compile_check
from s2leval.metrics.edit import EditOps, cer, edit_ops, wer
from s2leval.metrics.ngram import bleu, rouge1, sacre_style_bleu, tokenize_international
from s2leval.metrics.scores import ScoreSet, score_pair
from s2leval.metrics.texbleu import texbleu_proxy

__all__ = [
    "EditOps",
    "ScoreSet",
    "bleu",
    "cer",
    "chrf",
    "chrf_statistics",
    "chrfpp",
    "compile_check",
    "edit_ops",
    "rouge1",
    "sacre_style_bleu",
    "score_pair",
    "texbleu_proxy",
    "tokenize_international",
    "wer",
]
