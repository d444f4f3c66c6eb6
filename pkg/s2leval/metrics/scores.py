"""
ScoreSet and single-pair scoring across the metric suite.
"""

from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict, Field, model_validator

from s2leval.config.models import ALL_METRICS, BleuConfig, ChrfConfig, MetricName
from s2leval.metrics.chrf import chrf
from s2leval.metrics.edit import char_ops, word_ops
from s2leval.metrics.ngram import bleu, rouge1
from s2leval.metrics.texbleu import texbleu_proxy

ERROR_RATES: frozenset[str] = frozenset({"cer", "wer"})


class ScoreSet(BaseModel):
    """Metric values as fractions; unset metrics are None."""

    model_config = ConfigDict(frozen=True)

    cer: float | None = Field(default=None, ge=0.0, description="Character error rate")
    wer: float | None = Field(default=None, ge=0.0, description="Word error rate")
    rouge1: float | None = Field(default=None, ge=0.0, le=1.0, description="ROUGE-1 recall")
    bleu: float | None = Field(default=None, ge=0.0, le=1.0, description="Whitespace BLEU")
    sacre_style_bleu: float | None = Field(
        default=None, ge=0.0, le=1.0, description="BLEU over international tokenization"
    )
    chrf: float | None = Field(default=None, ge=0.0, le=1.0, description="chrF (order 6)")
    chrfpp: float | None = Field(default=None, ge=0.0, le=1.0, description="chrF++ (order 2)")
    texbleu_proxy: float | None = Field(
        default=None, ge=0.0, le=1.0, description="Token BLEU over normalized LaTeX"
    )

    @model_validator(mode="before")
    @classmethod
    def clamp_rounding(cls, data: object) -> object:
        """Snap similarity values a rounding error above 1 back to 1."""
        if isinstance(data, dict):
            for key, value in data.items():
                if key in ERROR_RATES or not isinstance(value, float):
                    continue
                if 1.0 < value < 1.0 + 1e-9:
                    data[key] = 1.0
        return data

    def values(self) -> dict[str, float]:
        """Only the metrics that were computed, in canonical order."""
        dumped = self.model_dump()
        return {name: dumped[name] for name in ALL_METRICS if dumped[name] is not None}


def score_pair(
    reference: str,
    hypothesis: str,
    metrics: Iterable[MetricName] = ALL_METRICS,
    bleu_config: BleuConfig | None = None,
    chrf_config: ChrfConfig | None = None,
    cased: tuple[str, str] | None = None,
) -> ScoreSet:
    """
    Score one reference/hypothesis pair.

    Args:
        reference: Reference after the metric pipeline (normalized, lowercased)
        hypothesis: Hypothesis after the metric pipeline
        metrics: Which metrics to compute
        bleu_config: Parameters for the 'bleu' metric
        chrf_config: Parameters for the 'chrf' metric
        cased: Case-preserved (reference, hypothesis) for texbleu_proxy;
               defaults to the pair itself

    Returns:
        ScoreSet with the requested metrics filled in
    """
    wanted = set(metrics)
    bleu_config = bleu_config or BleuConfig()
    chrf_config = chrf_config or ChrfConfig()
    values: dict[str, float] = {}

    if "cer" in wanted:
        values["cer"] = char_ops(reference, hypothesis).rate()
    if "wer" in wanted:
        values["wer"] = word_ops(reference, hypothesis).rate()
    if "rouge1" in wanted:
        values["rouge1"] = rouge1(reference, hypothesis)
    if "bleu" in wanted:
        values["bleu"] = bleu([reference], hypothesis, bleu_config)
    if "sacre_style_bleu" in wanted:
        sacre_config = bleu_config.model_copy(update={"tokenizer": "intl"})
        values["sacre_style_bleu"] = bleu([reference], hypothesis, sacre_config)
    if "chrf" in wanted:
        values["chrf"] = chrf(reference, hypothesis, chrf_config)
    if "chrfpp" in wanted:
        values["chrfpp"] = chrf(
            reference, hypothesis, ChrfConfig(max_n=2, beta=chrf_config.beta)
        )
    if "texbleu_proxy" in wanted:
        cased_reference, cased_hypothesis = cased or (reference, hypothesis)
        values["texbleu_proxy"] = texbleu_proxy(cased_reference, cased_hypothesis)

    return ScoreSet(**values)
