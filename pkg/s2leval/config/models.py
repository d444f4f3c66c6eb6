"""
Pydantic models for s2leval configuration.

These models provide type-safe configuration with validation:
- NormalizationConfig: LaTeX rewrite flags and the named profiles
- BleuConfig: BLEU order, weights, tokenizer and smoothing
- ChrfConfig: chrF character order and beta
- FilterConfig: corpus filtering thresholds
- StratifyConfig: histogram bucket edges
- EvalConfig: evaluation protocol (mode, scopes, metrics, aggregation)
"""

import math
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MetricName = Literal[
    "cer",
    "wer",
    "rouge1",
    "bleu",
    "sacre_style_bleu",
    "chrf",
    "chrfpp",
    "texbleu_proxy",
]

ALL_METRICS: tuple[MetricName, ...] = (
    "cer",
    "wer",
    "rouge1",
    "bleu",
    "sacre_style_bleu",
    "chrf",
    "chrfpp",
    "texbleu_proxy",
)


class NormalizationConfig(BaseModel):
    """Flags controlling which rewrite rules the normalizer applies."""

    model_config = ConfigDict(frozen=True)

    brace_scripts: bool = Field(default=True, description="Wrap every script argument in braces")
    collapse_spaces: bool = Field(
        default=True, description="Collapse runs of explicit '\\ ' spacing symbols"
    )
    relation_spacing: bool = Field(
        default=True,
        description="Insert '\\ ' around \\sim-like relations (requires collapse_spaces)",
    )
    rewrite_underset_overset: bool = Field(
        default=True, description="Fold \\underset/\\overset over big operators into scripts"
    )
    unify_operator_names: bool = Field(
        default=True, description="Map aliases (\\dfrac, \\le, ...) to canonical commands"
    )
    strip_dollars: bool = Field(default=True, description="Remove $ delimiters before parsing")
    strip_presentation: bool = Field(
        default=False, description="Remove layout-only commands (\\displaystyle, \\left, ...)"
    )
    lowercase_output: bool = Field(default=False, description="Lowercase the rendered string")

    @classmethod
    def canonical(cls) -> "NormalizationConfig":
        """Default canonicalization profile."""
        return cls()

    @classmethod
    def metric(cls) -> "NormalizationConfig":
        """Canonical profile plus lowercasing, used before computing CER-family metrics."""
        return cls(lowercase_output=True)

    @classmethod
    def presentation(cls) -> "NormalizationConfig":
        """Canonical profile plus presentation stripping, for cross-system comparison."""
        return cls(strip_presentation=True)


class BleuConfig(BaseModel):
    """BLEU parameters."""

    model_config = ConfigDict(frozen=True)

    max_order: int = Field(default=4, ge=1, le=8, description="Highest n-gram order")
    weights: tuple[float, ...] | None = Field(
        default=None, description="Per-order weights (uniform when omitted)"
    )
    tokenizer: Literal["whitespace", "intl"] = Field(
        default="whitespace", description="Whitespace split or fixed international tokenization"
    )
    smoothing: Literal["none", "add-one"] = Field(
        default="none", description="Smoothing applied to orders with zero matches"
    )

    @field_validator("weights")
    @classmethod
    def validate_weight_range(cls, v: tuple[float, ...] | None) -> tuple[float, ...] | None:
        """Ensure each weight lies in [0, 1]."""
        if v is None:
            return v
        for w in v:
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"weights must lie in [0, 1], got {w}")
        return v

    @model_validator(mode="after")
    def validate_weights_match_order(self) -> "BleuConfig":
        """Ensure weights has one entry per order and sums to 1."""
        if self.weights is None:
            return self
        if len(self.weights) != self.max_order:
            raise ValueError(
                f"weights has {len(self.weights)} entries but max_order is {self.max_order}"
            )
        if not math.isclose(sum(self.weights), 1.0, abs_tol=1e-9):
            raise ValueError(f"weights must sum to 1, got {sum(self.weights)}")
        return self

    def effective_weights(self) -> tuple[float, ...]:
        """Configured weights, or uniform weights over max_order."""
        if self.weights is not None:
            return self.weights
        return tuple(1.0 / self.max_order for _ in range(self.max_order))

    @classmethod
    def sacre_style(cls) -> "BleuConfig":
        """BLEU over the fixed international tokenization."""
        return cls(tokenizer="intl")


class ChrfConfig(BaseModel):
    """chrF parameters."""

    model_config = ConfigDict(frozen=True)

    max_n: int = Field(default=6, ge=1, description="Highest character n-gram order")
    beta: float = Field(default=2.0, gt=0.0, description="Recall weight")

    @classmethod
    def plus_plus(cls) -> "ChrfConfig":
        """Character-order-2 variant reported as chrF++."""
        return cls(max_n=2)


class FilterConfig(BaseModel):
    """Thresholds for corpus filtering."""

    model_config = ConfigDict(frozen=True)

    min_equation_chars: int = Field(default=3, ge=0, description="Shortest allowed formula")
    max_equation_chars: int = Field(default=230, ge=1, description="Longest allowed formula")
    text_only_command_ratio: float = Field(
        default=0.8, gt=0.0, le=1.0, description="Share of atoms inside \\text marking text-only"
    )
    max_latex_to_pronunciation_ratio: float = Field(
        default=2.0, gt=0.0, description="Max normalized LaTeX length over pronunciation length"
    )

    @model_validator(mode="after")
    def validate_bounds(self) -> "FilterConfig":
        """Ensure the length window is non-empty."""
        if self.min_equation_chars >= self.max_equation_chars:
            raise ValueError(
                f"min_equation_chars ({self.min_equation_chars}) must be less than "
                f"max_equation_chars ({self.max_equation_chars})"
            )
        return self


class StratifyConfig(BaseModel):
    """Histogram bucket edges for corpus stratification."""

    model_config = ConfigDict(frozen=True)

    length_edges: tuple[int, ...] = Field(
        default=(3, 10, 20, 30, 50),
        description="Half-open equation-length bucket edges; the last bucket is open above",
    )
    max_count_bucket: int = Field(
        default=6, ge=1, description="Equation counts at or above this share one bucket"
    )

    @field_validator("length_edges")
    @classmethod
    def validate_edges(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """Ensure edges are non-negative and strictly increasing."""
        if len(v) < 1:
            raise ValueError("length_edges needs at least one edge")
        if v[0] < 0:
            raise ValueError("length_edges must be non-negative")
        for lo, hi in zip(v, v[1:], strict=False):
            if hi <= lo:
                raise ValueError(f"length_edges must be strictly increasing, got {list(v)}")
        return v


class EvalConfig(BaseModel):
    """Evaluation protocol configuration."""

    model_config = ConfigDict(frozen=True)

    mode: Literal["equations", "sentences"] = Field(
        default="equations", description="Score bare formulas or mixed sentences"
    )
    normalization: NormalizationConfig = Field(
        default_factory=NormalizationConfig.metric,
        description="Normalization applied to both sides before scoring",
    )
    normalize: bool = Field(default=True, description="Disable to score dollar-stripped raw text")
    metrics: tuple[MetricName, ...] = Field(
        default=ALL_METRICS, description="Metrics to compute"
    )
    strip_presentation_both_sides: bool = Field(
        default=False, description="Strip layout-only commands on predictions and references"
    )
    equation_separator: str = Field(
        default=" ", description="Joiner between extracted formulas in the equation scope"
    )
    delimit_equations: bool = Field(
        default=False, description="Re-wrap each extracted formula in $...$ before joining"
    )
    aggregate: Literal["micro", "macro"] = Field(
        default="micro", description="Corpus aggregation for CER/WER"
    )
    workers: int = Field(default=1, ge=1, description="Process-pool size for per-record scoring")
    bleu: BleuConfig = Field(default_factory=BleuConfig, description="BLEU parameters")
    chrf: ChrfConfig = Field(default_factory=ChrfConfig, description="chrF parameters")

    @field_validator("metrics")
    @classmethod
    def validate_metrics_not_empty(cls, v: tuple[MetricName, ...]) -> tuple[MetricName, ...]:
        """Ensure at least one metric, deduplicated in canonical order."""
        if not v:
            raise ValueError("at least one metric must be selected")
        return tuple(m for m in ALL_METRICS if m in v)

    def effective_normalization(self) -> NormalizationConfig:
        """Normalization with presentation stripping folded in when requested."""
        if self.strip_presentation_both_sides and not self.normalization.strip_presentation:
            return self.normalization.model_copy(update={"strip_presentation": True})
        return self.normalization

    def scopes(self) -> tuple[str, ...]:
        """Scopes reported for the configured mode."""
        if self.mode == "sentences":
            return ("sentence", "text", "equation")
        return ("equation",)

    def echo(self) -> dict[str, Any]:
        """JSON-safe snapshot of the configuration for report output."""
        return self.model_dump(mode="json")
