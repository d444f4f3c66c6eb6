"""
Pydantic models for evaluation results.
"""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from s2leval.metrics.scores import ScoreSet

SCOPE_ORDER: tuple[str, ...] = ("sentence", "text", "equation")


class EvalReport(BaseModel):
    """Corpus-level evaluation result."""

    model_config = ConfigDict(frozen=True)

    scopes: dict[str, ScoreSet] = Field(..., description="Aggregated scores per scope")
    compilation_rate: float = Field(
        ..., ge=0.0, le=1.0, description="Share of predicted formulas that compile"
    )
    record_count: int = Field(..., ge=0, description="Number of paired lines consumed")
    failed_parses: int = Field(
        default=0, ge=0, description="Formulas scored through the raw-string fallback"
    )
    degenerate_warnings: int = Field(
        default=0, ge=0, description="Scope pairs with an empty reference and non-empty prediction"
    )
    config_echo: dict[str, Any] = Field(
        default_factory=dict, description="Configuration the report was produced with"
    )

    def ordered_scopes(self) -> list[tuple[str, ScoreSet]]:
        """Scopes in sentence, text, equation order."""
        return [(name, self.scopes[name]) for name in SCOPE_ORDER if name in self.scopes]
