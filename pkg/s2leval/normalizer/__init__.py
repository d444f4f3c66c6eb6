"""Canonical LaTeX normalization."""

from s2leval.normalizer.pipeline import (
    normalize,
    normalize_string,
    strip_dollar_delimiters,
    strip_presentation,
)

__all__ = ["normalize", "normalize_string", "strip_dollar_delimiters", "strip_presentation"]
