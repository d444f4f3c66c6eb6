"""Compile check: does a formula survive parse, normalize and render."""

import logging

from s2leval.config.models import NormalizationConfig
from s2leval.normalizer.pipeline import normalize_string
from s2leval.utils.errors import ParseError

logger = logging.getLogger(__name__)


def compile_check(latex: str) -> bool:
    """
    True when the formula normalizes under the canonical profile.

    Example:
        >>> compile_check(r"\\frac{n(n+1)}{2")
        False
    """
    try:
        normalize_string(latex, NormalizationConfig.canonical())
    except ParseError as e:
        logger.debug("compile failure: %s", e)
        return False
    return True
