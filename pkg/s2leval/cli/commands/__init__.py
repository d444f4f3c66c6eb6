"""CLI command implementations for s2leval."""

from s2leval.cli.commands.dataset import (
    dedup_command,
    filter_command,
    stratify_command,
    validate_command,
)
from s2leval.cli.commands.evaluate import build_eval_config, evaluate_command
from s2leval.cli.commands.normalize import normalize_command

__all__ = [
    "build_eval_config",
    "dedup_command",
    "evaluate_command",
    "filter_command",
    "normalize_command",
    "stratify_command",
    "validate_command",
]
