"""
Autocompletion functions for the s2leval CLI.

These functions are called by Typer when users press TAB in their shell.
"""

from s2leval.config.models import ALL_METRICS


def complete_metric_name(incomplete: str) -> list[str]:
    """
    Autocomplete the last entry of a comma-separated --metrics value.

    Returns:
        Candidate values with the already-typed prefix kept
        (e.g. "cer,ch" -> ["cer,chrf", "cer,chrfpp"])
    """
    head, _, last = incomplete.rpartition(",")
    chosen = set(head.split(",")) if head else set()
    prefix = f"{head}," if head else ""
    return [
        f"{prefix}{name}" for name in ALL_METRICS if name.startswith(last) and name not in chosen
    ]


def complete_mode(incomplete: str) -> list[str]:
    """Autocomplete evaluation modes."""
    return [mode for mode in ("equations", "sentences") if mode.startswith(incomplete)]
