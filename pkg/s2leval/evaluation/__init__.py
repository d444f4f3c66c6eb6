"""Corpus evaluation: pairing, per-scope scoring and reports."""

from s2leval.evaluation.harness import evaluate, evaluate_pairs, pair_items, read_items
from s2leval.evaluation.models import EvalReport
from s2leval.evaluation.report import format_percent, render_json, render_table, report

__all__ = [
    "EvalReport",
    "evaluate",
    "evaluate_pairs",
    "format_percent",
    "pair_items",
    "read_items",
    "render_json",
    "render_table",
    "report",
]
