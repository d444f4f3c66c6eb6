"""Command tables and alias data backing the LaTeX parser and normalizer."""

from s2leval.grammar.loader import GrammarLoader, default_grammar
from s2leval.grammar.models import ArgumentClass, Grammar

__all__ = ["ArgumentClass", "Grammar", "GrammarLoader", "default_grammar"]
