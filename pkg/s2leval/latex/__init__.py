"""Tokenize, parse and render the supported LaTeX math subset."""

from s2leval.latex.nodes import (
    Command,
    Environment,
    Fraction,
    Group,
    MathNode,
    Radical,
    Row,
    Script,
    Symbol,
    TextBlock,
)
from s2leval.latex.parser import parse, try_parse
from s2leval.latex.render import render
from s2leval.latex.tokens import Token, TokenKind, tokenize

__all__ = [
    "Command",
    "Environment",
    "Fraction",
    "Group",
    "MathNode",
    "Radical",
    "Row",
    "Script",
    "Symbol",
    "TextBlock",
    "Token",
    "TokenKind",
    "parse",
    "render",
    "tokenize",
    "try_parse",
]
