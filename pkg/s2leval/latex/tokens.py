"""
Lossless tokenizer for LaTeX math.

Every character of the input ends up in exactly one token, so joining the
token texts reproduces the source. Unknown characters become other-symbol
tokens; tokenization never fails.
"""

import re
import string
from dataclasses import dataclass
from enum import StrEnum

from s2leval.utils.hash import utf8_length


class TokenKind(StrEnum):
    """Lexical category of a token."""

    COMMAND = "command"
    LETTER = "letter"
    DIGIT = "digit"
    OPEN_BRACE = "open-brace"
    CLOSE_BRACE = "close-brace"
    SUPERSCRIPT_MARKER = "superscript-marker"
    SUBSCRIPT_MARKER = "subscript-marker"
    PUNCTUATION = "punctuation"
    WHITESPACE = "whitespace"
    DOLLAR = "dollar"
    OTHER_SYMBOL = "other-symbol"


@dataclass(frozen=True, slots=True)
class Token:
    """One lexical unit with its UTF-8 byte offset into the source."""

    kind: TokenKind
    text: str
    position: int


_SINGLE_CHAR_KINDS = {
    "{": TokenKind.OPEN_BRACE,
    "}": TokenKind.CLOSE_BRACE,
    "^": TokenKind.SUPERSCRIPT_MARKER,
    "_": TokenKind.SUBSCRIPT_MARKER,
    "$": TokenKind.DOLLAR,
}

_PUNCTUATION = frozenset(string.punctuation) - set("{}^_$\\")

# Backslash + letter run, or backslash + any single character (including newline)
_COMMAND_RE = re.compile(r"\\(?:[A-Za-z]+|.)", re.DOTALL)
_WHITESPACE_RE = re.compile(r"\s+")


def _classify(char: str) -> TokenKind:
    if char in _SINGLE_CHAR_KINDS:
        return _SINGLE_CHAR_KINDS[char]
    if "0" <= char <= "9":
        return TokenKind.DIGIT
    if char.isalpha():
        return TokenKind.LETTER
    if char in _PUNCTUATION:
        return TokenKind.PUNCTUATION
    return TokenKind.OTHER_SYMBOL


def tokenize(source: str) -> list[Token]:
    """
    Split LaTeX source into tokens.

    Args:
        source: LaTeX math text (any string)

    Returns:
        Token list whose texts concatenate back to source

    Example:
        >>> [t.text for t in tokenize(r"\\frac{n}{2}")]
        ['\\\\frac', '{', 'n', '}', '{', '2', '}']
    """
    tokens: list[Token] = []
    index = 0
    offset = 0
    length = len(source)

    while index < length:
        char = source[index]
        if char == "\\":
            match = _COMMAND_RE.match(source, index)
            if match is None:
                # Lone trailing backslash
                text, kind = char, TokenKind.OTHER_SYMBOL
            else:
                text, kind = match.group(0), TokenKind.COMMAND
        elif char.isspace():
            match = _WHITESPACE_RE.match(source, index)
            text = match.group(0) if match else char
            kind = TokenKind.WHITESPACE
        else:
            text, kind = char, _classify(char)

        tokens.append(Token(kind, text, offset))
        index += len(text)
        offset += utf8_length(text)

    return tokens
