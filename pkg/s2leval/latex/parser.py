"""
Recursive-descent parser for the supported LaTeX math subset.

Commands listed in the grammar's arity table consume their arguments;
every other command is an atomic Symbol. Whitespace is dropped except inside
text commands, and the explicit "\\ " command survives as a Symbol.
"""

import logging

from s2leval.grammar import ArgumentClass, Grammar, default_grammar
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
from s2leval.latex.tokens import Token, TokenKind, tokenize
from s2leval.utils.errors import ParseError, ParseErrorKind
from s2leval.utils.hash import utf8_length

logger = logging.getLogger(__name__)

MAX_DEPTH = 100

_ARGUMENT_STOPS = frozenset({TokenKind.SUPERSCRIPT_MARKER, TokenKind.SUBSCRIPT_MARKER})


class _Parser:
    """Single-use parser state over one token stream."""

    def __init__(self, source: str, grammar: Grammar) -> None:
        self.source = source
        self.grammar = grammar
        self.tokens = tokenize(source)
        self.index = 0
        self.depth = 0
        self.end_position = utf8_length(source)

        # Character offsets of each token, for slicing verbatim text
        self.char_starts: list[int] = []
        offset = 0
        for token in self.tokens:
            self.char_starts.append(offset)
            offset += len(token.text)
        self.char_starts.append(offset)

    # Token helpers

    def _peek(self) -> Token | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def _skip_whitespace(self) -> Token | None:
        tokens = self.tokens
        while self.index < len(tokens) and tokens[self.index].kind == TokenKind.WHITESPACE:
            self.index += 1
        return self._peek()

    def _error(self, kind: ParseErrorKind, position: int, message: str) -> ParseError:
        return ParseError(kind, min(max(position, 0), self.end_position), message)

    def _enter(self, token: Token | None) -> None:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            position = token.position if token is not None else self.end_position
            raise self._error(
                ParseErrorKind.UNBALANCED_BRACE,
                position,
                f"nesting deeper than {MAX_DEPTH} levels",
            )

    def _leave(self) -> None:
        self.depth -= 1

    # Grammar

    def parse(self) -> Row:
        children = self._parse_sequence(in_group=False, in_bracket=False, in_environment=False)
        token = self._peek()
        if token is not None:
            # Only a stray closing brace stops the top-level sequence
            raise self._error(ParseErrorKind.UNBALANCED_BRACE, token.position, "unmatched '}'")
        return Row(tuple(children))

    def _parse_sequence(
        self, *, in_group: bool, in_bracket: bool, in_environment: bool
    ) -> list[MathNode]:
        """Parse items until a terminator for the current context (not consumed)."""
        items: list[MathNode] = []
        while True:
            token = self._skip_whitespace()
            if token is None:
                return items

            if token.kind == TokenKind.CLOSE_BRACE:
                if in_group or not (in_bracket or in_environment):
                    return items
                raise self._error(ParseErrorKind.UNBALANCED_BRACE, token.position, "unmatched '}'")
            if in_bracket and token.text == "]":
                return items
            if token.kind == TokenKind.COMMAND and token.text == "\\end":
                if in_environment:
                    return items
                raise self._error(
                    ParseErrorKind.UNTERMINATED_ENVIRONMENT,
                    token.position,
                    "\\end without matching \\begin",
                )

            if token.kind in _ARGUMENT_STOPS:
                self.index += 1
                previous = items.pop() if items else None
                items.append(self._attach_script(previous, token, in_bracket=in_bracket))
                continue

            items.append(self._parse_atom())

    def _attach_script(
        self, previous: MathNode | None, marker: Token, *, in_bracket: bool
    ) -> Script:
        argument = self._parse_script_argument(marker, in_bracket=in_bracket)
        is_sub = marker.kind == TokenKind.SUBSCRIPT_MARKER

        if isinstance(previous, Script):
            slot = previous.sub if is_sub else previous.sup
            if slot is None:
                if is_sub:
                    return Script(previous.base, argument, previous.sup)
                return Script(previous.base, previous.sub, argument)
            raise self._error(
                ParseErrorKind.DANGLING_SCRIPT_MARKER,
                marker.position,
                "double subscript" if is_sub else "double superscript",
            )

        if is_sub:
            return Script(previous, sub=argument)
        return Script(previous, sup=argument)

    def _parse_script_argument(self, marker: Token, *, in_bracket: bool) -> Group:
        token = self._skip_whitespace()
        if (
            token is None
            or token.kind in (TokenKind.CLOSE_BRACE, *_ARGUMENT_STOPS)
            or (token.kind == TokenKind.COMMAND and token.text == "\\end")
            or (in_bracket and token.text == "]")
        ):
            raise self._error(
                ParseErrorKind.DANGLING_SCRIPT_MARKER,
                marker.position,
                f"'{marker.text}' has no argument",
            )
        atom = self._parse_atom()
        if isinstance(atom, Group):
            return atom
        return Group((atom,))

    def _parse_atom(self) -> MathNode:
        """Parse one item that is not a script marker or a terminator."""
        token = self._peek()
        assert token is not None
        self.index += 1

        if token.kind == TokenKind.OPEN_BRACE:
            return Group(tuple(self._parse_braced_body(token)))
        if token.kind == TokenKind.DOLLAR:
            raise self._error(
                ParseErrorKind.UNBALANCED_DOLLAR, token.position, "'$' inside math"
            )
        if token.kind == TokenKind.COMMAND:
            return self._parse_command(token)
        if token.kind == TokenKind.OTHER_SYMBOL and token.text == "\\":
            raise self._error(
                ParseErrorKind.MISSING_ARGUMENT, token.position, "backslash at end of input"
            )
        return Symbol(token.text)

    def _parse_braced_body(self, open_token: Token) -> list[MathNode]:
        """Parse after '{' through the matching '}' (consumed)."""
        self._enter(open_token)
        children = self._parse_sequence(in_group=True, in_bracket=False, in_environment=False)
        self._leave()
        closing = self._peek()
        if closing is None or closing.kind != TokenKind.CLOSE_BRACE:
            raise self._error(ParseErrorKind.UNBALANCED_BRACE, open_token.position, "unclosed '{'")
        self.index += 1
        return children

    def _parse_command(self, token: Token) -> MathNode:
        name = token.text
        if name == "\\begin":
            return self._parse_environment(token)

        argument_class = self.grammar.argument_class(name)
        if argument_class == ArgumentClass.SYMBOL:
            return Symbol(name)

        self._enter(token)
        try:
            if argument_class == ArgumentClass.FRACTION:
                numerator = self._parse_argument(token)
                denominator = self._parse_argument(token)
                return Fraction(numerator, denominator, command=name)
            if argument_class == ArgumentClass.RADICAL:
                index = self._parse_optional_index(token)
                radicand = self._parse_argument(token)
                return Radical(radicand, index)
            if argument_class == ArgumentClass.TEXT:
                return TextBlock(self._parse_text_argument(token), command=name)
            arity = 2 if argument_class == ArgumentClass.BINARY else 1
            return Command(name, tuple(self._parse_argument(token) for _ in range(arity)))
        finally:
            self._leave()

    def _parse_argument(self, command: Token) -> Row:
        """One macro argument: a braced group or a single atom."""
        token = self._skip_whitespace()
        if token is None:
            raise self._error(
                ParseErrorKind.MISSING_ARGUMENT,
                self.end_position,
                f"{command.text} expects more arguments",
            )
        if (
            token.kind in (TokenKind.CLOSE_BRACE, *_ARGUMENT_STOPS)
            or (token.kind == TokenKind.COMMAND and token.text == "\\end")
        ):
            raise self._error(
                ParseErrorKind.MISSING_ARGUMENT,
                token.position,
                f"{command.text} expects more arguments",
            )
        if token.kind == TokenKind.OPEN_BRACE:
            self.index += 1
            return Row(tuple(self._parse_braced_body(token)))
        return Row((self._parse_atom(),))

    def _parse_optional_index(self, command: Token) -> Row | None:
        token = self._skip_whitespace()
        if token is None or token.text != "[":
            return None
        self.index += 1
        self._enter(token)
        children = self._parse_sequence(in_group=False, in_bracket=True, in_environment=False)
        self._leave()
        closing = self._peek()
        if closing is None or closing.text != "]":
            raise self._error(
                ParseErrorKind.MISSING_ARGUMENT,
                token.position,
                f"{command.text}[ without closing ']'",
            )
        self.index += 1
        return Row(tuple(children))

    def _parse_text_argument(self, command: Token) -> str:
        """Capture a text argument verbatim."""
        token = self._skip_whitespace()
        if token is None:
            raise self._error(
                ParseErrorKind.MISSING_ARGUMENT,
                self.end_position,
                f"{command.text} expects an argument",
            )
        if token.kind == TokenKind.DOLLAR:
            raise self._error(ParseErrorKind.UNBALANCED_DOLLAR, token.position, "'$' inside math")
        if token.kind != TokenKind.OPEN_BRACE:
            if token.kind in (TokenKind.CLOSE_BRACE, *_ARGUMENT_STOPS) or token.text == "\\":
                raise self._error(
                    ParseErrorKind.MISSING_ARGUMENT,
                    token.position,
                    f"{command.text} expects an argument",
                )
            self.index += 1
            return token.text

        start = self.index + 1
        depth = 0
        for i in range(self.index, len(self.tokens)):
            kind = self.tokens[i].kind
            if kind == TokenKind.OPEN_BRACE:
                depth += 1
            elif kind == TokenKind.CLOSE_BRACE:
                depth -= 1
                if depth == 0:
                    self.index = i + 1
                    return self.source[self.char_starts[start] : self.char_starts[i]]
        raise self._error(ParseErrorKind.UNBALANCED_BRACE, token.position, "unclosed '{'")

    def _parse_environment(self, begin: Token) -> Environment:
        name = self._parse_environment_name(begin)
        self._enter(begin)
        children = self._parse_sequence(in_group=False, in_bracket=False, in_environment=True)
        self._leave()

        end = self._peek()
        if end is None:
            raise self._error(
                ParseErrorKind.UNTERMINATED_ENVIRONMENT,
                begin.position,
                f"\\begin{{{name}}} is never closed",
            )
        self.index += 1
        end_name = self._parse_environment_name(end)
        if end_name != name:
            raise self._error(
                ParseErrorKind.UNTERMINATED_ENVIRONMENT,
                end.position,
                f"\\begin{{{name}}} closed by \\end{{{end_name}}}",
            )
        return Environment(name, Row(tuple(children)))

    def _parse_environment_name(self, command: Token) -> str:
        token = self._skip_whitespace()
        if token is None or token.kind != TokenKind.OPEN_BRACE:
            position = token.position if token is not None else self.end_position
            raise self._error(
                ParseErrorKind.MISSING_ARGUMENT, position, f"{command.text} expects a name"
            )
        for i in range(self.index + 1, len(self.tokens)):
            kind = self.tokens[i].kind
            if kind == TokenKind.CLOSE_BRACE:
                name = self.source[self.char_starts[self.index + 1] : self.char_starts[i]].strip()
                self.index = i + 1
                return name
            if kind == TokenKind.OPEN_BRACE:
                break
        raise self._error(ParseErrorKind.UNBALANCED_BRACE, token.position, "unclosed '{'")


def parse(source: str, grammar: Grammar | None = None) -> Row:
    """
    Parse LaTeX math into an AST.

    Args:
        source: LaTeX math without surrounding dollar delimiters
        grammar: Command tables to use (defaults to the packaged grammar)

    Returns:
        Top-level Row

    Raises:
        ParseError: With kind and byte position of the first problem

    Example:
        >>> parse("x")
        Row(children=(Symbol(text='x'),))
    """
    return _Parser(source, grammar or default_grammar()).parse()


def try_parse(source: str, grammar: Grammar | None = None) -> Row | None:
    """Parse, returning None instead of raising on malformed input."""
    try:
        return parse(source, grammar)
    except ParseError as e:
        logger.debug("parse failed: %s", e)
        return None
