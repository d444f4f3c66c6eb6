"""
Canonical serialization of LaTeX ASTs.

Script arguments are always braced and no whitespace is emitted except the
single space needed to end a letter-run command before a following letter
(`\\alpha x`). Text blocks are written verbatim.
"""

import re

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

_LETTER_COMMAND_RE = re.compile(r"\\[A-Za-z]+")


def _ends_with_letter_command(node: MathNode) -> bool:
    if isinstance(node, Symbol):
        return _LETTER_COMMAND_RE.fullmatch(node.text) is not None
    if isinstance(node, Row) and node.children:
        return _ends_with_letter_command(node.children[-1])
    return False


def _join(children: tuple[MathNode, ...]) -> str:
    parts: list[str] = []
    previous: MathNode | None = None
    for child in children:
        text = render(child)
        if (
            previous is not None
            and text[:1].isascii()
            and text[:1].isalpha()
            and _ends_with_letter_command(previous)
        ):
            parts.append(" ")
        parts.append(text)
        previous = child
    return "".join(parts)


def _braced(row: Row | Group) -> str:
    return "{" + _join(row.children) + "}"


def render(node: MathNode) -> str:
    """
    Render an AST to its canonical string.

    Args:
        node: Any MathNode

    Returns:
        Canonical LaTeX; parsing it yields a structurally equal tree

    Example:
        >>> render(parse(r"\\frac{ n( n+1 ) }{ 2 }"))
        '\\\\frac{n(n+1)}{2}'
    """
    match node:
        case Symbol(text):
            return text
        case Row(children):
            return _join(children)
        case Group(_):
            return _braced(node)
        case Command(name, args):
            return name + "".join(_braced(arg) for arg in args)
        case Script(base, sub, sup):
            out = render(base) if base is not None else ""
            if sub is not None:
                out += "_" + _braced(sub)
            if sup is not None:
                out += "^" + _braced(sup)
            return out
        case Fraction(numerator, denominator, command):
            return command + _braced(numerator) + _braced(denominator)
        case Radical(radicand, index):
            prefix = "\\sqrt" if index is None else "\\sqrt[" + _join(index.children) + "]"
            return prefix + _braced(radicand)
        case TextBlock(raw, command):
            return command + "{" + raw + "}"
        case Environment(name, body):
            return "\\begin{" + name + "}" + _join(body.children) + "\\end{" + name + "}"
    raise TypeError(f"not a MathNode: {node!r}")
