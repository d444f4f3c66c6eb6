"""
AST node types for LaTeX math.

All nodes are immutable, hashable and compare structurally, so two formulas
are "the same" exactly when their trees are equal.
"""

from collections.abc import Iterator
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Symbol:
    """A single atom: letter, digit, punctuation or zero-argument command."""

    text: str


@dataclass(frozen=True, slots=True)
class Command:
    """A fixed-arity command such as \\mathbf{x} or \\underset{a}{b}."""

    name: str
    args: tuple["Row", ...]


@dataclass(frozen=True, slots=True)
class Group:
    """A braced group {...}. Row children are spliced in on construction."""

    children: tuple["MathNode", ...]

    def __post_init__(self) -> None:
        if any(isinstance(child, Row) for child in self.children):
            flat: list[MathNode] = []
            for child in self.children:
                if isinstance(child, Row):
                    flat.extend(child.children)
                else:
                    flat.append(child)
            object.__setattr__(self, "children", tuple(flat))


@dataclass(frozen=True, slots=True)
class Script:
    """A base with an optional subscript and/or superscript."""

    base: "MathNode | None"
    sub: Group | None = None
    sup: Group | None = None

    def __post_init__(self) -> None:
        if self.sub is None and self.sup is None:
            raise ValueError("Script needs a subscript or a superscript")


@dataclass(frozen=True, slots=True)
class Fraction:
    """\\frac-style two-argument node; command records the spelling used."""

    numerator: "Row"
    denominator: "Row"
    command: str = "\\frac"


@dataclass(frozen=True, slots=True)
class Radical:
    """\\sqrt with an optional [index]."""

    radicand: "Row"
    index: "Row | None" = None


@dataclass(frozen=True, slots=True)
class TextBlock:
    """Verbatim text argument of \\text and friends."""

    raw: str
    command: str = "\\text"


@dataclass(frozen=True, slots=True)
class Environment:
    """\\begin{name} ... \\end{name} with an opaque body."""

    name: str
    body: "Row"


@dataclass(frozen=True, slots=True)
class Row:
    """An ordered sequence of nodes without surrounding braces."""

    children: tuple["MathNode", ...] = ()

    def __len__(self) -> int:
        return len(self.children)


MathNode = Symbol | Command | Group | Script | Fraction | Radical | TextBlock | Environment | Row

SPACE = Symbol("\\ ")


def is_space(node: "MathNode | None") -> bool:
    """True for the explicit '\\ ' spacing symbol."""
    return node == SPACE


def child_nodes(node: MathNode) -> Iterator[MathNode]:
    """Yield the direct children of a node (script slots and arguments included)."""
    match node:
        case Row(children) | Group(children):
            yield from children
        case Command(_, args):
            yield from args
        case Script(base, sub, sup):
            if base is not None:
                yield base
            if sub is not None:
                yield sub
            if sup is not None:
                yield sup
        case Fraction(numerator, denominator, _):
            yield numerator
            yield denominator
        case Radical(radicand, index):
            if index is not None:
                yield index
            yield radicand
        case Environment(_, body):
            yield body
        case _:
            return


def walk(node: MathNode) -> Iterator[MathNode]:
    """Pre-order traversal over every node in the tree."""
    stack: list[MathNode] = [node]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(list(child_nodes(current))))
