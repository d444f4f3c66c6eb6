"""
Individual AST rewrite rules.

Each rule is a pure function of a node (and the grammar tables). The
pipeline composes them into passes and iterates to a fixpoint.
"""

from s2leval.config.models import NormalizationConfig
from s2leval.grammar import Grammar
from s2leval.latex.nodes import (
    SPACE,
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
    is_space,
)

UNDERSET = "\\underset"
OVERSET = "\\overset"
OPERATORNAME = "\\operatorname"
PLACEHOLDER = Symbol("\\var")


# Sequence-level rules


def flatten_rows(children: list[MathNode]) -> list[MathNode]:
    """Splice nested Row children into their parent sequence."""
    flat: list[MathNode] = []
    for child in children:
        if isinstance(child, Row):
            flat.extend(flatten_rows(list(child.children)))
        else:
            flat.append(child)
    return flat


def collapse_space_runs(children: list[MathNode]) -> list[MathNode]:
    """Replace runs of consecutive '\\ ' symbols with a single one."""
    out: list[MathNode] = []
    for child in children:
        if is_space(child) and out and is_space(out[-1]):
            continue
        out.append(child)
    return out


def space_relations(children: list[MathNode], grammar: Grammar) -> list[MathNode]:
    """
    Put explicit '\\ ' around spacing relations flanked by atoms.

    For a relation whose left neighbor is a non-space atom, a '\\ ' is placed
    before that atom (unless it starts the sequence or already follows one) and
    after the relation (unless it ends the sequence or is already followed by one).

    Example:
        \\Delta z\\sim1  ->  \\Delta\\ z\\sim\\ 1
    """
    out: list[MathNode] = []
    for i, child in enumerate(children):
        is_relation = isinstance(child, Symbol) and child.text in grammar.spacing_relations
        if not (is_relation and out and not is_space(out[-1])):
            out.append(child)
            continue

        left = out.pop()
        if out and not is_space(out[-1]):
            out.append(SPACE)
        out.append(left)
        out.append(child)

        following = children[i + 1] if i + 1 < len(children) else None
        if following is not None and not is_space(following):
            out.append(SPACE)
    return out


# Node-level rules


def unify_name(name: str, grammar: Grammar) -> str:
    """Canonical command spelling."""
    return grammar.canonical(name)


def fold_underset(command: Command, grammar: Grammar) -> Script | None:
    """
    Rewrite \\underset{X}{\\op} to \\op_{X} (and \\overset to a superscript).

    Returns None when the command is not a fold candidate.
    """
    if command.name not in (UNDERSET, OVERSET) or len(command.args) != 2:
        return None
    limit, body = command.args
    if len(body.children) != 1:
        return None
    operator = body.children[0]
    if not (isinstance(operator, Symbol) and operator.text in grammar.big_operators):
        return None
    script = Group(limit.children)
    if command.name == UNDERSET:
        return Script(operator, sub=script)
    return Script(operator, sup=script)


def merge_scripts(inner: Script, outer: Script) -> Script | None:
    """Merge a folded operator's script into an enclosing script, if slots don't clash."""
    if inner.sub is not None and outer.sub is not None:
        return None
    if inner.sup is not None and outer.sup is not None:
        return None
    return Script(inner.base, inner.sub or outer.sub, inner.sup or outer.sup)


def unwrap_operatorname(command: Command, grammar: Grammar) -> MathNode | None:
    """
    Replace \\operatorname{name} with \\name when that is a built-in operator,
    otherwise with \\text{name}. Non-letter arguments are left alone.
    """
    if command.name != OPERATORNAME or len(command.args) != 1:
        return None
    children = command.args[0].children
    if not children or not all(
        isinstance(c, Symbol) and len(c.text) == 1 and c.text.isalpha() for c in children
    ):
        return None
    letters = "".join(c.text for c in children if isinstance(c, Symbol))
    builtin = "\\" + letters
    if letters.isascii() and builtin in grammar.operator_names:
        return Symbol(builtin)
    return TextBlock(letters)


def strip_presentation_tree(node: MathNode, grammar: Grammar) -> MathNode:
    """Remove layout-only commands and unwrap \\operatorname throughout a tree."""

    def strip_children(children: tuple[MathNode, ...]) -> tuple[MathNode, ...]:
        kept: list[MathNode] = []
        for child in children:
            if isinstance(child, Symbol) and child.text in grammar.presentation_commands:
                continue
            kept.append(strip(child))
        return tuple(kept)

    def strip(current: MathNode) -> MathNode:
        match current:
            case Row(children):
                return Row(strip_children(children))
            case Group(children):
                return Group(strip_children(children))
            case Command(name, args):
                stripped = Command(name, tuple(Row(strip_children(a.children)) for a in args))
                unwrapped = unwrap_operatorname(stripped, grammar)
                return unwrapped if unwrapped is not None else stripped
            case Script(base, sub, sup):
                if base is None:
                    new_base: MathNode | None = None
                elif isinstance(base, Symbol) and base.text in grammar.presentation_commands:
                    new_base = Group(())
                else:
                    new_base = strip(base)
                return Script(
                    new_base,
                    Group(strip_children(sub.children)) if sub is not None else None,
                    Group(strip_children(sup.children)) if sup is not None else None,
                )
            case Fraction(numerator, denominator, command):
                return Fraction(
                    Row(strip_children(numerator.children)),
                    Row(strip_children(denominator.children)),
                    command,
                )
            case Radical(radicand, index):
                return Radical(
                    Row(strip_children(radicand.children)),
                    Row(strip_children(index.children)) if index is not None else None,
                )
            case Environment(name, body):
                return Environment(name, Row(strip_children(body.children)))
        return current

    return strip(node)


def placeholder_identifiers(node: MathNode, grammar: Grammar) -> MathNode:
    """Replace single-letter identifiers and Greek letters with a placeholder symbol."""

    def is_identifier(symbol: Symbol) -> bool:
        text = symbol.text
        return (len(text) == 1 and text.isalpha()) or text in grammar.greek_letters

    def row(value: Row) -> Row:
        return Row(tuple(replace(c) for c in value.children))

    def group(value: Group | None) -> Group | None:
        return Group(tuple(replace(c) for c in value.children)) if value is not None else None

    def replace(current: MathNode) -> MathNode:
        match current:
            case Symbol():
                return PLACEHOLDER if is_identifier(current) else current
            case Row():
                return row(current)
            case Group():
                return Group(tuple(replace(c) for c in current.children))
            case Command(name, args):
                return Command(name, tuple(row(a) for a in args))
            case Script(base, sub, sup):
                return Script(replace(base) if base is not None else None, group(sub), group(sup))
            case Fraction(numerator, denominator, command):
                return Fraction(row(numerator), row(denominator), command)
            case Radical(radicand, index):
                return Radical(row(radicand), row(index) if index is not None else None)
            case Environment(name, body):
                return Environment(name, row(body))
        return current

    return replace(node)


def normalize_pass(node: MathNode, config: NormalizationConfig, grammar: Grammar) -> MathNode:
    """One bottom-up application of every enabled rule."""

    def sequence(children: tuple[MathNode, ...]) -> tuple[MathNode, ...]:
        items = flatten_rows([visit(c) for c in children])
        if config.collapse_spaces:
            items = collapse_space_runs(items)
            if config.relation_spacing:
                items = space_relations(items, grammar)
        return tuple(items)

    def row(value: Row) -> Row:
        return Row(sequence(value.children))

    def script_slot(value: MathNode | None) -> Group | None:
        if value is None:
            return None
        if not isinstance(value, Group):
            if not config.brace_scripts:
                return value  # type: ignore[return-value]
            value = Group((value,))
        return Group(sequence(value.children))

    def name(value: str) -> str:
        return unify_name(value, grammar) if config.unify_operator_names else value

    def command(value: Command) -> Command:
        return Command(name(value.name), tuple(row(a) for a in value.args))

    def visit(current: MathNode) -> MathNode:
        match current:
            case Symbol(text):
                return Symbol(name(text))
            case Row(children):
                return Row(sequence(children))
            case Group(children):
                return Group(sequence(children))
            case Command():
                normalized = command(current)
                if config.rewrite_underset_overset:
                    folded = fold_underset(normalized, grammar)
                    if folded is not None:
                        return folded
                return normalized
            case Script(base, sub, sup):
                new_sub, new_sup = script_slot(sub), script_slot(sup)
                if isinstance(base, Command):
                    new_base = command(base)
                    if config.rewrite_underset_overset:
                        folded = fold_underset(new_base, grammar)
                        if folded is not None:
                            merged = merge_scripts(folded, Script(None, new_sub, new_sup))
                            if merged is not None:
                                return merged
                    return Script(new_base, new_sub, new_sup)
                return Script(visit(base) if base is not None else None, new_sub, new_sup)
            case Fraction(numerator, denominator, cmd):
                return Fraction(row(numerator), row(denominator), name(cmd))
            case Radical(radicand, index):
                return Radical(row(radicand), row(index) if index is not None else None)
            case TextBlock(raw, cmd):
                return TextBlock(raw, name(cmd))
            case Environment(env_name, body):
                return Environment(env_name, row(body))
        return current

    return visit(node)
