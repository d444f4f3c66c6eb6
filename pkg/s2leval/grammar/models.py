"""
Models for the LaTeX grammar data files.

The command table (commands.yml) and alias table (aliases.txt) are validated
with pydantic and then frozen into a Grammar used by the parser and
normalizer for constant-time lookups.
"""

import re
from dataclasses import dataclass, field
from enum import StrEnum

from pydantic import BaseModel, Field, ValidationInfo, field_validator, model_validator

_COMMAND_RE = re.compile(r"^\\(?:[A-Za-z]+|[^A-Za-z])$")


def _check_commands(values: list[str], label: str) -> list[str]:
    for name in values:
        if not _COMMAND_RE.match(name):
            raise ValueError(f"{label} entry '{name}' is not a LaTeX command")
    return values


class CommandTable(BaseModel):
    """Command classes loaded from commands.yml."""

    name: str = Field(..., description="Grammar name")
    description: str = Field(default="", description="Human-readable description")
    fraction_commands: list[str] = Field(..., description="Two-argument fraction commands")
    text_commands: list[str] = Field(..., description="Commands whose argument is verbatim text")
    arity: dict[str, int] = Field(default_factory=dict, description="Fixed-arity commands")
    big_operators: list[str] = Field(default_factory=list, description="\\underset fold targets")
    spacing_relations: list[str] = Field(
        default_factory=list, description="Relations receiving explicit '\\ ' spacing"
    )
    presentation_commands: list[str] = Field(
        default_factory=list, description="Layout-only commands removed by stripping"
    )
    operator_names: list[str] = Field(
        default_factory=list, description="Built-in operator commands for \\operatorname unwrap"
    )
    greek_letters: list[str] = Field(
        default_factory=list, description="Identifiers replaced in near-duplicate family keys"
    )

    @field_validator(
        "fraction_commands",
        "text_commands",
        "big_operators",
        "spacing_relations",
        "presentation_commands",
        "operator_names",
        "greek_letters",
    )
    @classmethod
    def validate_command_lists(cls, v: list[str], info: ValidationInfo) -> list[str]:
        """Ensure every entry is a backslash command."""
        return _check_commands(v, info.field_name or "command")

    @field_validator("arity")
    @classmethod
    def validate_arity(cls, v: dict[str, int]) -> dict[str, int]:
        """Ensure arity keys are commands and values are 1 or 2."""
        _check_commands(list(v), "arity")
        for name, n in v.items():
            if n not in (1, 2):
                raise ValueError(f"arity of {name} must be 1 or 2, got {n}")
        return v

    @model_validator(mode="after")
    def validate_disjoint_classes(self) -> "CommandTable":
        """A command belongs to at most one argument class."""
        fractions = set(self.fraction_commands)
        texts = set(self.text_commands)
        generic = set(self.arity)
        overlap = (fractions & texts) | (fractions & generic) | (texts & generic)
        if overlap:
            raise ValueError(f"commands listed in more than one class: {sorted(overlap)}")
        return self


class ArgumentClass(StrEnum):
    """How a command consumes its arguments."""

    SYMBOL = "symbol"
    FRACTION = "fraction"
    TEXT = "text"
    UNARY = "unary"
    BINARY = "binary"
    RADICAL = "radical"


@dataclass(frozen=True)
class Grammar:
    """Immutable lookup tables for parsing and normalization."""

    name: str
    fraction_commands: frozenset[str]
    text_commands: frozenset[str]
    arity: dict[str, int] = field(hash=False)
    big_operators: frozenset[str]
    spacing_relations: frozenset[str]
    presentation_commands: frozenset[str]
    operator_names: frozenset[str]
    greek_letters: frozenset[str]
    aliases: dict[str, str] = field(hash=False)

    @classmethod
    def from_table(cls, table: CommandTable, aliases: dict[str, str]) -> "Grammar":
        """Freeze a validated command table plus alias mapping."""
        return cls(
            name=table.name,
            fraction_commands=frozenset(table.fraction_commands),
            text_commands=frozenset(table.text_commands),
            arity=dict(table.arity),
            big_operators=frozenset(table.big_operators),
            spacing_relations=frozenset(table.spacing_relations),
            presentation_commands=frozenset(table.presentation_commands),
            operator_names=frozenset(table.operator_names),
            greek_letters=frozenset(table.greek_letters),
            aliases=dict(aliases),
        )

    def argument_class(self, name: str) -> ArgumentClass:
        """Classify a command (or plain symbol) by how it takes arguments."""
        if name == "\\sqrt":
            return ArgumentClass.RADICAL
        if name in self.fraction_commands:
            return ArgumentClass.FRACTION
        if name in self.text_commands:
            return ArgumentClass.TEXT
        n = self.arity.get(name)
        if n == 1:
            return ArgumentClass.UNARY
        if n == 2:
            return ArgumentClass.BINARY
        return ArgumentClass.SYMBOL

    def canonical(self, name: str) -> str:
        """Canonical spelling of a command under the alias table."""
        return self.aliases.get(name, name)


class AliasTable(BaseModel):
    """Alias pairs read from aliases.txt."""

    pairs: dict[str, str] = Field(default_factory=dict, description="alias -> canonical")

    @field_validator("pairs")
    @classmethod
    def validate_no_chains(cls, v: dict[str, str]) -> dict[str, str]:
        """Canonical names must not themselves be aliases, and nothing maps to itself."""
        for alias, canonical in v.items():
            if alias == canonical:
                raise ValueError(f"alias '{alias}' maps to itself")
            if canonical in v:
                raise ValueError(
                    f"alias chain: '{alias}' -> '{canonical}' -> '{v[canonical]}'"
                )
        return v
