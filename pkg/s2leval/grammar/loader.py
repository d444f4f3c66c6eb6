"""
Grammar loader for reading the command and alias data files.

Loads commands.yml and aliases.txt from s2leval/grammar/definitions/ (or a
custom directory) and caches the frozen Grammar.
"""

from functools import lru_cache
from pathlib import Path

import yaml
from pydantic import ValidationError

from s2leval.grammar.models import AliasTable, CommandTable, Grammar
from s2leval.utils.errors import InvalidGrammarError

COMMANDS_FILE = "commands.yml"
ALIASES_FILE = "aliases.txt"


class GrammarLoader:
    """Loads and caches grammar definitions from data files."""

    def __init__(self, definitions_dir: Path | None = None) -> None:
        """
        Initialize grammar loader.

        Args:
            definitions_dir: Directory containing commands.yml and aliases.txt
                             (defaults to s2leval/grammar/definitions/)
        """
        if definitions_dir is None:
            self.definitions_dir = Path(__file__).parent / "definitions"
        else:
            self.definitions_dir = Path(definitions_dir)

        self._cache: Grammar | None = None

    def load(self) -> Grammar:
        """
        Load the grammar (from cache or files).

        Returns:
            Frozen Grammar

        Raises:
            InvalidGrammarError: If either data file is missing or invalid
        """
        if self._cache is not None:
            return self._cache

        table = self._load_command_table()
        aliases = self._load_alias_table()

        grammar = Grammar.from_table(table, aliases.pairs)
        self._check_alias_classes(grammar)

        self._cache = grammar
        return grammar

    def _load_command_table(self) -> CommandTable:
        """Parse and validate commands.yml."""
        path = self.definitions_dir / COMMANDS_FILE
        if not path.exists():
            raise InvalidGrammarError(
                message=f"Command table not found: {path}",
                suggestion=f"Provide {COMMANDS_FILE} in {self.definitions_dir}",
            )

        try:
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise InvalidGrammarError(
                message=f"Failed to parse YAML in {path}: {e}",
                suggestion="Check YAML syntax",
            ) from e
        except OSError as e:
            raise InvalidGrammarError(
                message=f"Failed to read command table {path}: {e}",
                suggestion="Check file permissions",
            ) from e

        if not isinstance(data, dict):
            raise InvalidGrammarError(
                message=f"Invalid command table {path}: expected YAML dictionary",
                suggestion="Check command table YAML structure",
            )

        try:
            return CommandTable(**data)
        except ValidationError as e:
            raise InvalidGrammarError(
                message=f"Invalid command table in {path}",
                suggestion=f"Fix validation errors:\n{e}",
            ) from e

    def _load_alias_table(self) -> AliasTable:
        """Parse aliases.txt: one 'alias canonical' pair per line, '#' comments."""
        path = self.definitions_dir / ALIASES_FILE
        if not path.exists():
            return AliasTable()

        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except (OSError, UnicodeDecodeError) as e:
            raise InvalidGrammarError(
                message=f"Failed to read alias table {path}: {e}",
                suggestion="Ensure the file is UTF-8 and readable",
            ) from e

        pairs: dict[str, str] = {}
        for line_number, line in enumerate(lines, start=1):
            content = line.strip()
            if not content or content.startswith("#"):
                continue
            parts = content.split()
            if len(parts) != 2:
                raise InvalidGrammarError(
                    message=f"{path}:{line_number}: expected 'alias canonical', got '{content}'",
                    suggestion="Write exactly two whitespace-separated names per line",
                )
            alias, canonical = parts
            if alias in pairs:
                raise InvalidGrammarError(
                    message=f"{path}:{line_number}: duplicate alias '{alias}'",
                    suggestion="Keep one mapping per alias",
                )
            pairs[alias] = canonical

        try:
            return AliasTable(pairs=pairs)
        except ValidationError as e:
            raise InvalidGrammarError(
                message=f"Invalid alias table in {path}",
                suggestion=f"Fix validation errors:\n{e}",
            ) from e

    @staticmethod
    def _check_alias_classes(grammar: Grammar) -> None:
        """An alias and its canonical name must take arguments the same way."""
        for alias, canonical in grammar.aliases.items():
            alias_class = grammar.argument_class(alias)
            canonical_class = grammar.argument_class(canonical)
            if alias_class != canonical_class:
                raise InvalidGrammarError(
                    message=(
                        f"Alias '{alias}' ({alias_class.value}) maps to '{canonical}' "
                        f"({canonical_class.value})"
                    ),
                    suggestion="Only alias commands with the same argument class",
                )

    def clear_cache(self) -> None:
        """Clear the grammar cache."""
        self._cache = None


@lru_cache(maxsize=1)
def default_grammar() -> Grammar:
    """Grammar shipped with the package, loaded once per process."""
    return GrammarLoader().load()
