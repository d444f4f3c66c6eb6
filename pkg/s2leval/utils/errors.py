"""
Custom exception classes for s2leval.

Every exception raised to a caller derives from S2lError, which carries a
message, an optional fix hint and an optional link. Per-record corpus
problems are not exceptions; see s2leval.dataset.validation.
"""

from enum import StrEnum


class S2lError(Exception):
    """Base exception class for all s2leval errors."""

    def __init__(
        self, message: str, suggestion: str | None = None, doc_link: str | None = None
    ) -> None:
        """
        Initialize an s2leval error.

        Args:
            message: What failed, naming the file, line or byte offset
            suggestion: How the user can fix it
            doc_link: Documentation URL
        """
        self.message = message
        self.suggestion = suggestion
        self.doc_link = doc_link

        full_message = message
        if suggestion:
            full_message += f"\n\nSuggestion: {suggestion}"
        if doc_link:
            full_message += f"\n\nSee: {doc_link}"

        super().__init__(full_message)


# Configuration Errors


class ConfigError(S2lError):
    """YAML configuration could not be loaded."""


class InvalidConfigError(ConfigError):
    """Configuration file or command-line override fails validation."""


class ConfigNotFoundError(ConfigError):
    """A --config path does not exist."""


# Grammar Errors


class GrammarError(S2lError):
    """Base exception for grammar data file errors."""


class InvalidGrammarError(GrammarError):
    """Raised when the command table or alias table is invalid."""


# LaTeX Errors


class ParseErrorKind(StrEnum):
    """Closed set of reasons a LaTeX formula fails to parse."""

    UNBALANCED_BRACE = "UnbalancedBrace"
    UNBALANCED_DOLLAR = "UnbalancedDollar"
    DANGLING_SCRIPT_MARKER = "DanglingScriptMarker"
    MISSING_ARGUMENT = "MissingArgument"
    UNTERMINATED_ENVIRONMENT = "UnterminatedEnvironment"


class ParseError(S2lError):
    """
    Raised when a LaTeX formula or a mixed sentence cannot be parsed.

    The position is a byte offset into the UTF-8 encoding of the source and
    always lies within [0, len(source_bytes)].
    """

    def __init__(
        self,
        kind: ParseErrorKind,
        position: int,
        message: str,
        suggestion: str | None = None,
    ) -> None:
        self.kind = kind
        self.position = position
        super().__init__(f"{kind.value} at byte {position}: {message}", suggestion=suggestion)
        # Keep the bare description; the formatted one lives in str(self)
        self.message = message


# Data Errors


class DataError(S2lError):
    """Base exception for problems with input data files."""


class InputFileError(DataError):
    """Raised when an input file is missing, unreadable or malformed."""


class RecordMismatchError(DataError):
    """Raised when prediction and reference files cannot be paired."""

    def __init__(self, message: str, line_number: int, suggestion: str | None = None) -> None:
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}", suggestion=suggestion)


class EmptyCorpusError(DataError):
    """Raised when an evaluation or report has no records to work on."""
