"""Unit tests for custom exceptions and key hashing."""

import pytest

from s2leval.utils.errors import (
    ConfigError,
    ConfigNotFoundError,
    DataError,
    EmptyCorpusError,
    GrammarError,
    InputFileError,
    InvalidConfigError,
    InvalidGrammarError,
    ParseError,
    ParseErrorKind,
    RecordMismatchError,
    S2lError,
)
from s2leval.utils.hash import generate_key_hash, utf8_length


class TestS2lError:
    """Tests for S2lError base class."""

    def test_message_only(self) -> None:
        """Test error with message only."""
        error = S2lError("Something went wrong")
        assert str(error) == "Something went wrong"
        assert error.suggestion is None
        assert error.doc_link is None

    def test_with_suggestion_and_link(self) -> None:
        """Test the formatted message includes suggestion and link."""
        error = S2lError("Broken", suggestion="Fix it", doc_link="https://example.org/docs")
        assert "Broken" in str(error)
        assert "Suggestion: Fix it" in str(error)
        assert "See: https://example.org/docs" in str(error)
        assert error.message == "Broken"

    @pytest.mark.parametrize(
        ("error_cls", "parent"),
        [
            (InvalidConfigError, ConfigError),
            (ConfigNotFoundError, ConfigError),
            (InvalidGrammarError, GrammarError),
            (InputFileError, DataError),
            (RecordMismatchError, DataError),
            (EmptyCorpusError, DataError),
            (ParseError, S2lError),
            (ConfigError, S2lError),
            (DataError, S2lError),
        ],
    )
    def test_hierarchy(self, error_cls: type[Exception], parent: type[Exception]) -> None:
        """Test every error derives from the expected base."""
        assert issubclass(error_cls, parent)


class TestParseError:
    """Tests for ParseError."""

    def test_fields(self) -> None:
        """Test kind, position and bare message are kept."""
        error = ParseError(ParseErrorKind.UNBALANCED_BRACE, 4, "unclosed '{'")
        assert error.kind == ParseErrorKind.UNBALANCED_BRACE
        assert error.position == 4
        assert error.message == "unclosed '{'"
        assert str(error) == "UnbalancedBrace at byte 4: unclosed '{'"

    def test_kind_values(self) -> None:
        """Test the closed set of error kinds."""
        assert {k.value for k in ParseErrorKind} == {
            "UnbalancedBrace",
            "UnbalancedDollar",
            "DanglingScriptMarker",
            "MissingArgument",
            "UnterminatedEnvironment",
        }


class TestRecordMismatchError:
    """Tests for RecordMismatchError."""

    def test_line_number(self) -> None:
        """Test the line number is stored and prefixed."""
        error = RecordMismatchError("missing id 'a'", line_number=3)
        assert error.line_number == 3
        assert error.message == "line 3: missing id 'a'"


class TestKeyHash:
    """Tests for generate_key_hash and utf8_length."""

    def test_deterministic(self) -> None:
        """Test equal keys hash equally."""
        assert generate_key_hash(r"\frac{1}{2}") == generate_key_hash(r"\frac{1}{2}")

    def test_distinct(self) -> None:
        """Test different keys hash differently."""
        assert generate_key_hash("a") != generate_key_hash("b")

    def test_length(self) -> None:
        """Test the digest prefix length."""
        assert len(generate_key_hash("x")) == 16
        assert len(generate_key_hash("x", length=8)) == 8
        assert generate_key_hash("x", length=8) == generate_key_hash("x")[:8]

    def test_lone_surrogate(self) -> None:
        """Test undecodable text still hashes."""
        assert len(generate_key_hash("\ud800")) == 16

    def test_utf8_length(self) -> None:
        """Test byte lengths of multi-byte characters."""
        assert utf8_length("abc") == 3
        assert utf8_length("é") == 2
        assert utf8_length("") == 0
