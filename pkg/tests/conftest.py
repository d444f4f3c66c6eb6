"""Pytest configuration and fixtures."""

import json
import logging
import random
import tempfile
from collections.abc import Callable, Iterable, Iterator
from pathlib import Path
from typing import Any

import pytest

from s2leval.dataset.records import SampleRecord
from s2leval.grammar import ArgumentClass, default_grammar
from s2leval.utils.log import PACKAGE_LOGGER

# Original and normalized forms of the documented normalization examples
NORMALIZATION_GOLDENS: list[tuple[str, str]] = [
    (r"\sum_i^n i", r"\sum_{i}^{n}i"),
    (r"\frac{ n( n+1 ) }{ 2 }", r"\frac{n(n+1)}{2}"),
    (r"\underset{ \xi }{ \max }", r"\max_{\xi}"),
    (r"\Delta z\sim1", r"\Delta\ z\sim\ 1"),
]

# (prediction, reference) pairs from a speech model's test-set output
EQUATION_PREDICTIONS: list[tuple[str, str]] = [
    (
        r"$F_{\mu\nu} = \partial_\mu A_\nu - \partial_\nu A_\mu$",
        r"$F_{\mu\nu} = \partial_\mu A_\nu - \partial_\nu A_\mu$",
    ),
    (r"$E = \frac{F}{q}$", r"$\mathbf{E} = \frac{\mathbf{F}}{q}$"),
    (r"$n(\mu,\sigma^2,t)$", r"$\mathcal{N}\!\bigl(\mu, \tfrac{\sigma^2}{T}\bigr)$"),
    (r"$\text{Var}(X) = r \frac{1 - p}{p^2}$", r"$\text{Var}(X) = \frac{r(1 - p)}{p^2}$"),
    (
        r"$n ( \gamma , \theta_{e} ) / n = \delta ( \theta_{e} - \theta_{j} )$",
        r"$n ( \Gamma , \theta_{e} ) / n = \delta ( \theta_{e} - \theta_{j} )$",
    ),
    (
        r"$\mathrm{Ei}(x) = \frac{1}{\pi} \int_{0}^{\infty} "
        r"\cos\!\bigl(\tfrac{t^3}{3} + xt\bigr)\,dt$",
        r"$\mathrm{Ai}(x) = \frac{1}{\pi} \int_{0}^{\infty} "
        r"\cos\!\bigl(\tfrac{t^3}{3} + xt\bigr)\,dt$",
    ),
    (
        r"$\lim_{x \to -5} \frac{\sqrt{4 - x - 3}}{x + 5}$",
        r"$\lim_{x \to -5} \frac{\sqrt{4 - x} - 3}{x + 5}$",
    ),
    (
        r"$\sum_{i=1}^{n} i \cdot i = \frac{n(n+1)(2n+1)}{6}$",
        r"$\sum_{i=1}^{n} i \cdot i = \frac{n(n+1)(2n+1)}{6}$",
    ),
    (
        r"$1 \leq\, u_{1}, u_{2}, b_{1}, v_{2} \leq\, d$",
        r"$1 \leq\, u_{1}, u_{2}, v_{1}, v_{2} \leq\, d$",
    ),
]

EXACT_PREDICTION_ROWS = (0, 7)
CASE_ONLY_PREDICTION_ROW = 4

SENTENCE_PREDICTION = (
    "Given a fixed graph $F$, a typical problem on a large graph $G$ on $n$ vertices that "
    "contains no copy of $F$ can have an upper bound on the number of its edges, denoted by "
    "$X(n,F)$"
)
SENTENCE_REFERENCE = (
    "Given a fixed graph $F$, a typical problem in extremal graph theory asks for the maximum "
    "number of edges that a large graph $G$ on $n$ vertices containing no copy of $F$ can "
    "have, denoted by $\\text{ex}(n, F)$."
)


@pytest.fixture(autouse=True)
def _reset_package_logger() -> Iterator[None]:
    """Undo CLI logging setup so caplog sees package records in every test."""
    yield
    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    logger.setLevel(logging.NOTSET)
    logger.propagate = True


@pytest.fixture
def temp_dir() -> Iterator[Path]:
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def make_record() -> Callable[..., SampleRecord]:
    """Factory for a clean equations record; keyword arguments override fields."""

    def factory(**overrides: Any) -> SampleRecord:
        data: dict[str, Any] = {
            "id": "rec-1",
            "language": "eng",
            "annotation_type": "human",
            "source": "generated",
            "format": "equations",
            "latex": r"\frac{1}{2}",
            "pronunciations": ["one half"],
        }
        data.update(overrides)
        return SampleRecord(**data)

    return factory


_PLAIN_ATOMS = tuple("abcnxyzABN0123+-=(),<>|")
_TEXT_WORDS = ("if", "and", "for all", "otherwise", "für alle", "n large")


def random_formula(rng: random.Random, depth: int = 2) -> str:
    """
    Random well-formed LaTeX built from the packaged command tables.

    Covers plain atoms, aliases, relations, presentation commands, explicit
    spaces, groups, scripts, fractions, radicals, fixed-arity commands,
    \\underset/\\overset folds, text blocks and matrix environments.
    """
    grammar = default_grammar()
    greek = sorted(grammar.greek_letters)
    big_operators = sorted(grammar.big_operators)
    symbol_aliases = sorted(
        a for a in grammar.aliases if grammar.argument_class(a) == ArgumentClass.SYMBOL
    )
    symbols = (
        greek
        + symbol_aliases
        + sorted(grammar.spacing_relations)
        + sorted(grammar.presentation_commands)
        + ["\\ "]
    )

    def sequence(level: int) -> str:
        return " ".join(item(level) for _ in range(rng.randint(1, 4)))

    def braced(level: int) -> str:
        return "{" + sequence(level) + "}"

    def base(level: int) -> str:
        choice = rng.randrange(4)
        if choice == 0:
            return rng.choice(_PLAIN_ATOMS)
        if choice == 1:
            return rng.choice(greek + big_operators)
        if choice == 2 and level > 0:
            return braced(level - 1)
        return "\\underset{" + sequence(max(level - 1, 0)) + "}{" + rng.choice(big_operators) + "}"

    def item(level: int) -> str:
        if level == 0 or rng.random() < 0.4:
            return rng.choice(_PLAIN_ATOMS) if rng.random() < 0.6 else rng.choice(symbols)
        inner = level - 1
        choice = rng.randrange(9)
        if choice == 0:
            return braced(inner)
        if choice == 1:
            out = base(level)
            has_sub = rng.random() < 0.7
            if has_sub:
                out += "_" + braced(inner)
            if rng.random() < 0.5 or not has_sub:
                out += "^" + braced(inner)
            return out
        if choice == 2:
            command = rng.choice(sorted(grammar.fraction_commands))
            return command + braced(inner) + braced(inner)
        if choice == 3:
            index = "[" + rng.choice("23n") + "]" if rng.random() < 0.5 else ""
            return "\\sqrt" + index + braced(inner)
        if choice == 4:
            command = rng.choice(sorted(grammar.arity))
            return command + "".join(braced(inner) for _ in range(grammar.arity[command]))
        if choice == 5:
            fold = rng.choice(["\\underset", "\\overset"])
            return fold + braced(inner) + "{" + rng.choice(big_operators) + "}"
        if choice == 6:
            command = rng.choice(sorted(grammar.text_commands))
            return command + "{" + rng.choice(_TEXT_WORDS) + "}"
        if choice == 7:
            letters = rng.choice(["sin", "log", "foo", "Res"])
            return "\\operatorname{" + letters + "}"
        cells = [sequence(inner) for _ in range(4)]
        return (
            "\\begin{matrix}"
            + f"{cells[0]} & {cells[1]} \\\\ {cells[2]} & {cells[3]}"
            + "\\end{matrix}"
        )

    return sequence(depth)


def write_jsonl(path: Path, rows: Iterable[dict[str, Any] | str]) -> Path:
    """Write rows (dicts or pre-serialized strings) as JSON lines."""
    lines = [row if isinstance(row, str) else json.dumps(row) for row in rows]
    path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
    return path


def read_jsonl(path: Path) -> list[dict[str, Any]]:
    """Parse a JSON-lines file."""
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line]


@pytest.fixture
def corpus_file(temp_dir: Path) -> Path:
    """Small mixed corpus: clean, too-short, invalid, duplicate and malformed lines."""
    base = {
        "language": "eng",
        "annotation_type": "human",
        "source": "generated",
        "format": "equations",
    }
    rows: list[dict[str, Any] | str] = [
        {**base, "id": "clean", "latex": r"\frac{1}{2}", "pronunciations": ["one half"]},
        {**base, "id": "short", "latex": "x", "pronunciations": ["ex"]},
        {**base, "id": "broken", "latex": r"\frac{1}{2", "pronunciations": ["one half"]},
        {**base, "id": "dup", "latex": r"\dfrac{ 1 }{ 2 }", "pronunciations": ["a half"]},
        "not json at all",
    ]
    return write_jsonl(temp_dir / "corpus.jsonl", rows)
