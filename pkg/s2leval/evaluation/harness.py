"""
Evaluation harness: pair prediction and reference files, score every record
per scope, and reduce to a corpus report.

Per-record scoring is a pure function of (prediction, reference, config), so
it can run in a process pool; results are reduced in input order so the
report never depends on the worker count.
"""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from statistics import fmean

from pydantic import BaseModel, ConfigDict, ValidationError

from s2leval.config.models import EvalConfig, NormalizationConfig
from s2leval.dataset.io import iter_lines
from s2leval.evaluation.models import EvalReport
from s2leval.metrics.compile import compile_check
from s2leval.metrics.edit import EditOps, char_ops, word_ops
from s2leval.metrics.scores import ERROR_RATES, ScoreSet, score_pair
from s2leval.normalizer.pipeline import normalize_string, strip_dollar_delimiters
from s2leval.segmenter.segments import (
    Segment,
    SegmentKind,
    equations_concat,
    segment,
    sentence_string,
    text_only,
)
from s2leval.utils.errors import EmptyCorpusError, InputFileError, ParseError, RecordMismatchError
from s2leval.utils.hash import utf8_length

logger = logging.getLogger(__name__)


class _EvalLine(BaseModel):
    """JSON-lines prediction/reference item."""

    model_config = ConfigDict(extra="ignore")

    id: str
    latex: str


@dataclass(frozen=True, slots=True)
class EvalItem:
    """One prediction or reference; id is None for plain-text files."""

    line_number: int
    id: str | None
    latex: str


@dataclass(frozen=True, slots=True)
class ScopeText:
    """Strings compared in one scope; cased variants feed texbleu_proxy."""

    reference: str
    hypothesis: str
    cased_reference: str
    cased_hypothesis: str


@dataclass(frozen=True, slots=True)
class ScopeScore:
    """Per-record result for one scope."""

    char_ops: EditOps | None
    word_ops: EditOps | None
    similarity: dict[str, float]
    both_empty: bool
    degenerate: bool


@dataclass(frozen=True, slots=True)
class RecordScore:
    """Per-record result across scopes plus compile and parse bookkeeping."""

    scopes: dict[str, ScopeScore]
    compiled: int
    compile_total: int
    failed_parses: int


def read_items(path: Path) -> list[EvalItem]:
    """
    Read a prediction or reference file.

    The file is JSON-lines when its first non-blank line is an object with
    "id" and "latex"; otherwise every line is one plain-text item.

    Raises:
        InputFileError: If the file is unreadable or a JSON line is malformed
    """
    lines = list(iter_lines(path))
    first = next((text for _, text in lines if text.strip()), None)
    if first is None or not _is_json_item(first):
        return [EvalItem(line_number, None, text) for line_number, text in lines]

    items: list[EvalItem] = []
    for line_number, text in lines:
        if not text.strip():
            continue
        try:
            parsed = _EvalLine.model_validate_json(text)
        except ValidationError as e:
            raise InputFileError(
                f"{path}: line {line_number}: expected {{\"id\": ..., \"latex\": ...}}",
                suggestion=f"Fix the JSON on that line ({e.errors()[0]['msg']})",
            ) from e
        items.append(EvalItem(line_number, parsed.id, parsed.latex))
    return items


def _is_json_item(text: str) -> bool:
    if not text.lstrip().startswith("{"):
        return False
    try:
        _EvalLine.model_validate_json(text)
    except ValidationError:
        return False
    return True


def pair_items(
    predictions: Sequence[EvalItem], references: Sequence[EvalItem]
) -> list[tuple[str, str]]:
    """
    Pair predictions with references in reference order.

    When both sides carry ids, pairing is by id; otherwise by position.

    Returns:
        (prediction, reference) pairs

    Raises:
        RecordMismatchError: On a count mismatch, duplicate or missing id
    """
    if len(predictions) != len(references):
        shorter = min(len(predictions), len(references))
        raise RecordMismatchError(
            f"prediction file has {len(predictions)} records, "
            f"reference file has {len(references)}",
            line_number=shorter + 1,
            suggestion="Both files need one item per record",
        )

    keyed = all(p.id is not None for p in predictions) and all(
        r.id is not None for r in references
    )
    if not keyed:
        return [(p.latex, r.latex) for p, r in zip(predictions, references, strict=True)]

    by_id: dict[str, EvalItem] = {}
    for item in predictions:
        assert item.id is not None
        if item.id in by_id:
            raise RecordMismatchError(
                f"duplicate prediction id {item.id!r}", line_number=item.line_number
            )
        by_id[item.id] = item

    pairs: list[tuple[str, str]] = []
    for reference in references:
        assert reference.id is not None
        prediction = by_id.get(reference.id)
        if prediction is None:
            raise RecordMismatchError(
                f"reference id {reference.id!r} has no prediction",
                line_number=reference.line_number,
                suggestion="Check that both files come from the same split",
            )
        pairs.append((prediction.latex, reference.latex))
    return pairs


def prepare_formula(latex: str, config: EvalConfig) -> tuple[str, str]:
    """
    Metric string and case-preserved string for one formula.

    Unparseable formulas fall back to their dollar-stripped text, lowercased
    when the normalization profile lowercases.
    """
    if not config.normalize:
        raw = strip_dollar_delimiters(latex)
        return raw, raw
    profile = config.effective_normalization()
    cased_profile = profile.model_copy(update={"lowercase_output": False})
    try:
        cased = normalize_string(latex, cased_profile)
    except ParseError as e:
        logger.debug("scoring raw formula after parse failure: %s", e)
        cased = strip_dollar_delimiters(latex)
    return (cased.lower() if profile.lowercase_output else cased), cased


def _segments_or_text(sentence: str) -> tuple[list[Segment], bool]:
    """Segments of a sentence; an unsegmentable sentence becomes one text segment."""
    try:
        return segment(sentence), True
    except ParseError as e:
        logger.debug("scoring unsegmentable sentence as text: %s", e)
        return [Segment(SegmentKind.TEXT, sentence, (0, utf8_length(sentence)))], False


def _sentence_side(sentence: str, config: EvalConfig) -> tuple[dict[str, tuple[str, str]], int]:
    """
    Per-scope (metric, cased) strings for one side of a sentence pair.

    Returns:
        Scope strings and the number of parse failures on this side
    """
    segments, segmentable = _segments_or_text(sentence)
    failures = 0 if segmentable else 1

    if not config.normalize:
        prose = text_only(segments)
        # Raw scoring compares dollar-stripped formulas as written
        equations = equations_concat(segments, None, " ", delimit=False)
        whole = sentence_string(segments, None)
        return {
            "sentence": (whole, whole),
            "text": (prose, prose),
            "equation": (equations, equations),
        }, failures

    failures += sum(1 for s in segments if s.is_math and not compile_check(s.content))
    profile = config.effective_normalization()
    cased_profile = profile.model_copy(update={"lowercase_output": False})
    prose = text_only(segments)

    def both(build: Callable[[NormalizationConfig], str]) -> tuple[str, str]:
        return build(profile), build(cased_profile)

    return {
        "sentence": both(lambda p: sentence_string(segments, p)),
        "text": (prose.lower() if profile.lowercase_output else prose, prose),
        "equation": both(
            lambda p: equations_concat(
                segments, p, config.equation_separator, config.delimit_equations
            )
        ),
    }, failures


def _score_scope(text: ScopeText, config: EvalConfig) -> ScopeScore:
    metrics = config.metrics
    similarity_metrics = [m for m in metrics if m not in ERROR_RATES]
    similarity: dict[str, float] = {}
    if similarity_metrics:
        scores: ScoreSet = score_pair(
            text.reference,
            text.hypothesis,
            similarity_metrics,
            config.bleu,
            config.chrf,
            cased=(text.cased_reference, text.cased_hypothesis),
        )
        similarity = scores.values()
    return ScopeScore(
        char_ops=char_ops(text.reference, text.hypothesis) if "cer" in metrics else None,
        word_ops=word_ops(text.reference, text.hypothesis) if "wer" in metrics else None,
        similarity=similarity,
        both_empty=not text.reference and not text.hypothesis,
        degenerate=not text.reference and bool(text.hypothesis),
    )


def score_record(pair: tuple[str, str], config: EvalConfig) -> RecordScore:
    """
    Score one (prediction, reference) pair in every scope of the mode.

    Args:
        pair: Raw prediction and reference
        config: Evaluation protocol

    Returns:
        RecordScore with per-scope results and compile counts
    """
    prediction, reference = pair

    if config.mode == "equations":
        hyp, cased_hyp = prepare_formula(prediction, config)
        ref, cased_ref = prepare_formula(reference, config)
        failed = 0
        if config.normalize:
            failed = sum(1 for side in (prediction, reference) if not compile_check(side))
        compiled = int(compile_check(prediction))
        return RecordScore(
            scopes={"equation": _score_scope(ScopeText(ref, hyp, cased_ref, cased_hyp), config)},
            compiled=compiled,
            compile_total=1,
            failed_parses=failed,
        )

    hyp_scopes, hyp_failed = _sentence_side(prediction, config)
    ref_scopes, ref_failed = _sentence_side(reference, config)
    scopes = {
        name: _score_scope(
            ScopeText(
                reference=ref_scopes[name][0],
                hypothesis=hyp_scopes[name][0],
                cased_reference=ref_scopes[name][1],
                cased_hypothesis=hyp_scopes[name][1],
            ),
            config,
        )
        for name in config.scopes()
    }

    try:
        formulas = [s.content for s in segment(prediction) if s.is_math]
    except ParseError:
        compiled, compile_total = 0, 1
    else:
        compiled = sum(1 for f in formulas if compile_check(f))
        compile_total = len(formulas)

    return RecordScore(
        scopes=scopes,
        compiled=compiled,
        compile_total=compile_total,
        failed_parses=hyp_failed + ref_failed,
    )


def _error_rate(ops: list[EditOps], aggregate: str) -> float:
    if not ops:
        return 0.0
    if aggregate == "macro":
        return fmean(o.rate() for o in ops)
    return sum(ops, EditOps()).rate()


def aggregate_scope(scores: Sequence[ScopeScore], config: EvalConfig) -> ScoreSet:
    """
    Reduce per-record scope results.

    CER/WER are micro-averaged (total edits over total reference length) or
    macro-averaged per config; similarity metrics are arithmetic means.
    Pairs where both strings are empty are left out.
    """
    counted = [s for s in scores if not s.both_empty]
    values: dict[str, float] = {}
    if "cer" in config.metrics:
        values["cer"] = _error_rate([s.char_ops for s in counted if s.char_ops], config.aggregate)
    if "wer" in config.metrics:
        values["wer"] = _error_rate([s.word_ops for s in counted if s.word_ops], config.aggregate)
    for metric in config.metrics:
        if metric in ERROR_RATES:
            continue
        observed = [s.similarity[metric] for s in counted if metric in s.similarity]
        if observed:
            values[metric] = fmean(observed)
    return ScoreSet(**values)


def score_pairs(pairs: Sequence[tuple[str, str]], config: EvalConfig) -> list[RecordScore]:
    """Score every pair, in a process pool when config.workers > 1; order is preserved."""
    scorer = partial(score_record, config=config)
    if config.workers == 1 or len(pairs) < 2:
        return [scorer(pair) for pair in pairs]
    chunksize = max(1, len(pairs) // (config.workers * 4))
    with ProcessPoolExecutor(max_workers=config.workers) as executor:
        return list(executor.map(scorer, pairs, chunksize=chunksize))


def evaluate_pairs(
    pairs: Sequence[tuple[str, str]], config: EvalConfig | None = None
) -> EvalReport:
    """
    Evaluate in-memory (prediction, reference) pairs.

    Raises:
        EmptyCorpusError: If there are no pairs
    """
    config = config or EvalConfig()
    if not pairs:
        raise EmptyCorpusError(
            "no records", suggestion="Check that the prediction and reference files are not empty"
        )

    records = score_pairs(pairs, config)
    scopes = {
        name: aggregate_scope([r.scopes[name] for r in records], config)
        for name in config.scopes()
    }
    compile_total = sum(r.compile_total for r in records)
    compiled = sum(r.compiled for r in records)
    degenerate = sum(1 for r in records for s in r.scopes.values() if s.degenerate)
    if degenerate:
        logger.warning("%d scope pairs have an empty reference", degenerate)

    return EvalReport(
        scopes=scopes,
        compilation_rate=compiled / compile_total if compile_total else 1.0,
        record_count=len(records),
        failed_parses=sum(r.failed_parses for r in records),
        degenerate_warnings=degenerate,
        config_echo=config.echo(),
    )


def evaluate(
    prediction_file: Path, reference_file: Path, config: EvalConfig | None = None
) -> EvalReport:
    """
    Evaluate a prediction file against a reference file.

    Args:
        prediction_file: JSON-lines {"id", "latex"} or plain text, one item per line
        reference_file: Same format as the predictions
        config: Evaluation protocol (defaults to EvalConfig())

    Returns:
        EvalReport for the configured scopes

    Raises:
        InputFileError: If a file is missing, unreadable or malformed
        RecordMismatchError: If the files cannot be paired
        EmptyCorpusError: If there are no records
    """
    config = config or EvalConfig()
    predictions = read_items(prediction_file)
    references = read_items(reference_file)
    logger.debug(
        "pairing %d predictions with %d references", len(predictions), len(references)
    )
    return evaluate_pairs(pair_items(predictions, references), config)
