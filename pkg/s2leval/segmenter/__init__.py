"""Split mixed prose/math sentences and build per-scope strings."""

from s2leval.segmenter.segments import (
    Segment,
    SegmentKind,
    count_equations,
    equations_concat,
    segment,
    sentence_string,
    text_only,
)

__all__ = [
    "Segment",
    "SegmentKind",
    "count_equations",
    "equations_concat",
    "segment",
    "sentence_string",
    "text_only",
]
