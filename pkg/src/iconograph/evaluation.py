"""Match modes, TP/FP/FN classification, and precision/recall/F1 reporting.

The three match modes nest: an exact match is also a partial match, and a
partial match is also a semantic match. Semantic matching additionally accepts
phrase pairs whose embedding cosine reaches the threshold. Reports micro-average:
counts are summed across keys before the metrics are computed.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .detections import DetectionSet
from .embeddings import EmbeddingTable
from .errors import FormatError, InputError, ValidationError
from .graph import KnowledgeGraph, query
from .terms import normalize

logger = logging.getLogger(__name__)

MATCH_KINDS = ("exact", "partial", "semantic")

DEFAULT_SEMANTIC_THRESHOLD = 0.7


@dataclass(frozen=True)
class MatchMode:
    """One of exact | partial | semantic; threshold only applies to semantic."""

    kind: str
    threshold: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in MATCH_KINDS:
            raise ValidationError(f"unknown match kind {self.kind!r}")
        if self.kind == "semantic":
            if self.threshold is None or not (0.0 < self.threshold <= 1.0):
                raise ValidationError("semantic mode needs a threshold in (0, 1]")
        elif self.threshold is not None:
            raise ValidationError(f"threshold is only valid for semantic mode, not {self.kind}")

    @staticmethod
    def exact() -> "MatchMode":
        return MatchMode("exact")

    @staticmethod
    def partial() -> "MatchMode":
        return MatchMode("partial")

    @staticmethod
    def semantic(threshold: float = DEFAULT_SEMANTIC_THRESHOLD) -> "MatchMode":
        return MatchMode("semantic", threshold)


@dataclass(frozen=True)
class MetricCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValidationError(f"counts must be non-negative: {self}")

    def __add__(self, other: "MetricCounts") -> "MetricCounts":
        return MetricCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)


def _is_token_subsequence(needle: str, haystack: str) -> bool:
    # Contiguous token containment: "life" is inside "brevity of life",
    # "of brevity" is not.
    n = needle.split(" ")
    h = haystack.split(" ")
    if len(n) > len(h):
        return False
    return any(h[i : i + len(n)] == n for i in range(len(h) - len(n) + 1))


def is_match(
    predicted: str,
    gold: str,
    mode: MatchMode,
    embeddings: EmbeddingTable | None = None,
    *,
    missing: set[str] | None = None,
) -> bool:
    """Does *predicted* count as a hit against *gold* under *mode*?

    Semantic mode requires an embedding table; a phrase absent from the table
    is recorded in *missing* (when given) and falls back to partial matching.
    """
    p = normalize(predicted)
    g = normalize(gold)
    if not p or not g:
        return False
    if p == g:
        return True
    if mode.kind == "exact":
        return False
    if _is_token_subsequence(p, g):
        return True
    if mode.kind == "partial":
        return False
    if embeddings is None:
        raise InputError("semantic matching requires an embedding table")
    similarity = embeddings.similarity(p, g)
    if similarity is None:
        for phrase in (p, g):
            if phrase not in embeddings:
                if missing is not None:
                    missing.add(phrase)
                logger.warning("no embedding for %r; semantic match degraded to partial", phrase)
        return False
    assert mode.threshold is not None
    return similarity >= mode.threshold


def classify(
    predicted: Iterable[str],
    gold: Iterable[str],
    mode: MatchMode,
    embeddings: EmbeddingTable | None = None,
    *,
    missing: set[str] | None = None,
) -> MetricCounts:
    """Count TP/FP/FN for one key.

    Each predicted item matching at least one gold item is a TP, otherwise an
    FP; each gold item matched by no predicted item is an FN. Several predicted
    items may match the same gold item and each still counts.
    """
    predicted_set = sorted({normalize(p) for p in predicted} - {""})
    gold_set = sorted({normalize(g) for g in gold} - {""})
    tp = 0
    fp = 0
    matched_gold: set[str] = set()
    for p in predicted_set:
        hits = [g for g in gold_set if is_match(p, g, mode, embeddings, missing=missing)]
        if hits:
            tp += 1
            matched_gold.update(hits)
        else:
            fp += 1
    fn = len(gold_set) - len(matched_gold)
    return MetricCounts(tp=tp, fp=fp, fn=fn)


def precision_recall_f1(counts: MetricCounts) -> tuple[float, float, float]:
    """Precision, recall and F1 with the zero-denominator-gives-zero convention."""
    precision = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else 0.0
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else 0.0
    return precision, recall, f1_score(precision, recall)


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class GoldPairings:
    """Manually extracted key -> gold meanings, keyed by object term or image id."""

    keyed_by: str
    entries: Mapping[str, frozenset[str]]

    def __post_init__(self) -> None:
        if self.keyed_by not in ("object", "image"):
            raise ValidationError(f"keyed_by must be 'object' or 'image', got {self.keyed_by!r}")
        for key, meanings in self.entries.items():
            if not meanings:
                raise ValidationError(f"gold entry {key!r} has no meanings")


def read_gold_json(path: str | Path) -> GoldPairings:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: gold document must be a JSON object")
    keyed_by = doc.get("keyed_by")
    if keyed_by not in ("object", "image"):
        raise FormatError(f"{path}: field 'keyed_by' must be 'object' or 'image', got {keyed_by!r}")
    raw_entries = doc.get("entries")
    if not isinstance(raw_entries, dict) or not raw_entries:
        raise FormatError(f"{path}: field 'entries' must be a non-empty object")
    entries: dict[str, frozenset[str]] = {}
    for key, meanings in raw_entries.items():
        if not isinstance(meanings, list) or not meanings or not all(
            isinstance(m, str) for m in meanings
        ):
            raise FormatError(f"{path}: entry {key!r} must map to a non-empty list of strings")
        norm_key = normalize(key) if keyed_by == "object" else key
        if not norm_key:
            raise FormatError(f"{path}: entry key {key!r} normalizes to empty")
        if norm_key in entries:
            raise FormatError(f"{path}: duplicate entry key {norm_key!r}")
        norm_meanings = frozenset(m for m in (normalize(x) for x in meanings) if m)
        if not norm_meanings:
            raise FormatError(f"{path}: entry {key!r} has no usable meanings after normalization")
        entries[norm_key] = norm_meanings
    return GoldPairings(keyed_by=keyed_by, entries=entries)


@dataclass(frozen=True)
class EvalReport:
    mode: MatchMode
    per_key: Mapping[str, MetricCounts]
    aggregate: MetricCounts
    precision: float
    recall: float
    f1: float
    missing_embeddings: tuple[str, ...] = field(default=(), compare=False)

    @staticmethod
    def build(
        mode: MatchMode,
        per_key: Mapping[str, MetricCounts],
        missing_embeddings: Iterable[str] = (),
    ) -> "EvalReport":
        aggregate = MetricCounts()
        for counts in per_key.values():
            aggregate = aggregate + counts
        precision, recall, f1 = precision_recall_f1(aggregate)
        return EvalReport(
            mode=mode,
            per_key=dict(sorted(per_key.items())),
            aggregate=aggregate,
            precision=precision,
            recall=recall,
            f1=f1,
            missing_embeddings=tuple(sorted(set(missing_embeddings))),
        )

    def to_document(self) -> dict:
        mode_doc: dict = {"kind": self.mode.kind}
        if self.mode.threshold is not None:
            mode_doc["threshold"] = self.mode.threshold
        return {
            "mode": mode_doc,
            "per_key": {
                key: {"tp": c.tp, "fp": c.fp, "fn": c.fn} for key, c in self.per_key.items()
            },
            "aggregate": {
                "tp": self.aggregate.tp,
                "fp": self.aggregate.fp,
                "fn": self.aggregate.fn,
            },
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def _render_json(value: object, indent: int) -> str:
    # json.dumps cannot print floats with a fixed number of decimals, and the
    # report contract wants 6, so the renderer is hand-rolled.
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [
            f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_render_json(v, indent + 1)}"
            for k, v in sorted(value.items())
        ]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(value, list):
        if not value:
            return "[]"
        parts = [f"{inner}{_render_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    raise TypeError(f"cannot render {type(value).__name__} in a report")


def render_report(report: EvalReport) -> bytes:
    """Deterministic UTF-8 report rendering: keys sorted, floats at 6 decimals."""
    return (_render_json(report.to_document(), 0) + "\n").encode("utf-8")


def save_report(report: EvalReport, path: str | Path) -> None:
    Path(path).write_bytes(render_report(report))


def evaluate_kg(
    graph: KnowledgeGraph,
    gold: GoldPairings,
    mode: MatchMode,
    embeddings: EmbeddingTable | None = None,
) -> EvalReport:
    """Score the graph against object-keyed gold pairings.

    Each object's predicted meanings are the tails returned by querying the
    graph for it; an object the graph does not know predicts nothing.
    """
    if gold.keyed_by != "object":
        raise InputError(f"knowledge-graph evaluation needs object-keyed gold, got {gold.keyed_by!r}")
    if not gold.entries:
        raise InputError("gold pairings are empty")
    missing: set[str] = set()
    per_key = {}
    for key in sorted(gold.entries):
        predicted = [tail for tail, _ in query(graph, key)]
        per_key[key] = classify(predicted, gold.entries[key], mode, embeddings, missing=missing)
    if missing:
        logger.warning("%d phrase(s) had no embedding during evaluation", len(missing))
    return EvalReport.build(mode, per_key, missing_embeddings=missing)


def evaluate_e2e(
    graph: KnowledgeGraph,
    detections: Mapping[str, DetectionSet],
    gold: GoldPairings,
    mode: MatchMode,
    embeddings: EmbeddingTable | None = None,
    *,
    confidence_threshold: float = 0.5,
    strip_determiners: bool = True,
) -> EvalReport:
    """Score image -> meanings mapping built from per-image detections.

    An image's predicted meanings are the deduplicated union of graph tails
    over its detected labels at or above the confidence threshold. The
    determiner flag must match the one the graph was built with.
    """
    if gold.keyed_by != "image":
        raise InputError(f"end-to-end evaluation needs image-keyed gold, got {gold.keyed_by!r}")
    if not gold.entries:
        raise InputError("gold pairings are empty")
    absent = sorted(set(gold.entries) - set(detections))
    if absent:
        raise InputError(f"gold image ids missing from detections: {', '.join(absent)}")
    missing: set[str] = set()
    per_key = {}
    for image_id in sorted(gold.entries):
        predicted: set[str] = set()
        labels = detections[image_id].labels_at_or_above(
            confidence_threshold, strip_determiners=strip_determiners
        )
        for label in labels:
            predicted.update(tail for tail, _ in query(graph, label))
        per_key[image_id] = classify(predicted, gold.entries[image_id], mode, embeddings, missing=missing)
    if missing:
        logger.warning("%d phrase(s) had no embedding during evaluation", len(missing))
    return EvalReport.build(mode, per_key, missing_embeddings=missing)
