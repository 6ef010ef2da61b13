"""Builds a pruned knowledge graph from semantic-role frames and entity tags.

Construction rules: the head of each frame is its ARG0 argument, falling back
to ARG1; every other argument becomes a tail paired with that head. Edge
weights count how often each (head, tail) pair occurred. The finished graph is
then pruned in a fixed order: restrict heads to the detector vocabulary, drop
tails tagged as excluded entity kinds, drop light edges.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import graph as kg
from .errors import FormatError, ValidationError
from .terms import normalize

ROLE_PATTERN = re.compile(r"^(ARG[0-9]|ARGM-[A-Z0-9]+)$")

NER_LABELS = frozenset({"PERSON", "ORG", "GPE", "LOC", "OTHER"})

DEFAULT_EXCLUDED_LABELS = frozenset({"PERSON", "ORG", "GPE", "LOC"})


@dataclass(frozen=True)
class SrlFrame:
    """One predicate with its labeled arguments, the unit of extraction."""

    doc_id: str
    sentence_index: int
    predicate: str
    args: Mapping[str, str]

    def __post_init__(self) -> None:
        if self.sentence_index < 0:
            raise ValidationError(f"sentence_index must be >= 0, got {self.sentence_index}")
        if not self.args:
            raise ValidationError("frame has no arguments")
        for role, text in self.args.items():
            if not ROLE_PATTERN.match(role):
                raise ValidationError(f"invalid role label {role!r}")
            if not isinstance(text, str) or not text:
                raise ValidationError(f"argument {role} has empty text")


@dataclass(frozen=True)
class NerAnnotation:
    """A named-entity mention with its (closed-set) label."""

    doc_id: str
    term: str
    label: str

    def __post_init__(self) -> None:
        if self.label not in NER_LABELS:
            raise ValidationError(f"unknown entity label {self.label!r} (expected one of {sorted(NER_LABELS)})")


@dataclass(frozen=True)
class ExtractionConfig:
    """Knobs for graph construction and pruning."""

    min_weight: int = 2
    excluded_entity_labels: frozenset[str] = DEFAULT_EXCLUDED_LABELS
    vocabulary: frozenset[str] = frozenset()
    strip_determiners: bool = True
    head_aliases: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.min_weight < 1:
            raise ValidationError(f"min_weight must be >= 1, got {self.min_weight}")
        unknown = set(self.excluded_entity_labels) - NER_LABELS
        if unknown:
            raise ValidationError(f"unknown excluded entity labels: {sorted(unknown)}")


def head_of(frame: SrlFrame, *, strip_determiners: bool = True) -> tuple[str, str] | None:
    """(head term, role it came from), or None when no head rule applies.

    ARG0 wins; an ARG0 that normalizes to nothing falls through to ARG1.
    """
    for role in ("ARG0", "ARG1"):
        raw = frame.args.get(role)
        if raw is None:
            continue
        term = normalize(raw, strip_determiners=strip_determiners)
        if term:
            return term, role
    return None


def tails_of(frame: SrlFrame, head_role: str, *, strip_determiners: bool = True) -> list[str]:
    """Normalized texts of every argument except *head_role*, in role-label order."""
    if head_role not in frame.args:
        raise ValidationError(f"head role {head_role!r} not present in frame arguments")
    tails = []
    for role in sorted(frame.args):
        if role == head_role:
            continue
        term = normalize(frame.args[role], strip_determiners=strip_determiners)
        if term:
            tails.append(term)
    return tails


def count_associations(
    frames: Iterable[SrlFrame],
    *,
    strip_determiners: bool = True,
    head_aliases: Mapping[str, str] | None = None,
) -> tuple[Counter[tuple[str, str]], int, int]:
    """(pair counts, frames skipped for lack of a head, pairs emitted)."""
    aliases = head_aliases or {}
    counts: Counter[tuple[str, str]] = Counter()
    skipped = 0
    emitted = 0
    for frame in frames:
        head = head_of(frame, strip_determiners=strip_determiners)
        if head is None:
            skipped += 1
            continue
        head_term, head_role = head
        head_term = aliases.get(head_term, head_term)
        for tail in tails_of(frame, head_role, strip_determiners=strip_determiners):
            counts[(head_term, tail)] += 1
            emitted += 1
    return counts, skipped, emitted


def frames_to_graph(
    frames: Iterable[SrlFrame],
    *,
    strip_determiners: bool = True,
    head_aliases: Mapping[str, str] | None = None,
) -> kg.KnowledgeGraph:
    """Unpruned graph whose edge weights are raw (head, tail) occurrence counts."""
    counts, _, _ = count_associations(
        frames, strip_determiners=strip_determiners, head_aliases=head_aliases
    )
    return kg.KnowledgeGraph(dict(counts))


def banned_terms(
    annotations: Iterable[NerAnnotation],
    excluded_labels: Iterable[str],
    *,
    strip_determiners: bool = True,
) -> frozenset[str]:
    """Normalized terms of every annotation carrying an excluded label.

    Normalization must mirror tail normalization (same determiner handling),
    otherwise a span like "the Netherlands" would never hit the tail it bans.
    """
    excluded = frozenset(excluded_labels)
    banned = set()
    for ann in annotations:
        if ann.label in excluded:
            term = normalize(ann.term, strip_determiners=strip_determiners)
            if term:
                banned.add(term)
    return frozenset(banned)


@dataclass(frozen=True)
class StageStat:
    stage: str
    edges_before: int
    edges_after: int
    weight_before: int
    weight_after: int


@dataclass(frozen=True)
class BuildResult:
    graph: kg.KnowledgeGraph
    frames_read: int
    frames_skipped_no_head: int
    associations_emitted: int
    stages: tuple[StageStat, ...]

    def stats_document(self) -> dict:
        return {
            "frames_read": self.frames_read,
            "frames_skipped_no_head": self.frames_skipped_no_head,
            "associations_emitted": self.associations_emitted,
            "stages": [
                {
                    "stage": s.stage,
                    "edges_before": s.edges_before,
                    "edges_after": s.edges_after,
                    "weight_before": s.weight_before,
                    "weight_after": s.weight_after,
                }
                for s in self.stages
            ],
        }


def build_graph_pipeline(
    frames: Sequence[SrlFrame],
    annotations: Sequence[NerAnnotation],
    config: ExtractionConfig,
) -> BuildResult:
    """Full construction pipeline with per-stage observability.

    Stage order is fixed: vocabulary restriction, entity exclusion, weight
    threshold. The order matters (weight pruning first would change results)
    and is covered by tests.
    """
    if not config.vocabulary:
        raise ValidationError("vocabulary must be non-empty to build a pruned graph")
    counts, skipped, emitted = count_associations(
        frames,
        strip_determiners=config.strip_determiners,
        head_aliases=config.head_aliases,
    )
    stages = []
    current = kg.KnowledgeGraph(dict(counts))

    def run_stage(name: str, result: kg.KnowledgeGraph, before: kg.KnowledgeGraph) -> kg.KnowledgeGraph:
        stages.append(
            StageStat(
                stage=name,
                edges_before=before.edge_count(),
                edges_after=result.edge_count(),
                weight_before=before.total_weight(),
                weight_after=result.total_weight(),
            )
        )
        return result

    current = run_stage(
        "restrict_signifiers", kg.restrict_signifiers(current, config.vocabulary), current
    )
    banned = banned_terms(
        annotations, config.excluded_entity_labels, strip_determiners=config.strip_determiners
    )
    current = run_stage("remove_signifieds", kg.remove_signifieds(current, banned), current)
    current = run_stage("prune_min_weight", kg.prune_min_weight(current, config.min_weight), current)
    return BuildResult(
        graph=current,
        frames_read=len(frames),
        frames_skipped_no_head=skipped,
        associations_emitted=emitted,
        stages=tuple(stages),
    )


def build_pruned_graph(
    frames: Sequence[SrlFrame],
    annotations: Sequence[NerAnnotation],
    config: ExtractionConfig,
) -> kg.KnowledgeGraph:
    return build_graph_pipeline(frames, annotations, config).graph


def _parse_jsonl(path: Path) -> Iterable[tuple[int, dict]]:
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}:{lineno}: not valid JSON: {exc.msg}") from exc
            if not isinstance(record, dict):
                raise FormatError(f"{path}:{lineno}: expected a JSON object")
            yield lineno, record


def read_frames_jsonl(path: str | Path) -> list[SrlFrame]:
    """Parse a frames file; FormatError messages carry path:line context."""
    path = Path(path)
    frames = []
    for lineno, record in _parse_jsonl(path):
        try:
            doc_id = record["doc_id"]
            sentence_index = record["sentence_index"]
            predicate = record["predicate"]
            args = record["args"]
        except KeyError as exc:
            raise FormatError(f"{path}:{lineno}: missing field {exc.args[0]!r}") from exc
        if not isinstance(doc_id, str) or not isinstance(predicate, str):
            raise FormatError(f"{path}:{lineno}: doc_id and predicate must be strings")
        if not isinstance(sentence_index, int) or isinstance(sentence_index, bool):
            raise FormatError(f"{path}:{lineno}: sentence_index must be an integer")
        if not isinstance(args, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in args.items()
        ):
            raise FormatError(f"{path}:{lineno}: args must be a string-to-string object")
        try:
            frames.append(
                SrlFrame(doc_id=doc_id, sentence_index=sentence_index, predicate=predicate, args=args)
            )
        except ValidationError as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from exc
    return frames


def read_ner_jsonl(path: str | Path) -> list[NerAnnotation]:
    """Parse an entity-annotation file; FormatError messages carry path:line context."""
    path = Path(path)
    annotations = []
    for lineno, record in _parse_jsonl(path):
        try:
            doc_id = record["doc_id"]
            term = record["term"]
            label = record["label"]
        except KeyError as exc:
            raise FormatError(f"{path}:{lineno}: missing field {exc.args[0]!r}") from exc
        if not isinstance(doc_id, str) or not isinstance(term, str) or not isinstance(label, str):
            raise FormatError(f"{path}:{lineno}: doc_id, term and label must be strings")
        try:
            annotations.append(NerAnnotation(doc_id=doc_id, term=term, label=label))
        except ValidationError as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from exc
    return annotations
