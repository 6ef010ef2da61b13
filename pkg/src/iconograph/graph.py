"""Weighted bipartite knowledge graph from signifier terms to signified phrases.

The graph is its edges: node sets are the projections of the edge map, so no
isolated nodes can exist. Instances are treated as immutable; every operation
returns a new graph and completed graphs are safe to share across readers.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping

from .errors import FormatError, ValidationError
from .terms import is_normalized, normalize

SCHEMA_VERSION = 1

Edge = tuple[str, str]


class KnowledgeGraph:
    """Immutable weighted bipartite graph keyed by (signifier, signified) pairs."""

    __slots__ = ("_edges", "schema_version", "_signifiers", "_signifieds")

    def __init__(self, edges: Mapping[Edge, int] | None = None, schema_version: int = SCHEMA_VERSION):
        items = sorted((edges or {}).items())
        for (head, tail), weight in items:
            _check_term(head, "head")
            _check_term(tail, "tail")
            _check_weight(weight)
        self._edges: dict[Edge, int] = dict(items)
        self.schema_version = schema_version
        self._signifiers = frozenset(h for h, _ in self._edges)
        self._signifieds = frozenset(t for _, t in self._edges)

    @property
    def signifiers(self) -> frozenset[str]:
        return self._signifiers

    @property
    def signifieds(self) -> frozenset[str]:
        return self._signifieds

    @property
    def edges(self) -> dict[Edge, int]:
        """Copy of the edge map; mutating it does not affect the graph."""
        return dict(self._edges)

    def edge_count(self) -> int:
        return len(self._edges)

    def total_weight(self) -> int:
        return sum(self._edges.values())

    def weight(self, head: str, tail: str) -> int:
        """Weight of the (head, tail) edge, 0 when absent."""
        return self._edges.get((head, tail), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return self.schema_version == other.schema_version and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.schema_version, tuple(sorted(self._edges.items()))))

    def __repr__(self) -> str:
        return (
            f"KnowledgeGraph(edges={len(self._edges)}, signifiers={len(self._signifiers)}, "
            f"signifieds={len(self._signifieds)})"
        )

    def validate(self) -> None:
        """Re-check every invariant; raises ValidationError on the first breach."""
        for (head, tail), weight in self._edges.items():
            _check_term(head, "head")
            _check_term(tail, "tail")
            _check_weight(weight)
        if self._signifiers != frozenset(h for h, _ in self._edges):
            raise ValidationError("signifier set out of sync with edges")
        if self._signifieds != frozenset(t for _, t in self._edges):
            raise ValidationError("signified set out of sync with edges")


def _check_term(text: str, role: str) -> None:
    if not isinstance(text, str) or not is_normalized(text):
        raise ValidationError(f"invalid {role} term: {text!r} (must be non-empty normalized text)")


def _check_weight(weight: int) -> None:
    if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
        raise ValidationError(f"invalid edge weight: {weight!r} (must be a positive integer)")


def empty_graph() -> KnowledgeGraph:
    return KnowledgeGraph({})


def add_association(graph: KnowledgeGraph, head: str, tail: str, count: int = 1) -> KnowledgeGraph:
    """Return a graph with the (head, tail) edge weight increased by *count*.

    Inputs are normalized here, so callers may pass raw-ish phrases; a phrase
    that normalizes to nothing is a validation error.
    """
    if count < 1:
        raise ValidationError(f"association count must be >= 1, got {count}")
    head_term = normalize(head)
    tail_term = normalize(tail)
    if not head_term:
        raise ValidationError(f"head normalizes to empty term: {head!r}")
    if not tail_term:
        raise ValidationError(f"tail normalizes to empty term: {tail!r}")
    edges = graph.edges
    key = (head_term, tail_term)
    edges[key] = edges.get(key, 0) + count
    return KnowledgeGraph(edges, graph.schema_version)


def merge(a: KnowledgeGraph, b: KnowledgeGraph) -> KnowledgeGraph:
    """Union of edge sets with weights of shared edges summed."""
    if a.schema_version != b.schema_version:
        raise FormatError(
            f"cannot merge graphs with schema_version {a.schema_version} and {b.schema_version}"
        )
    edges = a.edges
    for key, weight in b.edges.items():
        edges[key] = edges.get(key, 0) + weight
    return KnowledgeGraph(edges, a.schema_version)


def prune_min_weight(graph: KnowledgeGraph, min_weight: int) -> KnowledgeGraph:
    """Drop every edge lighter than *min_weight*; surviving weights are untouched."""
    if min_weight < 1:
        raise ValidationError(f"min_weight must be >= 1, got {min_weight}")
    kept = {key: w for key, w in graph.edges.items() if w >= min_weight}
    return KnowledgeGraph(kept, graph.schema_version)


def restrict_signifiers(graph: KnowledgeGraph, vocabulary: Iterable[str]) -> KnowledgeGraph:
    """Keep only edges whose head is in *vocabulary*."""
    vocab = frozenset(vocabulary)
    kept = {(h, t): w for (h, t), w in graph.edges.items() if h in vocab}
    return KnowledgeGraph(kept, graph.schema_version)


def remove_signifieds(graph: KnowledgeGraph, banned: Iterable[str]) -> KnowledgeGraph:
    """Drop edges whose tail is in *banned*."""
    banned_set = frozenset(banned)
    kept = {(h, t): w for (h, t), w in graph.edges.items() if t not in banned_set}
    return KnowledgeGraph(kept, graph.schema_version)


def query(graph: KnowledgeGraph, signifier: str) -> list[tuple[str, int]]:
    """Signifieds adjacent to *signifier*, heaviest first, ties in tail order.

    Unknown signifiers give an empty list; absence is not an error.
    """
    term = normalize(signifier)
    hits = [(t, w) for (h, t), w in graph.edges.items() if h == term]
    hits.sort(key=lambda item: (-item[1], item[0]))
    return hits


def to_document(graph: KnowledgeGraph) -> dict:
    """JSON-ready dict in the documented on-disk schema (deterministic order)."""
    return {
        "schema_version": graph.schema_version,
        "signifiers": sorted(graph.signifiers),
        "signifieds": sorted(graph.signifieds),
        "edges": [
            {"head": h, "tail": t, "weight": w}
            for (h, t), w in sorted(graph.edges.items())
        ],
    }


def serialize(graph: KnowledgeGraph) -> bytes:
    """Byte-deterministic UTF-8 rendering of the graph document."""
    text = json.dumps(to_document(graph), ensure_ascii=False, indent=2)
    return (text + "\n").encode("utf-8")


def save(graph: KnowledgeGraph, path: str | Path) -> None:
    Path(path).write_bytes(serialize(graph))


def from_document(doc: object, *, source: str = "<graph>") -> KnowledgeGraph:
    """Parse and validate a graph document; FormatError carries field context."""
    if not isinstance(doc, dict):
        raise FormatError(f"{source}: graph document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise FormatError(f"{source}: unknown schema_version {version!r} (expected {SCHEMA_VERSION})")
    for field in ("signifiers", "signifieds", "edges"):
        if not isinstance(doc.get(field), list):
            raise FormatError(f"{source}: field {field!r} must be a list")
    edges: dict[Edge, int] = {}
    for index, entry in enumerate(doc["edges"]):
        where = f"{source}: edges[{index}]"
        if not isinstance(entry, dict):
            raise FormatError(f"{where}: edge must be an object")
        head = entry.get("head")
        tail = entry.get("tail")
        weight = entry.get("weight")
        if not isinstance(head, str) or not isinstance(tail, str):
            raise FormatError(f"{where}: head and tail must be strings")
        if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
            raise FormatError(f"{where}: weight must be a positive integer, got {weight!r}")
        if (head, tail) in edges:
            raise FormatError(f"{where}: duplicate edge ({head!r}, {tail!r})")
        edges[(head, tail)] = weight
    try:
        graph = KnowledgeGraph(edges)
    except ValidationError as exc:
        raise FormatError(f"{source}: {exc}") from exc
    if set(doc["signifiers"]) != set(graph.signifiers):
        raise FormatError(f"{source}: signifier list does not match edge heads (isolated or missing nodes)")
    if set(doc["signifieds"]) != set(graph.signifieds):
        raise FormatError(f"{source}: signified list does not match edge tails (isolated or missing nodes)")
    return graph


def load(path: str | Path) -> KnowledgeGraph:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON: {exc}") from exc
    return from_document(doc, source=str(path))
