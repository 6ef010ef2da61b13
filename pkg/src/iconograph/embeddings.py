"""Phrase embedding table and cosine similarity for semantic matching."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Mapping, Sequence

from .errors import ComputationError, FormatError
from .terms import normalize

Vector = tuple[float, ...]


def cosine_similarity(u: Sequence[float], v: Sequence[float]) -> float:
    """dot(u, v) / (|u| * |v|), clamped to [-1, 1] against rounding overshoot."""
    if len(u) != len(v):
        raise ComputationError(f"vector dimensions differ: {len(u)} vs {len(v)}")
    dot = 0.0
    norm_u = 0.0
    norm_v = 0.0
    for a, b in zip(u, v):
        dot += a * b
        norm_u += a * a
        norm_v += b * b
    if norm_u == 0.0 or norm_v == 0.0:
        raise ComputationError("cosine similarity is undefined for a zero vector")
    value = dot / math.sqrt(norm_u * norm_v)
    return max(-1.0, min(1.0, value))


class EmbeddingTable:
    """Normalized phrase -> fixed-dimension vector, read-only after load."""

    def __init__(self, entries: Mapping[str, Sequence[float]]):
        if not entries:
            raise ComputationError("embedding table must contain at least one entry")
        table: dict[str, Vector] = {}
        dimension: int | None = None
        for phrase, vector in entries.items():
            key = normalize(phrase)
            if not key:
                raise ComputationError(f"embedding phrase normalizes to empty: {phrase!r}")
            vec = tuple(float(x) for x in vector)
            if dimension is None:
                dimension = len(vec)
            if len(vec) != dimension:
                raise ComputationError(
                    f"embedding for {phrase!r} has dimension {len(vec)}, expected {dimension}"
                )
            if not all(math.isfinite(x) for x in vec):
                raise ComputationError(f"embedding for {phrase!r} has non-finite components")
            if all(x == 0.0 for x in vec):
                raise ComputationError(f"embedding for {phrase!r} is the zero vector")
            table[key] = vec
        assert dimension is not None
        self._table = table
        self.dimension = dimension

    def __len__(self) -> int:
        return len(self._table)

    def __contains__(self, phrase: str) -> bool:
        return normalize(phrase) in self._table

    def lookup(self, phrase: str) -> Vector | None:
        """Vector for *phrase* (normalized first), or None when absent."""
        return self._table.get(normalize(phrase))

    def similarity(self, a: str, b: str) -> float | None:
        """Cosine between two phrases, or None when either is missing."""
        va = self.lookup(a)
        vb = self.lookup(b)
        if va is None or vb is None:
            return None
        return cosine_similarity(va, vb)


def read_embeddings_jsonl(path: str | Path) -> EmbeddingTable:
    """Load {"text", "vector"} lines; dimension is fixed by the first line."""
    path = Path(path)
    entries: dict[str, list[float]] = {}
    dimension: int | None = None
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
            text = record.get("text")
            vector = record.get("vector")
            if not isinstance(text, str) or not text:
                raise FormatError(f"{path}:{lineno}: field 'text' must be a non-empty string")
            if not isinstance(vector, list) or not vector or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in vector
            ):
                raise FormatError(f"{path}:{lineno}: field 'vector' must be a non-empty number array")
            if dimension is None:
                dimension = len(vector)
            elif len(vector) != dimension:
                raise FormatError(
                    f"{path}:{lineno}: vector has dimension {len(vector)}, expected {dimension}"
                )
            key = normalize(text)
            if not key:
                raise FormatError(f"{path}:{lineno}: text normalizes to empty: {text!r}")
            if key in entries:
                raise FormatError(f"{path}:{lineno}: duplicate phrase {key!r}")
            entries[key] = [float(x) for x in vector]
    if not entries:
        raise FormatError(f"{path}: embeddings file is empty")
    try:
        return EmbeddingTable(entries)
    except ComputationError as exc:
        raise FormatError(f"{path}: {exc}") from exc
