"""Pipeline configuration: one TOML file drives every CLI command.

Relative paths in the file resolve against the config file's directory, so a
checked-in fixture tree works from any working directory. Command-line flags
override individual values; `--print-config` shows the effective result.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import FormatError, ValidationError
from .evaluation import DEFAULT_SEMANTIC_THRESHOLD, MATCH_KINDS
from .extraction import DEFAULT_EXCLUDED_LABELS, NER_LABELS
from .terms import normalize

DEFAULT_DETECTION_CONFIDENCE = 0.5


@dataclass(frozen=True)
class PipelineConfig:
    # input files; unused ones may stay None
    frames: Path | None = None
    ner: Path | None = None
    embeddings: Path | None = None
    detections: Path | None = None
    gold_objects: Path | None = None
    gold_images: Path | None = None
    url_list: Path | None = None
    test_refs: Path | None = None
    cache_dir: Path = Path("cache")
    output_dir: Path = Path("out")
    # extraction
    min_weight: int = 2
    excluded_entity_labels: frozenset[str] = DEFAULT_EXCLUDED_LABELS
    vocabulary: frozenset[str] = frozenset()
    strip_determiners: bool = True
    head_aliases: dict[str, str] = field(default_factory=dict)
    # matching
    mode: str = "exact"
    semantic_threshold: float = DEFAULT_SEMANTIC_THRESHOLD
    detection_confidence: float = DEFAULT_DETECTION_CONFIDENCE
    # corpus politeness
    politeness_delay: float = 1.0
    parallelism: int = 4
    timeout: float = 10.0

    def __post_init__(self) -> None:
        if self.min_weight < 1:
            raise ValidationError(f"min_weight must be >= 1, got {self.min_weight}")
        if self.mode not in MATCH_KINDS:
            raise ValidationError(f"mode must be one of {MATCH_KINDS}, got {self.mode!r}")
        if not (0.0 < self.semantic_threshold <= 1.0):
            raise ValidationError(f"semantic_threshold must be in (0, 1], got {self.semantic_threshold}")
        if not (0.0 <= self.detection_confidence <= 1.0):
            raise ValidationError(
                f"detection_confidence must be in [0, 1], got {self.detection_confidence}"
            )
        if self.politeness_delay < 0 or self.timeout <= 0 or self.parallelism < 1:
            raise ValidationError("corpus settings out of range")
        unknown = set(self.excluded_entity_labels) - NER_LABELS
        if unknown:
            raise ValidationError(f"unknown excluded entity labels: {sorted(unknown)}")

    def to_document(self) -> dict:
        doc: dict = {}
        for name in (
            "frames", "ner", "embeddings", "detections", "gold_objects",
            "gold_images", "url_list", "test_refs", "cache_dir", "output_dir",
        ):
            value = getattr(self, name)
            doc[name] = str(value) if value is not None else None
        doc.update(
            min_weight=self.min_weight,
            excluded_entity_labels=sorted(self.excluded_entity_labels),
            vocabulary=sorted(self.vocabulary),
            strip_determiners=self.strip_determiners,
            head_aliases=dict(sorted(self.head_aliases.items())),
            mode=self.mode,
            semantic_threshold=self.semantic_threshold,
            detection_confidence=self.detection_confidence,
            politeness_delay=self.politeness_delay,
            parallelism=self.parallelism,
            timeout=self.timeout,
        )
        return doc


_PATH_KEYS = (
    "frames", "ner", "embeddings", "detections", "gold_objects", "gold_images",
    "url_list", "test_refs", "cache_dir", "output_dir",
)


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    try:
        with path.open("rb") as handle:
            data = tomllib.load(handle)
    except FileNotFoundError:
        raise FormatError(f"{path}: config file not found")
    except tomllib.TOMLDecodeError as exc:
        raise FormatError(f"{path}: not valid TOML: {exc}") from exc
    base = path.resolve().parent

    def resolve(value: str) -> Path:
        p = Path(value)
        return p if p.is_absolute() else base / p

    kwargs: dict = {}
    paths = data.get("paths", {})
    if not isinstance(paths, dict):
        raise FormatError(f"{path}: [paths] must be a table")
    for key, value in paths.items():
        if key not in _PATH_KEYS:
            raise FormatError(f"{path}: unknown key paths.{key}")
        if not isinstance(value, str):
            raise FormatError(f"{path}: paths.{key} must be a string")
        kwargs[key] = resolve(value)

    extraction = data.get("extraction", {})
    if not isinstance(extraction, dict):
        raise FormatError(f"{path}: [extraction] must be a table")
    if "min_weight" in extraction:
        kwargs["min_weight"] = _expect_int(path, "extraction.min_weight", extraction["min_weight"])
    if "excluded_entity_labels" in extraction:
        labels = extraction["excluded_entity_labels"]
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise FormatError(f"{path}: extraction.excluded_entity_labels must be a string array")
        kwargs["excluded_entity_labels"] = frozenset(labels)
    if "vocabulary" in extraction:
        vocab = extraction["vocabulary"]
        if not isinstance(vocab, list) or not all(isinstance(x, str) for x in vocab):
            raise FormatError(f"{path}: extraction.vocabulary must be a string array")
        kwargs["vocabulary"] = frozenset(t for t in (normalize(x) for x in vocab) if t)
    if "strip_determiners" in extraction:
        if not isinstance(extraction["strip_determiners"], bool):
            raise FormatError(f"{path}: extraction.strip_determiners must be a boolean")
        kwargs["strip_determiners"] = extraction["strip_determiners"]
    if "aliases" in extraction:
        aliases = extraction["aliases"]
        if not isinstance(aliases, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in aliases.items()
        ):
            raise FormatError(f"{path}: extraction.aliases must be a string-to-string table")
        kwargs["head_aliases"] = {
            normalize(k): normalize(v) for k, v in aliases.items() if normalize(k) and normalize(v)
        }

    matching = data.get("matching", {})
    if not isinstance(matching, dict):
        raise FormatError(f"{path}: [matching] must be a table")
    if "mode" in matching:
        kwargs["mode"] = matching["mode"]
    if "semantic_threshold" in matching:
        kwargs["semantic_threshold"] = _expect_number(
            path, "matching.semantic_threshold", matching["semantic_threshold"]
        )
    if "detection_confidence" in matching:
        kwargs["detection_confidence"] = _expect_number(
            path, "matching.detection_confidence", matching["detection_confidence"]
        )

    corpus = data.get("corpus", {})
    if not isinstance(corpus, dict):
        raise FormatError(f"{path}: [corpus] must be a table")
    if "politeness_delay" in corpus:
        kwargs["politeness_delay"] = _expect_number(path, "corpus.politeness_delay", corpus["politeness_delay"])
    if "parallelism" in corpus:
        kwargs["parallelism"] = _expect_int(path, "corpus.parallelism", corpus["parallelism"])
    if "timeout" in corpus:
        kwargs["timeout"] = _expect_number(path, "corpus.timeout", corpus["timeout"])

    known_tables = {"paths", "extraction", "matching", "corpus"}
    stray = set(data) - known_tables
    if stray:
        raise FormatError(f"{path}: unknown top-level keys: {sorted(stray)}")
    try:
        return PipelineConfig(**kwargs)
    except ValidationError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def _expect_int(path: Path, key: str, value: object) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"{path}: {key} must be an integer")
    return value


def _expect_number(path: Path, key: str, value: object) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise FormatError(f"{path}: {key} must be a number")
    return float(value)


def override(config: PipelineConfig, **changes) -> PipelineConfig:
    """New config with the given non-None fields replaced."""
    effective = {k: v for k, v in changes.items() if v is not None}
    return replace(config, **effective) if effective else config
