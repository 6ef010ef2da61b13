"""Per-image detected object labels with confidences, ingested as data files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import FormatError, ValidationError
from .terms import normalize


@dataclass(frozen=True)
class Detection:
    label: str
    score: float
    bbox: tuple[float, float, float, float] | None = None

    def __post_init__(self) -> None:
        if not self.label:
            raise ValidationError("detection label must be non-empty")
        if not (0.0 <= self.score <= 1.0):
            raise ValidationError(f"detection score must be in [0, 1], got {self.score}")


@dataclass(frozen=True)
class DetectionSet:
    image_id: str
    detections: tuple[Detection, ...]

    def labels_at_or_above(self, threshold: float, *, strip_determiners: bool = True) -> list[str]:
        """Normalized labels whose score reaches *threshold*, input order kept.

        Label normalization must agree with head normalization in the
        extraction pipeline, otherwise detected objects cannot reach their
        graph nodes; hence the shared determiner flag.
        """
        labels = []
        for det in self.detections:
            if det.score >= threshold:
                term = normalize(det.label, strip_determiners=strip_determiners)
                if term:
                    labels.append(term)
        return labels


def read_detections_jsonl(path: str | Path) -> dict[str, DetectionSet]:
    """One DetectionSet per line, keyed by image id; duplicate ids are rejected."""
    path = Path(path)
    result: dict[str, DetectionSet] = {}
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
            image_id = record.get("image_id")
            if not isinstance(image_id, str) or not image_id:
                raise FormatError(f"{path}:{lineno}: field 'image_id' must be a non-empty string")
            if image_id in result:
                raise FormatError(f"{path}:{lineno}: duplicate image_id {image_id!r}")
            raw_detections = record.get("detections")
            if not isinstance(raw_detections, list):
                raise FormatError(f"{path}:{lineno}: field 'detections' must be a list")
            detections = []
            for index, det in enumerate(raw_detections):
                where = f"{path}:{lineno}: detections[{index}]"
                if not isinstance(det, dict):
                    raise FormatError(f"{where}: must be an object")
                label = det.get("label")
                score = det.get("score")
                if not isinstance(label, str) or not label:
                    raise FormatError(f"{where}: field 'label' must be a non-empty string")
                if not isinstance(score, (int, float)) or isinstance(score, bool):
                    raise FormatError(f"{where}: field 'score' must be a number")
                bbox = det.get("bbox")
                parsed_bbox = None
                if bbox is not None:
                    if (
                        not isinstance(bbox, list)
                        or len(bbox) != 4
                        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in bbox)
                    ):
                        raise FormatError(f"{where}: field 'bbox' must be [x, y, w, h]")
                    parsed_bbox = tuple(float(x) for x in bbox)
                try:
                    detections.append(Detection(label=label, score=float(score), bbox=parsed_bbox))
                except ValidationError as exc:
                    raise FormatError(f"{where}: {exc}") from exc
            result[image_id] = DetectionSet(image_id=image_id, detections=tuple(detections))
    return result


def vocabulary_from_detections(
    detections: dict[str, DetectionSet], *, strip_determiners: bool = True
) -> frozenset[str]:
    """Distinct normalized labels across all images, regardless of confidence."""
    vocab = set()
    for det_set in detections.values():
        for det in det_set.detections:
            term = normalize(det.label, strip_determiners=strip_determiners)
            if term:
                vocab.add(term)
    return frozenset(vocab)
