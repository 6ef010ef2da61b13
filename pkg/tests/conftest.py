"""Shared fixtures: the checked-in corpus under tests/data and parsed views of it."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from iconograph.detections import read_detections_jsonl, vocabulary_from_detections
from iconograph.embeddings import read_embeddings_jsonl
from iconograph.evaluation import read_gold_json
from iconograph.extraction import (
    ExtractionConfig,
    build_graph_pipeline,
    read_frames_jsonl,
    read_ner_jsonl,
)

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = DATA_DIR / "golden"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture(scope="session")
def frame_records() -> list[dict]:
    lines = (DATA_DIR / "frames.jsonl").read_text(encoding="utf-8").splitlines()
    return [json.loads(line) for line in lines if line.strip()]


@pytest.fixture(scope="session")
def ner_records() -> list[dict]:
    lines = (DATA_DIR / "ner.jsonl").read_text(encoding="utf-8").splitlines()
    return [json.loads(line) for line in lines if line.strip()]


@pytest.fixture(scope="session")
def frames():
    return read_frames_jsonl(DATA_DIR / "frames.jsonl")


@pytest.fixture(scope="session")
def annotations():
    return read_ner_jsonl(DATA_DIR / "ner.jsonl")


@pytest.fixture(scope="session")
def detections_map():
    return read_detections_jsonl(DATA_DIR / "detections.jsonl")


@pytest.fixture(scope="session")
def embedding_table():
    return read_embeddings_jsonl(DATA_DIR / "embeddings.jsonl")


@pytest.fixture(scope="session")
def gold_objects():
    return read_gold_json(DATA_DIR / "gold_objects.json")


@pytest.fixture(scope="session")
def gold_images():
    return read_gold_json(DATA_DIR / "gold_images.json")


@pytest.fixture(scope="session")
def fixture_config(detections_map) -> ExtractionConfig:
    return ExtractionConfig(min_weight=2, vocabulary=vocabulary_from_detections(detections_map))


@pytest.fixture(scope="session")
def fixture_build(frames, annotations, fixture_config):
    return build_graph_pipeline(frames, annotations, fixture_config)


@pytest.fixture(scope="session")
def fixture_graph(fixture_build):
    return fixture_build.graph
