"""Writes the checked-in fixture corpus and its oracle-computed golden files.

Run from the repository root:  python tests/gen_fixtures.py

Deliberately imports nothing from the package: every golden comes from the
naive reference implementations in oracles.py so that tests compare two
independent code paths. The embedding vectors are engineered so the cosine of
each phrase pair that matters sits well clear of the 0.7 threshold.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from oracles import (
    naive_e2e_report,
    naive_graph_bytes,
    naive_kg_report,
    naive_pair_counts,
    naive_pruned_counts,
    naive_report_bytes,
)

DATA = Path(__file__).parent / "data"

DIM = 10


def spoke(hub_axis: int, cos: float, aux_axis: int, sign: float = 1.0) -> list[float]:
    """Unit vector at angle acos(cos) from the hub axis, tilted into aux_axis."""
    vec = [0.0] * DIM
    vec[hub_axis] = round(cos, 6)
    vec[aux_axis] = round(sign * math.sqrt(1.0 - cos * cos), 6)
    return vec


def hub(axis: int) -> list[float]:
    vec = [0.0] * DIM
    vec[axis] = 1.0
    return vec


EMBEDDINGS = {
    # mortality cluster (axis 0)
    "mortality": hub(0),
    "death": spoke(0, 0.92, 6),
    "inevitability of death": spoke(0, 0.88, 7),
    "smoke": spoke(0, 0.30, 8),
    # knowledge cluster (axis 1)
    "worldly knowledge": hub(1),
    "human knowledge": spoke(1, 0.90, 6),
    "intellect": spoke(1, 0.75, 7),
    # time cluster (axis 2)
    "transience": hub(2),
    "brevity of life": spoke(2, 0.85, 6),
    "passage of time": spoke(2, 0.75, 7),
    "time": spoke(2, 0.82, 8),
    # life cluster (axis 3)
    "life": hub(3),
    "fragility of life": spoke(3, 0.78, 6),
    # beauty cluster (axis 4); love points away so it stays below threshold
    "beauty": hub(4),
    "fleeting beauty": spoke(4, 0.95, 6),
    "love": spoke(4, 0.50, 6, sign=-1.0),
    # wealth cluster (axis 5)
    "wealth": hub(5),
    "status": spoke(5, 0.80, 6),
}

FRAMES = [
    {"doc_id": "d01", "sentence_index": 0, "predicate": "symbolize", "args": {"ARG0": "The skull", "ARG1": "mortality"}},
    {"doc_id": "d01", "sentence_index": 1, "predicate": "represent", "args": {"ARG0": "the skull", "ARG1": "Mortality"}},
    {"doc_id": "d02", "sentence_index": 0, "predicate": "signify", "args": {"ARG0": "A skull", "ARG1": "mortality."}},
    {"doc_id": "d01", "sentence_index": 2, "predicate": "symbolize", "args": {"ARG0": "the skull", "ARG1": "death"}},
    {"doc_id": "d03", "sentence_index": 0, "predicate": "remind", "args": {"ARG0": "The skull", "ARG1": "death"}},
    {"doc_id": "d02", "sentence_index": 1, "predicate": "evoke", "args": {"ARG0": "the skull", "ARG1": "vanity"}},
    {"doc_id": "d03", "sentence_index": 1, "predicate": "recall", "args": {"ARG0": "the skull", "ARG1": "Rembrandt"}},
    {"doc_id": "d04", "sentence_index": 0, "predicate": "recall", "args": {"ARG0": "The skull", "ARG1": "Rembrandt"}},
    {"doc_id": "d02", "sentence_index": 2, "predicate": "shroud", "args": {"ARG1": "the skull", "ARG2": "smoke"}},
    {"doc_id": "d04", "sentence_index": 1, "predicate": "wreathe", "args": {"ARG1": "The skull", "ARG2": "the smoke"}},
    {"doc_id": "d01", "sentence_index": 3, "predicate": "represent", "args": {"ARG0": "the book", "ARG1": "worldly knowledge"}},
    {"doc_id": "d03", "sentence_index": 2, "predicate": "symbolize", "args": {"ARG0": "The book", "ARG1": "worldly knowledge"}},
    {"doc_id": "d05", "sentence_index": 0, "predicate": "stand for", "args": {"ARG0": "the book", "ARG1": "human knowledge"}},
    {"doc_id": "d02", "sentence_index": 3, "predicate": "come from", "args": {"ARG0": "the book", "ARG1": "the Netherlands"}},
    {"doc_id": "d05", "sentence_index": 1, "predicate": "arrive from", "args": {"ARG0": "The book", "ARG1": "the Netherlands"}},
    {"doc_id": "d01", "sentence_index": 4, "predicate": "mark", "args": {"ARG0": "the watch", "ARG1": "the passage of time"}},
    {"doc_id": "d04", "sentence_index": 2, "predicate": "measure", "args": {"ARG0": "The watch", "ARG1": "the passage of time"}},
    {"doc_id": "d02", "sentence_index": 4, "predicate": "suggest", "args": {"ARG0": "the watch", "ARG1": "transience"}},
    {"doc_id": "d05", "sentence_index": 2, "predicate": "whisper", "args": {"ARG0": "—", "ARG1": "the watch", "ARG2": "transience"}},
    {"doc_id": "d03", "sentence_index": 3, "predicate": "flicker", "args": {"ARG0": "the candle", "ARG1": "life", "ARGM-MNR": "briefly"}},
    {"doc_id": "d05", "sentence_index": 3, "predicate": "signify", "args": {"ARG0": "The candle", "ARG1": "Life"}},
    {"doc_id": "d04", "sentence_index": 3, "predicate": "suggest", "args": {"ARG0": "the candle", "ARG1": "the fragility of life"}},
    {"doc_id": "d01", "sentence_index": 5, "predicate": "symbolize", "args": {"ARG0": "the rose", "ARG1": "beauty"}},
    {"doc_id": "d03", "sentence_index": 4, "predicate": "embody", "args": {"ARG0": "A rose", "ARG1": "beauty"}},
    {"doc_id": "d05", "sentence_index": 4, "predicate": "betoken", "args": {"ARG0": "the rose", "ARG1": "love"}},
    {"doc_id": "d02", "sentence_index": 5, "predicate": "display", "args": {"ARG0": "the lobster", "ARG1": "luxury"}},
    {"doc_id": "d04", "sentence_index": 4, "predicate": "parade", "args": {"ARG0": "The lobster", "ARG1": "luxury"}},
    {"doc_id": "d01", "sentence_index": 6, "predicate": "represent", "args": {"ARG0": "the coins", "ARG1": "wealth"}},
    {"doc_id": "d05", "sentence_index": 5, "predicate": "signify", "args": {"ARG0": "The coins", "ARG1": "wealth"}},
    {"doc_id": "d03", "sentence_index": 5, "predicate": "mirror", "args": {"ARG0": "the glass", "ARG1": "fragility"}},
    {"doc_id": "d02", "sentence_index": 6, "predicate": "glint", "args": {"ARGM-TMP": "often", "ARGM-LOC": "in the foreground"}},
    {"doc_id": "d04", "sentence_index": 5, "predicate": "hang", "args": {"ARGM-LOC": "at the rear"}},
    {"doc_id": "d05", "sentence_index": 6, "predicate": "gleam", "args": {"ARG0": "the skull", "ARG1": "…"}},
]

NER = [
    {"doc_id": "d03", "term": "Rembrandt", "label": "PERSON"},
    {"doc_id": "d04", "term": "Rembrandt", "label": "PERSON"},
    {"doc_id": "d02", "term": "the Netherlands", "label": "GPE"},
    {"doc_id": "d05", "term": "Adriaen van Utrecht", "label": "PERSON"},
    {"doc_id": "d01", "term": "the Getty", "label": "ORG"},
    {"doc_id": "d03", "term": "Leiden", "label": "LOC"},
    {"doc_id": "d02", "term": "tulip", "label": "OTHER"},
]

DETECTIONS = [
    {
        "image_id": "img_001",
        "detections": [
            {"label": "skull", "score": 0.97, "bbox": [14.0, 22.0, 180.0, 160.0]},
            {"label": "book", "score": 0.88, "bbox": [210.0, 300.0, 120.0, 80.0]},
            {"label": "rose", "score": 0.42},
            {"label": "candle", "score": 0.60},
        ],
    },
    {
        "image_id": "img_002",
        "detections": [
            {"label": "watch", "score": 0.91, "bbox": [90.0, 45.0, 60.0, 60.0]},
            {"label": "coins", "score": 0.55},
            {"label": "pitcher", "score": 0.80},
            {"label": "glass", "score": 0.75},
        ],
    },
    {
        "image_id": "img_003",
        "detections": [
            {"label": "skull", "score": 0.93},
            {"label": "rose", "score": 0.81},
        ],
    },
    {
        "image_id": "img_004",
        "detections": [
            {"label": "rose", "score": 0.30},
        ],
    },
]

GOLD_OBJECTS = {
    "keyed_by": "object",
    "entries": {
        "skull": ["mortality", "death", "inevitability of death"],
        "book": ["worldly knowledge", "human knowledge", "intellect"],
        "watch": ["passage of time", "transience", "brevity of life"],
        "candle": ["life", "fragility of life"],
        "rose": ["beauty", "fleeting beauty", "love"],
        "coins": ["wealth", "status"],
    },
}

GOLD_IMAGES = {
    "keyed_by": "image",
    "entries": {
        "img_001": ["mortality", "worldly knowledge", "life"],
        "img_002": ["passage of time", "wealth", "status"],
        "img_003": ["mortality", "beauty", "fleeting beauty"],
        "img_004": ["beauty"],
    },
}

PIPELINE_TOML = """\
# Fixture pipeline configuration; paths resolve relative to this file.
[paths]
frames = "frames.jsonl"
ner = "ner.jsonl"
embeddings = "embeddings.jsonl"
detections = "detections.jsonl"
gold_objects = "gold_objects.json"
gold_images = "gold_images.json"
output_dir = "out"
cache_dir = "cache"

[extraction]
min_weight = 2
strip_determiners = true

[matching]
mode = "exact"
semantic_threshold = 0.7
detection_confidence = 0.5
"""

EXCLUDED_LABELS = {"PERSON", "ORG", "GPE", "LOC"}
CONFIDENCE = 0.5
THRESHOLD = 0.7


def detection_vocabulary() -> set[str]:
    return {d["label"] for entry in DETECTIONS for d in entry["detections"]}


def image_labels_at_confidence() -> dict[str, list[str]]:
    return {
        entry["image_id"]: [d["label"] for d in entry["detections"] if d["score"] >= CONFIDENCE]
        for entry in DETECTIONS
    }


def write_jsonl(path: Path, records: list[dict]) -> None:
    with path.open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def golden_stats(pruned: dict) -> dict:
    raw = naive_pair_counts(FRAMES)
    headless = 0
    emitted = 0
    for record in FRAMES:
        args = record["args"]
        has_head = False
        for role in ("ARG0", "ARG1"):
            if role in args:
                from oracles import naive_normalize

                if naive_normalize(args[role], True):
                    has_head = True
                    break
        if not has_head:
            headless += 1
    emitted = sum(raw.values())
    vocab = detection_vocabulary()
    after_vocab = {(h, t): w for (h, t), w in raw.items() if h in vocab}
    from oracles import naive_normalize

    banned = {
        naive_normalize(r["term"], True)
        for r in NER
        if r["label"] in EXCLUDED_LABELS
    }
    after_ner = {(h, t): w for (h, t), w in after_vocab.items() if t not in banned}
    stage_rows = []
    for name, before, after in (
        ("restrict_signifiers", raw, after_vocab),
        ("remove_signifieds", after_vocab, after_ner),
        ("prune_min_weight", after_ner, pruned),
    ):
        stage_rows.append(
            {
                "stage": name,
                "edges_before": len(before),
                "edges_after": len(after),
                "weight_before": sum(before.values()),
                "weight_after": sum(after.values()),
            }
        )
    return {
        "frames_read": len(FRAMES),
        "frames_skipped_no_head": headless,
        "associations_emitted": emitted,
        "stages": stage_rows,
    }


def main() -> None:
    DATA.mkdir(exist_ok=True)
    golden = DATA / "golden"
    golden.mkdir(exist_ok=True)

    write_jsonl(DATA / "frames.jsonl", FRAMES)
    write_jsonl(DATA / "ner.jsonl", NER)
    write_jsonl(DATA / "detections.jsonl", DETECTIONS)
    write_jsonl(
        DATA / "embeddings.jsonl",
        [{"text": phrase, "vector": vector} for phrase, vector in EMBEDDINGS.items()],
    )
    (DATA / "gold_objects.json").write_text(
        json.dumps(GOLD_OBJECTS, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    (DATA / "gold_images.json").write_text(
        json.dumps(GOLD_IMAGES, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    (DATA / "pipeline.toml").write_text(PIPELINE_TOML, encoding="utf-8")

    pruned = naive_pruned_counts(FRAMES, NER, detection_vocabulary(), EXCLUDED_LABELS, 2)
    (golden / "graph.json").write_bytes(naive_graph_bytes(pruned))
    (golden / "graph_stats.json").write_text(
        json.dumps(golden_stats(pruned), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )

    for kind in ("exact", "partial", "semantic"):
        table = EMBEDDINGS if kind == "semantic" else None
        kg_report = naive_kg_report(pruned, GOLD_OBJECTS["entries"], kind, table, THRESHOLD)
        (golden / f"report-kg-{kind}.json").write_bytes(naive_report_bytes(kg_report))
        e2e_report = naive_e2e_report(
            pruned, image_labels_at_confidence(), GOLD_IMAGES["entries"], kind, table, THRESHOLD
        )
        (golden / f"report-e2e-{kind}.json").write_bytes(naive_report_bytes(e2e_report))

    print(f"fixtures written under {DATA}")
    print(f"pruned graph: {len(pruned)} edges, total weight {sum(pruned.values())}")
    for kind in ("exact", "partial", "semantic"):
        table = EMBEDDINGS if kind == "semantic" else None
        r = naive_kg_report(pruned, GOLD_OBJECTS["entries"], kind, table, THRESHOLD)
        print(
            f"kg/{kind}: agg={r['aggregate']} P={r['precision']:.6f} "
            f"R={r['recall']:.6f} F1={r['f1']:.6f}"
        )
        r = naive_e2e_report(
            pruned, image_labels_at_confidence(), GOLD_IMAGES["entries"], kind, table, THRESHOLD
        )
        print(
            f"e2e/{kind}: agg={r['aggregate']} P={r['precision']:.6f} "
            f"R={r['recall']:.6f} F1={r['f1']:.6f}"
        )


if __name__ == "__main__":
    main()
