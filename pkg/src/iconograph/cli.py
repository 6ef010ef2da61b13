"""Command-line pipeline: fetch corpus, build graph, query it, evaluate.

Exit codes: 0 success, 1 usage or input error, 2 partial failure (some urls
failed in a batch fetch). Output files never embed timestamps, so reruns with
identical inputs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import graph as kg
from .config import PipelineConfig, load_config, override
from .detections import read_detections_jsonl, vocabulary_from_detections
from .embeddings import read_embeddings_jsonl
from .errors import IconographError, InputError, ValidationError
from .evaluation import (
    MatchMode,
    evaluate_e2e,
    evaluate_kg,
    read_gold_json,
    render_report,
)
from .extraction import (
    ExtractionConfig,
    build_graph_pipeline,
    read_frames_jsonl,
    read_ner_jsonl,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARTIAL = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iconograph",
        description="Learn and evaluate a signifier-to-meaning knowledge graph.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="pipeline TOML config file")
    common.add_argument("--output-dir", type=Path, help="override the configured output directory")
    common.add_argument(
        "--print-config", action="store_true", help="print the effective configuration and exit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fetch-corpus", parents=[common], help="fetch urls into the cache, write manifest")
    p.add_argument("--force-refetch", action="store_true", help="ignore cached copies")

    sub.add_parser("split-corpus", parents=[common], help="assign train/test splits in the manifest")

    p = sub.add_parser("build-graph", parents=[common], help="build the pruned knowledge graph")
    p.add_argument("--min-weight", type=int, help="override the edge weight threshold")

    p = sub.add_parser("query", parents=[common], help="list meanings for a signifier")
    p.add_argument("term", help="signifier to look up")
    p.add_argument("--graph", type=Path, help="graph file (default: <output-dir>/graph.json)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of plain lines")

    for target in ("kg", "e2e"):
        p = sub.add_parser(f"eval-{target}", parents=[common], help=f"evaluate the {target} mapping")
        p.add_argument("--mode", choices=("exact", "partial", "semantic"), help="match mode")
        p.add_argument("--graph", type=Path, help="graph file (default: <output-dir>/graph.json)")
        p.add_argument("--threshold", type=float, help="semantic cosine threshold")
        if target == "e2e":
            p.add_argument("--confidence", type=float, help="detection confidence threshold")

    p = sub.add_parser("validate", help="check a data file against its schema")
    p.add_argument("kind", choices=("frames", "ner", "embeddings", "detections", "gold", "graph"))
    p.add_argument("path", type=Path)
    return parser


def _load_pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    if getattr(args, "config", None) is None:
        raise InputError("this command needs --config")
    config = load_config(args.config)
    return override(config, output_dir=getattr(args, "output_dir", None))


def _require(config: PipelineConfig, *names: str) -> None:
    problems = []
    for name in names:
        value = getattr(config, name)
        if value is None:
            problems.append(f"paths.{name} is not configured")
        elif not Path(value).exists():
            problems.append(f"paths.{name} does not exist: {value}")
    if problems:
        raise InputError("; ".join(problems))


def _maybe_print_config(args: argparse.Namespace, config: PipelineConfig) -> bool:
    if getattr(args, "print_config", False):
        print(json.dumps(config.to_document(), indent=2, sort_keys=True))
        return True
    return False


def _manifest_path(config: PipelineConfig) -> Path:
    return config.output_dir / "manifest.json"


def _write_manifest(path: Path, entries: list[dict]) -> None:
    entries = sorted(entries, key=lambda e: e["url"])
    path.write_text(json.dumps(entries, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def cmd_fetch_corpus(args: argparse.Namespace) -> int:
    config = _load_pipeline_config(args)
    if _maybe_print_config(args, config):
        return EXIT_OK
    _require(config, "url_list")
    urls = corpus_mod.read_url_list(config.url_list)
    cache = corpus_mod.CorpusCache(config.cache_dir)
    documents, failures = corpus_mod.fetch_all(
        urls,
        cache,
        timeout=config.timeout,
        delay=config.politeness_delay,
        parallelism=config.parallelism,
        force=args.force_refetch,
    )
    config.output_dir.mkdir(parents=True, exist_ok=True)
    texts_dir = config.output_dir / "texts"
    texts_dir.mkdir(exist_ok=True)
    entries = []
    for doc in documents:
        cache_file = corpus_mod.cache_file_name(doc.url)
        text_file = Path(cache_file).stem + ".txt"
        (texts_dir / text_file).write_text(doc.text + "\n", encoding="utf-8")
        entries.append(
            {
                "url": doc.url,
                "cache_file": cache_file,
                "text_file": f"texts/{text_file}",
                "split": None,
            }
        )
    _write_manifest(_manifest_path(config), entries)
    print(f"fetched {len(documents)}/{len(urls)} pages into {config.cache_dir}")
    if failures:
        for url in sorted(failures):
            print(f"FAILED {url}: {failures[url]}", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_split_corpus(args: argparse.Namespace) -> int:
    config = _load_pipeline_config(args)
    if _maybe_print_config(args, config):
        return EXIT_OK
    _require(config, "test_refs")
    manifest_path = _manifest_path(config)
    if not manifest_path.exists():
        raise InputError(f"manifest not found: {manifest_path} (run fetch-corpus first)")
    entries = json.loads(manifest_path.read_text(encoding="utf-8"))
    refs = corpus_mod.read_reference_list(config.test_refs)
    documents = []
    for entry in entries:
        text = (config.output_dir / entry["text_file"]).read_text(encoding="utf-8")
        documents.append(
            corpus_mod.WebDocument(url=entry["url"], fetched_at=0.0, raw_html=b"", text=text)
        )
    split = corpus_mod.split_corpus(documents, refs)
    test_urls = {doc.url for doc in split.test}
    for entry in entries:
        entry["split"] = "test" if entry["url"] in test_urls else "train"
    _write_manifest(manifest_path, entries)
    print(f"split corpus: {len(split.train)} train / {len(split.test)} test")
    return EXIT_OK


def _extraction_config(config: PipelineConfig) -> ExtractionConfig:
    vocabulary = config.vocabulary
    if not vocabulary:
        if config.detections is None:
            raise InputError(
                "no vocabulary configured and no detections file to derive one from"
            )
        _require(config, "detections")
        vocabulary = vocabulary_from_detections(
            read_detections_jsonl(config.detections),
            strip_determiners=config.strip_determiners,
        )
    return ExtractionConfig(
        min_weight=config.min_weight,
        excluded_entity_labels=config.excluded_entity_labels,
        vocabulary=vocabulary,
        strip_determiners=config.strip_determiners,
        head_aliases=config.head_aliases,
    )


def cmd_build_graph(args: argparse.Namespace) -> int:
    config = _load_pipeline_config(args)
    config = override(config, min_weight=args.min_weight)
    if _maybe_print_config(args, config):
        return EXIT_OK
    _require(config, "frames", "ner")
    frames = read_frames_jsonl(config.frames)
    if not frames:
        logger.warning("frames file %s is empty; the graph will be empty", config.frames)
    annotations = read_ner_jsonl(config.ner)
    result = build_graph_pipeline(frames, annotations, _extraction_config(config))
    config.output_dir.mkdir(parents=True, exist_ok=True)
    graph_path = config.output_dir / "graph.json"
    kg.save(result.graph, graph_path)
    stats_path = config.output_dir / "graph_stats.json"
    stats_path.write_text(
        json.dumps(result.stats_document(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    print(
        f"graph: {result.graph.edge_count()} edges, "
        f"{len(result.graph.signifiers)} signifiers, "
        f"{len(result.graph.signifieds)} signifieds -> {graph_path}"
    )
    return EXIT_OK


def _graph_path(args: argparse.Namespace, config: PipelineConfig | None) -> Path:
    if getattr(args, "graph", None) is not None:
        return args.graph
    if config is not None:
        return config.output_dir / "graph.json"
    raise InputError("pass --graph or --config so the graph file can be located")


def cmd_query(args: argparse.Namespace) -> int:
    config = None
    if args.config is not None:
        config = _load_pipeline_config(args)
        if _maybe_print_config(args, config):
            return EXIT_OK
    graph = kg.load(_graph_path(args, config))
    results = kg.query(graph, args.term)
    if args.json:
        print(json.dumps([{"signified": t, "weight": w} for t, w in results]))
    else:
        for tail, weight in results:
            print(f"{tail}\t{weight}")
    return EXIT_OK


def _run_eval(args: argparse.Namespace, target: str) -> int:
    config = _load_pipeline_config(args)
    if _maybe_print_config(args, config):
        return EXIT_OK
    mode_kind = args.mode or config.mode
    threshold = args.threshold if args.threshold is not None else config.semantic_threshold
    if mode_kind == "semantic":
        if config.embeddings is None:
            raise InputError("semantic mode needs paths.embeddings in the config")
        _require(config, "embeddings")
        mode = MatchMode.semantic(threshold)
        embeddings = read_embeddings_jsonl(config.embeddings)
    else:
        mode = MatchMode(mode_kind)
        embeddings = None
    graph = kg.load(_graph_path(args, config))
    if target == "kg":
        _require(config, "gold_objects")
        gold = read_gold_json(config.gold_objects)
        report = evaluate_kg(graph, gold, mode, embeddings)
    else:
        _require(config, "gold_images", "detections")
        gold = read_gold_json(config.gold_images)
        detections = read_detections_jsonl(config.detections)
        confidence = (
            args.confidence if args.confidence is not None else config.detection_confidence
        )
        report = evaluate_e2e(
            graph,
            detections,
            gold,
            mode,
            embeddings,
            confidence_threshold=confidence,
            strip_determiners=config.strip_determiners,
        )
    config.output_dir.mkdir(parents=True, exist_ok=True)
    report_path = config.output_dir / f"report-{target}-{mode.kind}.json"
    report_path.write_bytes(render_report(report))
    print(f"P={report.precision:.6f} R={report.recall:.6f} F1={report.f1:.6f}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    kind = args.kind
    path = args.path
    if kind == "frames":
        count = len(read_frames_jsonl(path))
    elif kind == "ner":
        count = len(read_ner_jsonl(path))
    elif kind == "embeddings":
        count = len(read_embeddings_jsonl(path))
    elif kind == "detections":
        count = len(read_detections_jsonl(path))
    elif kind == "gold":
        count = len(read_gold_json(path).entries)
    else:
        count = kg.load(path).edge_count()
    print(f"OK: {path} is a valid {kind} file ({count} entries)")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help; fold usage into 1
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    handlers = {
        "fetch-corpus": cmd_fetch_corpus,
        "split-corpus": cmd_split_corpus,
        "build-graph": cmd_build_graph,
        "query": cmd_query,
        "eval-kg": lambda a: _run_eval(a, "kg"),
        "eval-e2e": lambda a: _run_eval(a, "e2e"),
        "validate": cmd_validate,
    }
    try:
        return handlers[args.command](args)
    except (IconographError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def console_main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
