"""Command-line front: corpus ingestion, the chat service, the evaluation
runner with file reports, and a local REPL."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .core import LanguageTag
from .evalkit import (
    ContextArm,
    EvalSetting,
    QueryMode,
    format_table,
    load_faq_csv,
    load_faq_jsonl,
    run_eval,
    write_report_files,
)
from .ingest import BuildFailedError, ChunkingPolicy, build_corpus, load_manifest
from .pipeline import Pipeline, PipelineConfig, PipelineError
from .service.config import ServiceConfig
from .vindex import StoreRegistry, load_registry, save_registry


def _add_ingest(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("ingest", help="build vector stores from a manifest")
    p.add_argument("manifest", help="JSON Lines manifest of corpus entries")
    p.add_argument("--out", required=True, help="output directory for store files")
    p.add_argument("--max-chunk-tokens", type=int, default=256)
    p.add_argument("--overlap-tokens", type=int, default=32)
    p.add_argument("--max-failure-rate", type=float, default=0.20)
    p.add_argument("--config", default=None, help="service config for provider wiring")
    p.add_argument(
        "--timestamped",
        action="store_true",
        help="stamp stores with the wall clock instead of the reproducible default",
    )


def _add_serve(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("serve", help="run the chat service")
    p.add_argument("--config", default=None, help="path to the key=value config file")


def _add_eval(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("eval", help="run the FAQ evaluation and write reports")
    p.add_argument("dataset", help="FAQ dataset (.jsonl, or .csv with --lang)")
    p.add_argument("--arm", choices=["text", "image", "video", "norag"], default="text")
    p.add_argument("--lang", choices=["en", "fr", "ar"], default="en")
    p.add_argument("--mode", choices=["tq", "nq"], default="tq")
    p.add_argument("--stores", default="./stores", help="directory of .rgwd store files")
    p.add_argument("--out", default="./eval_out", help="directory for report files")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--config", default=None, help="service config for provider wiring")


def _add_chat(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("chat", help="interactive local REPL")
    p.add_argument("--config", default=None)
    p.add_argument("--stores", default=None, help="override the config stores directory")


def _load_config(path: str | None) -> ServiceConfig:
    return ServiceConfig.load(path)


def _cmd_ingest(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    policy = ChunkingPolicy(
        max_chunk_tokens=args.max_chunk_tokens, overlap_tokens=args.overlap_tokens
    )
    entries = load_manifest(args.manifest)
    built_at = time.time() if args.timestamped else 0.0
    try:
        registry, report = build_corpus(
            entries,
            policy,
            config.provider_set(),
            built_at=built_at,
            max_failure_rate=args.max_failure_rate,
        )
    except BuildFailedError as exc:
        print(json.dumps(exc.report.to_dict(), indent=2))
        print("build failed: too many entry failures", file=sys.stderr)
        return 1
    save_registry(registry, args.out)
    report_path = Path(args.out) / "build_report.json"
    report_path.write_text(json.dumps(report.to_dict(), indent=2), encoding="utf-8")
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    config = _load_config(args.config)
    app = create_app(config)
    uvicorn.run(app, host=config.bind_host, port=config.bind_port, log_level="info")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    dataset = Path(args.dataset)
    language = LanguageTag(args.lang)
    if dataset.suffix.lower() == ".csv":
        faqs = load_faq_csv(dataset, language)
    else:
        faqs = load_faq_jsonl(dataset)
    stores = Path(args.stores)
    registry = load_registry(stores) if stores.is_dir() else StoreRegistry()
    setting = EvalSetting(
        language=language, arm=ContextArm(args.arm), query_mode=QueryMode(args.mode)
    )
    base = PipelineConfig(
        retrieval=config.retrieval_config(), history_max_turns=config.history_max_turns
    )
    report = run_eval(
        faqs, registry, config.provider_set(), base, setting, max_workers=args.workers
    )
    paths = write_report_files([report], args.out)
    print(format_table([report]), end="")
    print(f"reports written: {', '.join(sorted(paths.values()))}")
    return 0


def _cmd_chat(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    stores = Path(args.stores or config.stores_dir)
    registry = load_registry(stores) if stores.is_dir() else StoreRegistry()
    pipeline = Pipeline(
        config.provider_set(),
        registry,
        PipelineConfig(
            retrieval=config.retrieval_config(), history_max_turns=config.history_max_turns
        ),
    )
    session: list = []
    print("ragweld chat (empty line or Ctrl-D to quit)")
    while True:
        try:
            query = input("> ").strip()
        except (EOFError, KeyboardInterrupt):
            print()
            return 0
        if not query:
            return 0
        try:
            answer = pipeline.answer(session, query)
        except PipelineError as exc:
            print(f"[error at {exc.stage.value}] {exc.cause}")
            continue
        print(answer.text or "(empty answer)")
        for label, items in (
            ("documents", answer.documents),
            ("images", answer.images),
            ("videos", answer.videos),
        ):
            for r in items:
                print(f"  [{label[:-1]} {r.score:.3f}] {r.item.title} <{r.item.source_uri}>")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="ragweld")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_ingest(sub)
    _add_serve(sub)
    _add_eval(sub)
    _add_chat(sub)
    args = parser.parse_args(argv)
    handlers = {
        "ingest": _cmd_ingest,
        "serve": _cmd_serve,
        "eval": _cmd_eval,
        "chat": _cmd_chat,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
