"""Corpus ingestion: manifests in, sealed vector stores out.

A manifest lists already-collected source material (documents, image records,
video records).  Each entry is turned into corpus items — text bodies are
chunked, image/video bodies become one item each — then summarized,
translated to English when needed, embedded, and routed to the store for its
(language, modality) pair.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .core import EN, CorpusItem, LanguageTag, Modality
from .providers import Generator, ProviderSet
from .vindex import StoreRegistry, VectorStore


class IngestError(Exception):
    pass


class EmptyBodyError(IngestError):
    pass


class ManifestError(IngestError):
    pass


class BuildFailedError(IngestError):
    """Raised when the per-entry failure rate exceeds the configured gate."""

    def __init__(self, report: "BuildReport"):
        self.report = report
        super().__init__(
            f"{len(report.failures)}/{report.total_entries} manifest entries failed"
        )


@dataclass(frozen=True)
class ManifestEntry:
    """One collected source: a document, an image record or a video record.

    ``body_path`` points at a UTF-8 text file holding the document text, the
    image's source-page text or the video transcript.  ``media_uri`` is
    required for images and videos.
    """

    modality: Modality
    language: LanguageTag
    source_uri: str
    title: str
    body_path: Path
    media_uri: str | None = None

    def validate(self) -> None:
        if self.modality in (Modality.IMAGE, Modality.VIDEO) and not self.media_uri:
            raise ManifestError(f"{self.source_uri}: media_uri required for {self.modality.label}")
        if not self.body_path.is_file():
            raise ManifestError(f"{self.source_uri}: body file missing: {self.body_path}")
        if not self.body_path.read_text(encoding="utf-8").strip():
            raise ManifestError(f"{self.source_uri}: body file is empty")

    @classmethod
    def from_dict(cls, d: dict, base_dir: Path | None = None) -> "ManifestEntry":
        try:
            body_path = Path(d["body_path"])
            if base_dir is not None and not body_path.is_absolute():
                body_path = base_dir / body_path
            return cls(
                modality=Modality.from_label(d["modality"]),
                language=LanguageTag(d["language"]),
                source_uri=d["source_uri"],
                title=d["title"],
                body_path=body_path,
                media_uri=d.get("media_uri"),
            )
        except (KeyError, ValueError) as exc:
            raise ManifestError(f"bad manifest entry: {exc}") from exc


def load_manifest(path) -> list[ManifestEntry]:
    """Read a JSON Lines manifest; relative body paths resolve against it."""
    path = Path(path)
    entries = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ManifestError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            entries.append(ManifestEntry.from_dict(record, base_dir=path.parent))
    return entries


@dataclass(frozen=True)
class ChunkingPolicy:
    """Sliding window over whitespace tokens."""

    max_chunk_tokens: int = 256
    overlap_tokens: int = 32

    def __post_init__(self) -> None:
        if self.max_chunk_tokens < 1:
            raise ValueError("max_chunk_tokens must be positive")
        if not 0 <= self.overlap_tokens < self.max_chunk_tokens:
            raise ValueError("overlap_tokens must be in [0, max_chunk_tokens)")


def chunk_text(body: str, policy: ChunkingPolicy) -> list[str]:
    """Split a body into overlapping chunks of whitespace-delimited tokens.

    Consecutive chunks share exactly ``overlap_tokens`` tokens and the chunk
    sequence reconstructs the body's token sequence with no gaps.
    """
    tokens = body.split()
    if not tokens:
        raise EmptyBodyError("body has no tokens")
    chunks = []
    step = policy.max_chunk_tokens - policy.overlap_tokens
    start = 0
    while True:
        end = min(start + policy.max_chunk_tokens, len(tokens))
        chunks.append(" ".join(tokens[start:end]))
        if end == len(tokens):
            return chunks
        start += step


_SENTENCE_SPLIT = re.compile(r"(?<=[.!?؟۔])\s+")


def split_sentences(text: str) -> list[str]:
    parts = [p.strip() for p in _SENTENCE_SPLIT.split(text.strip())]
    return [p for p in parts if p]


class HeadSummarizer:
    """Deterministic offline summarizer: the first ``n_sentences`` sentences."""

    def __init__(self, n_sentences: int = 3):
        if n_sentences < 1:
            raise ValueError("n_sentences must be positive")
        self.n_sentences = n_sentences

    def summarize(self, raw_text: str, modality: Modality) -> str:
        if not raw_text.strip():
            raise EmptyBodyError("nothing to summarize")
        sentences = split_sentences(raw_text)
        if len(sentences) <= self.n_sentences:
            return raw_text.strip()
        return " ".join(sentences[: self.n_sentences])


_SUMMARY_PROMPTS = {
    Modality.TEXT: "Summarize the following document text for retrieval indexing.",
    Modality.IMAGE: "Summarize the following image source-page text for retrieval indexing.",
    Modality.VIDEO: "Summarize the following video transcript for retrieval indexing.",
}


class GeneratorSummarizer:
    """Summarizes through a generator provider with a fixed prompt per modality."""

    def __init__(self, generator: Generator):
        self.generator = generator

    def summarize(self, raw_text: str, modality: Modality) -> str:
        if not raw_text.strip():
            raise EmptyBodyError("nothing to summarize")
        prompt = f"{_SUMMARY_PROMPTS[modality]}\n\n{raw_text}"
        summary = self.generator.generate(prompt).strip()
        if not summary:
            raise IngestError("summarizer returned an empty summary")
        return summary


Summarizer = Callable[[str, Modality], str]


def summarize_for_index(raw_text: str, modality: Modality, summarizer=None) -> str:
    """Produce the index description for one item; offline default is the
    extractive head."""
    summarizer = summarizer or HeadSummarizer()
    return summarizer.summarize(raw_text, modality)


@dataclass
class BuildReport:
    """Per-store item counts and per-entry failures from one build."""

    total_entries: int = 0
    counts: dict[str, int] = field(default_factory=dict)
    failures: list[dict[str, str]] = field(default_factory=list)

    @property
    def total_items(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        return {
            "total_entries": self.total_entries,
            "total_items": self.total_items,
            "counts": dict(sorted(self.counts.items())),
            "failures": list(self.failures),
        }


def _entry_base_id(entry: ManifestEntry) -> str:
    digest = hashlib.sha1(entry.source_uri.encode("utf-8")).hexdigest()
    return digest[:12]


def build_corpus(
    manifest: Iterable[ManifestEntry],
    policy: ChunkingPolicy,
    providers: ProviderSet,
    *,
    summarizer=None,
    built_at: float = 0.0,
    max_failure_rate: float = 0.20,
) -> tuple[StoreRegistry, BuildReport]:
    """Index a manifest into sealed per-(language, modality) stores.

    Text bodies are chunked, one corpus item per chunk; image and video
    entries become one item each.  The index summary is translated to
    English unless the source is already English, then embedded.  Entry
    failures are isolated and collected into the report; the build raises
    only when the failure fraction exceeds ``max_failure_rate``.

    ``built_at`` defaults to 0.0 so that rebuilding the same manifest with
    offline providers yields byte-identical store files.
    """
    summarizer = summarizer or HeadSummarizer()
    entries = list(manifest)
    report = BuildReport(total_entries=len(entries))
    stores: dict[tuple[LanguageTag, Modality], VectorStore] = {}

    def index_item(entry: ManifestEntry, item_id: str, raw_text: str) -> None:
        summary = summarize_for_index(raw_text, entry.modality, summarizer)
        if entry.language != EN:
            summary = providers.translator.translate(summary, entry.language, EN)
        item = CorpusItem(
            id=item_id,
            modality=entry.modality,
            language=entry.language,
            source_uri=entry.source_uri,
            title=entry.title,
            raw_text=raw_text,
            index_summary_en=summary,
            embedding=providers.embedder.embed(summary),
            media_uri=entry.media_uri,
        )
        key = (entry.language, entry.modality)
        store = stores.get(key)
        if store is None:
            store = stores[key] = VectorStore(
                language=entry.language,
                modality=entry.modality,
                dim=len(item.embedding),
                built_at=built_at,
            )
        store.append(item)

    for entry in entries:
        try:
            entry.validate()
            body = entry.body_path.read_text(encoding="utf-8")
            base = _entry_base_id(entry)
            if entry.modality is Modality.TEXT:
                for i, chunk in enumerate(chunk_text(body, policy)):
                    index_item(entry, f"{base}:{i:04d}", chunk)
            else:
                index_item(entry, base, body.strip())
        except Exception as exc:  # noqa: BLE001 - per-entry isolation is the contract
            report.failures.append(
                {
                    "source_uri": entry.source_uri,
                    "modality": entry.modality.label,
                    "reason": str(exc),
                }
            )

    registry = StoreRegistry()
    for key in sorted(stores, key=lambda k: (k[0].code, k[1])):
        store = stores[key].seal()
        registry.register(store)
        report.counts[f"{key[0].code}/{key[1].label}"] = len(store)

    if entries and len(report.failures) / len(entries) > max_failure_rate:
        raise BuildFailedError(report)
    return registry, report
