"""Shared domain vocabulary: languages, modalities, corpus items, retrieval
results, chat turns and retrieval configuration.

Everything in this module is an immutable value object; instances are safe to
share across threads and to use as dict keys where hashable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any, Iterable


class Modality(enum.IntEnum):
    """Media class of a corpus item. Integer values fix the iteration order."""

    TEXT = 0
    IMAGE = 1
    VIDEO = 2

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "Modality":
        try:
            return cls[label.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown modality: {label!r}") from None


@dataclass(frozen=True, order=True)
class LanguageTag:
    """ISO 639-1 language code.

    Three languages (en, fr, ar) are backed by vector stores; any other
    well-formed code is representable and routes to fallback behaviour
    decided by the pipeline.
    """

    code: str

    def __post_init__(self) -> None:
        if not (len(self.code) == 2 and self.code.isascii() and self.code.isalpha()):
            raise ValueError(f"not an ISO 639-1 code: {self.code!r}")
        object.__setattr__(self, "code", self.code.lower())

    @property
    def supported(self) -> bool:
        """True when a vector store family exists for this language."""
        return self.code in ("en", "fr", "ar")

    def __str__(self) -> str:
        return self.code


EN = LanguageTag("en")
FR = LanguageTag("fr")
AR = LanguageTag("ar")

SUPPORTED_LANGUAGES = (EN, FR, AR)


@dataclass(frozen=True)
class CorpusItem:
    """One indexed unit: a text chunk, an image record or a video record.

    ``index_summary_en`` is the English description whose embedding represents
    the item in its vector store.  For images, ``source_uri`` points at the
    page the image came from and ``media_uri`` at the image itself; for videos
    ``media_uri`` is the playable/embeddable location.
    """

    id: str
    modality: Modality
    language: LanguageTag
    source_uri: str
    title: str
    raw_text: str
    index_summary_en: str = ""
    embedding: tuple[float, ...] | None = None
    media_uri: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "modality": self.modality.label,
            "language": self.language.code,
            "source_uri": self.source_uri,
            "title": self.title,
            "raw_text": self.raw_text,
            "index_summary_en": self.index_summary_en,
            "embedding": list(self.embedding) if self.embedding is not None else None,
            "media_uri": self.media_uri,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CorpusItem":
        emb = d.get("embedding")
        return cls(
            id=d["id"],
            modality=Modality.from_label(d["modality"]),
            language=LanguageTag(d["language"]),
            source_uri=d["source_uri"],
            title=d["title"],
            raw_text=d["raw_text"],
            index_summary_en=d.get("index_summary_en", ""),
            embedding=tuple(emb) if emb is not None else None,
            media_uri=d.get("media_uri"),
        )


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of a corpus-item check; ``violation`` names the first failure."""

    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


_OK = ValidationResult(True)


def validate_corpus_item(item: CorpusItem, expected_dim: int) -> ValidationResult:
    """Check every CorpusItem invariant plus the store-wide embedding dimension.

    Returns OK iff all invariants hold; otherwise names the first violated
    invariant.
    """
    if expected_dim < 1:
        raise ValueError("expected_dim must be positive")
    if not item.id:
        return ValidationResult(False, "empty-id")
    if item.embedding is not None and not item.index_summary_en.strip():
        return ValidationResult(False, "summary-missing")
    if item.embedding is not None:
        if len(item.embedding) != expected_dim:
            return ValidationResult(False, "dimension-mismatch")
        if not all(math.isfinite(c) for c in item.embedding):
            return ValidationResult(False, "non-finite-embedding")
    if item.modality in (Modality.IMAGE, Modality.VIDEO) and not item.media_uri:
        return ValidationResult(False, "media-uri-missing")
    return _OK


@dataclass(frozen=True)
class RetrievalConfig:
    """Per-modality similarity floors and result caps for one retrieval pass."""

    lambda_text: float = 0.30
    lambda_image: float = 0.30
    lambda_video: float = 0.30
    top_k_text: int = 4
    top_k_image: int = 3
    top_k_video: int = 2

    def __post_init__(self) -> None:
        for name in ("lambda_text", "lambda_image", "lambda_video"):
            v = getattr(self, name)
            if not -1.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [-1, 1], got {v}")
        for name in ("top_k_text", "top_k_image", "top_k_video"):
            k = getattr(self, name)
            if k < 1:
                raise ValueError(f"{name} must be >= 1, got {k}")

    def lambda_for(self, modality: Modality) -> float:
        return (self.lambda_text, self.lambda_image, self.lambda_video)[modality]

    def top_k_for(self, modality: Modality) -> int:
        return (self.top_k_text, self.top_k_image, self.top_k_video)[modality]

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda_text": self.lambda_text,
            "lambda_image": self.lambda_image,
            "lambda_video": self.lambda_video,
            "top_k_text": self.top_k_text,
            "top_k_image": self.top_k_image,
            "top_k_video": self.top_k_video,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RetrievalConfig":
        return cls(**d)


@dataclass(frozen=True)
class RetrievedItem:
    """A corpus item together with its cosine similarity to the query."""

    item: CorpusItem
    score: float

    def to_dict(self) -> dict[str, Any]:
        return {"item": self.item.to_dict(), "score": self.score}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RetrievedItem":
        return cls(item=CorpusItem.from_dict(d["item"]), score=d["score"])


def rank_items(items: Iterable[RetrievedItem]) -> list[RetrievedItem]:
    """Sort by score descending, ties broken by item id ascending.

    This is the single ordering rule for every retrieved-item list; it is a
    total order, so sorting twice is a no-op.
    """
    return sorted(items, key=lambda r: (-r.score, r.item.id))


@dataclass(frozen=True)
class ChatTurn:
    """One committed question/answer exchange, stored bilingually."""

    question: str
    answer: str
    question_en: str
    answer_en: str
    timestamp: float

    def __post_init__(self) -> None:
        if not self.question or not self.answer:
            raise ValueError("committed turns carry a non-empty question and answer")

    def to_dict(self) -> dict[str, Any]:
        return {
            "question": self.question,
            "answer": self.answer,
            "question_en": self.question_en,
            "answer_en": self.answer_en,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ChatTurn":
        return cls(
            question=d["question"],
            answer=d["answer"],
            question_en=d["question_en"],
            answer_en=d["answer_en"],
            timestamp=d["timestamp"],
        )


@dataclass(frozen=True)
class MultiModalAnswer:
    """Answer text in the query language plus the media retrieved for it."""

    text: str
    text_en: str
    documents: tuple[RetrievedItem, ...] = ()
    images: tuple[RetrievedItem, ...] = ()
    videos: tuple[RetrievedItem, ...] = ()
    detected_language: LanguageTag = EN

    def __post_init__(self) -> None:
        for lst, modality in (
            (self.documents, Modality.TEXT),
            (self.images, Modality.IMAGE),
            (self.videos, Modality.VIDEO),
        ):
            if any(r.item.modality is not modality for r in lst):
                raise ValueError(f"{modality.label} list contains a foreign modality")
        object.__setattr__(self, "documents", tuple(rank_items(self.documents)))
        object.__setattr__(self, "images", tuple(rank_items(self.images)))
        object.__setattr__(self, "videos", tuple(rank_items(self.videos)))

    def to_dict(self) -> dict[str, Any]:
        return {
            "text": self.text,
            "text_en": self.text_en,
            "documents": [r.to_dict() for r in self.documents],
            "images": [r.to_dict() for r in self.images],
            "videos": [r.to_dict() for r in self.videos],
            "detected_language": self.detected_language.code,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "MultiModalAnswer":
        return cls(
            text=d["text"],
            text_en=d["text_en"],
            documents=tuple(RetrievedItem.from_dict(r) for r in d["documents"]),
            images=tuple(RetrievedItem.from_dict(r) for r in d["images"]),
            videos=tuple(RetrievedItem.from_dict(r) for r in d["videos"]),
            detected_language=LanguageTag(d["detected_language"]),
        )
