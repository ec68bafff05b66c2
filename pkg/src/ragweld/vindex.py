"""Immutable dense vector stores with exact cosine top-k retrieval.

One store per (language, modality) pair, nine in the full layout.  Retrieval
is an exhaustive scan: corpora here are thousands of items, and exactness is
what makes the brute-force oracle tests possible.  Scores are computed in
double precision with exactly-rounded summation, so orderings reproduce
bit-for-bit across platforms.
"""

from __future__ import annotations

import json
import math
import struct
import zlib
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .core import CorpusItem, LanguageTag, Modality, RetrievedItem, validate_corpus_item

FORMAT_VERSION = 1
_MAGIC = b"RGWD"


class VectorIndexError(Exception):
    pass


class DimensionMismatchError(VectorIndexError):
    pass


class ZeroVectorError(VectorIndexError):
    pass


class AlreadySealedError(VectorIndexError):
    pass


class InvalidItemError(VectorIndexError):
    """Raised on append of an item violating a store invariant; the message
    carries the violation name from ``validate_corpus_item``."""


class StoreFormatError(VectorIndexError):
    """The file is not a readable store (bad magic, truncation, bad field)."""


class FormatVersionMismatchError(StoreFormatError):
    pass


class ChecksumMismatchError(StoreFormatError):
    pass


def cosine(a: Sequence[float], b: Sequence[float]) -> float:
    """Cosine similarity in double precision, clamped to [-1, 1].

    Uses ``math.fsum`` so the result does not depend on platform BLAS
    summation order.
    """
    if len(a) != len(b):
        raise DimensionMismatchError(f"dimensions differ: {len(a)} vs {len(b)}")
    dot = math.fsum(x * y for x, y in zip(a, b))
    norm_a = math.sqrt(math.fsum(x * x for x in a))
    norm_b = math.sqrt(math.fsum(y * y for y in b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ZeroVectorError("cosine is undefined for zero vectors")
    return max(-1.0, min(1.0, dot / (norm_a * norm_b)))


@dataclass
class VectorStore:
    """Dense index for one (language, modality) pair.

    Append-only while building; ``seal()`` freezes it.  Only sealed stores
    may enter a registry or be written to disk.
    """

    language: LanguageTag
    modality: Modality
    dim: int
    built_at: float = 0.0
    _items: list[CorpusItem] = field(default_factory=list)
    _ids: set[str] = field(default_factory=set)
    _sealed: bool = False

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be positive")

    @property
    def key(self) -> tuple[LanguageTag, Modality]:
        return (self.language, self.modality)

    @property
    def sealed(self) -> bool:
        return self._sealed

    @property
    def items(self) -> tuple[CorpusItem, ...]:
        return tuple(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[CorpusItem]:
        return iter(self._items)

    def append(self, item: CorpusItem) -> None:
        if self._sealed:
            raise AlreadySealedError("store is sealed")
        result = validate_corpus_item(item, self.dim)
        if not result:
            raise InvalidItemError(result.violation)
        if item.embedding is None:
            raise InvalidItemError("embedding-missing")
        if item.language != self.language or item.modality is not self.modality:
            raise InvalidItemError("wrong-store-key")
        if all(c == 0.0 for c in item.embedding):
            # cosine retrieval is undefined for a zero vector
            raise InvalidItemError("zero-embedding")
        if item.id in self._ids:
            raise InvalidItemError("duplicate-id")
        self._items.append(item)
        self._ids.add(item.id)

    def seal(self) -> "VectorStore":
        if self._sealed:
            raise AlreadySealedError("store is already sealed")
        self._sealed = True
        return self

    def search(self, query_vec: Sequence[float], k: int, lam: float) -> list[RetrievedItem]:
        return search(self, query_vec, k, lam)


def search(
    store: VectorStore, query_vec: Sequence[float], k: int, lam: float
) -> list[RetrievedItem]:
    """The k highest-cosine items scoring at least ``lam``.

    Sorted by score descending, ties by item id ascending.  May return fewer
    than k items, including none.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(query_vec) != store.dim:
        raise DimensionMismatchError(
            f"query dimension {len(query_vec)} != store dimension {store.dim}"
        )
    scored = []
    for item in store:
        score = cosine(query_vec, item.embedding)
        if score >= lam:
            scored.append((-score, item.id, item, score))
    scored.sort(key=lambda t: (t[0], t[1]))
    return [RetrievedItem(item=item, score=score) for _, _, item, score in scored[:k]]


class StoreRegistry:
    """Sealed stores keyed by (language, modality); at most one per key.

    ``get`` on a missing key returns None, a distinguishable no-store
    outcome; the registry never fabricates an empty store.
    """

    def __init__(self) -> None:
        self._stores: dict[tuple[LanguageTag, Modality], VectorStore] = {}

    def register(self, store: VectorStore) -> None:
        if not store.sealed:
            raise VectorIndexError("only sealed stores may be registered")
        if not store.language.supported:
            raise VectorIndexError(f"no store family for language {store.language.code!r}")
        if store.key in self._stores:
            raise VectorIndexError(f"store already registered for {store.key}")
        self._stores[store.key] = store

    def get(self, language: LanguageTag, modality: Modality) -> VectorStore | None:
        return self._stores.get((language, modality))

    def keys(self) -> list[tuple[LanguageTag, Modality]]:
        return sorted(self._stores, key=lambda k: (k[0].code, k[1]))

    def __len__(self) -> int:
        return len(self._stores)

    def __iter__(self) -> Iterator[VectorStore]:
        return iter(self._stores[k] for k in self.keys())


def _item_metadata(item: CorpusItem) -> dict:
    return {
        "modality": item.modality.label,
        "language": item.language.code,
        "source_uri": item.source_uri,
        "title": item.title,
        "raw_text": item.raw_text,
        "index_summary_en": item.index_summary_en,
        "media_uri": item.media_uri,
    }


def _pack_block(data: bytes) -> bytes:
    return struct.pack("<I", len(data)) + data


def save_store(store: VectorStore, path) -> None:
    """Write a sealed store in the versioned binary format.

    Layout: magic "RGWD", format version (u16 LE), then a CRC-32-protected
    body of length-prefixed blocks: header JSON, then per item its id, its
    metadata JSON and the embedding as little-endian float64s.
    """
    if not store.sealed:
        raise VectorIndexError("only sealed stores may be saved")
    header = {
        "language": store.language.code,
        "modality": store.modality.label,
        "dim": store.dim,
        "count": len(store),
        "built_at": store.built_at,
    }
    parts = [_pack_block(json.dumps(header, sort_keys=True).encode("utf-8"))]
    for item in store:
        parts.append(_pack_block(item.id.encode("utf-8")))
        meta = json.dumps(_item_metadata(item), sort_keys=True, ensure_ascii=False)
        parts.append(_pack_block(meta.encode("utf-8")))
        parts.append(struct.pack(f"<{store.dim}d", *item.embedding))
    body = b"".join(parts)
    blob = _MAGIC + struct.pack("<H", FORMAT_VERSION) + body + struct.pack("<I", zlib.crc32(body))
    with open(path, "wb") as handle:
        handle.write(blob)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise StoreFormatError("truncated store file")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def block(self) -> bytes:
        (length,) = struct.unpack("<I", self.take(4))
        return self.take(length)


def load_store(path) -> VectorStore:
    """Read a store written by ``save_store``; the result is sealed."""
    try:
        with open(path, "rb") as handle:
            blob = handle.read()
    except OSError as exc:
        raise VectorIndexError(f"cannot read store file: {exc}") from exc

    if len(blob) < 10 or blob[:4] != _MAGIC:
        raise StoreFormatError("not a vector store file")
    (version,) = struct.unpack("<H", blob[4:6])
    if version != FORMAT_VERSION:
        raise FormatVersionMismatchError(
            f"file format version {version}, supported version {FORMAT_VERSION}"
        )
    body, (crc_stored,) = blob[6:-4], struct.unpack("<I", blob[-4:])
    if zlib.crc32(body) != crc_stored:
        raise ChecksumMismatchError("store file checksum mismatch")

    reader = _Reader(body)
    try:
        header = json.loads(reader.block().decode("utf-8"))
        store = VectorStore(
            language=LanguageTag(header["language"]),
            modality=Modality.from_label(header["modality"]),
            dim=int(header["dim"]),
            built_at=float(header["built_at"]),
        )
        for _ in range(int(header["count"])):
            item_id = reader.block().decode("utf-8")
            meta = json.loads(reader.block().decode("utf-8"))
            embedding = struct.unpack(f"<{store.dim}d", reader.take(8 * store.dim))
            store.append(
                CorpusItem(
                    id=item_id,
                    modality=Modality.from_label(meta["modality"]),
                    language=LanguageTag(meta["language"]),
                    source_uri=meta["source_uri"],
                    title=meta["title"],
                    raw_text=meta["raw_text"],
                    index_summary_en=meta["index_summary_en"],
                    embedding=embedding,
                    media_uri=meta.get("media_uri"),
                )
            )
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        raise StoreFormatError(f"malformed store file: {exc}") from exc
    if reader.pos != len(body):
        raise StoreFormatError("trailing bytes after last item")
    return store.seal()


def store_filename(language: LanguageTag, modality: Modality) -> str:
    return f"{language.code}_{modality.label}.rgwd"


def save_registry(registry: StoreRegistry, directory) -> list[str]:
    """Write every store as ``<lang>_<modality>.rgwd`` under ``directory``."""
    from pathlib import Path

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for store in registry:
        name = store_filename(store.language, store.modality)
        save_store(store, out / name)
        written.append(name)
    return written


def load_registry(directory) -> StoreRegistry:
    """Load every ``*.rgwd`` file under ``directory`` into a registry."""
    from pathlib import Path

    registry = StoreRegistry()
    for path in sorted(Path(directory).glob("*.rgwd")):
        registry.register(load_store(path))
    return registry
