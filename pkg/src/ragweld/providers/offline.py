"""Deterministic offline providers.

These are pure functions of their inputs: no model downloads, no network,
bit-identical output for equal input.  They back the test suite and
desk-scale evaluation runs; production deployments swap in HTTP adapters.
"""

from __future__ import annotations

import math
import re
from hashlib import blake2b

from ..core import AR, EN, FR, LanguageTag
from .base import (
    Embedder,
    Generator,
    LanguageDetector,
    Translator,
    UnsupportedPairError,
    _require_text,
)

OTHER = LanguageTag("zz")
"""Canonical tag for text the detector cannot attribute to en/fr/ar."""


class HashedNgramEmbedder(Embedder):
    """Hashed character-3-gram bag embedder.

    Lowercases the text, hashes every contiguous 3-character substring into
    one of ``dim`` buckets (blake2b, so stable across processes and
    platforms) and L2-normalizes the counts, making cosine equal to the dot
    product.
    """

    def __init__(self, dim: int = 64):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim

    def embed(self, text: str) -> tuple[float, ...]:
        s = _require_text(text).strip().lower()
        grams = [s[i : i + 3] for i in range(len(s) - 2)] or [s]
        counts = [0.0] * self.dim
        for gram in grams:
            h = int.from_bytes(blake2b(gram.encode("utf-8"), digest_size=8).digest(), "little")
            counts[h % self.dim] += 1.0
        norm = math.sqrt(math.fsum(c * c for c in counts))
        return tuple(c / norm for c in counts)


_BLOCK_HEADERS = ("CONTEXT:", "CHAT HISTORY:", "QUERY:", "ANSWER:")


def _prompt_block(prompt: str, header: str) -> str:
    """Text between ``header`` and the next known section header, stripped."""
    start = prompt.find(header)
    if start < 0:
        return ""
    start += len(header)
    end = len(prompt)
    for other in _BLOCK_HEADERS:
        pos = prompt.find(other, start)
        if pos >= 0:
            end = min(end, pos)
    return prompt[start:end].strip()


class ExtractiveGenerator(Generator):
    """Returns the prompt's CONTEXT block verbatim.

    With retrieval on, the answer is exactly the retrieved text, which makes
    retrieval effects directly measurable; with an empty context the answer
    is empty.
    """

    def generate(self, prompt: str) -> str:
        _require_text(prompt)
        return _prompt_block(prompt, "CONTEXT:")


class EchoGenerator(Generator):
    """Returns the prompt's QUERY block verbatim: the retrieval-blind baseline."""

    def generate(self, prompt: str) -> str:
        _require_text(prompt)
        return _prompt_block(prompt, "QUERY:")


class TaggedTranslator(Translator):
    """Bijective mock translation: prefixes text with a ``⟦src→tgt⟧`` tag.

    Translating back along the reverse pair strips the tag, so round trips
    restore the original text exactly.
    """

    def translate(self, text: str, source: LanguageTag, target: LanguageTag) -> str:
        _require_text(text)
        if source == target:
            return text
        if not (source.supported and target.supported):
            raise UnsupportedPairError(f"cannot translate {source.code}->{target.code}")
        inverse = f"⟦{target.code}→{source.code}⟧"
        if text.startswith(inverse):
            return text[len(inverse) :]
        return f"⟦{source.code}→{target.code}⟧{text}"


_WORD_RE = re.compile(r"[^\W\d_]+", re.UNICODE)

_FR_STOPWORDS = frozenset(
    """le la les un une des du de et est sont que qui quoi ne pas pour dans sur
    avec sans ce cette ces cela je tu il elle nous vous ils elles mon ma mes
    ton ta tes son sa ses au aux ou mais donc car si plus tres bien comme
    quand comment pourquoi quel quelle quels quelles est-ce qu l d j c n s m t
    votre notre leur chez entre apres avant aussi etre avoir faire peut
    """.split()
)

_EN_STOPWORDS = frozenset(
    """the a an of to and is are was were in on for with what how why when
    which it this that you i my your his her their our do does did can could
    should would will have has had be been not at by from or as if about
    there here they we he she them us
    """.split()
)

_FR_DIACRITICS = set("àâäéèêëîïôöùûüÿçœæ")


def _is_arabic_letter(ch: str) -> bool:
    cp = ord(ch)
    return (
        0x0600 <= cp <= 0x06FF
        or 0x0750 <= cp <= 0x077F
        or 0x08A0 <= cp <= 0x08FF
        or 0xFB50 <= cp <= 0xFDFF
        or 0xFE70 <= cp <= 0xFEFF
    )


class StopwordLanguageDetector(LanguageDetector):
    """Rule-based detector for the three supported languages.

    Decision rule: more than 40% Arabic-script letters tags the text AR;
    otherwise French and English compete on stopword hits plus French
    diacritics; when neither side scores, the tag is OTHER.
    """

    def detect_language(self, text: str) -> LanguageTag:
        _require_text(text)
        letters = [ch for ch in text if ch.isalpha()]
        if not letters:
            return OTHER
        arabic = sum(1 for ch in letters if _is_arabic_letter(ch))
        if arabic / len(letters) > 0.40:
            return AR

        lowered = text.lower()
        words = _WORD_RE.findall(lowered)
        fr_score = sum(1 for w in words if w in _FR_STOPWORDS)
        fr_score += sum(1 for ch in lowered if ch in _FR_DIACRITICS)
        en_score = sum(1 for w in words if w in _EN_STOPWORDS)

        if fr_score == 0 and en_score == 0:
            return OTHER
        if fr_score > en_score:
            return FR
        return EN


def offline_provider_set(dim: int = 64, generator: Generator | None = None):
    """Bundle of offline providers; the default generator is extractive."""
    from .base import ProviderSet

    return ProviderSet(
        embedder=HashedNgramEmbedder(dim=dim),
        generator=generator or ExtractiveGenerator(),
        translator=TaggedTranslator(),
        detector=StopwordLanguageDetector(),
    )
