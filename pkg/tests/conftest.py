from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from ragweld.core import EN, CorpusItem, LanguageTag, Modality
from ragweld.ingest import ChunkingPolicy, build_corpus, load_manifest
from ragweld.providers import ProviderSet
from ragweld.providers.offline import (
    EchoGenerator,
    ExtractiveGenerator,
    HashedNgramEmbedder,
    StopwordLanguageDetector,
    TaggedTranslator,
)
from ragweld.vindex import StoreRegistry, VectorStore


@pytest.fixture
def offline_providers() -> ProviderSet:
    return ProviderSet(
        embedder=HashedNgramEmbedder(dim=64),
        generator=ExtractiveGenerator(),
        translator=TaggedTranslator(),
        detector=StopwordLanguageDetector(),
    )


@pytest.fixture
def echo_providers() -> ProviderSet:
    return ProviderSet(
        embedder=HashedNgramEmbedder(dim=64),
        generator=EchoGenerator(),
        translator=TaggedTranslator(),
        detector=StopwordLanguageDetector(),
    )


def make_item(
    item_id: str,
    *,
    modality: Modality = Modality.TEXT,
    language: LanguageTag = EN,
    embedding: tuple[float, ...] | None = (1.0, 0.0, 0.0),
    summary: str = "a summary",
    raw_text: str = "some raw text",
    title: str | None = None,
    media_uri: str | None = None,
) -> CorpusItem:
    if media_uri is None and modality in (Modality.IMAGE, Modality.VIDEO):
        media_uri = f"https://media.example/{item_id}"
    return CorpusItem(
        id=item_id,
        modality=modality,
        language=language,
        source_uri=f"https://source.example/{item_id}",
        title=title or f"item {item_id}",
        raw_text=raw_text,
        index_summary_en=summary,
        embedding=embedding,
        media_uri=media_uri,
    )


def random_vector(rng: random.Random, dim: int) -> tuple[float, ...]:
    return tuple(rng.uniform(-1.0, 1.0) for _ in range(dim))


def random_store(
    rng: random.Random,
    n: int,
    dim: int,
    *,
    language: LanguageTag = EN,
    modality: Modality = Modality.TEXT,
) -> VectorStore:
    store = VectorStore(language=language, modality=modality, dim=dim)
    for i in range(n):
        vec = random_vector(rng, dim)
        while all(c == 0.0 for c in vec):  # pragma: no cover - vanishing odds
            vec = random_vector(rng, dim)
        store.append(
            make_item(f"item-{i:04d}", modality=modality, language=language, embedding=vec)
        )
    return store.seal()


_CORPUS_SPECS = {
    "en": {
        "docs": [
            (
                "asthma overview",
                "Asthma is a chronic condition that narrows the airways. Symptoms "
                "include wheezing and shortness of breath. Triggers range from dust "
                "to cold air. Inhalers relax the airway muscles quickly. Controller "
                "medicines reduce inflammation over weeks. Patients should follow a "
                "written action plan.",
            ),
            (
                "exercise and asthma",
                "Regular exercise improves lung capacity for many patients. Warm up "
                "slowly before any intense activity. Swimming is often recommended "
                "because of the humid air. Always carry a reliever inhaler during "
                "sport. Stop and rest when symptoms appear.",
            ),
        ],
        "images": [
            ("inhaler technique poster", "A poster explains correct inhaler technique step by step."),
            ("airway diagram", "A diagram compares a healthy airway with an inflamed airway."),
            ("spacer photo", "A photo shows a child using a spacer with a metered dose inhaler."),
        ],
        "videos": [
            ("breathing exercises video", "The instructor demonstrates slow breathing exercises for asthma."),
            ("action plan video", "A nurse walks through filling in an asthma action plan."),
            ("trigger avoidance video", "The video lists common asthma triggers found at home."),
        ],
    },
    "fr": {
        "docs": [
            (
                "comprendre l'asthme",
                "L'asthme est une maladie chronique des bronches. Les symptômes "
                "incluent une respiration sifflante et une toux nocturne. Les "
                "déclencheurs sont la poussière et le froid. Un inhalateur soulage "
                "rapidement la crise. Le traitement de fond réduit l'inflammation.",
            ),
            (
                "le sport et l'asthme",
                "Le sport est bénéfique pour les personnes asthmatiques. Il faut "
                "s'échauffer lentement avant l'effort. La natation est souvent "
                "conseillée. Il faut toujours garder son inhalateur pendant le "
                "sport. Il faut se reposer quand les symptômes apparaissent.",
            ),
        ],
        "images": [
            ("affiche inhalateur", "Une affiche explique la technique correcte de l'inhalateur."),
            ("schéma des bronches", "Un schéma compare une bronche saine et une bronche enflammée."),
            ("photo chambre d'inhalation", "Une photo montre un enfant avec une chambre d'inhalation."),
        ],
        "videos": [
            ("vidéo exercices de respiration", "La vidéo montre des exercices de respiration lente."),
            ("vidéo plan d'action", "Une infirmière explique le plan d'action contre l'asthme."),
            ("vidéo déclencheurs", "La vidéo liste les déclencheurs de l'asthme à la maison."),
        ],
    },
    "ar": {
        "docs": [
            (
                "نظرة عامة على الربو",
                "الربو مرض مزمن يصيب الشعب الهوائية. تشمل الأعراض صفيرا في الصدر "
                "وضيقا في التنفس. من المحفزات الغبار والهواء البارد. البخاخ يوسع "
                "الشعب الهوائية بسرعة. الأدوية الوقائية تقلل الالتهاب مع الوقت.",
            ),
            (
                "الرياضة والربو",
                "الرياضة مفيدة لمرضى الربو في اغلب الحالات. يجب الاحماء ببطء قبل "
                "التمرين. السباحة رياضة مناسبة بسبب الهواء الرطب. احمل البخاخ دائما "
                "اثناء الرياضة. توقف عن التمرين عند ظهور الأعراض.",
            ),
        ],
        "images": [
            ("ملصق استخدام البخاخ", "ملصق يشرح الطريقة الصحيحة لاستخدام البخاخ خطوة بخطوة."),
            ("رسم الشعب الهوائية", "رسم يقارن بين شعبة هوائية سليمة واخرى ملتهبة."),
            ("صورة حجرة الاستنشاق", "صورة تظهر طفلا يستخدم حجرة الاستنشاق مع البخاخ."),
        ],
        "videos": [
            ("فيديو تمارين التنفس", "يعرض الفيديو تمارين التنفس البطيء لمرضى الربو."),
            ("فيديو خطة العلاج", "تشرح ممرضة كيفية ملء خطة علاج الربو."),
            ("فيديو المحفزات", "يعدد الفيديو محفزات الربو الشائعة في المنزل."),
        ],
    },
}


def write_trilingual_manifest(root: Path) -> Path:
    """Write the deterministic 30-item corpus manifest used by the golden
    pipeline tests: per language 2 documents (2 chunks each), 3 images and 3
    videos."""
    bodies = root / "bodies"
    bodies.mkdir(parents=True, exist_ok=True)
    lines = []
    for code, spec in _CORPUS_SPECS.items():
        for i, (title, body) in enumerate(spec["docs"]):
            path = bodies / f"{code}_doc_{i}.txt"
            path.write_text(body, encoding="utf-8")
            lines.append(
                {
                    "modality": "text",
                    "language": code,
                    "source_uri": f"https://docs.example/{code}/{i}",
                    "title": title,
                    "body_path": str(path),
                }
            )
        for kind in ("images", "videos"):
            modality = "image" if kind == "images" else "video"
            for i, (title, body) in enumerate(spec[kind]):
                path = bodies / f"{code}_{modality}_{i}.txt"
                path.write_text(body, encoding="utf-8")
                lines.append(
                    {
                        "modality": modality,
                        "language": code,
                        "source_uri": f"https://pages.example/{code}/{modality}/{i}",
                        "media_uri": f"https://media.example/{code}/{modality}/{i}",
                        "title": title,
                        "body_path": str(path),
                    }
                )
    manifest = root / "manifest.jsonl"
    manifest.write_text(
        "".join(json.dumps(line, ensure_ascii=False) + "\n" for line in lines),
        encoding="utf-8",
    )
    return manifest


_SYLLABLES = [
    "ba", "de", "fi", "go", "hu", "ka", "le", "mi", "no", "pu",
    "ra", "se", "ti", "vo", "wa", "zu", "char", "rel", "mon", "dus",
]


def _pseudo_words(rng: random.Random, count: int) -> list[str]:
    """Unique pronounceable nonsense words with distinct character 3-grams."""
    words: list[str] = []
    seen: set[str] = set()
    while len(words) < count:
        word = "".join(rng.choice(_SYLLABLES) for _ in range(3))
        if word not in seen:
            seen.add(word)
            words.append(word)
    return words


def synthetic_faq_corpus(
    root: Path,
    n_pairs: int,
    *,
    language: LanguageTag = EN,
    seed: int = 2024,
):
    """FAQ pairs whose reference answers are planted as corpus chunks.

    Returns (faqs, registry): each question names three unique pseudo-words
    that appear in exactly one planted chunk, so retrieval has a single
    correct target per pair.
    """
    from ragweld.evalkit import FaqPair

    rng = random.Random(seed)
    words = _pseudo_words(rng, 3 * n_pairs)
    question_stems = {
        "en": "what should patients know about",
        "fr": "que faut-il savoir sur",
        "ar": "ماذا يجب ان يعرف المريض عن",
    }
    bodies = root / "faq_bodies"
    bodies.mkdir(parents=True, exist_ok=True)
    faqs = []
    lines = []
    for i in range(n_pairs):
        w1, w2, w3 = words[3 * i : 3 * i + 3]
        reference = (
            f"{w1} {w2} {w3} relief follows a careful routine. "
            f"Care teams track {w1} readings every morning."
        )
        question = f"{question_stems[language.code]} {w1} {w2} {w3}"
        faqs.append(
            FaqPair(
                id=f"faq-{i:03d}",
                question=question,
                reference_answer=reference,
                language=language,
                source="synthetic",
            )
        )
        path = bodies / f"{language.code}_{i:03d}.txt"
        path.write_text(reference, encoding="utf-8")
        lines.append(
            {
                "modality": "text",
                "language": language.code,
                "source_uri": f"https://faq.example/{language.code}/{i}",
                "title": f"note {i}",
                "body_path": str(path),
            }
        )
    manifest = root / f"faq_manifest_{language.code}.jsonl"
    manifest.write_text(
        "".join(json.dumps(line, ensure_ascii=False) + "\n" for line in lines),
        encoding="utf-8",
    )
    from ragweld.providers.offline import offline_provider_set

    registry, report = build_corpus(
        load_manifest(manifest), ChunkingPolicy(), offline_provider_set()
    )
    assert not report.failures
    return faqs, registry


@pytest.fixture
def trilingual_registry(tmp_path, offline_providers) -> StoreRegistry:
    """Nine-store registry built from the deterministic trilingual corpus.

    Documents chunk into two windows each (max 24 tokens, overlap 4), so the
    corpus holds 30 items: per language 4 text chunks, 3 images, 3 videos.
    """
    manifest = load_manifest(write_trilingual_manifest(tmp_path))
    policy = ChunkingPolicy(max_chunk_tokens=24, overlap_tokens=4)
    registry, report = build_corpus(manifest, policy, offline_providers)
    assert not report.failures
    return registry
