"""The inference pipeline: detect language, pivot the query to English,
retrieve per modality above its threshold, assemble the prompt, generate,
translate the answer back, and package a multi-modal answer.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

from .core import (
    EN,
    ChatTurn,
    LanguageTag,
    Modality,
    MultiModalAnswer,
    RetrievalConfig,
    RetrievedItem,
)
from .providers import ProviderError, ProviderSet
from .vindex import StoreRegistry

DEFAULT_PROMPT_TEXT = """\
INSTRUCTIONS:
You are an asthma medical support provider called AsthmaBot. You are designed to be as helpful as possible while providing only factual information.
You should be friendly, but not overly chatty. Context information is below.
Given the context information and chat history and no prior knowledge, answer the query. Give a detailed answer.
Your answer should encompass the whole context.

CONTEXT:
{context}

CHAT HISTORY:
{history}

QUERY:
{question}

ANSWER:"""

_PLACEHOLDERS = ("{context}", "{history}", "{question}")


class TemplateInvalidError(ValueError):
    pass


@dataclass(frozen=True)
class PromptTemplate:
    """Prompt text with exactly one {context}, {history} and {question} slot."""

    text: str = DEFAULT_PROMPT_TEXT

    def __post_init__(self) -> None:
        for placeholder in _PLACEHOLDERS:
            n = self.text.count(placeholder)
            if n != 1:
                raise TemplateInvalidError(
                    f"template must contain {placeholder} exactly once, found {n}"
                )

    def render(self, context: str, history: str, question: str) -> str:
        out = self.text
        out = out.replace("{context}", context)
        out = out.replace("{history}", history)
        return out.replace("{question}", question)


class PipelineMode(enum.Enum):
    RAG = "rag"
    NO_RAG = "no_rag"
    RAG_NATIVE_QUERY = "rag_native_query"


class Stage(enum.Enum):
    """Where in the turn a provider failure happened."""

    DETECT = "DETECT"
    TRANSLATE_IN = "TRANSLATE_IN"
    EMBED = "EMBED"
    GENERATE = "GENERATE"
    TRANSLATE_OUT = "TRANSLATE_OUT"


class PipelineError(Exception):
    """Provider failure wrapped with the pipeline stage it occurred in."""

    def __init__(self, stage: Stage, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage.value}: {cause}")


class EmptyQueryError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    retrieval: RetrievalConfig = field(default_factory=RetrievalConfig)
    template: PromptTemplate = field(default_factory=PromptTemplate)
    history_max_turns: int = 6
    pivot: LanguageTag = EN
    mode: PipelineMode = PipelineMode.RAG
    context_modality: Modality = Modality.TEXT

    def __post_init__(self) -> None:
        if self.history_max_turns < 0:
            raise ValueError("history_max_turns must be >= 0")
        if self.mode is PipelineMode.RAG and self.pivot != EN:
            raise ValueError("retrieval-augmented mode pivots through English")

    def with_mode(self, mode: PipelineMode) -> "PipelineConfig":
        return replace(self, mode=mode)


def build_prompt(
    template: PromptTemplate,
    context_texts: Sequence[str],
    history: Sequence[ChatTurn],
    question: str,
    history_max_turns: int,
) -> str:
    """Substitute the three slots: context chunks joined by blank lines in
    rank order, the last ``history_max_turns`` turns as Q/A blocks oldest
    first, and the question."""
    context = "\n\n".join(context_texts)
    recent = list(history)[-history_max_turns:] if history_max_turns > 0 else []
    history_block = "\n".join(f"Q: {t.question_en}\nA: {t.answer_en}" for t in recent)
    return template.render(context, history_block, question)


class Pipeline:
    """One pipeline instance serves many sessions; turns within a session
    must be serialized by the caller."""

    def __init__(self, providers: ProviderSet, registry: StoreRegistry, config: PipelineConfig):
        self.providers = providers
        self.registry = registry
        self.config = config
        self.last_prompt: str | None = None

    def route(self, query: str) -> tuple[LanguageTag, str]:
        """Detect the query language and pivot the query to English.

        English queries pass through; in native-query mode translation is
        skipped entirely; unsupported languages fall back to the English
        stores untranslated, flagged by the detected tag on the answer.
        """
        query = _require_query(query)
        try:
            detected = self.providers.detector.detect_language(query)
        except ProviderError as exc:
            raise PipelineError(Stage.DETECT, exc) from exc
        if self.config.mode is PipelineMode.RAG_NATIVE_QUERY:
            return detected, query
        if detected == self.config.pivot or not detected.supported:
            return detected, query
        try:
            return detected, self.providers.translator.translate(
                query, detected, self.config.pivot
            )
        except ProviderError as exc:
            raise PipelineError(Stage.TRANSLATE_IN, exc) from exc

    def retrieve_all(
        self, detected: LanguageTag, english_query: str
    ) -> tuple[list[RetrievedItem], list[RetrievedItem], list[RetrievedItem]]:
        """Threshold-gated search of the three modality stores for one
        language; stores may be absent, and the three searches run
        concurrently."""
        if not english_query.strip():
            raise EmptyQueryError("query is empty")
        try:
            query_vec = self.providers.embedder.embed(english_query)
        except ProviderError as exc:
            raise PipelineError(Stage.EMBED, exc) from exc
        store_language = detected if detected.supported else EN

        def search_one(modality: Modality) -> list[RetrievedItem]:
            store = self.registry.get(store_language, modality)
            if store is None:
                return []
            return store.search(
                query_vec,
                self.config.retrieval.top_k_for(modality),
                self.config.retrieval.lambda_for(modality),
            )

        with ThreadPoolExecutor(max_workers=3) as pool:
            texts, images, videos = pool.map(search_one, list(Modality))
        return texts, images, videos

    def _context_texts(
        self,
        texts: Sequence[RetrievedItem],
        images: Sequence[RetrievedItem],
        videos: Sequence[RetrievedItem],
    ) -> list[str]:
        # Text chunks go in verbatim; image/video context (evaluation arms)
        # uses the items' English index summaries.
        source = (texts, images, videos)[self.config.context_modality]
        if self.config.context_modality is Modality.TEXT:
            return [r.item.raw_text for r in source]
        return [r.item.index_summary_en for r in source]

    def answer(
        self,
        session: list[ChatTurn],
        query: str,
        *,
        on_prompt: Callable[[str], None] | None = None,
    ) -> MultiModalAnswer:
        """Run one full turn and append it to the session.

        On any provider failure the error surfaces with its stage label and
        the session is left unchanged.
        """
        query = _require_query(query)
        detected, english_query = self.route(query)

        if self.config.mode is PipelineMode.NO_RAG:
            texts, images, videos = [], [], []
        else:
            texts, images, videos = self.retrieve_all(detected, english_query)

        prompt = build_prompt(
            self.config.template,
            self._context_texts(texts, images, videos),
            session,
            english_query,
            self.config.history_max_turns,
        )
        self.last_prompt = prompt
        if on_prompt is not None:
            on_prompt(prompt)

        try:
            answer_en = self.providers.generator.generate(prompt)
        except ProviderError as exc:
            raise PipelineError(Stage.GENERATE, exc) from exc
        if not answer_en.strip():
            raise PipelineError(Stage.GENERATE, ValueError("generator returned empty text"))

        translate_back = (
            detected != self.config.pivot
            and detected.supported
            and self.config.mode is not PipelineMode.RAG_NATIVE_QUERY
        )
        if translate_back:
            try:
                text = self.providers.translator.translate(answer_en, self.config.pivot, detected)
            except ProviderError as exc:
                raise PipelineError(Stage.TRANSLATE_OUT, exc) from exc
        else:
            text = answer_en

        answer = MultiModalAnswer(
            text=text,
            text_en=answer_en,
            documents=tuple(texts),
            images=tuple(images),
            videos=tuple(videos),
            detected_language=detected,
        )
        session.append(
            ChatTurn(
                question=query,
                answer=text,
                question_en=english_query,
                answer_en=answer_en,
                timestamp=time.time(),
            )
        )
        return answer


def _require_query(query: str) -> str:
    if not query or not query.strip():
        raise EmptyQueryError("query is empty")
    return query.strip()
