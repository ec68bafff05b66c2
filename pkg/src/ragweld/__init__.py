"""ragweld: a multi-modal, multi-lingual retrieval-augmented generation
engine with a built-in FAQ evaluation harness."""

from .core import (
    AR,
    EN,
    FR,
    ChatTurn,
    CorpusItem,
    LanguageTag,
    Modality,
    MultiModalAnswer,
    RetrievalConfig,
    RetrievedItem,
    validate_corpus_item,
)
from .pipeline import Pipeline, PipelineConfig, PipelineMode, PromptTemplate

__version__ = "0.1.0"

__all__ = [
    "AR",
    "EN",
    "FR",
    "ChatTurn",
    "CorpusItem",
    "LanguageTag",
    "Modality",
    "MultiModalAnswer",
    "RetrievalConfig",
    "RetrievedItem",
    "validate_corpus_item",
    "Pipeline",
    "PipelineConfig",
    "PipelineMode",
    "PromptTemplate",
    "__version__",
]
