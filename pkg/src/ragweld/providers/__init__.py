from .base import (
    Embedder,
    EmptyInputError,
    Generator,
    LanguageDetector,
    ProviderConfig,
    ProviderError,
    ProviderKind,
    ProviderMode,
    ProviderSet,
    ProviderUnavailableError,
    SafetyRefusalError,
    Translator,
    UnsupportedPairError,
)
from .http import HttpEmbedder, HttpGenerator, HttpLanguageDetector, HttpTranslator
from .offline import (
    OTHER,
    EchoGenerator,
    ExtractiveGenerator,
    HashedNgramEmbedder,
    StopwordLanguageDetector,
    TaggedTranslator,
    offline_provider_set,
)

__all__ = [
    "Embedder",
    "EmptyInputError",
    "Generator",
    "LanguageDetector",
    "ProviderConfig",
    "ProviderError",
    "ProviderKind",
    "ProviderMode",
    "ProviderSet",
    "ProviderUnavailableError",
    "SafetyRefusalError",
    "Translator",
    "UnsupportedPairError",
    "HttpEmbedder",
    "HttpGenerator",
    "HttpLanguageDetector",
    "HttpTranslator",
    "OTHER",
    "EchoGenerator",
    "ExtractiveGenerator",
    "HashedNgramEmbedder",
    "StopwordLanguageDetector",
    "TaggedTranslator",
    "offline_provider_set",
]
