"""Provider interfaces and configuration.

The pipeline depends on four external services: an embedder, a generator,
a translator and a language detector.  Each is expressed as a small abstract
interface with two families of implementations: deterministic offline ones
(see ``offline``) and generic HTTP adapters (see ``http``).
"""

from __future__ import annotations

import abc
import enum
import os
from dataclasses import dataclass

from ..core import LanguageTag


class ProviderError(Exception):
    """Base class for provider failures; ``code`` is a stable machine name."""

    code = "PROVIDER_ERROR"


class EmptyInputError(ProviderError):
    code = "EMPTY_INPUT"


class ProviderUnavailableError(ProviderError):
    code = "PROVIDER_UNAVAILABLE"


class SafetyRefusalError(ProviderError):
    """The generator refused the prompt; surfaced verbatim, never replaced."""

    code = "SAFETY_REFUSAL"


class UnsupportedPairError(ProviderError):
    code = "UNSUPPORTED_PAIR"


class ProviderKind(enum.Enum):
    EMBEDDER = "embedder"
    GENERATOR = "generator"
    TRANSLATOR = "translator"
    DETECTOR = "detector"


class ProviderMode(enum.Enum):
    OFFLINE = "offline"
    HTTP = "http"


@dataclass(frozen=True)
class ProviderConfig:
    """Wiring for one provider slot.

    HTTP mode requires an endpoint; offline mode ignores endpoint and auth.
    ``auth_token_env`` names an environment variable holding a bearer token.
    """

    kind: ProviderKind
    mode: ProviderMode = ProviderMode.OFFLINE
    endpoint: str | None = None
    auth_token_env: str | None = None
    timeout: float = 10.0
    max_retries: int = 2

    def __post_init__(self) -> None:
        if self.mode is ProviderMode.HTTP and not self.endpoint:
            raise ValueError(f"HTTP {self.kind.value} provider needs an endpoint")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")

    @classmethod
    def from_env(cls, kind: ProviderKind, **overrides) -> "ProviderConfig":
        """Build from RAGWELD_<KIND>_ENDPOINT / RAGWELD_<KIND>_TOKEN; offline
        when no endpoint is set."""
        prefix = f"RAGWELD_{kind.name}"
        endpoint = os.environ.get(f"{prefix}_ENDPOINT")
        token_env = f"{prefix}_TOKEN" if os.environ.get(f"{prefix}_TOKEN") else None
        mode = ProviderMode.HTTP if endpoint else ProviderMode.OFFLINE
        kwargs = dict(kind=kind, mode=mode, endpoint=endpoint, auth_token_env=token_env)
        kwargs.update(overrides)
        return cls(**kwargs)


def _require_text(text: str) -> str:
    if not text or not text.strip():
        raise EmptyInputError("input text is empty")
    return text


class Embedder(abc.ABC):
    """Maps text to a finite dense vector of a fixed dimension."""

    @abc.abstractmethod
    def embed(self, text: str) -> tuple[float, ...]: ...


class Generator(abc.ABC):
    """Produces an answer for a fully assembled prompt."""

    @abc.abstractmethod
    def generate(self, prompt: str) -> str: ...


class Translator(abc.ABC):
    """Translates text between language tags; source == target is identity."""

    @abc.abstractmethod
    def translate(self, text: str, source: LanguageTag, target: LanguageTag) -> str: ...


class LanguageDetector(abc.ABC):
    """Deterministically tags text as en, fr, ar or some other language."""

    @abc.abstractmethod
    def detect_language(self, text: str) -> LanguageTag: ...


@dataclass(frozen=True)
class ProviderSet:
    """The four provider slots the pipeline consumes as one bundle."""

    embedder: Embedder
    generator: Generator
    translator: Translator
    detector: LanguageDetector
