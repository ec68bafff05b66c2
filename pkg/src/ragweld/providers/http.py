"""Generic HTTP provider adapters.

The wire contract is a minimal JSON-over-POST scheme so that any real
provider (hosted LLM, translation API, embedding service) can be fronted by
a thin out-of-process shim:

    POST {endpoint}/embed     {"text": s}                          -> {"vector": [..]}
    POST {endpoint}/generate  {"prompt": s}                        -> {"text": s} | {"refusal": s}
    POST {endpoint}/translate {"text": s, "source": "fr",
                               "target": "en"}                     -> {"text": s}
    POST {endpoint}/detect    {"text": s}                          -> {"language": "en"}

Requests carry ``Authorization: Bearer <token>`` when the configured
environment variable holds a token.  Transport failures and 5xx responses
are retried up to ``max_retries`` times; 4xx responses fail immediately.
"""

from __future__ import annotations

import os
from typing import Any

import httpx

from ..core import LanguageTag
from .base import (
    Embedder,
    Generator,
    LanguageDetector,
    ProviderConfig,
    ProviderMode,
    ProviderUnavailableError,
    SafetyRefusalError,
    Translator,
    _require_text,
)


class _HttpAdapter:
    def __init__(self, config: ProviderConfig):
        if config.mode is not ProviderMode.HTTP:
            raise ValueError("HTTP adapter requires an HTTP-mode ProviderConfig")
        self.config = config
        self._client = httpx.Client(
            base_url=config.endpoint.rstrip("/"),
            timeout=config.timeout,
        )

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.config.auth_token_env:
            token = os.environ.get(self.config.auth_token_env, "")
            if token:
                headers["Authorization"] = f"Bearer {token}"
        return headers

    def _post(self, path: str, payload: dict[str, Any]) -> dict[str, Any]:
        last_error: Exception | None = None
        for _ in range(self.config.max_retries + 1):
            try:
                response = self._client.post(path, json=payload, headers=self._headers())
            except httpx.HTTPError as exc:
                last_error = exc
                continue
            if response.status_code >= 500:
                last_error = ProviderUnavailableError(
                    f"{path} returned {response.status_code}"
                )
                continue
            if response.status_code != 200:
                raise ProviderUnavailableError(
                    f"{path} returned {response.status_code}: {response.text[:200]}"
                )
            try:
                return response.json()
            except ValueError as exc:
                raise ProviderUnavailableError(f"{path} returned non-JSON body") from exc
        raise ProviderUnavailableError(
            f"{path} unavailable after {self.config.max_retries + 1} attempts"
        ) from last_error

    def close(self) -> None:
        self._client.close()


class HttpEmbedder(_HttpAdapter, Embedder):
    def embed(self, text: str) -> tuple[float, ...]:
        _require_text(text)
        body = self._post("/embed", {"text": text})
        vector = body.get("vector")
        if not isinstance(vector, list) or not vector:
            raise ProviderUnavailableError("/embed response missing 'vector'")
        return tuple(float(c) for c in vector)


class HttpGenerator(_HttpAdapter, Generator):
    def generate(self, prompt: str) -> str:
        _require_text(prompt)
        body = self._post("/generate", {"prompt": prompt})
        if "refusal" in body:
            raise SafetyRefusalError(str(body["refusal"]))
        text = body.get("text")
        if not isinstance(text, str):
            raise ProviderUnavailableError("/generate response missing 'text'")
        return text


class HttpTranslator(_HttpAdapter, Translator):
    def translate(self, text: str, source: LanguageTag, target: LanguageTag) -> str:
        _require_text(text)
        if source == target:
            return text
        body = self._post(
            "/translate", {"text": text, "source": source.code, "target": target.code}
        )
        translated = body.get("text")
        if not isinstance(translated, str):
            raise ProviderUnavailableError("/translate response missing 'text'")
        return translated


class HttpLanguageDetector(_HttpAdapter, LanguageDetector):
    def detect_language(self, text: str) -> LanguageTag:
        _require_text(text)
        body = self._post("/detect", {"text": text})
        code = body.get("language")
        if not isinstance(code, str):
            raise ProviderUnavailableError("/detect response missing 'language'")
        return LanguageTag(code)
