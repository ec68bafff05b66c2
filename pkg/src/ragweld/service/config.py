"""Service configuration.

The config file is a flat ``key = value`` format: one assignment per line,
``#`` comments, booleans as true/false, numbers parsed when they look like
numbers, everything else a string (quotes optional).  The RAGWELD_CONFIG
environment variable overrides the config file path; provider endpoints can
additionally be overridden by RAGWELD_<KIND>_ENDPOINT / RAGWELD_<KIND>_TOKEN.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

from ..core import RetrievalConfig
from ..providers import (
    HttpEmbedder,
    HttpGenerator,
    HttpTranslator,
    ProviderConfig,
    ProviderKind,
    ProviderMode,
    ProviderSet,
)
from ..providers.offline import (
    EchoGenerator,
    ExtractiveGenerator,
    HashedNgramEmbedder,
    StopwordLanguageDetector,
    TaggedTranslator,
)

CONFIG_ENV_VAR = "RAGWELD_CONFIG"


class ConfigError(ValueError):
    pass


def parse_kv_file(path) -> dict[str, object]:
    """Parse the flat key/value format into a dict of primitives."""
    values: dict[str, object] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            values[key.strip()] = _coerce(value.strip())
    return values


def _coerce(raw: str) -> object:
    if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "\"'":
        return raw[1:-1]
    lowered = raw.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        pass
    return raw


@dataclass
class ServiceConfig:
    bind_host: str = "127.0.0.1"
    bind_port: int = 8080
    data_dir: str = "./data"
    stores_dir: str = "./stores"
    datasets_dir: str = "./datasets"
    webui_dir: str = ""
    debug_endpoints: bool = False
    rate_limit_per_minute: int = 30
    history_max_turns: int = 6
    embedder_dim: int = 64
    lambda_text: float = 0.30
    lambda_image: float = 0.30
    lambda_video: float = 0.30
    top_k_text: int = 4
    top_k_image: int = 3
    top_k_video: int = 2
    generator_kind: str = "extractive"  # offline flavor: extractive | echo
    embedder_endpoint: str = ""
    generator_endpoint: str = ""
    translator_endpoint: str = ""
    provider_timeout: float = 10.0
    provider_max_retries: int = 2

    @classmethod
    def load(cls, path=None) -> "ServiceConfig":
        """Load from an explicit path, else $RAGWELD_CONFIG, else defaults."""
        if path is None:
            path = os.environ.get(CONFIG_ENV_VAR)
        if path is None:
            return cls()
        if not Path(path).is_file():
            raise ConfigError(f"config file not found: {path}")
        values = parse_kv_file(path)
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**values)  # type: ignore[arg-type]

    def retrieval_config(self) -> RetrievalConfig:
        return RetrievalConfig(
            lambda_text=self.lambda_text,
            lambda_image=self.lambda_image,
            lambda_video=self.lambda_video,
            top_k_text=self.top_k_text,
            top_k_image=self.top_k_image,
            top_k_video=self.top_k_video,
        )

    def provider_set(self) -> ProviderSet:
        """Assemble providers: HTTP when an endpoint is configured (file or
        environment), offline otherwise.  The detector is always offline."""

        def http_config(kind: ProviderKind, file_endpoint: str) -> ProviderConfig | None:
            env_endpoint = os.environ.get(f"RAGWELD_{kind.name}_ENDPOINT")
            endpoint = env_endpoint or file_endpoint
            if not endpoint:
                return None
            token_var = f"RAGWELD_{kind.name}_TOKEN"
            return ProviderConfig(
                kind=kind,
                mode=ProviderMode.HTTP,
                endpoint=endpoint,
                auth_token_env=token_var if os.environ.get(token_var) else None,
                timeout=self.provider_timeout,
                max_retries=self.provider_max_retries,
            )

        embed_cfg = http_config(ProviderKind.EMBEDDER, self.embedder_endpoint)
        gen_cfg = http_config(ProviderKind.GENERATOR, self.generator_endpoint)
        trans_cfg = http_config(ProviderKind.TRANSLATOR, self.translator_endpoint)

        if self.generator_kind not in ("extractive", "echo"):
            raise ConfigError(f"unknown generator_kind: {self.generator_kind!r}")
        offline_generator = (
            EchoGenerator() if self.generator_kind == "echo" else ExtractiveGenerator()
        )
        return ProviderSet(
            embedder=HttpEmbedder(embed_cfg) if embed_cfg else HashedNgramEmbedder(self.embedder_dim),
            generator=HttpGenerator(gen_cfg) if gen_cfg else offline_generator,
            translator=HttpTranslator(trans_cfg) if trans_cfg else TaggedTranslator(),
            detector=StopwordLanguageDetector(),
        )
