from .app import answer_to_wire, create_app
from .config import CONFIG_ENV_VAR, ConfigError, ServiceConfig, parse_kv_file
from .sessions import ChatSession, SessionStore, UnknownSessionError

__all__ = [
    "answer_to_wire",
    "create_app",
    "CONFIG_ENV_VAR",
    "ConfigError",
    "ServiceConfig",
    "parse_kv_file",
    "ChatSession",
    "SessionStore",
    "UnknownSessionError",
]
