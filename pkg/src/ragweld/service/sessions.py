"""Durable chat sessions.

Each session is an append-only JSON Lines journal under the data directory,
one committed turn per line, plus an append-only index file recording
session creation.  Appends are flushed and fsynced before the caller
proceeds, so a crash after a reply never loses the turn.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from ..core import ChatTurn


class UnknownSessionError(KeyError):
    pass


@dataclass
class ChatSession:
    session_id: str
    turns: list[ChatTurn] = field(default_factory=list)
    created_at: float = 0.0
    updated_at: float = 0.0


class SessionStore:
    """In-memory session map backed by per-session journals."""

    def __init__(self, data_dir):
        self.root = Path(data_dir) / "sessions"
        self.root.mkdir(parents=True, exist_ok=True)
        self._index_path = self.root / "index.jsonl"
        self._sessions: dict[str, ChatSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._mutex = threading.Lock()
        self._load()

    def _load(self) -> None:
        if not self._index_path.is_file():
            return
        with open(self._index_path, encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                session = ChatSession(
                    session_id=record["session_id"],
                    created_at=record["created_at"],
                    updated_at=record["created_at"],
                )
                self._sessions[session.session_id] = session
        for session in self._sessions.values():
            journal = self._journal_path(session.session_id)
            if not journal.is_file():
                continue
            with open(journal, encoding="utf-8") as handle:
                for line in handle:
                    line = line.strip()
                    if line:
                        session.turns.append(ChatTurn.from_dict(json.loads(line)))
            if session.turns:
                session.updated_at = session.turns[-1].timestamp

    def _journal_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.jsonl"

    def lock(self, session_id: str) -> threading.Lock:
        with self._mutex:
            return self._locks.setdefault(session_id, threading.Lock())

    def create(self) -> ChatSession:
        now = time.time()
        session = ChatSession(session_id=uuid.uuid4().hex, created_at=now, updated_at=now)
        with self._mutex:
            self._sessions[session.session_id] = session
        with open(self._index_path, "a", encoding="utf-8") as handle:
            handle.write(
                json.dumps({"session_id": session.session_id, "created_at": now}) + "\n"
            )
            handle.flush()
            os.fsync(handle.fileno())
        return session

    def get(self, session_id: str) -> ChatSession:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSessionError(session_id) from None

    def __contains__(self, session_id: str) -> bool:
        return session_id in self._sessions

    def append_turn(self, session_id: str, turn: ChatTurn) -> ChatTurn:
        """Persist a turn durably, nudging its timestamp forward if needed so
        the journal stays strictly ordered."""
        session = self.get(session_id)
        if session.turns and turn.timestamp <= session.turns[-1].timestamp:
            turn = ChatTurn(
                question=turn.question,
                answer=turn.answer,
                question_en=turn.question_en,
                answer_en=turn.answer_en,
                timestamp=session.turns[-1].timestamp + 1e-6,
            )
        with open(self._journal_path(session_id), "a", encoding="utf-8") as handle:
            handle.write(json.dumps(turn.to_dict(), ensure_ascii=False) + "\n")
            handle.flush()
            os.fsync(handle.fileno())
        session.turns.append(turn)
        session.updated_at = turn.timestamp
        return turn
