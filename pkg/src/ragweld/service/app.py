"""HTTP chat service.

Exposes the pipeline with persistent sessions, a health probe, the
evaluation runner and (behind a config flag) a prompt-debugging endpoint.
Answers are persisted to the session journal before the response is sent.
"""

from __future__ import annotations

import threading
import time
import uuid
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..core import LanguageTag, MultiModalAnswer, RetrievedItem
from ..evalkit import ContextArm, EvalSetting, QueryMode, load_faq_jsonl, run_eval
from ..pipeline import EmptyQueryError, Pipeline, PipelineConfig, PipelineError
from ..providers import ProviderError, ProviderSet
from ..vindex import StoreRegistry, load_registry
from .config import ServiceConfig
from .sessions import SessionStore, UnknownSessionError


class ChatRequest(BaseModel):
    query: str
    session_id: Optional[str] = None


class EvalRequest(BaseModel):
    dataset: str
    arm: str = "text"
    language: str = "en"
    query_mode: str = "tq"


class FixedWindowRateLimiter:
    """Fixed-window request counter per client address."""

    def __init__(self, limit_per_minute: int):
        self.limit = limit_per_minute
        self._windows: dict[str, tuple[int, int]] = {}
        self._lock = threading.Lock()

    def allow(self, client: str) -> bool:
        window = int(time.time() // 60)
        with self._lock:
            start, count = self._windows.get(client, (window, 0))
            if start != window:
                start, count = window, 0
            count += 1
            self._windows[client] = (start, count)
            return count <= self.limit


def _media_dict(r: RetrievedItem, with_media_uri: bool) -> dict:
    d = {"title": r.item.title, "source_uri": r.item.source_uri, "score": r.score}
    if with_media_uri:
        d["media_uri"] = r.item.media_uri
    return d


def answer_to_wire(session_id: str, answer: MultiModalAnswer) -> dict:
    return {
        "session_id": session_id,
        "text": answer.text,
        "documents": [_media_dict(r, False) for r in answer.documents],
        "images": [_media_dict(r, True) for r in answer.images],
        "videos": [_media_dict(r, True) for r in answer.videos],
        "language": answer.detected_language.code,
    }


class EvalJobs:
    """Evaluation runs keyed by setting; at most one active run per key."""

    def __init__(self):
        self._jobs: dict[str, dict] = {}
        self._running_keys: set[str] = set()
        self._lock = threading.Lock()

    def acquire(self, key: str) -> bool:
        with self._lock:
            if key in self._running_keys:
                return False
            self._running_keys.add(key)
            return True

    def release(self, key: str) -> None:
        with self._lock:
            self._running_keys.discard(key)

    def start(self, key: str, runner) -> str:
        """Run in the background; the key must already be acquired."""
        job_id = uuid.uuid4().hex
        self._jobs[job_id] = {"status": "running"}

        def work() -> None:
            try:
                report = runner()
                self._jobs[job_id].update(status="done", report=report.to_dict())
            except Exception as exc:  # noqa: BLE001 - job boundary
                self._jobs[job_id].update(status="failed", error=str(exc))
            finally:
                self.release(key)

        threading.Thread(target=work, daemon=True).start()
        return job_id

    def get(self, job_id: str) -> dict | None:
        return self._jobs.get(job_id)


def create_app(
    config: ServiceConfig,
    registry: StoreRegistry | None = None,
    providers: ProviderSet | None = None,
) -> FastAPI:
    """Build the service; registry and providers are injectable for tests."""
    if registry is None:
        stores = Path(config.stores_dir)
        registry = load_registry(stores) if stores.is_dir() else StoreRegistry()
    if providers is None:
        providers = config.provider_set()

    pipeline_config = PipelineConfig(
        retrieval=config.retrieval_config(),
        history_max_turns=config.history_max_turns,
    )
    pipeline = Pipeline(providers, registry, pipeline_config)
    sessions = SessionStore(config.data_dir)
    limiter = FixedWindowRateLimiter(config.rate_limit_per_minute)
    jobs = EvalJobs()
    last_prompts: dict[str, str] = {}

    app = FastAPI(title="ragweld")
    app.state.sessions = sessions
    app.state.registry = registry
    app.state.pipeline = pipeline

    def client_of(request: Request) -> str:
        return request.client.host if request.client else "unknown"

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "stores": len(registry)}

    @app.post("/api/chat")
    def chat(body: ChatRequest, request: Request) -> dict:
        if not limiter.allow(client_of(request)):
            raise HTTPException(status_code=429, detail="rate limit exceeded")
        if not body.query or not body.query.strip():
            raise HTTPException(status_code=400, detail="query is empty")
        if body.session_id is None:
            session = sessions.create()
        else:
            try:
                session = sessions.get(body.session_id)
            except UnknownSessionError:
                raise HTTPException(status_code=404, detail="unknown session") from None

        with sessions.lock(session.session_id):
            history = list(session.turns)
            try:
                answer = pipeline.answer(
                    history,
                    body.query,
                    on_prompt=lambda p: last_prompts.__setitem__(session.session_id, p),
                )
            except EmptyQueryError:
                raise HTTPException(status_code=400, detail="query is empty") from None
            except PipelineError as exc:
                raise HTTPException(
                    status_code=502,
                    detail={"stage": exc.stage.value, "error": str(exc.cause)},
                ) from exc
            except ProviderError as exc:
                raise HTTPException(
                    status_code=502, detail={"stage": "PROVIDER", "error": str(exc)}
                ) from exc
            sessions.append_turn(session.session_id, history[-1])
        return answer_to_wire(session.session_id, answer)

    @app.get("/api/sessions/{session_id}/history")
    def history(session_id: str) -> list[dict]:
        try:
            session = sessions.get(session_id)
        except UnknownSessionError:
            raise HTTPException(status_code=404, detail="unknown session") from None
        return [turn.to_dict() for turn in session.turns]

    @app.post("/api/eval")
    def eval_run(body: EvalRequest) -> dict:
        dataset_path = Path(config.datasets_dir) / f"{body.dataset}.jsonl"
        if not dataset_path.is_file():
            raise HTTPException(status_code=404, detail=f"unknown dataset: {body.dataset}")
        try:
            setting = EvalSetting(
                language=LanguageTag(body.language),
                arm=ContextArm(body.arm),
                query_mode=QueryMode(body.query_mode),
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        faqs = load_faq_jsonl(dataset_path)
        key = f"{body.dataset}:{body.arm}:{body.language}:{body.query_mode}"

        def runner():
            return run_eval(faqs, registry, providers, pipeline_config, setting)

        if not jobs.acquire(key):
            raise HTTPException(status_code=409, detail="job already running")
        if len(faqs) <= 50:
            try:
                report = runner()
            finally:
                jobs.release(key)
            return {"status": "done", "report": report.to_dict()}
        job_id = jobs.start(key, runner)
        return {"status": "running", "job_id": job_id}

    @app.get("/api/eval/{job_id}")
    def eval_status(job_id: str) -> dict:
        job = jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail="unknown job")
        return job

    if config.debug_endpoints:

        @app.get("/api/debug/last_prompt/{session_id}")
        def last_prompt(session_id: str) -> dict:
            if session_id not in last_prompts:
                raise HTTPException(status_code=404, detail="no prompt recorded")
            return {"session_id": session_id, "prompt": last_prompts[session_id]}

    if config.webui_dir and Path(config.webui_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.webui_dir, html=True), name="webui")

    return app
