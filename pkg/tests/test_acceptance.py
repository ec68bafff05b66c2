"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the criterion lines
as they complete.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from conftest import (
    random_store,
    random_vector,
    synthetic_faq_corpus,
    write_trilingual_manifest,
)
from ragweld.core import AR, EN, FR, RetrievalConfig
from ragweld.evalkit import ContextArm, EvalSetting, QueryMode, run_eval
from ragweld.evalkit.metrics import bleu, bleu_breakdown, lcs_length, rouge_n
from ragweld.ingest import ChunkingPolicy, build_corpus, load_manifest
from ragweld.pipeline import Pipeline, PipelineConfig
from ragweld.providers.offline import EchoGenerator, offline_provider_set
from ragweld.vindex import ChecksumMismatchError, load_store, save_store, search

DATA_DIR = Path(__file__).parent / "data"


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}", flush=True)
        raise
    print(f"[PASS] {name}", flush=True)


# --------------------------------------------------------------------------
# Criterion 1: metric oracle suite
# --------------------------------------------------------------------------


def brute_force_lcs(a, b) -> int:
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    best = 0
    for mask in range(1 << len(short)):
        sub = [short[i] for i in range(len(short)) if mask >> i & 1]
        if len(sub) <= best:
            continue
        it = iter(long_)
        if all(tok in it for tok in sub):
            best = len(sub)
    return best


def test_metric_oracle_suite():
    with criterion("metric oracle suite (LCS exhaustive, hand-derived ROUGE/BLEU)"):
        started = time.perf_counter()
        alphabet = ("a", "b", "c")

        # Exhaustive: every sequence pair with combined length <= 8.
        # (All pairs with each side up to length 8 would be ~10^8 brute-force
        # evaluations; the combined-length domain is fully enumerable.)
        by_length = {
            n: list(itertools.product(alphabet, repeat=n)) for n in range(1, 8)
        }
        checked = 0
        for len_a in range(1, 8):
            for len_b in range(1, 9 - len_a):
                for a in by_length[len_a]:
                    for b in by_length[len_b]:
                        assert lcs_length(a, b) == brute_force_lcs(a, b)
                        checked += 1
        assert checked == 63_972

        # Seeded random pairs at the full length-8 envelope.
        rng = random.Random(99)
        for _ in range(400):
            a = tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 8)))
            b = tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 8)))
            assert lcs_length(a, b) == brute_force_lcs(a, b)

        elapsed = time.perf_counter() - started
        assert elapsed < 10.0, f"LCS oracle took {elapsed:.1f}s"

        # Hand-derived fixed points.
        prf = rouge_n("the cat sat", "the cat was here", 1)
        assert prf.f1 == pytest.approx(0.5714, abs=1e-4)

        breakdown = bleu_breakdown(
            ["the the the the the the the"], ["the cat is on the mat"]
        )
        assert breakdown.precisions[0] == pytest.approx(2 / 7, abs=1e-9)

        corpus = [
            "inhalers relax the airway muscles quickly",
            "asthma is a chronic condition of the airways",
        ]
        assert bleu(corpus, corpus) == 1.0


# --------------------------------------------------------------------------
# Criterion 2: retrieval oracle suite
# --------------------------------------------------------------------------


def _oracle(store, query, k, lam):
    scored = []
    from ragweld.vindex import cosine

    for item in store.items:
        s = cosine(query, item.embedding)
        if s >= lam:
            scored.append((s, item.id))
    scored.sort(key=lambda t: (-t[0], t[1]))
    return scored[:k]


def test_retrieval_oracle_suite():
    with criterion("retrieval oracle suite (100 random stores + monotonicity x1000)"):
        rng = random.Random(1234)
        for _ in range(100):
            n = rng.randint(1, 200)
            dim = rng.randint(2, 16)
            store = random_store(rng, n, dim)
            query = random_vector(rng, dim)
            k = rng.randint(1, n + 5)
            lam = rng.uniform(-0.5, 0.8)
            got = search(store, query, k, lam)
            assert [(r.score, r.item.id) for r in got] == _oracle(store, query, k, lam)

        # Monotonicity over 1,000 random cases on a pool of reusable stores.
        pool = [random_store(rng, rng.randint(5, 60), 8) for _ in range(20)]
        for case in range(1000):
            store = pool[case % len(pool)]
            query = random_vector(rng, 8)
            lam_low = rng.uniform(-1.0, 0.5)
            lam_high = rng.uniform(lam_low, 1.0)
            k_small = rng.randint(1, 10)
            k_large = rng.randint(k_small, 20)

            low = search(store, query, len(store), lam_low)
            high = search(store, query, len(store), lam_high)
            assert {r.item.id for r in high} <= {r.item.id for r in low}

            small = search(store, query, k_small, lam_low)
            large = search(store, query, k_large, lam_low)
            assert [r.item.id for r in large[: len(small)]] == [r.item.id for r in small]
            assert all(lam_low <= r.score <= 1.0 for r in large)


# --------------------------------------------------------------------------
# Criterion 3: pipeline golden run
# --------------------------------------------------------------------------

GOLDEN_QUERIES = [
    "what is asthma and how is it treated",
    "how can exercise help with asthma symptoms",
    "qu'est-ce que l'asthme et comment est-il traité",
    "le sport est-il bon pour les personnes asthmatiques",
    "ما هو الربو وكيف يتم علاجه",
    "هل الرياضة مفيدة لمرضى الربو",
]


def _golden_transcript(root: Path) -> bytes:
    manifest = load_manifest(write_trilingual_manifest(root))
    registry, report = build_corpus(
        manifest, ChunkingPolicy(max_chunk_tokens=24, overlap_tokens=4), offline_provider_set()
    )
    assert not report.failures and report.total_items == 30
    config = PipelineConfig(
        retrieval=RetrievalConfig(
            lambda_text=0.0,
            lambda_image=0.0,
            lambda_video=0.0,
            top_k_text=3,
            top_k_image=2,
            top_k_video=2,
        ),
        history_max_turns=6,
    )
    pipeline = Pipeline(offline_provider_set(), registry, config)
    session: list = []
    turns = [pipeline.answer(session, q).to_dict() for q in GOLDEN_QUERIES]
    return json.dumps(
        {"turns": turns}, sort_keys=True, ensure_ascii=True, separators=(",", ":")
    ).encode("ascii")


def test_pipeline_golden_run(tmp_path):
    with criterion("pipeline golden run (6 turns, byte-identical transcripts)"):
        first = _golden_transcript(tmp_path / "run1")
        second = _golden_transcript(tmp_path / "run2")
        assert first == second
        frozen = (DATA_DIR / "golden_transcript.json").read_bytes()
        assert first == frozen
        turns = json.loads(first)["turns"]
        assert [t["detected_language"] for t in turns] == ["en", "en", "fr", "fr", "ar", "ar"]


# --------------------------------------------------------------------------
# Criterion 4: directional retrieval-vs-baseline analogue
# --------------------------------------------------------------------------


def test_directional_rag_improvement(tmp_path):
    with criterion("directional analogue (RAG text >= 0.95, beats echo baseline by >= 0.3)"):
        started = time.perf_counter()
        faqs, registry = synthetic_faq_corpus(tmp_path, 50)
        base = PipelineConfig(
            retrieval=RetrievalConfig(lambda_text=0.0, top_k_text=1)
        )
        rag_report = run_eval(
            faqs,
            registry,
            offline_provider_set(),
            base,
            EvalSetting(language=EN, arm=ContextArm.TEXT),
        )
        norag_report = run_eval(
            faqs,
            registry,
            offline_provider_set(generator=EchoGenerator()),
            base,
            EvalSetting(language=EN, arm=ContextArm.NO_RAG),
        )
        elapsed = time.perf_counter() - started
        assert rag_report.n_pairs == 50 and rag_report.n_failures == 0
        assert rag_report.rouge1.f1 >= 0.95
        assert rag_report.rouge1.f1 - norag_report.rouge1.f1 >= 0.3
        assert elapsed < 60.0, f"directional analogue took {elapsed:.1f}s"


# --------------------------------------------------------------------------
# Criterion 5: query-mode harness analogue (TQ vs NQ for fr/ar)
# --------------------------------------------------------------------------


def test_query_mode_harness(tmp_path):
    with criterion("query-mode harness (TQ vs NQ for fr and ar, prompt-verified)"):
        for language, tag in ((FR, "fr"), (AR, "ar")):
            faqs, registry = synthetic_faq_corpus(
                tmp_path / tag, 6, language=language, seed=31 + ord(tag[0])
            )
            base = PipelineConfig(retrieval=RetrievalConfig(lambda_text=0.0, top_k_text=1))
            reports = {}
            for mode in (QueryMode.TQ, QueryMode.NQ):
                reports[mode] = run_eval(
                    faqs,
                    registry,
                    offline_provider_set(),
                    base,
                    EvalSetting(language=language, arm=ContextArm.TEXT, query_mode=mode),
                    capture_prompts=True,
                )
            assert reports[QueryMode.TQ].to_dict() != reports[QueryMode.NQ].to_dict()
            # The only pipeline difference is query translation in route():
            # TQ prompts carry the pivoted query, NQ prompts the native one.
            for pair, tq_prompt, nq_prompt in zip(
                faqs, reports[QueryMode.TQ].prompts, reports[QueryMode.NQ].prompts
            ):
                assert f"QUERY:\n⟦{tag}→en⟧{pair.question}" in tq_prompt
                assert f"QUERY:\n{pair.question}" in nq_prompt


# --------------------------------------------------------------------------
# Criterion 6: store persistence at scale
# --------------------------------------------------------------------------


def test_store_persistence_at_scale(tmp_path):
    with criterion("store persistence (1,000-item round trip, corruption rejected)"):
        rng = random.Random(77)
        store = random_store(rng, 1000, 16)
        path = tmp_path / "big.rgwd"
        save_store(store, path)
        loaded = load_store(path)
        assert loaded.items == store.items
        assert (loaded.language, loaded.modality, loaded.dim, loaded.built_at) == (
            store.language,
            store.modality,
            store.dim,
            store.built_at,
        )
        resaved = tmp_path / "big2.rgwd"
        save_store(loaded, resaved)
        assert path.read_bytes() == resaved.read_bytes()

        blob = bytearray(path.read_bytes())
        blob[len(blob) // 3] ^= 0x01
        corrupted = tmp_path / "corrupt.rgwd"
        corrupted.write_bytes(bytes(blob))
        with pytest.raises(ChecksumMismatchError):
            load_store(corrupted)


# --------------------------------------------------------------------------
# Criterion 7: service durability and isolation (no webui required)
# --------------------------------------------------------------------------


def test_service_durability_and_isolation(tmp_path):
    with criterion("service (crash-restart durability, 20-client isolation, no webui)"):
        import threading

        from fastapi.testclient import TestClient

        from ragweld.service.app import create_app
        from ragweld.service.config import ServiceConfig

        manifest = load_manifest(write_trilingual_manifest(tmp_path / "corpus"))
        registry, _ = build_corpus(
            manifest,
            ChunkingPolicy(max_chunk_tokens=24, overlap_tokens=4),
            offline_provider_set(),
        )
        config = ServiceConfig(
            data_dir=str(tmp_path / "data"),
            rate_limit_per_minute=100_000,
            lambda_text=0.0,
            lambda_image=0.0,
            lambda_video=0.0,
            webui_dir="",  # the primary suite runs without any webui build
        )
        providers = offline_provider_set()

        # Crash-restart durability.
        app = create_app(config, registry=registry, providers=providers)
        with TestClient(app) as client:
            sid = client.post("/api/chat", json={"query": "what is asthma"}).json()[
                "session_id"
            ]
            client.post(
                "/api/chat",
                json={"query": "how can exercise help with asthma symptoms", "session_id": sid},
            )
            before = client.get(f"/api/sessions/{sid}/history").json()
        restarted = create_app(config, registry=registry, providers=providers)
        with TestClient(restarted) as client:
            after = client.get(f"/api/sessions/{sid}/history").json()
        assert len(before) == 2 and after == before

        # Twenty concurrent clients, sessions stay isolated.
        soak_app = create_app(
            config, registry=registry, providers=offline_provider_set(generator=EchoGenerator())
        )
        errors: list[str] = []

        def worker(worker_id: int) -> None:
            with TestClient(soak_app) as client:
                queries = [
                    f"what is asthma topic {worker_id} question {t}" for t in range(5)
                ]
                sid = None
                for q in queries:
                    payload = {"query": q}
                    if sid:
                        payload["session_id"] = sid
                    response = client.post("/api/chat", json=payload)
                    if response.status_code != 200:
                        errors.append(f"worker {worker_id}: {response.status_code}")
                        return
                    sid = response.json()["session_id"]
                history = client.get(f"/api/sessions/{sid}/history").json()
                if [t["question"] for t in history] != queries:
                    errors.append(f"worker {worker_id}: foreign or missing turns")

        threads = [threading.Thread(target=worker, args=(i,)) for i in range(20)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert errors == []
