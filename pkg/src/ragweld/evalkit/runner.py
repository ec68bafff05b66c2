"""FAQ-based evaluation harness.

Each FAQ pair is answered by the pipeline under a chosen setting (language,
context arm, query mode) inside a fresh session, and the generated answer is
scored against the reference with ROUGE-1/2/L and corpus BLEU.
"""

from __future__ import annotations

import csv
import enum
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..core import LanguageTag, Modality
from ..pipeline import Pipeline, PipelineConfig, PipelineError, PipelineMode
from ..providers import ProviderError, ProviderSet
from ..vindex import StoreRegistry
from .metrics import PRF, MetricError, bleu, rouge_l, rouge_n


@dataclass(frozen=True)
class FaqPair:
    """A question with its authoritative reference answer."""

    id: str
    question: str
    reference_answer: str
    language: LanguageTag
    source: str = ""

    def __post_init__(self) -> None:
        if not self.question.strip() or not self.reference_answer.strip():
            raise ValueError("FAQ pairs need a non-empty question and reference answer")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "question": self.question,
            "reference_answer": self.reference_answer,
            "language": self.language.code,
            "source": self.source,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FaqPair":
        return cls(
            id=d["id"],
            question=d["question"],
            reference_answer=d["reference_answer"],
            language=LanguageTag(d["language"]),
            source=d.get("source", ""),
        )


class ContextArm(enum.Enum):
    """What feeds the prompt's context slot during evaluation."""

    NO_RAG = "norag"
    TEXT = "text"
    IMAGE = "image"
    VIDEO = "video"


class QueryMode(enum.Enum):
    TQ = "tq"  # query translated to English before retrieval and prompting
    NQ = "nq"  # query kept in its native language end to end


@dataclass(frozen=True)
class EvalSetting:
    language: LanguageTag
    arm: ContextArm
    query_mode: QueryMode = QueryMode.TQ

    def to_dict(self) -> dict:
        return {
            "language": self.language.code,
            "arm": self.arm.value,
            "query_mode": self.query_mode.value,
        }


@dataclass(frozen=True)
class EvalReport:
    """Per-setting aggregates: macro-averaged ROUGE, corpus-level BLEU."""

    setting: EvalSetting
    rouge1: PRF
    rouge2: PRF
    rougeL: PRF
    bleu: float
    n_pairs: int
    n_failures: int
    prompts: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "setting": self.setting.to_dict(),
            "rouge1": self.rouge1.as_tuple(),
            "rouge2": self.rouge2.as_tuple(),
            "rougeL": self.rougeL.as_tuple(),
            "bleu": self.bleu,
            "n_pairs": self.n_pairs,
            "n_failures": self.n_failures,
        }


def _pipeline_config_for(base: PipelineConfig, setting: EvalSetting) -> PipelineConfig:
    from dataclasses import replace

    if setting.arm is ContextArm.NO_RAG:
        return replace(base, mode=PipelineMode.NO_RAG, context_modality=Modality.TEXT)
    mode = (
        PipelineMode.RAG_NATIVE_QUERY
        if setting.query_mode is QueryMode.NQ
        else PipelineMode.RAG
    )
    context_modality = {
        ContextArm.TEXT: Modality.TEXT,
        ContextArm.IMAGE: Modality.IMAGE,
        ContextArm.VIDEO: Modality.VIDEO,
    }[setting.arm]
    return replace(base, mode=mode, context_modality=context_modality)


def _mean_prf(values: Sequence[PRF]) -> PRF:
    if not values:
        return PRF(0.0, 0.0, 0.0)
    n = len(values)
    return PRF(
        sum(v.precision for v in values) / n,
        sum(v.recall for v in values) / n,
        sum(v.f1 for v in values) / n,
    )


def run_eval(
    faqs: Sequence[FaqPair],
    registry: StoreRegistry,
    providers: ProviderSet,
    base_config: PipelineConfig,
    setting: EvalSetting,
    *,
    max_workers: int = 1,
    capture_prompts: bool = False,
) -> EvalReport:
    """Answer every FAQ under the setting and aggregate the metrics.

    Pairs whose pipeline run fails, or whose candidate cannot be tokenized,
    count as failures and are excluded from the aggregates.  BLEU is
    corpus-level over the scored pairs; a sentence-level variant is
    available through ``metrics.sentence_bleu``.
    """
    if not faqs:
        raise ValueError("no FAQ pairs to evaluate")
    mismatched = [p.id for p in faqs if p.language != setting.language]
    if mismatched:
        raise ValueError(f"pairs not in setting language: {mismatched[:5]}")

    config = _pipeline_config_for(base_config, setting)
    pipeline = Pipeline(providers, registry, config)
    prompts: list[str | None] = [None] * len(faqs)

    def answer_one(indexed: tuple[int, FaqPair]) -> str | None:
        index, pair = indexed
        session: list = []

        def keep(prompt: str) -> None:
            prompts[index] = prompt

        try:
            result = pipeline.answer(
                session, pair.question, on_prompt=keep if capture_prompts else None
            )
            return result.text
        except (PipelineError, ProviderError):
            return None

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            candidates = list(pool.map(answer_one, enumerate(faqs)))
    else:
        candidates = [answer_one(pair) for pair in enumerate(faqs)]

    scored_candidates: list[str] = []
    scored_references: list[str] = []
    r1: list[PRF] = []
    r2: list[PRF] = []
    rl: list[PRF] = []
    failures = 0
    for pair, candidate in zip(faqs, candidates):
        if candidate is None or not candidate.strip():
            failures += 1
            continue
        try:
            r1.append(rouge_n(candidate, pair.reference_answer, 1))
            r2.append(rouge_n(candidate, pair.reference_answer, 2))
            rl.append(rouge_l(candidate, pair.reference_answer))
        except MetricError:
            failures += 1
            continue
        scored_candidates.append(candidate)
        scored_references.append(pair.reference_answer)

    corpus_bleu = bleu(scored_candidates, scored_references) if scored_candidates else 0.0
    return EvalReport(
        setting=setting,
        rouge1=_mean_prf(r1),
        rouge2=_mean_prf(r2),
        rougeL=_mean_prf(rl),
        bleu=corpus_bleu,
        n_pairs=len(scored_candidates),
        n_failures=failures,
        prompts=tuple(p or "" for p in prompts) if capture_prompts else (),
    )


def load_faq_jsonl(path) -> list[FaqPair]:
    """One FaqPair JSON object per line."""
    pairs = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                pairs.append(FaqPair.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad FAQ record: {exc}") from exc
    return pairs


def load_faq_csv(path, language: LanguageTag) -> list[FaqPair]:
    """Two-column CSV (question, answer); ids are generated sequentially."""
    pairs = []
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as handle:
        for i, row in enumerate(csv.reader(handle), start=1):
            if not row or not any(cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: row {i} needs two columns (question, answer)")
            pairs.append(
                FaqPair(
                    id=f"{path.stem}-{i:04d}",
                    question=row[0].strip(),
                    reference_answer=row[1].strip(),
                    language=language,
                )
            )
    return pairs
