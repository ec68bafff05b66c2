"""Text-overlap metrics implemented from first principles.

Tokenization is deliberately naive and language-neutral: lowercase, split on
anything that is not a letter or digit.  No stemming, no stopword removal,
for any language.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Sequence


class MetricError(ValueError):
    pass


class EmptyAfterTokenizationError(MetricError):
    pass


class LengthMismatchError(MetricError):
    pass


_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens: maximal runs of Unicode letters and digits."""
    return _TOKEN_RE.findall(text.lower())


def _require_tokens(text: str, which: str) -> list[str]:
    tokens = tokenize(text)
    if not tokens:
        raise EmptyAfterTokenizationError(f"{which} is empty after tokenization")
    return tokens


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.precision, self.recall, self.f1)


def _prf(overlap: float, cand_total: float, ref_total: float) -> PRF:
    precision = overlap / cand_total if cand_total else 0.0
    recall = overlap / ref_total if ref_total else 0.0
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall > 0
        else 0.0
    )
    return PRF(precision, recall, f1)


def rouge_n(candidate: str, reference: str, n: int) -> PRF:
    """Clipped n-gram overlap: recall against the reference's n-grams,
    precision against the candidate's."""
    if n < 1:
        raise MetricError("n must be >= 1")
    cand = _ngrams(_require_tokens(candidate, "candidate"), n)
    ref = _ngrams(_require_tokens(reference, "reference"), n)
    overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
    return _prf(overlap, sum(cand.values()), sum(ref.values()))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Longest common subsequence length via the classic rolling-row DP."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        current = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                current.append(prev[j - 1] + 1)
            else:
                current.append(max(prev[j], current[j - 1]))
        prev = current
    return prev[-1]


def rouge_l(candidate: str, reference: str) -> PRF:
    """LCS-based overlap: recall L/|reference|, precision L/|candidate|."""
    cand = _require_tokens(candidate, "candidate")
    ref = _require_tokens(reference, "reference")
    common = lcs_length(cand, ref)
    return _prf(common, len(cand), len(ref))


@dataclass(frozen=True)
class BleuBreakdown:
    """Corpus BLEU with its ingredients exposed for testing and reports."""

    score: float
    precisions: tuple[float, float, float, float]
    brevity_penalty: float
    candidate_length: int
    reference_length: int


def bleu_breakdown(
    candidates: Sequence[str],
    references: Sequence[str],
    *,
    max_order: int = 4,
    smooth: bool = False,
) -> BleuBreakdown:
    """Corpus-level BLEU: uniform weights over orders 1..max_order, clipped
    modified precisions pooled over the corpus, and the brevity penalty
    exp(1 - r/c) when the candidate corpus is shorter than the reference.

    Without smoothing, a zero precision at any order zeroes the score; with
    ``smooth`` the classic add-one fallback applies to orders above 1.
    """
    if len(candidates) != len(references):
        raise LengthMismatchError(
            f"{len(candidates)} candidates vs {len(references)} references"
        )
    if not candidates:
        raise LengthMismatchError("empty corpus")

    matches = [0] * max_order
    totals = [0] * max_order
    cand_len = 0
    ref_len = 0
    for cand_text, ref_text in zip(candidates, references):
        cand = _require_tokens(cand_text, "candidate")
        ref = _require_tokens(ref_text, "reference")
        cand_len += len(cand)
        ref_len += len(ref)
        for order in range(1, max_order + 1):
            cand_grams = _ngrams(cand, order)
            ref_grams = _ngrams(ref, order)
            matches[order - 1] += sum(
                min(count, ref_grams[gram]) for gram, count in cand_grams.items()
            )
            totals[order - 1] += sum(cand_grams.values())

    precisions = []
    for order in range(max_order):
        if smooth and order > 0:
            precisions.append((matches[order] + 1) / (totals[order] + 1))
        elif totals[order] > 0:
            precisions.append(matches[order] / totals[order])
        else:
            precisions.append(0.0)

    if min(precisions) > 0.0:
        log_mean = math.fsum(math.log(p) for p in precisions) / max_order
        geo_mean = math.exp(log_mean)
    else:
        geo_mean = 0.0

    brevity = 1.0 if cand_len > ref_len else math.exp(1.0 - ref_len / cand_len)
    return BleuBreakdown(
        score=brevity * geo_mean,
        precisions=tuple(precisions),
        brevity_penalty=brevity,
        candidate_length=cand_len,
        reference_length=ref_len,
    )


def bleu(
    candidates: Sequence[str],
    references: Sequence[str],
    *,
    smooth: bool = False,
) -> float:
    return bleu_breakdown(candidates, references, smooth=smooth).score


def sentence_bleu(candidate: str, reference: str, *, smooth: bool = False) -> float:
    return bleu([candidate], [reference], smooth=smooth)
