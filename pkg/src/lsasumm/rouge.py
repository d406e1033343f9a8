"""ROUGE-N recall/precision/F1 with clipped n-gram counts.

Multiple references are combined by averaging per-reference scores.
Candidate truncation mirrors the toolkit's ``-l`` word limit.
"""

from __future__ import annotations

import logging
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import NoReferences
from .text import tokenize

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RougeScore:
    n: int
    recall: float
    precision: float
    f1: float
    per_reference: tuple[float, ...] = ()

    def as_dict(self) -> dict:
        return {
            "recall": self.recall,
            "precision": self.precision,
            "f1": self.f1,
            "per_reference": list(self.per_reference),
        }


@dataclass(frozen=True)
class EvalConfig:
    orders: tuple[int, ...] = (1, 2)
    truncate_words: int | None = None
    normalize: Callable[[str], str] | None = field(default=None, compare=False)
    case_fold: bool = True

    def __post_init__(self):
        orders = tuple(sorted(set(self.orders)))
        if not orders or not all(1 <= n <= 4 for n in orders):
            raise ValueError(f"orders must be a non-empty subset of 1..4, got {self.orders}")
        if self.truncate_words is not None and self.truncate_words <= 0:
            raise ValueError("truncate_words must be positive")
        object.__setattr__(self, "orders", orders)


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def eval_tokens(text: str, config: EvalConfig) -> list[str]:
    tokens = tokenize(unicodedata.normalize("NFC", text))
    if config.case_fold:
        tokens = [t.lower() for t in tokens]
    if config.normalize is not None:
        tokens = [config.normalize(t) for t in tokens]
    return tokens


def _overlap(cand: Counter, ref: Counter) -> int:
    return sum(min(count, ref[g]) for g, count in cand.items() if g in ref)


def _f1(recall: float, precision: float) -> float:
    if recall + precision == 0:
        return 0.0
    return 2 * recall * precision / (recall + precision)


def rouge_tokens(candidate: Sequence[str], references: Sequence[Sequence[str]], n: int) -> RougeScore:
    cand = ngrams(candidate, n)
    cand_total = sum(cand.values())
    recalls, precisions = [], []
    for ref_tokens in references:
        ref = ngrams(ref_tokens, n)
        ref_total = sum(ref.values())
        hit = _overlap(cand, ref)
        recalls.append(hit / ref_total if ref_total else 0.0)
        precisions.append(hit / cand_total if cand_total else 0.0)
    recall = sum(recalls) / len(recalls)
    precision = sum(precisions) / len(precisions)
    return RougeScore(n, recall, precision, _f1(recall, precision), tuple(recalls))


def rouge_n(candidate: str, references: Iterable[str], config: EvalConfig | None = None) -> dict[int, RougeScore]:
    """Score ``candidate`` against ``references`` for every configured order."""
    config = config or EvalConfig()
    references = list(references)
    if not references:
        raise NoReferences("at least one reference summary is required")
    cand = eval_tokens(candidate, config)
    if config.truncate_words is not None:
        cand = cand[: config.truncate_words]
    refs = []
    for i, ref in enumerate(references):
        tokens = eval_tokens(ref, config)
        if not tokens:
            log.warning("reference %d is empty; it contributes zero recall", i)
        refs.append(tokens)
    return {n: rouge_tokens(cand, refs, n) for n in config.orders}
