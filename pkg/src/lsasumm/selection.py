"""Sentence selectors over an SVD of the term-by-sentence matrix.

``ess_lsa_select`` combines the three SVD factors: singular values size each
topic's share of the summary, ``Vt`` rows rank sentences for a topic and the
top entries of the matching ``U`` column name the terms the topic's sentences
should cover.  Lead, Gong-Liu and Steinberger-Jezek selectors are baselines.

All selectors break ties toward the smallest sentence index and return the
chosen indices in document order.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateSpectrum
from .lsa import FilteredSigma, SvdResult, topic_threshold
from .text import Document

DEFAULT_TOPIC_TERMS = 3


@dataclass(frozen=True)
class Summary:
    sentence_indices: tuple[int, ...]
    rendered: str


def make_summary(doc: Document, indices: Sequence[int]) -> Summary:
    ordered = tuple(sorted(int(i) for i in indices))
    if len(set(ordered)) != len(ordered):
        raise ValueError("duplicate sentence index in selection")
    return Summary(ordered, " ".join(doc.sentences[j].text for j in ordered))


def _clamp(M: int, n: int) -> int:
    if M < 0:
        raise ValueError(f"budget must be >= 0, got {M}")
    return min(M, n)


def _check_dims(svd: SvdResult, doc: Document) -> None:
    if svd.Vt.shape[1] != doc.n:
        raise ValueError(f"Vt has {svd.Vt.shape[1]} columns but the document has {doc.n} sentences")


class _RowCursor:
    """Walks one row of Vt from largest to smallest value, skipping removed
    columns.  Each column is passed over at most once, so a full walk is
    linear after the initial sort."""

    def __init__(self, row: np.ndarray, live: np.ndarray):
        self.order = np.argsort(-row, kind="stable")
        self.live = live
        self.pos = 0

    def next(self) -> int | None:
        order, live = self.order, self.live
        while self.pos < order.shape[0]:
            c = int(order[self.pos])
            if live[c]:
                return c
            self.pos += 1
        return None


class _Selection:
    def __init__(self, Vt: np.ndarray, rows: Sequence[int], n: int, M: int):
        self.Vt = Vt
        self.live = np.ones(n, dtype=bool)
        self.selected: list[int] = []
        self.M = M
        self._cursors: dict[int, _RowCursor] = {}
        rows = list(rows)
        self._informative = np.any(Vt[rows] != 0, axis=0) if rows else np.zeros(n, dtype=bool)
        self.informative_live = int(self._informative.sum())

    @property
    def full(self) -> bool:
        return len(self.selected) >= self.M

    def cursor(self, k: int) -> _RowCursor:
        cur = self._cursors.get(k)
        if cur is None:
            cur = self._cursors[k] = _RowCursor(self.Vt[k], self.live)
        return cur

    def take(self, c: int) -> None:
        self.live[c] = False
        self.selected.append(c)
        if self._informative[c]:
            self.informative_live -= 1

    def fill_in_order(self) -> None:
        for c in np.flatnonzero(self.live):
            if self.full:
                break
            self.take(int(c))


def top_terms(U: np.ndarray, k: int, count: int = DEFAULT_TOPIC_TERMS) -> list[int]:
    """Row ids of the ``count`` largest entries of column ``k`` of U."""
    return [int(i) for i in np.argsort(-U[:, k], kind="stable")[:count]]


def ess_lsa_select(
    svd: SvdResult,
    sigma: FilteredSigma,
    doc: Document,
    M: int,
    topic_terms: int = DEFAULT_TOPIC_TERMS,
) -> Summary:
    """ESS-LSA sentence selection.

    For each concept with a surviving singular value, in order: take the
    sentence with the largest ``Vt`` value, then keep taking the next best
    sentences while some of the concept's top terms are still uncovered,
    the concept's count ``N_k`` is at most its threshold ``P_k`` and the
    budget allows.  Once every concept has been visited the walk restarts
    at the first concept; if no remaining sentence has a nonzero ``Vt``
    entry the budget is filled in document order.
    """
    _check_dims(svd, doc)
    n = doc.n
    M = _clamp(M, n)
    if M == 0:
        return make_summary(doc, ())
    if sigma.trace <= 0:
        raise DegenerateSpectrum("all singular values are zero")

    concepts = [int(k) for k in np.flatnonzero(sigma.values > 0)]
    state = _Selection(svd.Vt, concepts, n, M)
    taken_for = defaultdict(int)
    sentence_terms = doc.sentence_term_ids
    thresholds = {k: topic_threshold(sigma, k + 1, n) for k in concepts}
    terms_for = {}

    visit = 0
    while not state.full:
        if state.informative_live == 0:
            state.fill_in_order()
            break
        k = concepts[visit % len(concepts)]
        visit += 1
        cursor = state.cursor(k)
        c = cursor.next()
        if c is None:
            continue
        p_k = thresholds[k]
        state.take(c)
        taken_for[k] += 1
        if k not in terms_for:
            terms_for[k] = frozenset(top_terms(svd.U, k, topic_terms))
        pending = terms_for[k] - sentence_terms[c]
        while pending:
            if taken_for[k] <= p_k and not state.full:
                c = cursor.next()
                if c is None:
                    break
                state.take(c)
                taken_for[k] += 1
                pending -= sentence_terms[c]
            else:
                pending = frozenset()
    return make_summary(doc, state.selected)


def lead_select(doc: Document, M: int) -> Summary:
    return make_summary(doc, range(_clamp(M, doc.n)))


def gong_liu_select(svd: SvdResult, doc: Document, M: int) -> Summary:
    """One sentence per concept row of Vt, wrapping to the first row when the
    budget exceeds the number of concepts."""
    _check_dims(svd, doc)
    M = _clamp(M, doc.n)
    if M == 0:
        return make_summary(doc, ())
    state = _Selection(svd.Vt, range(svd.r), doc.n, M)
    k = 0
    while not state.full:
        c = state.cursor(k % svd.r).next()
        if c is None:
            break
        state.take(c)
        k += 1
    return make_summary(doc, state.selected)


def steinberger_scores(svd: SvdResult, sigma: FilteredSigma) -> np.ndarray:
    keep = sigma.values > 0
    weighted = svd.Vt[keep] * sigma.values[keep][:, None]
    return np.sqrt((weighted**2).sum(axis=0))


def steinberger_select(svd: SvdResult, sigma: FilteredSigma, doc: Document, M: int) -> Summary:
    """Rank sentences by the length of their sigma-weighted concept vector,
    using only the concepts that survive the singular-value filter."""
    _check_dims(svd, doc)
    M = _clamp(M, doc.n)
    scores = steinberger_scores(svd, sigma)
    order = np.argsort(-scores, kind="stable")
    return make_summary(doc, order[:M])
