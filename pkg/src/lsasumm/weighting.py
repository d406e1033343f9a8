"""Term weighting and the term-by-sentence input matrix.

Each cell is ``L(tf_ij) * G(i) + W_adj(i, j)``, where the adjacent weight
adds a gamma-scaled share of the same term's ``L * G`` in neighbouring
sentences.  Logarithms are natural logs throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import EmptyVocabulary
from .text import Document


class LocalScheme(str, Enum):
    BR = "BR"  # binary
    TF = "TF"  # raw term frequency
    AW = "AW"  # augmented
    LW = "LW"  # logarithmic


class GlobalScheme(str, Enum):
    NG = "NG"  # none
    ISF = "ISF"  # inverse sentence frequency
    EF = "EF"  # entropy frequency


class Adjacency(str, Enum):
    NONE = "none"
    TWO = "two"
    FOUR = "four"


# Neighbour offsets and their coefficients inside the gamma bracket; the far
# neighbours (j +/- 2) count half as much as the near ones.
ADJACENT_OFFSETS = {
    Adjacency.NONE: {},
    Adjacency.TWO: {-1: 1.0, 1: 1.0},
    Adjacency.FOUR: {-2: 0.5, -1: 1.0, 1: 1.0, 2: 0.5},
}


@dataclass(frozen=True)
class WeightConfig:
    local_scheme: LocalScheme = LocalScheme.AW
    global_scheme: GlobalScheme = GlobalScheme.EF
    adjacency: Adjacency = Adjacency.FOUR
    gamma: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "local_scheme", LocalScheme(self.local_scheme))
        object.__setattr__(self, "global_scheme", GlobalScheme(self.global_scheme))
        object.__setattr__(self, "adjacency", Adjacency(self.adjacency))
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")


@dataclass(frozen=True)
class TermStats:
    tf: np.ndarray  # m x n counts
    tf_max: np.ndarray  # per sentence
    n_i: np.ndarray  # sentences containing term i
    gf: np.ndarray  # total count of term i

    @property
    def m(self) -> int:
        return self.tf.shape[0]

    @property
    def n(self) -> int:
        return self.tf.shape[1]

    @classmethod
    def from_counts(cls, tf) -> "TermStats":
        tf = np.asarray(tf, dtype=np.int64)
        if tf.ndim != 2:
            raise ValueError("tf must be a 2-d count matrix")
        tf_max = tf.max(axis=0) if tf.shape[0] else np.zeros(tf.shape[1], dtype=np.int64)
        return cls(tf=tf, tf_max=tf_max, n_i=(tf > 0).sum(axis=1), gf=tf.sum(axis=1))

    @classmethod
    def from_document(cls, doc: Document) -> "TermStats":
        tf = np.zeros((doc.m, doc.n), dtype=np.int64)
        for j, sentence in enumerate(doc.sentences):
            for term in sentence.terms:
                tf[doc.vocabulary[term], j] += 1
        return cls.from_counts(tf)


@dataclass(frozen=True)
class TermSentenceMatrix:
    values: np.ndarray
    term_ids: tuple[str, ...]
    sentence_ids: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def local_weight(tf: int, tf_max: int, scheme: LocalScheme | str) -> float:
    scheme = LocalScheme(scheme)
    if tf <= 0:
        return 0.0
    if scheme is LocalScheme.BR:
        return 1.0
    if scheme is LocalScheme.TF:
        return float(tf)
    if scheme is LocalScheme.AW:
        return 0.5 + 0.5 * (tf / tf_max) if tf_max > 0 else 0.0
    return 1.0 + math.log(tf)


def local_weights(stats: TermStats, scheme: LocalScheme | str) -> np.ndarray:
    """Vectorized :func:`local_weight` over the whole count matrix."""
    scheme = LocalScheme(scheme)
    tf = stats.tf.astype(float)
    present = tf > 0
    if scheme is LocalScheme.BR:
        return present.astype(float)
    if scheme is LocalScheme.TF:
        return tf
    if scheme is LocalScheme.AW:
        tf_max = stats.tf_max.astype(float)
        ratio = np.divide(tf, tf_max, out=np.zeros_like(tf), where=tf_max > 0)
        return np.where(present, 0.5 + 0.5 * ratio, 0.0)
    return np.where(present, 1.0 + np.log(np.where(present, tf, 1.0)), 0.0)


def global_weights(stats: TermStats, scheme: GlobalScheme | str) -> np.ndarray:
    """Per-term global weight vector (length m)."""
    scheme = GlobalScheme(scheme)
    n = stats.n
    if scheme is GlobalScheme.NG:
        return np.ones(stats.m)
    occurs = stats.gf > 0
    if scheme is GlobalScheme.ISF:
        n_i = np.where(stats.n_i > 0, stats.n_i, 1)
        return np.where(occurs, 1.0 + np.log(n / n_i), 0.0)
    if n == 1:
        return np.where(occurs, 1.0, 0.0)
    # sum_j P ln P = (sum_j tf ln tf) / gf - ln gf, so a uniform row cancels exactly.
    gf = np.where(occurs, stats.gf, 1).astype(float)
    tf = stats.tf.astype(float)
    tflogtf = np.zeros_like(tf)
    np.multiply(tf, np.log(tf, out=np.zeros_like(tf), where=tf > 0), out=tflogtf)
    entropy = tflogtf.sum(axis=1) / gf - np.log(gf)
    ef = np.clip(1.0 + entropy / math.log(n), 0.0, 1.0)
    return np.where(occurs, ef, 0.0)


def global_weight(stats: TermStats, term: int, sentence: int, scheme: GlobalScheme | str) -> float:
    # Global weights do not depend on the sentence; the argument mirrors G(t_ij).
    if not 0 <= sentence < stats.n:
        raise IndexError(f"sentence {sentence} out of range")
    return float(global_weights(stats, scheme)[term])


def adjacent_weight(
    n: int,
    term: int,
    sentence: int,
    adjacency: Adjacency | str,
    gamma: float,
    lg: Callable[[int, int], float],
) -> float:
    """Gamma-scaled sum of ``lg(term, j')`` over the neighbours of ``sentence``.

    Neighbours that fall outside the document contribute nothing.
    """
    if not 0 <= sentence < n:
        raise IndexError(f"sentence {sentence} out of range")
    total = 0.0
    for offset, coef in ADJACENT_OFFSETS[Adjacency(adjacency)].items():
        j = sentence + offset
        if 0 <= j < n:
            total += coef * lg(term, j)
    return gamma * total


def adjacent_matrix(lg: np.ndarray, adjacency: Adjacency | str, gamma: float) -> np.ndarray:
    out = np.zeros_like(lg)
    n = lg.shape[1]
    for offset, coef in ADJACENT_OFFSETS[Adjacency(adjacency)].items():
        if abs(offset) >= n:
            continue
        if offset > 0:
            out[:, : n - offset] += coef * lg[:, offset:]
        else:
            out[:, -offset:] += coef * lg[:, : n + offset]
    return gamma * out


def weight_matrix(stats: TermStats, config: WeightConfig) -> np.ndarray:
    lg = local_weights(stats, config.local_scheme) * global_weights(stats, config.global_scheme)[:, None]
    if config.adjacency is Adjacency.NONE or config.gamma == 0.0:
        return lg
    return lg + adjacent_matrix(lg, config.adjacency, config.gamma)


def build_matrix(doc: Document, config: WeightConfig) -> TermSentenceMatrix:
    if doc.m == 0:
        raise EmptyVocabulary(f"document {doc.id!r} has no terms left after filtering")
    values = weight_matrix(TermStats.from_document(doc), config)
    # A sentence emptied by filtering stays a zero column even when its
    # neighbours would lend it adjacent weight.
    empty = [j for j, s in enumerate(doc.sentences) if not s.terms]
    if empty:
        values[:, empty] = 0.0
    return TermSentenceMatrix(values, doc.terms, tuple(range(doc.n)))
