"""SVD of the input matrix, singular-value filtering and topic thresholds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, NumericalFailure
from .weighting import TermSentenceMatrix


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD ``A = U @ diag(E) @ Vt`` with r = min(m, n).

    Signs are fixed so that the largest-magnitude entry of every ``Vt`` row
    is nonnegative (first such entry on ties).
    """

    U: np.ndarray
    E: np.ndarray
    Vt: np.ndarray

    @property
    def r(self) -> int:
        return self.E.shape[0]


@dataclass(frozen=True)
class FilteredSigma:
    values: np.ndarray
    alpha: float
    trace: float


def fix_signs(U: np.ndarray, Vt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    U, Vt = U.copy(), Vt.copy()
    if Vt.size == 0:
        return U, Vt
    pivots = np.abs(Vt).argmax(axis=1)
    flip = Vt[np.arange(Vt.shape[0]), pivots] < 0
    Vt[flip] *= -1.0
    U[:, flip] *= -1.0
    return U, Vt


def decompose(A: TermSentenceMatrix | np.ndarray) -> SvdResult:
    values = A.values if isinstance(A, TermSentenceMatrix) else np.asarray(A, dtype=float)
    if values.ndim != 2 or min(values.shape) < 1:
        raise ValueError(f"need a non-empty 2-d matrix, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise NumericalFailure("input matrix has non-finite entries")
    try:
        U, E, Vt = np.linalg.svd(values, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc
    # LAPACK already returns E in nonincreasing order; a stable sort keeps
    # that guarantee explicit without reordering ties.
    order = np.argsort(-E, kind="stable")
    U, E, Vt = U[:, order], E[order], Vt[order]
    U, Vt = fix_signs(U, Vt)
    return SvdResult(U=U, E=E, Vt=Vt)


def filter_sigma(E, alpha: float = 0.5) -> FilteredSigma:
    """Zero every singular value strictly below ``alpha * max(E)``."""
    E = np.asarray(E, dtype=float)
    if E.size == 0:
        return FilteredSigma(E.copy(), alpha, 0.0)
    cutoff = E.max() * alpha
    values = np.where(E < cutoff, 0.0, E)
    return FilteredSigma(values, alpha, float(values.sum()))


def topic_threshold(sigma: FilteredSigma, k: int, n: int) -> float:
    """Sentence-topic threshold for concept ``k`` (1-based): its share of the
    surviving spectrum times the sentence count."""
    if sigma.trace <= 0:
        raise DegenerateSpectrum("all singular values are zero")
    if not 1 <= k <= sigma.values.shape[0]:
        raise IndexError(f"concept {k} out of range 1..{sigma.values.shape[0]}")
    return float(sigma.values[k - 1] / sigma.trace * n)
