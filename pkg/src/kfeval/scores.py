"""Precision, recall and F-measure from a match count."""

from __future__ import annotations

from dataclasses import dataclass

from .core import InputError


@dataclass(frozen=True)
class EvalScores:
    num_matches: int
    precision: float
    recall: float
    f_measure: float


def score(m: int, n_candidate: int, n_truth: int) -> EvalScores:
    """Scale the number of matched pairs by the two summary sizes.

    Precision divides by the candidate size, recall by the ground-truth size.
    """
    if n_candidate <= 0 or n_truth <= 0 or not 0 <= m <= min(n_candidate, n_truth):
        raise InputError(
            f"invalid counts: m={m}, n_candidate={n_candidate}, n_truth={n_truth}"
        )
    precision = m / n_candidate
    recall = m / n_truth
    # 2PR / (P + R) simplifies to 2m / (n_c + n_t); also 0 when m == 0.
    f_measure = 2 * m / (n_candidate + n_truth)
    return EvalScores(int(m), precision, recall, f_measure)
