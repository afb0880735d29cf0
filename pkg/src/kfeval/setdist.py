"""Set-to-set distances between summaries: Hausdorff and averaged nearest distance.

Each function takes either two :class:`~kfeval.core.Summary` objects or two
arrays of points (one point per row), which is handy for low-dimensional
stand-ins in tests.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Union

import numpy as np

from .core import (
    InputError,
    MatrixLike,
    MetricKind,
    Summary,
    as_distance_matrix,
    pairwise_distances,
)

PointSet = Union[Summary, np.ndarray, Sequence[Sequence[float]]]


def _points(x: PointSet) -> np.ndarray:
    if isinstance(x, Summary):
        return x.feature_matrix()
    pts = np.asarray(x, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise InputError("empty summary")
    return pts


def _nearest(x: PointSet, y: PointSet, metric) -> np.ndarray:
    """For every point of x, the distance to its nearest neighbour in y."""
    px, py = _points(x), _points(y)
    if px.shape[1] != py.shape[1]:
        raise InputError("feature dimension mismatch")
    return pairwise_distances(px, py, MetricKind.parse(metric)).min(axis=1)


def semi_hausdorff(x: PointSet, y: PointSet, metric=MetricKind.L1) -> float:
    """Largest distance from a point of ``x`` to its nearest point of ``y``.

    Not symmetric: a ``y`` with extra far-away frames scores the same.
    """
    return float(_nearest(x, y, metric).max())


def hausdorff(x: PointSet, y: PointSet, metric=MetricKind.L1) -> float:
    return max(semi_hausdorff(x, y, metric), semi_hausdorff(y, x, metric))


def average_best(x: PointSet, y: PointSet, metric=MetricKind.L1,
                 weights: Sequence[float] | None = None) -> float:
    """Weighted mean over ``x`` of the nearest-neighbour distance into ``y``.

    Args:
        weights: one non-negative weight per point of ``x``; uniform when
            omitted.
    """
    best = _nearest(x, y, metric)
    w = np.ones_like(best) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != best.shape or np.any(w < 0) or w.sum() <= 0:
        raise InputError("weights must be non-negative, one per frame, not all zero")
    mean = math.fsum(w * best) / math.fsum(w)
    # rounding in the mean must not push it past the largest term
    return float(min(mean, best.max()))


def set_distances(d: MatrixLike) -> dict[str, float]:
    """The three measures from a precomputed matrix (rows play ``x``, columns ``y``)."""
    dm = as_distance_matrix(d).d
    row_best = dm.min(axis=1)
    semi = float(row_best.max())
    return {
        "semi_hausdorff": semi,
        "hausdorff": max(semi, float(dm.min(axis=0).max())),
        "average_best": float(min(math.fsum(row_best) / row_best.size, semi)),
    }
