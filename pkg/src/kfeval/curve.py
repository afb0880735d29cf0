"""Lowest-weight matchings per cardinality and penalised matching.

The assignment network is source -> rows -> columns -> sink with unit
capacities and the distances as row->column costs. Pushing one unit of flow
at a time along a shortest residual path gives, after ``k`` steps, a
minimum-weight matching of cardinality exactly ``k``. Dijkstra runs on
reduced costs ``c(u, v) + pi(u) - pi(v)``, which stay non-negative when the
potentials ``pi`` are advanced by the shortest-path distances of each round.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .core import InputError, Matching, MatrixLike, Pair, as_distance_matrix


@dataclass(frozen=True)
class CurvePoint:
    k: int
    weight: float
    witness: Matching


@dataclass(frozen=True)
class WeightCardinalityCurve:
    points: tuple[CurvePoint, ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self) -> Iterator[CurvePoint]:
        return iter(self.points)

    def __getitem__(self, k: int) -> CurvePoint:
        return self.points[k]

    @property
    def weights(self) -> list[float]:
        return [p.weight for p in self.points]


@dataclass(frozen=True)
class PenaltyParam:
    lam: float

    def __post_init__(self):
        lam = float(self.lam)
        if not (lam >= 0 and math.isfinite(lam)):
            raise InputError(f"penalty must be a finite value >= 0, got {self.lam!r}")
        object.__setattr__(self, "lam", lam)


def _augmentations(d: np.ndarray) -> Iterator[Matching]:
    """Yield the optimal matchings of cardinality 1, 2, ..., min(rows, cols)."""
    n, m = d.shape
    match_row = np.full(n, -1, dtype=np.int64)
    match_col = np.full(m, -1, dtype=np.int64)
    # Node order for Dijkstra: rows 0..n-1, columns n..n+m-1, sink n+m.
    sink = n + m
    pot = np.zeros(n + m + 1)

    for _ in range(min(n, m)):
        dist = np.full(n + m + 1, np.inf)
        parent = np.full(n + m + 1, -1, dtype=np.int64)
        done = np.zeros(n + m + 1, dtype=bool)
        # Source potential is pinned at 0; free rows hang off the source.
        dist[:n][match_row == -1] = -pot[:n][match_row == -1]

        while True:
            open_dist = np.where(done, np.inf, dist)
            u = int(np.argmin(open_dist))
            if not np.isfinite(open_dist[u]):
                break
            done[u] = True
            if u == sink:
                continue
            if u < n:
                # row -> every column it is not matched to
                cand = dist[u] + d[u] + pot[u] - pot[n:n + m]
                if match_row[u] != -1:
                    cand[match_row[u]] = np.inf
                better = (cand < dist[n:n + m]) & ~done[n:n + m]
                dist[n:n + m][better] = cand[better]
                parent[n:n + m][better] = u
            else:
                j = u - n
                r = match_col[j]
                if r == -1:
                    cand = dist[u] + pot[u] - pot[sink]
                    if cand < dist[sink]:
                        dist[sink] = cand
                        parent[sink] = u
                elif not done[r]:
                    cand = dist[u] - d[r, j] + pot[u] - pot[r]
                    if cand < dist[r]:
                        dist[r] = cand
                        parent[r] = u

        # Every node stays reachable while a free row and a free column exist.
        pot = pot + np.where(np.isfinite(dist), dist, 0.0)

        v = int(parent[sink])
        while v != -1:
            j = v - n
            r = int(parent[v])
            match_col[j] = r
            match_row[r] = j
            v = int(parent[r])  # column r was matched to before, or -1 at a free row

        yield Matching(tuple(
            Pair(r, int(c), float(d[r, c])) for r, c in enumerate(match_row) if c != -1
        ))


def weight_cardinality_curve(d: MatrixLike) -> WeightCardinalityCurve:
    """Minimum total weight for every cardinality 0..min(rows, cols), one sweep."""
    dm = as_distance_matrix(d).d
    points = [CurvePoint(0, 0.0, Matching())]
    for k, matching in enumerate(_augmentations(dm), start=1):
        points.append(CurvePoint(k, matching.total_weight, matching))
    return WeightCardinalityCurve(tuple(points))


def min_weight_at_cardinality(d: MatrixLike, k: int) -> tuple[Matching, float]:
    dm = as_distance_matrix(d).d
    if not 0 <= k <= min(dm.shape):
        raise InputError(f"cardinality {k} out of range 0..{min(dm.shape)}")
    if k == 0:
        return Matching(), 0.0
    for step, matching in enumerate(_augmentations(dm), start=1):
        if step == k:
            return matching, matching.total_weight
    raise AssertionError("unreachable")


def penalized_objective(curve: WeightCardinalityCurve, rows: int, cols: int,
                        lam: float) -> list[float]:
    """``w(k) + lam * (unmatched rows + unmatched cols)`` for every k."""
    return [p.weight + lam * ((rows - p.k) + (cols - p.k)) for p in curve]


def penalized_match(d: MatrixLike, p: PenaltyParam | float) -> Matching:
    """Matching minimising total weight plus ``lam`` per unmatched frame.

    Both summaries' unmatched frames are penalised. Equal objectives resolve
    to the larger cardinality.
    """
    dm = as_distance_matrix(d)
    lam = p.lam if isinstance(p, PenaltyParam) else PenaltyParam(p).lam
    curve = weight_cardinality_curve(dm)
    objective = penalized_objective(curve, dm.rows, dm.cols, lam)
    best = 0
    for k, value in enumerate(objective):
        if value <= objective[best]:
            best = k
    return curve[best].witness
