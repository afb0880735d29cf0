"""Frame matching algorithms on a dense distance matrix.

Rows are candidate frames, columns ground-truth frames. The thresholded
matchers only ever pair ``(i, j)`` with ``d[i, j] < theta``; the Hungarian
matcher ignores the threshold and returns a complete minimum-weight matching.

Whenever a minimum has to be picked among equal values, the lowest
``(row, col)`` wins, so every matcher is deterministic.
"""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Callable
from typing import Union

import numpy as np

from .core import (
    InputError,
    Matching,
    MatrixLike,
    Pair,
    Threshold,
    as_distance_matrix,
    as_threshold,
)

ThresholdLike = Union[Threshold, float]


class MatcherKind(str, enum.Enum):
    GREEDY = "greedy"
    MAHMOUD = "mahmoud"
    KANNAPPAN = "kannappan"
    MAXIMAL = "maximal"
    HUNGARIAN = "hungarian"

    @classmethod
    def parse(cls, value: str | MatcherKind) -> MatcherKind:
        if isinstance(value, MatcherKind):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InputError(
                f"unknown matcher {value!r}; valid choices: "
                + ", ".join(k.value for k in cls)
            ) from None

    @property
    def uses_threshold(self) -> bool:
        return self is not MatcherKind.HUNGARIAN


def _pairs(d: np.ndarray, index_pairs) -> Matching:
    return Matching(tuple(Pair(r, c, float(d[r, c])) for r, c in index_pairs))


def greedy_match(d: MatrixLike, t: ThresholdLike) -> Matching:
    """Repeatedly take the smallest remaining distance while it is below theta.

    The row and column of each taken pair are struck out. Scanning the
    sub-threshold entries once in ``(weight, row, col)`` order is equivalent
    to re-searching the shrinking matrix for its minimum on every step.
    """
    dm = as_distance_matrix(d).d
    theta = as_threshold(t).theta
    rows, cols = np.nonzero(dm < theta)
    order = np.lexsort((cols, rows, dm[rows, cols]))
    used_r, used_c = set(), set()
    chosen = []
    for k in order:
        r, c = int(rows[k]), int(cols[k])
        if r in used_r or c in used_c:
            continue
        used_r.add(r)
        used_c.add(c)
        chosen.append((r, c))
    return _pairs(dm, chosen)


def mahmoud_match(d: MatrixLike, t: ThresholdLike) -> Matching:
    """First-fit matching in temporal order.

    Each candidate frame, in order, takes the earliest still-unmatched
    ground-truth frame closer than theta. The result depends on frame order.
    """
    dm = as_distance_matrix(d).d
    theta = as_threshold(t).theta
    free = np.ones(dm.shape[1], dtype=bool)
    chosen = []
    for r in range(dm.shape[0]):
        hits = np.flatnonzero(free & (dm[r] < theta))
        if hits.size:
            c = int(hits[0])
            free[c] = False
            chosen.append((r, c))
    return _pairs(dm, chosen)


def kannappan_match(d: MatrixLike, t: ThresholdLike) -> Matching:
    """Keep only mutual nearest neighbours, then drop pairs at or above theta."""
    dm = as_distance_matrix(d).d
    theta = as_threshold(t).theta
    row_best = np.argmin(dm, axis=1)
    col_best = np.argmin(dm, axis=0)
    chosen = [
        (r, int(c)) for r, c in enumerate(row_best)
        if col_best[c] == r and dm[r, c] < theta
    ]
    return _pairs(dm, chosen)


def hopcroft_karp(adjacency: list[list[int]], n_right: int) -> list[int]:
    """Maximum-cardinality bipartite matching.

    Args:
        adjacency: for every left vertex, its right neighbours. Neighbours are
            explored in the given order, which fixes the returned matching.
        n_right: number of right vertices.

    Returns:
        ``match[left]`` = matched right vertex, or -1.
    """
    n_left = len(adjacency)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    inf = n_left + 1

    while True:
        # BFS layering from every free left vertex.
        dist = [inf] * n_left
        queue = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_l

        # Vertex-disjoint shortest augmenting paths, iterative DFS.
        next_edge = [0] * n_left
        for root in range(n_left):
            if match_l[root] != -1:
                continue
            stack = [root]
            path_cols = []
            while stack:
                u = stack[-1]
                advanced = False
                while next_edge[u] < len(adjacency[u]):
                    v = adjacency[u][next_edge[u]]
                    next_edge[u] += 1
                    w = match_r[v]
                    if w == -1:
                        path_cols.append(v)
                        for left, right in zip(stack, path_cols):
                            match_l[left] = right
                            match_r[right] = left
                        stack = []
                        advanced = True
                        break
                    if dist[w] == dist[u] + 1:
                        path_cols.append(v)
                        stack.append(w)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = inf
                    stack.pop()
                    if path_cols:
                        path_cols.pop()


def maximal_match(d: MatrixLike, t: ThresholdLike) -> Matching:
    """Maximum-cardinality matching of the graph of sub-threshold edges."""
    dm = as_distance_matrix(d).d
    theta = as_threshold(t).theta
    adjacency = [np.flatnonzero(row < theta).tolist() for row in dm]
    match = hopcroft_karp(adjacency, dm.shape[1])
    return _pairs(dm, [(r, c) for r, c in enumerate(match) if c != -1])


def _hungarian_assign(cost: np.ndarray) -> np.ndarray:
    """Minimum-cost assignment of every row for an ``n x m`` cost with n <= m.

    Primal-dual Hungarian method with row/column potentials; one row is
    inserted per phase along a shortest augmenting path. Returns ``col[row]``.
    """
    n, m = cost.shape
    # 1-based with a virtual column 0, as in the classical formulation.
    a = np.zeros((n + 1, m + 1))
    a[1:, 1:] = cost
    u = np.zeros(n + 1)
    v = np.zeros(m + 1)
    p = np.zeros(m + 1, dtype=np.int64)  # p[j] = row assigned to column j
    way = np.zeros(m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(m + 1, np.inf)
        used = np.zeros(m + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used
            free[0] = False
            cur = a[i0] - u[i0] - v
            better = free & (cur < minv)
            minv[better] = cur[better]
            way[better] = j0
            cand = np.where(free, minv, np.inf)
            j1 = int(np.argmin(cand))
            delta = cand[j1]
            u[p[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    col_of = np.full(n, -1, dtype=np.int64)
    for j in range(1, m + 1):
        if p[j]:
            col_of[p[j] - 1] = j - 1
    return col_of


def hungarian_match(d: MatrixLike, t: ThresholdLike | None = None) -> Matching:
    """Complete matching of cardinality ``min(rows, cols)`` with least total weight.

    ``t`` is accepted for interface symmetry and ignored. Sentinel entries are
    ordinary (large) weights here.
    """
    dm = as_distance_matrix(d).d
    if dm.shape[0] <= dm.shape[1]:
        col_of = _hungarian_assign(dm)
        chosen = [(r, int(c)) for r, c in enumerate(col_of)]
    else:
        row_of = _hungarian_assign(dm.T)
        chosen = sorted((int(r), c) for c, r in enumerate(row_of))
    return _pairs(dm, chosen)


MATCHERS: dict[MatcherKind, Callable[..., Matching]] = {
    MatcherKind.GREEDY: greedy_match,
    MatcherKind.MAHMOUD: mahmoud_match,
    MatcherKind.KANNAPPAN: kannappan_match,
    MatcherKind.MAXIMAL: maximal_match,
    MatcherKind.HUNGARIAN: hungarian_match,
}


def run_matcher(kind: MatcherKind | str, d: MatrixLike,
                t: ThresholdLike) -> Matching:
    """Dispatch to the matcher named by ``kind``."""
    return MATCHERS[MatcherKind.parse(kind)](d, t)
