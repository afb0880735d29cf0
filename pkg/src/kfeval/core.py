"""Domain types shared across the package, distance matrices and matching checks."""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

NUM_BINS = 16
SUM_TOLERANCE = 1e-9

#: Weight used to encode a missing edge in a dense matrix. Must stay above any
#: threshold a caller is allowed to use.
SENTINEL = 1e9


class InputError(ValueError):
    """Raised for malformed user input (empty summaries, bad matrices, ...)."""


class MetricKind(str, enum.Enum):
    L1 = "l1"
    L2 = "l2"

    @classmethod
    def parse(cls, value: str | MetricKind) -> MetricKind:
        if isinstance(value, MetricKind):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InputError(
                f"unknown metric {value!r}; valid choices: "
                + ", ".join(m.value for m in cls)
            ) from None


@dataclass(frozen=True)
class FeatureVector:
    """Normalised 16-bin hue histogram."""

    bins: tuple[float, ...]

    def __post_init__(self):
        bins = tuple(float(b) for b in self.bins)
        object.__setattr__(self, "bins", bins)
        if len(bins) != NUM_BINS:
            raise InputError(f"feature vector must have {NUM_BINS} bins, got {len(bins)}")
        if any(not math.isfinite(b) or b < 0 for b in bins):
            raise InputError("feature bins must be finite and non-negative")
        if abs(math.fsum(bins) - 1.0) > SUM_TOLERANCE:
            raise InputError("feature bins must sum to 1")

    @classmethod
    def from_array(cls, values: Iterable[float]) -> FeatureVector:
        return cls(tuple(values))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.bins, dtype=float)


@dataclass(frozen=True)
class Frame:
    index: int
    label: str
    features: FeatureVector


@dataclass(frozen=True)
class Summary:
    """A keyframe summary; frames are kept in temporal order."""

    name: str
    frames: tuple[Frame, ...]

    def __post_init__(self):
        frames = tuple(self.frames)
        object.__setattr__(self, "frames", frames)
        if not frames:
            raise InputError("empty summary")
        indices = [f.index for f in frames]
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise InputError("frame indices must be strictly increasing")

    def __len__(self) -> int:
        return len(self.frames)

    def __iter__(self) -> Iterator[Frame]:
        return iter(self.frames)

    @property
    def labels(self) -> list[str]:
        return [f.label for f in self.frames]

    def feature_matrix(self) -> np.ndarray:
        return np.stack([f.features.as_array() for f in self.frames])

    @classmethod
    def from_features(cls, name: str, features: Sequence[Iterable[float]],
                      labels: Sequence[str] | None = None) -> Summary:
        if labels is None:
            labels = [f"{name}[{i}]" for i in range(len(features))]
        frames = tuple(
            Frame(i, label, FeatureVector.from_array(vec))
            for i, (label, vec) in enumerate(zip(labels, features))
        )
        return cls(name, frames)


class DistanceMatrix:
    """Dense, read-only matrix of non-negative inter-frame distances.

    Rows index the first (candidate) summary, columns the second.
    """

    __slots__ = ("_d",)

    def __init__(self, values):
        d = np.array(values, dtype=float)
        if d.ndim != 2 or d.shape[0] == 0 or d.shape[1] == 0:
            raise InputError("distance matrix must be a non-empty 2-D array")
        if not np.all(np.isfinite(d)):
            raise InputError("non-finite distance")
        if np.any(d < 0):
            raise InputError("negative distance")
        d.setflags(write=False)
        self._d = d

    @property
    def d(self) -> np.ndarray:
        return self._d

    @property
    def rows(self) -> int:
        return self._d.shape[0]

    @property
    def cols(self) -> int:
        return self._d.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._d.shape

    def __getitem__(self, key):
        return self._d[key]

    def __array__(self, dtype=None, copy=None):
        return self._d if dtype is None else self._d.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._d, other._d))

    def __repr__(self):
        return f"DistanceMatrix({self._d.tolist()!r})"

    def transpose(self) -> DistanceMatrix:
        return DistanceMatrix(self._d.T)


MatrixLike = Union[DistanceMatrix, np.ndarray, Sequence[Sequence[float]]]


def as_distance_matrix(d: MatrixLike) -> DistanceMatrix:
    return d if isinstance(d, DistanceMatrix) else DistanceMatrix(d)


@dataclass(frozen=True)
class Threshold:
    theta: float

    def __post_init__(self):
        theta = float(self.theta)
        if not theta > 0:
            raise InputError(f"threshold must be > 0, got {self.theta!r}")
        object.__setattr__(self, "theta", theta)


def as_threshold(t: Threshold | float) -> Threshold:
    return t if isinstance(t, Threshold) else Threshold(t)


class Pair(NamedTuple):
    row: int
    col: int
    weight: float


@dataclass(frozen=True)
class Matching:
    """Disjoint (row, col, weight) pairs.

    Pairs keep the order in which the producing algorithm found them; use
    :meth:`as_set` for order-free comparison.
    """

    pairs: tuple[Pair, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(
            self, "pairs",
            tuple(Pair(int(r), int(c), float(w)) for r, c, w in self.pairs),
        )

    @classmethod
    def from_indices(cls, d: MatrixLike, index_pairs: Iterable[tuple[int, int]]) -> Matching:
        dm = as_distance_matrix(d)
        return cls(tuple(Pair(r, c, float(dm.d[r, c])) for r, c in index_pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs)

    @property
    def cardinality(self) -> int:
        return len(self.pairs)

    @property
    def total_weight(self) -> float:
        return math.fsum(p.weight for p in self.pairs)

    def index_pairs(self) -> set[tuple[int, int]]:
        return {(p.row, p.col) for p in self.pairs}

    def as_set(self) -> frozenset[Pair]:
        return frozenset(self.pairs)

    def sorted(self) -> Matching:
        return Matching(tuple(sorted(self.pairs)))


def pairwise_distances(x: np.ndarray, y: np.ndarray, metric: MetricKind) -> np.ndarray:
    """All-pairs distances between the rows of ``x`` and the rows of ``y``."""
    metric = MetricKind.parse(metric)
    diff = x[:, None, :] - y[None, :, :]
    if metric is MetricKind.L1:
        return np.abs(diff).sum(axis=2)
    return np.sqrt((diff * diff).sum(axis=2))


def build_distance_matrix(a: Summary, b: Summary,
                          metric: MetricKind = MetricKind.L1) -> DistanceMatrix:
    """Distance between every frame of ``a`` (rows) and of ``b`` (columns)."""
    if len(a.frames) == 0 or len(b.frames) == 0:
        raise InputError("empty summary")
    x, y = a.feature_matrix(), b.feature_matrix()
    if x.shape[1] != y.shape[1]:
        raise InputError("feature dimension mismatch")
    return DistanceMatrix(pairwise_distances(x, y, metric))


def validate_matching(m: Matching, d: MatrixLike,
                      t: Threshold | float = math.inf) -> bool:
    """True iff ``m`` is a matching on ``d`` whose weights lie strictly below ``t``.

    Raises:
        InputError: if a pair indexes outside the matrix.
    """
    dm = as_distance_matrix(d)
    theta = as_threshold(t).theta
    for p in m.pairs:
        if not (0 <= p.row < dm.rows and 0 <= p.col < dm.cols):
            raise InputError("pair index out of range")
    rows = [p.row for p in m.pairs]
    cols = [p.col for p in m.pairs]
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        return False
    return all(p.weight == dm.d[p.row, p.col] and p.weight < theta for p in m.pairs)
