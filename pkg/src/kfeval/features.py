"""Hue-histogram frame features and scalar frame distances."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from .core import (
    NUM_BINS,
    FeatureVector,
    Frame,
    InputError,
    MetricKind,
    Summary,
)

__all__ = [
    "MetricKind",
    "frame_distance",
    "hue_bins",
    "hue_histogram",
    "summarize_frames",
    "to_rgb_array",
]


def to_rgb_array(image) -> np.ndarray:
    """Return ``image`` as an ``(H, W, 3)`` uint8 array.

    Accepts PIL images (converted to RGB) and anything numpy can turn into an
    array whose last axis has three channels.
    """
    if hasattr(image, "convert") and hasattr(image, "mode"):
        image = image.convert("RGB")
    arr = np.asarray(image)
    if arr.ndim == 2 and arr.shape[-1] == 3:
        arr = arr[None, :, :]
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise InputError(f"expected an RGB raster, got array of shape {arr.shape}")
    if arr.dtype != np.uint8:
        if np.any(arr < 0) or np.any(arr > 255):
            raise InputError("channel values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


def hue_bins(rgb: np.ndarray) -> np.ndarray:
    """Hue bin (0..15) of every pixel of an ``(..., 3)`` uint8 array.

    Works in exact integer arithmetic: with ``c = max - min`` the hue in
    sixths of a turn is ``offset + num / c``, so the 22.5 degree bin is
    ``(8 * (offset * c + num)) // (3 * c)``. Pixels with ``c == 0`` have no
    defined hue and land in bin 0.
    """
    px = rgb.reshape(-1, 3).astype(np.int64)
    r, g, b = px[:, 0], px[:, 1], px[:, 2]
    hi = px.max(axis=1)
    lo = px.min(axis=1)
    chroma = hi - lo

    # Numerator of the hue in units of chroma/6 turns; red wins ties, then green.
    sixths = np.where(
        hi == r, g - b,
        np.where(hi == g, 2 * chroma + (b - r), 4 * chroma + (r - g)),
    )
    sixths = np.where(sixths < 0, sixths + 6 * chroma, sixths)

    bins = np.zeros(px.shape[0], dtype=np.int64)
    chromatic = chroma > 0
    bins[chromatic] = (8 * sixths[chromatic]) // (3 * chroma[chromatic])
    return np.clip(bins, 0, NUM_BINS - 1).reshape(rgb.shape[:-1])


def hue_histogram(image) -> FeatureVector:
    """16-bin hue histogram of an RGB raster, normalised by pixel count."""
    rgb = to_rgb_array(image)
    n_pixels = rgb.shape[0] * rgb.shape[1]
    if n_pixels == 0:
        raise InputError("empty image")
    counts = np.bincount(hue_bins(rgb).ravel(), minlength=NUM_BINS)
    return FeatureVector(tuple(float(c) / n_pixels for c in counts))


def frame_distance(f: FeatureVector, g: FeatureVector,
                   metric: MetricKind | str = MetricKind.L1) -> float:
    metric = MetricKind.parse(metric)
    diffs = [a - b for a, b in zip(f.bins, g.bins)]
    if metric is MetricKind.L1:
        return math.fsum(abs(x) for x in diffs)
    return math.sqrt(math.fsum(x * x for x in diffs))


def summarize_frames(images: Sequence, labels: Sequence[str],
                     name: str = "summary") -> Summary:
    """Build a :class:`Summary` from rasters given in temporal order."""
    if len(images) != len(labels):
        raise InputError("images and labels differ in length")
    if not images:
        raise InputError("empty summary")
    frames = tuple(
        Frame(i, str(label), hue_histogram(img))
        for i, (img, label) in enumerate(zip(images, labels))
    )
    return Summary(name, frames)
