"""Reading summaries and matrices from disk, writing reports, curves and DOT graphs."""

from __future__ import annotations

import csv
import io as _io
import json
import math
import re
import warnings
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO, Union

from PIL import Image, UnidentifiedImageError

from .core import (
    DistanceMatrix,
    InputError,
    Matching,
    MetricKind,
    Summary,
)
from .curve import WeightCardinalityCurve
from .features import summarize_frames
from .matchers import MatcherKind
from .scores import EvalScores, score

IMAGE_SUFFIXES = frozenset({".png", ".jpg", ".jpeg", ".bmp"})
SIGNIFICANT_DIGITS = 9

_FIRST_INT = re.compile(r"\d+")

PathLike = Union[str, Path]


def round_sig(x: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    return float(format(float(x), f".{digits}g"))


def frame_sort_key(name: str) -> tuple:
    """Order frames by the first integer in their filename, then by name.

    Names without digits go after all numbered ones.
    """
    match = _FIRST_INT.search(name)
    if match is None:
        return (1, 0, name)
    return (0, int(match.group()), name)


def list_images(path: PathLike) -> list[Path]:
    root = Path(path)
    if not root.is_dir():
        raise InputError(f"not a directory: {root}")
    return [p for p in root.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES]


def load_summary_dir(path: PathLike, name: str | None = None) -> Summary:
    """Load every image in ``path`` as one summary, ordered by frame number."""
    root = Path(path)
    files = list_images(root)
    if not files:
        raise InputError(f"empty summary: no images in {root}")
    if not any(_FIRST_INT.search(p.name) for p in files):
        warnings.warn(
            f"no frame numbers in filenames under {root}; using lexicographic order",
            stacklevel=2,
        )
    files.sort(key=lambda p: frame_sort_key(p.name))

    images = []
    for p in files:
        try:
            with Image.open(p) as im:
                images.append(im.convert("RGB"))
        except (UnidentifiedImageError, OSError) as exc:
            raise InputError(f"cannot decode image {p}: {exc}") from exc
    return summarize_frames(images, [p.name for p in files], name=name or root.name)


def parse_distance_csv(text: str) -> DistanceMatrix:
    rows = []
    for lineno, record in enumerate(csv.reader(_io.StringIO(text)), start=1):
        if not record or all(not cell.strip() for cell in record):
            continue
        try:
            values = [float(cell) for cell in record]
        except ValueError:
            raise InputError(f"non-numeric entry on line {lineno}") from None
        if any(not math.isfinite(v) for v in values):
            raise InputError(f"non-finite distance on line {lineno}")
        if any(v < 0 for v in values):
            raise InputError(f"negative distance on line {lineno}")
        rows.append(values)
    if not rows:
        raise InputError("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise InputError("ragged matrix")
    return DistanceMatrix(rows)


def load_distance_csv(path: PathLike) -> DistanceMatrix:
    """Headerless CSV of distances; rows are candidate frames, columns reference frames."""
    return parse_distance_csv(Path(path).read_text(encoding="utf-8"))


def format_distance_csv(d: DistanceMatrix) -> str:
    return "".join(",".join(repr(float(v)) for v in row) + "\n" for row in d.d)


def write_distance_csv(d: DistanceMatrix, path: PathLike) -> None:
    Path(path).write_text(format_distance_csv(d), encoding="utf-8")


@dataclass(frozen=True)
class EvalReport:
    """One candidate/ground-truth comparison.

    Reals are held at 9 significant digits so that the JSON form is exact.
    """

    candidate_name: str
    truth_name: str
    matcher: MatcherKind
    theta: float
    metric: MetricKind
    pairs: tuple[tuple[int, int, float], ...]
    scores: EvalScores

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "matcher", MatcherKind.parse(self.matcher))
        set_(self, "metric", MetricKind.parse(self.metric))
        set_(self, "theta", round_sig(self.theta))
        set_(self, "pairs", tuple((int(r), int(c), round_sig(w)) for r, c, w in self.pairs))
        s = self.scores
        set_(self, "scores", EvalScores(
            int(s.num_matches), round_sig(s.precision),
            round_sig(s.recall), round_sig(s.f_measure),
        ))
        if len(self.pairs) != self.scores.num_matches:
            raise InputError("report pairs disagree with num_matches")

    @classmethod
    def from_matching(cls, matching: Matching, n_candidate: int, n_truth: int, *,
                      candidate_name: str, truth_name: str, matcher, theta: float,
                      metric) -> EvalReport:
        return cls(
            candidate_name=candidate_name,
            truth_name=truth_name,
            matcher=matcher,
            theta=theta,
            metric=metric,
            pairs=tuple((p.row, p.col, p.weight) for p in matching),
            scores=score(matching.cardinality, n_candidate, n_truth),
        )

    def to_dict(self) -> dict:
        return {
            "candidate": self.candidate_name,
            "truth": self.truth_name,
            "matcher": self.matcher.value,
            "theta": self.theta,
            "metric": self.metric.value,
            "pairs": [list(p) for p in self.pairs],
            "num_matches": self.scores.num_matches,
            "precision": self.scores.precision,
            "recall": self.scores.recall,
            "f_measure": self.scores.f_measure,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> EvalReport:
        try:
            return cls(
                candidate_name=obj["candidate"],
                truth_name=obj["truth"],
                matcher=obj["matcher"],
                theta=obj["theta"],
                metric=obj["metric"],
                pairs=tuple(tuple(p) for p in obj["pairs"]),
                scores=EvalScores(
                    obj["num_matches"], obj["precision"], obj["recall"], obj["f_measure"]
                ),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed report: {exc}") from exc


def format_report_json(r: EvalReport) -> str:
    """Fixed key order, two-space indent, one pair per line."""
    items = []
    for key, value in r.to_dict().items():
        if key == "pairs" and value:
            inner = ",\n".join(f"    {json.dumps(p)}" for p in value)
            text = f"[\n{inner}\n  ]"
        else:
            text = json.dumps(value, ensure_ascii=False)
        items.append(f"  {json.dumps(key)}: {text}")
    return "{\n" + ",\n".join(items) + "\n}\n"


def write_report_json(r: EvalReport, path: PathLike | TextIO) -> None:
    text = format_report_json(r)
    if hasattr(path, "write"):
        path.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def read_report_json(path: PathLike) -> EvalReport:
    return EvalReport.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def format_curve_csv(curve: WeightCardinalityCurve) -> str:
    lines = ["k,weight"]
    lines += [f"{p.k},{p.weight!r}" for p in curve]
    return "\n".join(lines) + "\n"


def parse_curve_csv(text: str) -> list[tuple[int, float]]:
    reader = csv.reader(_io.StringIO(text))
    header = next(reader, None)
    if header != ["k", "weight"]:
        raise InputError("curve CSV must start with the header 'k,weight'")
    return [(int(k), float(w)) for k, w in reader]


def write_curve_csv(curve: WeightCardinalityCurve, path: PathLike) -> None:
    Path(path).write_text(format_curve_csv(curve), encoding="utf-8")


def _dot_quote(text: str) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _labels(side: Summary | Sequence[str]) -> tuple[str, list[str]]:
    if isinstance(side, Summary):
        return side.name, side.labels
    return "", [str(s) for s in side]


def format_matching_dot(m: Matching, a: Summary | Sequence[str],
                        b: Summary | Sequence[str]) -> str:
    """Bipartite DOT graph: candidate frames left, reference frames right."""
    a_name, a_labels = _labels(a)
    b_name, b_labels = _labels(b)
    out = [
        "graph matching {",
        "  rankdir=LR;",
        "  node [shape=box];",
        f"  subgraph cluster_candidate {{ label={_dot_quote(a_name)}; rank=same;",
    ]
    out += [f"    c{i} [label={_dot_quote(lbl)}];" for i, lbl in enumerate(a_labels)]
    out += ["  }", f"  subgraph cluster_reference {{ label={_dot_quote(b_name)}; rank=same;"]
    out += [f"    r{j} [label={_dot_quote(lbl)}];" for j, lbl in enumerate(b_labels)]
    out += ["  }"]
    for p in m:
        if p.row >= len(a_labels) or p.col >= len(b_labels):
            raise InputError("pair index out of range")
        out.append(f"  c{p.row} -- r{p.col} [label={_dot_quote(format(p.weight, '.6g'))}];")
    out.append("}")
    return "\n".join(out) + "\n"


def export_matching_dot(m: Matching, a: Summary | Sequence[str],
                        b: Summary | Sequence[str], path: PathLike) -> None:
    Path(path).write_text(format_matching_dot(m, a, b), encoding="utf-8")
