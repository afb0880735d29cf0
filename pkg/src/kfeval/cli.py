"""Command-line front end: ``kfeval {extract,evaluate,setdist,curve,compare}``.

Exit status is 0 on success, 2 for bad usage or input, 1 for anything else.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from . import __version__
from .core import DistanceMatrix, InputError, MetricKind, build_distance_matrix
from .curve import weight_cardinality_curve
from .io import (
    EvalReport,
    export_matching_dot,
    format_curve_csv,
    format_report_json,
    frame_sort_key,
    list_images,
    load_distance_csv,
    load_summary_dir,
    round_sig,
)
from .matchers import MatcherKind, run_matcher
from .scores import score
from .setdist import set_distances

DEFAULT_THETA = 0.5

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text!r}")
    return value


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _add_inputs(p: argparse.ArgumentParser, distances: bool = True) -> None:
    p.add_argument("--candidate", metavar="DIR", help="candidate summary directory")
    p.add_argument("--reference", metavar="DIR", help="ground-truth summary directory")
    if distances:
        p.add_argument("--distances", metavar="CSV",
                       help="precomputed distance matrix (rows candidate, cols reference)")
    p.add_argument("--metric", choices=[m.value for m in MetricKind],
                   default=MetricKind.L1.value)


def _add_matching(p: argparse.ArgumentParser, many: bool = False) -> None:
    choices = [k.value for k in MatcherKind]
    if many:
        p.add_argument("--matcher", choices=choices, action="append",
                       help="may be repeated (default: greedy)")
    else:
        p.add_argument("--matcher", choices=choices, default=MatcherKind.GREEDY.value)
    p.add_argument("--theta", type=_positive_float, default=DEFAULT_THETA,
                   help="pairing threshold, strict '<' (default 0.5, L1 range is [0, 2])")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kfeval", description="Evaluate keyframe summaries by bipartite matching.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="write per-frame hue histograms as JSON")
    p.add_argument("--candidate", metavar="DIR", required=True)
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("evaluate", help="match two summaries and report P/R/F")
    _add_inputs(p)
    _add_matching(p)
    p.add_argument("--report", metavar="PATH", help="write JSON report here instead of stdout")
    p.add_argument("--dot", metavar="PATH", help="also write the matching as a DOT graph")

    p = sub.add_parser("setdist", help="Hausdorff-style set distances")
    _add_inputs(p)
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("curve", help="weight-cardinality curve as CSV")
    _add_inputs(p)
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("compare", help="score every method against every user over a dataset")
    p.add_argument("--root", metavar="DIR", required=True)
    p.add_argument("--metric", choices=[m.value for m in MetricKind],
                   default=MetricKind.L1.value)
    _add_matching(p, many=True)
    p.add_argument("--out", metavar="PATH")
    return parser


def _load_matrix(args) -> tuple[DistanceMatrix, list[str], list[str], str, str]:
    """Distance matrix plus frame labels and names for both sides."""
    if args.distances:
        if args.candidate or args.reference:
            raise InputError("give either --distances or --candidate/--reference, not both")
        d = load_distance_csv(args.distances)
        stem = Path(args.distances).stem
        return (d, [f"row{i}" for i in range(d.rows)], [f"col{j}" for j in range(d.cols)],
                f"{stem}:rows", f"{stem}:cols")
    if not (args.candidate and args.reference):
        raise InputError("need --distances, or both --candidate and --reference")
    a = load_summary_dir(args.candidate)
    b = load_summary_dir(args.reference)
    return build_distance_matrix(a, b, args.metric), a.labels, b.labels, a.name, b.name


def run_extract(args) -> int:
    summary = load_summary_dir(args.candidate)
    doc = {
        "name": summary.name,
        "frames": [
            {"index": f.index, "label": f.label, "features": list(f.features.bins)}
            for f in summary
        ],
    }
    _emit(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", args.out)
    return EXIT_OK


def run_evaluate(args) -> int:
    d, a_labels, b_labels, a_name, b_name = _load_matrix(args)
    matching = run_matcher(args.matcher, d, args.theta)
    report = EvalReport.from_matching(
        matching, d.rows, d.cols,
        candidate_name=a_name, truth_name=b_name,
        matcher=args.matcher, theta=args.theta, metric=args.metric,
    )
    _emit(format_report_json(report), args.report)
    if args.dot:
        export_matching_dot(matching, a_labels, b_labels, args.dot)
    return EXIT_OK


def run_setdist(args) -> int:
    d = _load_matrix(args)[0]
    _emit(json.dumps(set_distances(d), indent=2) + "\n", args.out)
    return EXIT_OK


def run_curve(args) -> int:
    d = _load_matrix(args)[0]
    _emit(format_curve_csv(weight_cardinality_curve(d)), args.out)
    return EXIT_OK


def _subdirs(path: Path) -> list[Path]:
    return sorted((p for p in path.iterdir() if p.is_dir()),
                  key=lambda p: frame_sort_key(p.name))


def discover_dataset(root: Path) -> list[tuple[str, list[Path], list[Path]]]:
    """``(video, method dirs, user dirs)`` for ``root/<video>/{<method>,users/<user>}``."""
    if not root.is_dir():
        raise InputError(f"not a directory: {root}")
    videos = []
    for video in _subdirs(root):
        users_dir = video / "users"
        methods = [p for p in _subdirs(video) if p.name != "users" and list_images(p)]
        users = _subdirs(users_dir) if users_dir.is_dir() else []
        if not methods or not users:
            raise InputError(f"{video}: expected <method>/ and users/<user>/ image directories")
        videos.append((video.name, methods, users))
    if not videos:
        raise InputError(f"no video directories under {root}")
    return videos


def run_compare(args) -> int:
    matchers = [MatcherKind.parse(m) for m in (args.matcher or [MatcherKind.GREEDY.value])]
    videos = discover_dataset(Path(args.root))
    cache = {}

    def summary(path: Path):
        if path not in cache:
            cache[path] = load_summary_dir(path)
        return cache[path]

    rows = []
    per_method: dict[tuple[str, str], list[float]] = {}
    for video, methods, users in videos:
        for method in methods:
            cand = summary(method)
            for user in users:
                truth = summary(user)
                d = build_distance_matrix(cand, truth, args.metric)
                for kind in matchers:
                    m = run_matcher(kind, d, args.theta)
                    s = score(m.cardinality, len(cand), len(truth))
                    rows.append(["pair", video, method.name, user.name, kind.value,
                                 s.num_matches, s.precision, s.recall, s.f_measure])
                    per_method.setdefault((method.name, kind.value), []).append(s.f_measure)

    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "video", "method", "user", "matcher",
                     "num_matches", "precision", "recall", "f_measure"])
    for row in rows:
        writer.writerow(row[:6] + [round_sig(v) for v in row[6:]])
    for (method, kind), fs in sorted(per_method.items()):
        writer.writerow(["mean", "*", method, "*", kind, "", "", "",
                         round_sig(sum(fs) / len(fs))])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


COMMANDS = {
    "extract": run_extract,
    "evaluate": run_evaluate,
    "setdist": run_setdist,
    "curve": run_curve,
    "compare": run_compare,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (InputError, OSError) as exc:
        print(f"kfeval: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - last-resort exit status
        print(f"kfeval: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
