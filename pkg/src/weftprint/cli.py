"""Command-line front end.

Subcommands cover the full study pipeline: ``generate`` a corpus from a
spec file, ``fingerprint`` graphs, build a ``distmatrix``, ``cluster`` and
``retrieve`` against a ground-truth manifest, and ``bench`` run times.
All outputs are plain text or CSV and are byte-identical across re-runs.

Exit codes: 0 success, 1 usage error, 2 data or validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time
from pathlib import Path

from . import corpus as corpus_mod
from . import distance as distance_mod
from . import evaluation as eval_mod
from .fingerprint import fingerprint, save_fingerprint
from .graph import GraphParseError, InvalidGraphError, load_graph

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; this tool reserves 2 for data errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _resolve_threads(value: int) -> int:
    if value < 0:
        raise ValueError(f"--threads must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weftprint", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="fallback seed for spec categories without one")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads for pairwise distances; 0 = auto "
                             "(default: WEFTPRINT_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a corpus of .tg files from a spec")
    p.add_argument("--spec", required=True, help="corpus spec file (INI sections per category)")
    p.add_argument("--out-dir", required=True, help="output directory for .tg files and manifest.csv")

    p = sub.add_parser("fingerprint", help="compute .fp fingerprints for a graph or directory")
    p.add_argument("--in", dest="input", required=True, help=".tg file or directory of .tg files")
    p.add_argument("--k", type=int, required=True, help="neighborhood walk depth")
    p.add_argument("--out", required=True, help=".fp file or directory, matching --in")

    p = sub.add_parser("distmatrix", help="pairwise distance matrix over a corpus manifest")
    p.add_argument("--manifest", required=True, help="corpus manifest CSV")
    p.add_argument("--metric", required=True, choices=distance_mod.METRICS)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", required=True, help="output CSV")

    p = sub.add_parser("cluster", help="UPGMA clustering scored against manifest categories")
    p.add_argument("--dist", required=True, help="distance matrix CSV")
    p.add_argument("--clusters", type=int, required=True, help="target cluster count")
    p.add_argument("--truth", required=True, help="manifest CSV with ground-truth categories")
    p.add_argument("--report", required=True, help="output JSON report")

    p = sub.add_parser("retrieve", help="ranked-retrieval evaluation: MAP and 11-point curves")
    p.add_argument("--dist", required=True, help="distance matrix CSV")
    p.add_argument("--truth", required=True, help="manifest CSV with ground-truth categories")
    p.add_argument("--curves", required=True, help="output curves CSV")
    p.add_argument("--report", required=True, help="output JSON report")

    p = sub.add_parser("bench", help="time distance-matrix builds across k")
    p.add_argument("--spec", required=True, help="corpus spec file")
    p.add_argument("--k-range", required=True, help="inclusive range a..b, e.g. 2..9")
    p.add_argument("--metrics", default="jaccard", help="comma-separated metric list")
    p.add_argument("--repeats", type=int, default=3, help="runs per cell; the median is reported")
    p.add_argument("--out", required=True, help="output CSV with rows metric,k,seconds")
    return parser


def _load_labels(manifest_path) -> dict[str, str]:
    return {item_id: category for item_id, _, category in corpus_mod.read_manifest(manifest_path)}


def _cmd_generate(args) -> int:
    spec = corpus_mod.load_corpus_spec(args.spec)
    if args.seed != 0:
        spec = corpus_mod.CorpusSpec(spec.categories, seed=args.seed)
    manifest = corpus_mod.write_corpus(corpus_mod.generate_corpus(spec), args.out_dir)
    print(f"wrote {manifest}")
    return 0


def _cmd_fingerprint(args) -> int:
    src = Path(args.input)
    if src.is_dir():
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = sorted(src.glob("*.tg"))
        if not paths:
            raise ValueError(f"no .tg files found in {src}")
        for path in paths:
            save_fingerprint(fingerprint(load_graph(path), args.k), out_dir / (path.stem + ".fp"))
        print(f"wrote {len(paths)} fingerprints to {out_dir}")
    else:
        save_fingerprint(fingerprint(load_graph(src), args.k), args.out)
        print(f"wrote {args.out}")
    return 0


def _build_matrix(manifest_path, metric, k, threads):
    rows = corpus_mod.read_manifest(manifest_path)
    ids = [r[0] for r in rows]
    fps = [fingerprint(load_graph(r[1]), k) for r in rows]
    stats = distance_mod.corpus_stats(fps) if metric == "tfidf" else None
    return distance_mod.distance_matrix(fps, metric, ids=ids, stats=stats, threads=threads)


def _cmd_distmatrix(args) -> int:
    dm = _build_matrix(args.manifest, args.metric, args.k, args.threads)
    distance_mod.save_distance_matrix(dm, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_cluster(args) -> int:
    dm = distance_mod.load_distance_matrix(args.dist)
    labels = _load_labels(args.truth)
    partition = eval_mod.upgma_cluster(dm, args.clusters)
    scores = eval_mod.pair_scores(partition, eval_mod.Partition.from_labels(labels))
    with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(eval_mod.cluster_report_json(scores, partition))
    print(f"RI={scores.rand_index:.6f} P={scores.precision:.6f} "
          f"R={scores.recall:.6f} F={scores.f_measure:.6f}")
    return 0


def _cmd_retrieve(args) -> int:
    dm = distance_mod.load_distance_matrix(args.dist)
    labels = _load_labels(args.truth)
    curves = eval_mod.interpolated_curves(dm, labels)
    with open(args.curves, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(eval_mod.curves_to_csv(curves))
    with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(eval_mod.retrieval_report_json(curves))
    print(f"MAP={curves.map:.6f}")
    return 0


def _parse_k_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"--k-range must look like a..b, got {text!r}")
    lo, hi = int(lo), int(hi)
    if lo < 1 or hi < lo:
        raise ValueError(f"--k-range needs 1 <= a <= b, got {text!r}")
    return range(lo, hi + 1)


def _cmd_bench(args) -> int:
    spec = corpus_mod.load_corpus_spec(args.spec)
    metrics = [m.strip() for m in args.metrics.split(",") if m.strip()]
    for metric in metrics:
        if metric not in distance_mod.METRICS:
            raise ValueError(f"unknown metric {metric!r}, expected one of {distance_mod.METRICS}")
    if args.repeats < 1:
        raise ValueError("--repeats must be >= 1")
    corpus = corpus_mod.generate_corpus(spec)
    ids = [item.id for item in corpus]
    graphs = [item.graph for item in corpus]
    for g in graphs:
        g._thread_arrays()  # exclude one-time array conversion from timings

    lines = ["metric,k,seconds"]
    for k in _parse_k_range(args.k_range):
        for metric in metrics:
            samples = []
            for _ in range(args.repeats):
                start = time.perf_counter()
                fps = [fingerprint(g, k) for g in graphs]
                stats = distance_mod.corpus_stats(fps) if metric == "tfidf" else None
                distance_mod.distance_matrix(fps, metric, ids=ids, stats=stats, threads=args.threads)
                samples.append(time.perf_counter() - start)
            lines.append(f"{metric},{k},{statistics.median(samples):.6f}")
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "fingerprint": _cmd_fingerprint,
    "distmatrix": _cmd_distmatrix,
    "cluster": _cmd_cluster,
    "retrieve": _cmd_retrieve,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR

    if args.threads is None:
        env = os.environ.get("WEFTPRINT_THREADS", "")
        args.threads = int(env) if env.isdigit() else 1
    try:
        args.threads = _resolve_threads(args.threads)
        return _COMMANDS[args.command](args)
    except (GraphParseError, InvalidGraphError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"weftprint {args.command}: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
