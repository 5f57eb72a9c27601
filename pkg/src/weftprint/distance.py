"""Distance measures between sparse fingerprint frequency vectors.

A fingerprint doubles as a frequency vector over the (implicit) space of
all neighborhoods; only nonzero counts are stored.  Five measures:

* ``jaccard`` -- 1 - sum(min)/sum(max), the multiset Jaccard distance
* ``hbool``   -- symmetric difference of the supports (presence only)
* ``hfreq``   -- L1 distance of the count vectors, unnormalized
* ``cosine``  -- 1 - cosine similarity of the raw count vectors
* ``tfidf``   -- cosine distance after log TF-IDF weighting against
  collection statistics

All measures iterate the smaller support, so pair cost tracks sparsity.
TF and IDF use base-10 logarithms: TF = 1 + log10(count), IDF =
log10(N / df).  Degenerate conventions, chosen here and documented rather
than inherited: a cosine distance against an all-zero vector is 1, between
two all-zero vectors 0.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

METRICS = ("jaccard", "hbool", "hfreq", "cosine", "tfidf")
INTEGER_METRICS = ("hbool", "hfreq")


def jaccard_distance(r: Mapping, s: Mapping, multiset: bool = True) -> float:
    """Multiset Jaccard distance; ``multiset=False`` ignores counts."""
    if not r and not s:
        raise ValueError("jaccard distance is undefined on empty fingerprints")
    small, large = (r, s) if len(r) <= len(s) else (s, r)
    if not multiset:
        inter = sum(1 for p in small if p in large)
        union = len(r) + len(s) - inter
        return 1.0 - inter / union
    inter_min = sum(min(c, large[p]) for p, c in small.items() if p in large)
    total = sum(r.values()) + sum(s.values())
    return 1.0 - inter_min / (total - inter_min)


def hamming_bool_distance(r: Mapping, s: Mapping) -> int:
    """Number of neighborhoods present in exactly one of the two."""
    small, large = (r, s) if len(r) <= len(s) else (s, r)
    inter = sum(1 for p in small if p in large)
    return len(r) + len(s) - 2 * inter


def hamming_freq_distance(r: Mapping, s: Mapping) -> int:
    """Unnormalized L1 distance over the union support."""
    total = 0
    for p, c in r.items():
        total += abs(c - s.get(p, 0)) if p in s else c
    for p, c in s.items():
        if p not in r:
            total += c
    return total


def _sparse_cosine_distance(r: Mapping, s: Mapping) -> float:
    norm_r = math.sqrt(sum(c * c for c in r.values()))
    norm_s = math.sqrt(sum(c * c for c in s.values()))
    if norm_r == 0.0 and norm_s == 0.0:
        return 0.0
    if norm_r == 0.0 or norm_s == 0.0:
        return 1.0
    small, large = (r, s) if len(r) <= len(s) else (s, r)
    dot = sum(c * large[p] for p, c in small.items() if p in large)
    # rounding can push the similarity a ulp past 1; keep the distance in [0, 1]
    return max(0.0, 1.0 - dot / (norm_r * norm_s))


def cosine_distance(r: Mapping, s: Mapping) -> float:
    """Cosine distance of the raw frequency vectors."""
    return _sparse_cosine_distance(r, s)


@dataclass(frozen=True)
class CorpusStats:
    """Collection-level statistics backing TF-IDF weighting."""

    n_items: int
    df: Counter = field(default_factory=Counter)

    def __post_init__(self):
        if self.n_items < 1:
            raise ValueError("corpus statistics need at least one fingerprint")


def corpus_stats(fingerprints: Sequence[Mapping]) -> CorpusStats:
    """Count, per neighborhood, how many fingerprints contain it."""
    if not fingerprints:
        raise ValueError("corpus statistics need at least one fingerprint")
    df: Counter = Counter()
    for fp in fingerprints:
        df.update(p for p, c in fp.items() if c)
    return CorpusStats(len(fingerprints), df)


def tfidf_weights(fp: Mapping, stats: CorpusStats) -> dict:
    """Log TF-IDF weight per neighborhood of ``fp``."""
    weights = {}
    n = stats.n_items
    df = stats.df
    for p, c in fp.items():
        if c <= 0:
            continue
        if p not in df:
            raise ValueError("stale corpus statistics: fingerprint contains an unknown neighborhood")
        weights[p] = (1.0 + math.log10(c)) * math.log10(n / df[p])
    return weights


def cosine_tfidf_distance(r: Mapping, s: Mapping, stats: CorpusStats) -> float:
    """Cosine distance of the TF-IDF weighted vectors."""
    return _sparse_cosine_distance(tfidf_weights(r, stats), tfidf_weights(s, stats))


def pair_distance(r: Mapping, s: Mapping, metric: str, stats: CorpusStats | None = None) -> float:
    if metric == "jaccard":
        return jaccard_distance(r, s)
    if metric == "hbool":
        return float(hamming_bool_distance(r, s))
    if metric == "hfreq":
        return float(hamming_freq_distance(r, s))
    if metric == "cosine":
        return cosine_distance(r, s)
    if metric == "tfidf":
        if stats is None:
            raise ValueError("tfidf distance needs corpus statistics")
        return cosine_tfidf_distance(r, s, stats)
    raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}")


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric pairwise distances with their row/column ids."""

    ids: tuple[str, ...]
    values: np.ndarray
    metric: str = ""

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return (
            self.ids == other.ids
            and self.metric == other.metric
            and np.array_equal(self.values, other.values)
        )

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (len(self.ids), len(self.ids)):
            raise ValueError(f"distance matrix shape {values.shape} does not match {len(self.ids)} ids")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("distance matrix ids must be unique")
        values.flags.writeable = False
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "values", values)

    def index_of(self, item_id: str) -> int:
        try:
            return self.ids.index(item_id)
        except ValueError:
            raise KeyError(f"unknown id {item_id!r}") from None


def distance_matrix(
    fingerprints: Sequence[Mapping],
    metric: str,
    ids: Sequence[str] | None = None,
    stats: CorpusStats | None = None,
    threads: int = 1,
) -> DistanceMatrix:
    """All pairwise distances under one metric.

    Every cell is an independent computation, so the result is identical
    for any thread count; ``threads=0`` lets the runtime pick.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}")
    if len(fingerprints) < 2:
        raise ValueError("distance matrix needs at least two fingerprints")
    if metric == "tfidf" and stats is None:
        raise ValueError("tfidf distance matrix needs corpus statistics")
    if ids is None:
        ids = tuple(str(i) for i in range(len(fingerprints)))
    if len(ids) != len(fingerprints):
        raise ValueError("ids and fingerprints must have equal length")

    n = len(fingerprints)
    values = np.zeros((n, n), dtype=np.float64)

    def fill_row(i: int) -> None:
        fp_i = fingerprints[i]
        row = values[i]
        for j in range(i + 1, n):
            row[j] = pair_distance(fp_i, fingerprints[j], metric, stats)

    workers = threads if threads > 0 else None
    if threads == 1:
        for i in range(n - 1):
            fill_row(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill_row, range(n - 1)))

    upper = np.triu_indices(n, k=1)
    values[(upper[1], upper[0])] = values[upper]
    return DistanceMatrix(tuple(ids), values, metric)


# --- distance matrix CSV ----------------------------------------------------
#
# First row 'id,<id_1>,...,<id_n>', then one row per item.  Integer-valued
# metrics are written unpadded; the rest with 12 significant digits.


def format_distance(x: float, metric: str) -> str:
    if metric in INTEGER_METRICS:
        return str(int(round(x)))
    return format(x, ".12g")


def distance_matrix_to_csv(dm: DistanceMatrix) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", *dm.ids])
    for i, row_id in enumerate(dm.ids):
        writer.writerow([row_id, *(format_distance(x, dm.metric) for x in dm.values[i])])
    return buf.getvalue()


def csv_to_distance_matrix(text: str) -> DistanceMatrix:
    import csv
    import io

    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]
    if not rows or rows[0][:1] != ["id"]:
        raise ValueError("distance CSV must start with an 'id,...' header row")
    ids = tuple(rows[0][1:])
    n = len(ids)
    if len(rows) != n + 1:
        raise ValueError(f"distance CSV has {len(rows) - 1} data rows for {n} ids")
    values = np.zeros((n, n), dtype=np.float64)
    for i, row in enumerate(rows[1:]):
        if len(row) != n + 1 or row[0] != ids[i]:
            raise ValueError(f"distance CSV row {i + 1} does not match header ids")
        values[i] = [float(x) for x in row[1:]]
    return DistanceMatrix(ids, values)


def save_distance_matrix(dm: DistanceMatrix, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(distance_matrix_to_csv(dm))


def load_distance_matrix(path) -> DistanceMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return csv_to_distance_matrix(fh.read())
