"""Clustering and ranked-retrieval evaluation over a distance matrix.

Clustering is average-linkage agglomerative (UPGMA): everything starts as
a singleton and the two clusters with the smallest mean pairwise distance
merge until the target count remains.  Cluster quality against a ground
truth partition is scored by pair counting: every unordered item pair is a
true/false positive/negative depending on whether the two partitions agree
on it, giving the Rand index plus precision, recall and F-measure.

Retrieval treats every item as a query over the remaining items ranked by
distance, with items of the query's own category relevant.  Reported:
mean average precision and 11-point interpolated precision/F curves, where
interpolated precision at recall level r is the best precision achieved at
any recall >= r.

Deterministic conventions (the math does not pin them down): UPGMA ties
break on the smallest pair of cluster representatives, a cluster being
represented by its smallest original matrix index; ranking ties break on
ascending id; queries whose category has no other member are skipped with
a warning.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .distance import DistanceMatrix

# arange/10 keeps each level the correctly rounded l/10, so recall values
# that equal a level as rationals compare equal as doubles too.
RECALL_LEVELS = np.arange(11) / 10.0


@dataclass(frozen=True)
class Partition:
    """Assignment of item ids to dense cluster ids ``0..m-1``."""

    assignment: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(self.assignment))
        labels = set(self.assignment.values())
        if labels != set(range(len(labels))):
            raise ValueError("cluster ids must be dense 0..m-1")

    @property
    def n_clusters(self) -> int:
        return len(set(self.assignment.values()))

    def clusters(self) -> list[set[str]]:
        out = [set() for _ in range(self.n_clusters)]
        for item, cid in self.assignment.items():
            out[cid].add(item)
        return out

    @classmethod
    def from_groups(cls, groups) -> "Partition":
        return cls({item: cid for cid, group in enumerate(groups) for item in group})

    @classmethod
    def from_labels(cls, labels: Mapping[str, str]) -> "Partition":
        """Dense partition from category labels, clusters ordered by first appearance."""
        seen: dict[str, int] = {}
        assignment = {}
        for item, label in labels.items():
            assignment[item] = seen.setdefault(label, len(seen))
        return cls(assignment)


def upgma_merges(dm: DistanceMatrix) -> list[tuple[int, int, float]]:
    """Full merge sequence ``(rep_i, rep_j, mean_distance)``, n-1 entries.

    Representatives are original matrix indices; the surviving cluster
    keeps the smaller one.  Mean pairwise distances are maintained
    incrementally as size-weighted averages, which reproduces the
    from-scratch mean exactly.  Ties resolve to the smallest (rep_i,
    rep_j) pair.
    """
    n = len(dm.ids)
    d = dm.values.astype(np.float64).copy()
    np.fill_diagonal(d, np.inf)
    d[np.tril_indices(n)] = np.inf  # scan upper triangle only
    sizes = np.ones(n)
    merges = []
    for _ in range(n - 1):
        flat = int(np.argmin(d))  # row-major: smallest distance, then (i, j)
        i, j = divmod(flat, n)
        merges.append((i, j, float(d[i, j])))
        wi, wj = sizes[i], sizes[j]
        for other in range(n):
            if other == i or other == j or sizes[other] == 0:
                continue
            a, b = (other, i) if other < i else (i, other)
            aj, bj = (other, j) if other < j else (j, other)
            d[a, b] = (wi * d[a, b] + wj * d[aj, bj]) / (wi + wj)
        sizes[i] = wi + wj
        sizes[j] = 0
        d[j, :] = np.inf
        d[:, j] = np.inf
    return merges


def upgma_cluster(dm: DistanceMatrix, m: int) -> Partition:
    """Merge until ``m`` clusters remain; cluster ids ordered by smallest member."""
    n = len(dm.ids)
    if not 1 <= m <= n:
        raise ValueError(f"target cluster count {m} out of range [1, {n}]")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _ in upgma_merges(dm)[: n - m]:
        parent[find(j)] = find(i)

    reps = sorted({find(x) for x in range(n)})
    rep_to_cid = {rep: cid for cid, rep in enumerate(reps)}
    return Partition({dm.ids[x]: rep_to_cid[find(x)] for x in range(n)})


@dataclass(frozen=True)
class PairConfusion:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True)
class ClusterScores:
    confusion: PairConfusion
    rand_index: float
    precision: float
    recall: float
    f_measure: float


def pair_scores(predicted: Partition, truth: Partition) -> ClusterScores:
    """Pair-counting agreement between a clustering and the ground truth."""
    ids = sorted(predicted.assignment)
    if set(ids) != set(truth.assignment):
        raise ValueError("partitions cover different id sets")
    tp = tn = fp = fn = 0
    pred = predicted.assignment
    true = truth.assignment
    for a, b in combinations(ids, 2):
        same_pred = pred[a] == pred[b]
        same_true = true[a] == true[b]
        if same_pred and same_true:
            tp += 1
        elif same_pred:
            fp += 1
        elif same_true:
            fn += 1
        else:
            tn += 1
    confusion = PairConfusion(tp, tn, fp, fn)
    total = confusion.total
    ri = (tp + tn) / total if total else 1.0
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return ClusterScores(confusion, ri, precision, recall, f)


def rank_for_query(dm: DistanceMatrix, query: str) -> list[str]:
    """All other ids, nearest first; ties break on ascending id."""
    if len(dm.ids) < 2:
        raise ValueError("ranking needs at least two items")
    q = dm.index_of(query)
    row = dm.values[q]
    order = sorted((i for i in range(len(dm.ids)) if i != q), key=lambda i: (row[i], dm.ids[i]))
    return [dm.ids[i] for i in order]


def average_precision(ranked: Sequence[str], relevant) -> float:
    """Mean precision over the prefixes ending at each relevant item."""
    relevant = set(relevant)
    if not relevant:
        raise ValueError("average precision needs a non-empty relevant set")
    missing = relevant - set(ranked)
    if missing:
        raise ValueError(f"relevant items missing from the ranking: {sorted(missing)[:3]}")
    hits = 0
    precision_sum = 0.0
    for position, item in enumerate(ranked, start=1):
        if item in relevant:
            hits += 1
            precision_sum += hits / position
    return precision_sum / len(relevant)


def _queries(dm: DistanceMatrix, labels: Mapping[str, str]):
    """Yield (query id, ranked list, relevant set); skip memberless categories."""
    if set(labels) != set(dm.ids):
        raise ValueError("labels cover a different id set than the distance matrix")
    by_category: dict[str, set[str]] = {}
    for item, category in labels.items():
        by_category.setdefault(category, set()).add(item)
    for query in dm.ids:
        relevant = by_category[labels[query]] - {query}
        if not relevant:
            warnings.warn(f"category {labels[query]!r} has a single member; query {query!r} skipped")
            continue
        yield query, rank_for_query(dm, query), relevant


def map_score(dm: DistanceMatrix, labels: Mapping[str, str]) -> float:
    """Mean average precision over all queries with at least one relevant item."""
    scores = [average_precision(ranked, relevant) for _, ranked, relevant in _queries(dm, labels)]
    if not scores:
        raise ValueError("no query has a relevant item")
    return sum(scores) / len(scores)


@dataclass(frozen=True, eq=False)
class RetrievalCurves:
    """11-point interpolated precision/F averages plus MAP."""

    recall_levels: np.ndarray
    avg_precision: np.ndarray
    avg_f_measure: np.ndarray
    map: float

    def __eq__(self, other):
        if not isinstance(other, RetrievalCurves):
            return NotImplemented
        return self.map == other.map and all(
            np.array_equal(getattr(self, f), getattr(other, f))
            for f in ("recall_levels", "avg_precision", "avg_f_measure")
        )


def interpolated_curves(dm: DistanceMatrix, labels: Mapping[str, str]) -> RetrievalCurves:
    """Average the per-query interpolated precision and F over 11 recall levels."""
    precision_sum = np.zeros(len(RECALL_LEVELS))
    f_sum = np.zeros(len(RECALL_LEVELS))
    ap_sum = 0.0
    n_queries = 0
    for _, ranked, relevant in _queries(dm, labels):
        m = len(relevant)
        hits = 0
        ap = 0.0
        precision = np.empty(len(ranked))
        recall = np.empty(len(ranked))
        for t, item in enumerate(ranked):
            if item in relevant:
                hits += 1
                ap += hits / (t + 1)
            precision[t] = hits / (t + 1)
            recall[t] = hits / m
        ap /= m
        # Best precision at any recall >= level: running max from the right.
        best_from_right = np.maximum.accumulate(precision[::-1])[::-1]
        first_at_level = np.searchsorted(recall, RECALL_LEVELS, side="left")
        interp_p = best_from_right[first_at_level]
        with np.errstate(invalid="ignore"):
            interp_f = np.where(
                interp_p + RECALL_LEVELS > 0,
                2 * interp_p * RECALL_LEVELS / (interp_p + RECALL_LEVELS),
                0.0,
            )
        precision_sum += interp_p
        f_sum += interp_f
        ap_sum += ap
        n_queries += 1
    if n_queries == 0:
        raise ValueError("no query has a relevant item")
    return RetrievalCurves(
        recall_levels=RECALL_LEVELS.copy(),
        avg_precision=precision_sum / n_queries,
        avg_f_measure=f_sum / n_queries,
        map=ap_sum / n_queries,
    )


# --- report files ------------------------------------------------------------


def curves_to_csv(curves: RetrievalCurves) -> str:
    lines = ["recall_level,avg_precision,avg_fmeasure"]
    for r, p, f in zip(curves.recall_levels, curves.avg_precision, curves.avg_f_measure):
        lines.append(f"{r:.1f},{p:.6f},{f:.6f}")
    return "\n".join(lines) + "\n"


def cluster_report_json(scores: ClusterScores, partition: Partition | None = None) -> str:
    report = {
        "RI": round(scores.rand_index, 6),
        "P": round(scores.precision, 6),
        "R": round(scores.recall, 6),
        "F": round(scores.f_measure, 6),
    }
    if partition is not None:
        report["clusters"] = dict(partition.assignment)
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def retrieval_report_json(curves: RetrievalCurves) -> str:
    return json.dumps({"MAP": round(curves.map, 6)}, sort_keys=True, indent=2) + "\n"
