"""Structural similarity search for weaving patterns.

Weaves are modeled as crossing graphs in a flat-array encoding, condensed
into multisets of k-neighborhood labels, and compared with sparse distance
measures; clustering and ranked-retrieval evaluation close the loop.
"""

from .graph import (
    TERMINAL,
    EdgeLabel,
    GraphParseError,
    InvalidGraphError,
    TextileGraph,
    ValidationReport,
    edge_label,
    load_graph,
    parse_graph,
    save_graph,
    serialize_graph,
    validate,
)
from .weaves import (
    grid_to_graph,
    mirror,
    mixed_weave,
    parse_kind,
    perturb,
    plain_weave,
    random_weave,
    rotate90,
    rotate180,
    satin_weave,
    transform,
    twill_weave,
    warp_above_weave,
    weave_matrix,
)
from .fingerprint import (
    DEFAULT_K,
    PAD,
    Fingerprint,
    Neighborhood,
    arm_walk,
    canonical_neighborhood,
    crossing_neighborhood,
    fingerprint,
    format_neighborhood,
    load_fingerprint,
    parse_neighborhood,
    save_fingerprint,
)
from .distance import (
    METRICS,
    CorpusStats,
    DistanceMatrix,
    corpus_stats,
    cosine_distance,
    cosine_tfidf_distance,
    distance_matrix,
    hamming_bool_distance,
    hamming_freq_distance,
    jaccard_distance,
    load_distance_matrix,
    save_distance_matrix,
)
from .evaluation import (
    ClusterScores,
    PairConfusion,
    Partition,
    RetrievalCurves,
    average_precision,
    interpolated_curves,
    map_score,
    pair_scores,
    rank_for_query,
    upgma_cluster,
    upgma_merges,
)
from .corpus import (
    CategorySpec,
    CorpusItem,
    CorpusSpec,
    generate_corpus,
    load_corpus,
    load_corpus_spec,
    parse_corpus_spec,
    read_manifest,
    write_corpus,
)
from .pipeline import EvalReport, run_pipeline

__version__ = "0.1.0"
