import numpy as np
import pytest

from weftprint.corpus import CategorySpec, CorpusSpec, generate_corpus
from weftprint.distance import corpus_stats, distance_matrix
from weftprint.pipeline import corpus_fingerprints

# The desk-scale study corpus: 9 categories x 20 samples on 24x24 grids,
# each category 10 clean + 5 perturbed (rate 0.03) + 5 rotated/mirrored.
DESK_SCALE_KINDS = (
    ("plain", "plain"),
    ("twill-2-1", "twill(2,1)"),
    ("twill-2-2", "twill(2,2)"),
    ("twill-3-1", "twill(3,1)"),
    ("twill-3-3", "twill(3,3)"),
    ("twill-4-4", "twill(4,4)"),
    ("satin-5-2", "satin(5,2)"),
    ("warp-above", "warp_above"),
    ("random-mixed", "mixed(8,2)"),
)


def desk_scale_spec(seed=7) -> CorpusSpec:
    categories = tuple(
        CategorySpec(
            name=name,
            kind=kind,
            count=20,
            width=24,
            height=24,
            perturb_fraction=0.25,
            perturb_rate=0.03,
            transform_fraction=0.25,
            seed=seed + position,
        )
        for position, (name, kind) in enumerate(DESK_SCALE_KINDS)
    )
    return CorpusSpec(categories, seed=seed)


def desk_scale_config_text(seed=7) -> str:
    lines = [f"[corpus]\nseed = {seed}\n"]
    for position, (name, kind) in enumerate(DESK_SCALE_KINDS):
        lines.append(
            f"[{name}]\n"
            f"kind = {kind}\n"
            "count = 20\n"
            "width = 24\n"
            "height = 24\n"
            "perturb_fraction = 0.25\n"
            "perturb_rate = 0.03\n"
            "transform_fraction = 0.25\n"
            f"seed = {seed + position}\n"
        )
    return "\n".join(lines)


@pytest.fixture(scope="session")
def desk_corpus():
    return generate_corpus(desk_scale_spec())


@pytest.fixture(scope="session")
def desk_labels(desk_corpus):
    return {item.id: item.category for item in desk_corpus}


@pytest.fixture(scope="session")
def desk_fingerprints(desk_corpus):
    """{k: (ids, fingerprints)} for the k values the acceptance criteria use."""
    return {k: corpus_fingerprints(desk_corpus, k) for k in (4, 6)}


@pytest.fixture(scope="session")
def desk_matrices(desk_fingerprints):
    """Distance matrices reused across acceptance criteria."""
    out = {}
    for metric in ("jaccard", "hbool", "cosine"):
        ids, fps = desk_fingerprints[4]
        out[(metric, 4)] = distance_matrix(fps, metric, ids=ids)
    ids, fps = desk_fingerprints[6]
    out[("jaccard", 6)] = distance_matrix(fps, "jaccard", ids=ids)
    return out


def random_fingerprint(rng: np.random.Generator, universe=40, max_support=12, max_count=9):
    """Small random count vector; distance measures treat keys opaquely."""
    from collections import Counter

    support = int(rng.integers(1, max_support + 1))
    keys = rng.choice(universe, size=min(support, universe), replace=False)
    return Counter({f"p{key}": int(rng.integers(1, max_count + 1)) for key in keys})
