"""Labeled corpora of generated weave graphs.

A corpus spec lists categories; each category produces ``count`` samples
of one weave kind on one grid size: first the clean bases, then a block of
cell-flip perturbed samples, then a block of rotated/mirrored samples
(cycling rotate90 / rotate180 / mirror).  Sample seeds derive from the
category seed and the sample index, so a spec regenerates byte-for-byte.

Spec files are INI-style, one section per category (grammar below and in
the README)::

    [corpus]            # optional; global defaults
    seed = 7

    [twill-2-1]
    kind = twill(2,1)   # plain | twill(m,n) | satin(p,s) | warp_above | random(d)
    count = 20
    width = 24
    height = 24
    perturb_fraction = 0.25
    perturb_rate = 0.03
    transform_fraction = 0.25
    seed = 3            # optional; default derives from the global seed

On disk a corpus is a directory of ``<id>.tg`` files plus a
``manifest.csv`` with header ``id,path,category`` (paths relative to the
manifest).
"""

from __future__ import annotations

import configparser
import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .graph import TextileGraph, load_graph, save_graph, serialize_graph
from .weaves import (
    TRANSFORM_OPS,
    grid_to_graph,
    mixed_weave,
    parse_kind,
    perturb,
    transform,
    weave_matrix,
)


@dataclass(frozen=True)
class CategorySpec:
    name: str
    kind: str
    count: int
    width: int
    height: int
    perturb_fraction: float = 0.0
    perturb_rate: float = 0.0
    transform_fraction: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        if not self.name or any(c in self.name for c in "/\\,"):
            raise ValueError(f"category name {self.name!r} must be non-empty and free of path/comma characters")
        if self.count < 1:
            raise ValueError(f"category {self.name!r}: count must be >= 1")
        if self.width < 1 or self.height < 1:
            raise ValueError(f"category {self.name!r}: grid dimensions must be >= 1")
        for field_name in ("perturb_fraction", "perturb_rate", "transform_fraction"):
            value = getattr(self, field_name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"category {self.name!r}: {field_name} must lie in [0, 1]")
        if self.perturb_fraction + self.transform_fraction > 1.0:
            raise ValueError(f"category {self.name!r}: perturbed and transformed fractions exceed the count")

    @property
    def n_perturbed(self) -> int:
        return int(self.count * self.perturb_fraction)

    @property
    def n_transformed(self) -> int:
        return int(self.count * self.transform_fraction)


@dataclass(frozen=True)
class CorpusSpec:
    categories: tuple[CategorySpec, ...]
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(self.categories))
        names = [c.name for c in self.categories]
        if len(set(names)) != len(names):
            raise ValueError("category names must be unique")
        if not self.categories:
            raise ValueError("corpus spec needs at least one category")


class CorpusItem(NamedTuple):
    id: str
    graph: TextileGraph
    category: str


def _sample_seed(category_seed: int, index: int, stream: int) -> np.random.SeedSequence:
    # Distinct, portable streams per (sample, purpose) without RNG state leaks.
    return np.random.SeedSequence([category_seed, index, stream])

_POOL_STREAM = 997  # category-level stream id for shared mixed-weave motif pools


def _sample_matrix(cat: CategorySpec, seed: int, index: int):
    name, args = parse_kind(cat.kind)
    if name == "mixed":
        # one motif pool per category; each sample only re-arranges it
        if len(args) != 2:
            raise ValueError(f"weave kind {cat.kind!r} takes 2 parameter(s), got {len(args)}")
        return mixed_weave(
            int(args[0]), int(args[1]), cat.width, cat.height,
            pool_seed=np.random.SeedSequence([seed, _POOL_STREAM]),
            choice_seed=_sample_seed(seed, index, 0),
        )
    return weave_matrix(cat.kind, cat.width, cat.height, seed=_sample_seed(seed, index, 0))


def _category_items(cat: CategorySpec, fallback_seed: int):
    seed = cat.seed if cat.seed is not None else fallback_seed
    n_clean = cat.count - cat.n_perturbed - cat.n_transformed
    for index in range(cat.count):
        cells = _sample_matrix(cat, seed, index)
        if n_clean <= index < n_clean + cat.n_perturbed:
            cells = perturb(cells, cat.perturb_rate, _sample_seed(seed, index, 1))
        elif index >= n_clean + cat.n_perturbed:
            cells = transform(cells, TRANSFORM_OPS[(index - n_clean - cat.n_perturbed) % len(TRANSFORM_OPS)])
        yield CorpusItem(f"{cat.name}-{index:03d}", grid_to_graph(cells), cat.name)


def generate_corpus(spec: CorpusSpec) -> list[CorpusItem]:
    """All samples of all categories, in spec order, deterministic per seed."""
    corpus = []
    for position, cat in enumerate(spec.categories):
        # Offset fallback seeds so two seedless categories never collide.
        corpus.extend(_category_items(cat, spec.seed * 1000 + position))
    return corpus


# --- spec files ---------------------------------------------------------------

_GLOBAL_SECTION = "corpus"
_CATEGORY_KEYS = {
    "kind", "count", "width", "height",
    "perturb_fraction", "perturb_rate", "transform_fraction", "seed",
}


def parse_corpus_spec(text: str) -> CorpusSpec:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ValueError(f"bad corpus spec: {exc}") from None

    seed = 0
    if parser.has_section(_GLOBAL_SECTION):
        seed = parser.getint(_GLOBAL_SECTION, "seed", fallback=0)

    categories = []
    for name in parser.sections():
        if name == _GLOBAL_SECTION:
            continue
        section = parser[name]
        unknown = set(section) - _CATEGORY_KEYS
        if unknown:
            raise ValueError(f"category {name!r}: unknown keys {sorted(unknown)}")
        if "kind" not in section:
            raise ValueError(f"category {name!r}: missing required key 'kind'")
        try:
            categories.append(CategorySpec(
                name=name,
                kind=section["kind"],
                count=section.getint("count", fallback=1),
                width=section.getint("width", fallback=16),
                height=section.getint("height", fallback=16),
                perturb_fraction=section.getfloat("perturb_fraction", fallback=0.0),
                perturb_rate=section.getfloat("perturb_rate", fallback=0.0),
                transform_fraction=section.getfloat("transform_fraction", fallback=0.0),
                seed=section.getint("seed") if "seed" in section else None,
            ))
        except ValueError:
            raise
        except Exception as exc:
            raise ValueError(f"category {name!r}: {exc}") from None
    return CorpusSpec(tuple(categories), seed=seed)


def load_corpus_spec(path) -> CorpusSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_corpus_spec(fh.read())


# --- corpus directories ---------------------------------------------------------

MANIFEST_NAME = "manifest.csv"


def write_corpus(corpus, out_dir) -> Path:
    """Write one ``.tg`` per item plus the manifest; returns the manifest path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for item in corpus:
        filename = f"{item.id}.tg"
        save_graph(item.graph, out_dir / filename)
        rows.append((item.id, filename, item.category))
    manifest = out_dir / MANIFEST_NAME
    with open(manifest, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "path", "category"])
        writer.writerows(rows)
    return manifest


def read_manifest(path) -> list[tuple[str, Path, str]]:
    """Rows as (id, absolute path, category)."""
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]
    if not rows or rows[0] != ["id", "path", "category"]:
        raise ValueError(f"{path}: manifest must start with header 'id,path,category'")
    out = []
    seen = set()
    for row in rows[1:]:
        if len(row) != 3:
            raise ValueError(f"{path}: manifest row must have 3 fields, got {row!r}")
        item_id, rel_path, category = row
        if item_id in seen:
            raise ValueError(f"{path}: duplicate id {item_id!r}")
        seen.add(item_id)
        out.append((item_id, path.parent / rel_path, category))
    return out


def load_corpus(manifest_path) -> list[CorpusItem]:
    return [CorpusItem(item_id, load_graph(p), category) for item_id, p, category in read_manifest(manifest_path)]


def corpus_to_text(corpus) -> str:
    """Single deterministic text dump of a corpus, for byte-level comparisons."""
    buf = io.StringIO()
    for item in corpus:
        buf.write(f"=== {item.id} {item.category}\n")
        buf.write(serialize_graph(item.graph))
    return buf.getvalue()
