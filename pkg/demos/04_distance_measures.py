"""The five fingerprint distance measures on a worked pair and real weaves.

The worked pair: one fabric whose four crossings share a single
neighborhood type (vector (0, 4)), one with two types of two each
(vector (2, 2)).
"""

import math
from collections import Counter

from weftprint import (
    corpus_stats,
    cosine_distance,
    cosine_tfidf_distance,
    distance_matrix,
    fingerprint,
    grid_to_graph,
    hamming_bool_distance,
    hamming_freq_distance,
    jaccard_distance,
    perturb,
    plain_weave,
    twill_weave,
)

r = Counter({"p": 4})
s = Counter({"p": 2, "q": 2})

print("worked pair r=(0,4), s=(2,2):")
print("  jaccard      :", jaccard_distance(r, s), "= 1 - 2/6")
print("  hamming bool :", hamming_bool_distance(r, s), "(supports differ in one key)")
print("  hamming freq :", hamming_freq_distance(r, s), "= |4-2| + |0-2|")
print("  cosine       :", cosine_distance(r, s), "= 1 - sqrt(2)/2 =", 1 - math.sqrt(2) / 2)

# TF-IDF weighting needs collection statistics: how many fabrics contain
# each neighborhood.  Ubiquitous neighborhoods stop mattering (IDF -> 0).
stats = corpus_stats([r, s, Counter({"p": 1})])
print("  cosine tfidf :", round(cosine_tfidf_distance(r, s, stats), 6),
      f"(df={dict(stats.df)}, N={stats.n_items})")

# On real weaves: a 5% damaged plain weave stays much closer to plain
# than any twill does.
plain = fingerprint(grid_to_graph(plain_weave(16, 16)), 4)
damaged = fingerprint(grid_to_graph(perturb(plain_weave(16, 16), 0.05, seed=3)), 4)
twill = fingerprint(grid_to_graph(twill_weave(2, 2, 16, 16)), 4)
print("\njaccard on 16x16 fabrics:")
print("  plain vs damaged plain:", round(jaccard_distance(plain, damaged), 3))
print("  plain vs 2/2 twill    :", round(jaccard_distance(plain, twill), 3))

# Batch form: a symmetric matrix with ids, writable as CSV.
dm = distance_matrix([plain, damaged, twill], "jaccard", ids=("plain", "damaged", "twill"))
print("\ndistance matrix:")
for i, row_id in enumerate(dm.ids):
    cells = " ".join(f"{v:5.3f}" for v in dm.values[i])
    print(f"  {row_id:8s} {cells}")
