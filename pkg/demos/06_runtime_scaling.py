"""Fingerprint cost grows linearly with the walk depth k.

Each crossing contributes four walks of k steps over the flat node array,
so extraction time tracks n*k; neighborhoods stay sparse, so counting adds
little.  Timed here on a fabric matching the size of a realistic sample
(about 6,300 crossings).
"""

import time

from weftprint import fingerprint, grid_to_graph, weave_matrix

graph = grid_to_graph(weave_matrix("twill(3,2)", 80, 79))
print(f"graph: {graph.crossing_count} crossings")
fingerprint(graph, 1)  # warm up the cached arrays

print(f"\n{'k':>3} {'ms':>8} {'ms/k':>8} {'distinct':>9}")
for k in range(1, 10):
    best = min(
        (lambda t0: (fingerprint(graph, k), time.perf_counter() - t0)[1])(time.perf_counter())
        for _ in range(3)
    )
    distinct = len(fingerprint(graph, k))
    print(f"{k:>3} {best * 1000:>8.2f} {best / k * 1000:>8.3f} {distinct:>9}")

print("\nms/k settles to a constant: the per-step walk dominates.")
print("Compare ever-sparser storage: even at k=9 a regular twill uses a")
print("few hundred distinct neighborhoods, nowhere near its crossing count.")
