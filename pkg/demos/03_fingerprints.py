"""Fingerprints: arm walks, k-neighborhoods, and their invariances.

From each crossing, four arms are walked up to k crossings along their
threads, recording A (level change), N (same level) or T (thread end),
padded after a T.  The multiset of these per-crossing neighborhoods is the
graph's fingerprint: position-free, orientation-free, and sparse.
"""

from weftprint import (
    arm_walk,
    crossing_neighborhood,
    fingerprint,
    format_neighborhood,
    grid_to_graph,
    mirror,
    plain_weave,
    rotate90,
    rotate180,
    transform,
    twill_weave,
)

plain = grid_to_graph(plain_weave(6, 6))

# Walks from the central crossing of a plain weave alternate at every
# step: A until the boundary, then T and padding.
center = 4 * (3 * 6 + 3)
for k in (1, 3, 5):
    print(f"k={k}: central warp arm walk:", arm_walk(plain, center, k))

# A corner crossing of the 2x2 plain weave: each thread has one live
# continuation (A) and one end (T) -- this is the classic tiny example.
tiny = grid_to_graph(plain_weave(2, 2))
print("\n2x2 plain, corner neighborhood (k=1):", crossing_neighborhood(tiny, 0, 1))
fp = fingerprint(tiny, 1)
print("2x2 plain fingerprint:", dict(fp))
assert fp == {"A,T;A,T": 4}  # all four crossings look alike

# Deeper neighborhoods separate patterns that k=1 confuses.
for name, cells in [
    ("plain  ", plain_weave(12, 12)),
    ("twill21", twill_weave(2, 1, 12, 12)),
    ("twill22", twill_weave(2, 2, 12, 12)),
]:
    fp4 = fingerprint(grid_to_graph(cells), 4)
    top = fp4.most_common(1)[0]
    print(f"{name}: {len(fp4):3d} distinct neighborhoods at k=4;"
          f" most common {format_neighborhood(top[0])} x{top[1]}")

# Orientation invariance: rotations and mirrors leave the fingerprint
# exactly unchanged, because arm pairs and the pair of pairs are unordered.
cells = twill_weave(3, 1, 10, 8)
reference = fingerprint(grid_to_graph(cells), 4)
for op, transformed in [
    ("rotate90", rotate90(cells)),
    ("rotate180", rotate180(cells)),
    ("mirror", mirror(cells)),
]:
    assert fingerprint(grid_to_graph(transformed), 4) == reference
    print(f"fingerprint unchanged under {op}")

# Flipping the fabric (looking at it from the back) also changes nothing.
assert fingerprint(grid_to_graph(~cells), 4) == reference
print("fingerprint unchanged when viewed from the reverse face")
