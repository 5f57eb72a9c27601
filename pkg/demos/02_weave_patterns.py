"""Weave matrices: the classic families, transforms, and imperfections.

A weave matrix is a boolean grid: True where the warp passes over the
weft.  The generator families below feed the corpus used in the study
scripts; rendered here as text, # = warp over.
"""

import numpy as np

from weftprint import (
    grid_to_graph,
    mixed_weave,
    perturb,
    plain_weave,
    rotate90,
    satin_weave,
    twill_weave,
    validate,
    warp_above_weave,
)


def show(title, cells):
    print(title)
    for row in cells:
        print("  " + "".join("#" if c else "." for c in row))
    print()


show("plain (checkerboard):", plain_weave(8, 4))
show("2/1 twill (diagonal ribs):", twill_weave(2, 1, 9, 4))
show("4/4 twill (wide floats):", twill_weave(4, 4, 12, 5))
show("satin, period 5 step 2 (scattered raisers):", satin_weave(5, 2, 10, 5))
show("warp above (no interlacing):", warp_above_weave(8, 3))

# A mosaic of random motifs from a small shared pool: stand-in for
# hand-woven pieces mixing several styles in one textile.
mosaic = mixed_weave(4, 2, 12, 8, pool_seed=1, choice_seed=2)
show("mixed mosaic (4x4 blocks, pool of 2):", mosaic)

# Rotating by 90 degrees swaps the thread families, so the bit flips.
show("plain rotated 90 degrees (still plain):", rotate90(plain_weave(8, 4)))

# Imperfections: flip each cell with 10% probability, reproducibly.
damaged = perturb(plain_weave(8, 4), 0.10, seed=7)
show("plain with 10% cell flips:", damaged)
flips = int((damaged ^ plain_weave(8, 4)).sum())
print(f"{flips} of 32 cells flipped; same seed always flips the same cells")

# Every matrix interlaces into a valid crossing graph.
g = grid_to_graph(mosaic)
print("mosaic graph:", g, "valid:", validate(g).ok)
print("thread ends:", int((g.next_node == -1).sum()), "= 2*(w+h) =", 2 * (12 + 8))
