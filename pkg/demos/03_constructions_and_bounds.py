"""Explicit percolating sets from covering designs, checked against the bound.

A (d, k, t, m) cover is a family of weight-k blocks such that every
weight-t vertex lies below at least m blocks.  Stacking covers on a few
Hamming levels yields percolating sets whose sizes can be compared with
the exact counting lower bound.
"""

import math

from percube import (
    brute_force_min,
    exact_cover_search,
    exact_lower_bound,
    greedy_cover,
    make_config,
    percolates,
    three_level_construction,
    two_level_construction,
)

# The bound for threshold 4 across a range of dimensions.
print("counting lower bound at r = 4:")
for d in range(7, 14):
    report = exact_lower_bound(d, 4)
    print(f"  d = {d:2d}: {str(report.exact_value):>7s} -> {report.ceiling}")

# Two-level construction: a greedy (d, r, r-1, 1) cover at weight r on
# top of the full level r-2.
d, r = 8, 3
cfg = make_config(d, r)
f1 = greedy_cover(d, r, r - 1, 1)
built = two_level_construction(d, r, f1)
print(f"\ntwo-level at (d, r) = ({d}, {r}): {f1.n_blocks} cover blocks "
      f"+ {math.comb(d, r - 2)} at weight {r - 2} = {built.size} vertices")
print(f"percolates: {percolates(built, cfg)}")

# Three-level construction needs an exact multiplicity-1 cover on top.
d, r = 7, 3
cfg = make_config(d, r)
f1 = exact_cover_search(d, r, r - 1)
assert f1 is not None, "an exact (7, 3, 2) cover exists"
f2 = greedy_cover(d, r - 1, r - 2, 2)
built = three_level_construction(d, r, f1, f2)
print(f"\nthree-level at (d, r) = ({d}, {r}): {f1.n_blocks} + {f2.n_blocks} "
      f"+ {math.comb(d, r - 3)} = {built.size} vertices, "
      f"percolates: {percolates(built, cfg)}")
print(f"bound ceiling: {exact_lower_bound(d, r).ceiling}")

# On tiny cubes the true minimum is available by exhaustive search.
print("\nexhaustive minima on tiny cubes:")
for d, r in [(2, 2), (3, 2), (4, 2), (3, 3), (4, 3)]:
    cfg = make_config(d, r)
    minimum, witness = brute_force_min(cfg, cfg.n_vertices)
    print(f"  (d, r) = ({d}, {r}): minimum {minimum}, "
          f"witness codes {list(witness.codes())}, "
          f"bound {exact_lower_bound(d, r).ceiling}")
