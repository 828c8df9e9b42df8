"""Deterministic percolating sets from covers, exact bounds, tiny oracles.

Identifying weight-k vertices of Q_d with k-subsets of the coordinates,
a percolating set can be assembled from covering designs:

* two levels: the blocks of a (d, r, r-1, 1+) cover placed at weight r,
  plus the entire level r-2;
* three levels: an exact (d, r, r-1, 1) cover at weight r, a
  (d, r-1, r-2, 2+) cover at weight r-1, plus the entire level r-3.

Infection proceeds level by level: each vertex of the next weight class
finds enough infected neighbors below it plus the cover-supplied
neighbors above, and once two adjacent full levels are infected the
process sweeps the whole cube.  The builders assemble the union and the
callers (tests, CLI) confirm percolation with the engine.

``exact_lower_bound`` evaluates a known closed-form lower bound on the
minimum percolating set size in exact rational arithmetic, and
``brute_force_min`` finds the true minimum on tiny cubes by exhaustive
enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cube import PercConfig, VertexSet, vertices_of_weight
from .covers import CoverFamily
from .percolation import closure_mask


def _check_cover(cover: CoverFamily, d: int, k: int, t: int, m: int, name: str) -> None:
    if cover.ground_d != d:
        raise ValueError(f"{name} lives on {cover.ground_d} coordinates, expected {d}")
    if cover.block_size != k:
        raise ValueError(f"{name} has block size {cover.block_size}, expected {k}")
    if cover.covered_size != t:
        raise ValueError(f"{name} covers {cover.covered_size}-subsets, expected {t}")
    if cover.multiplicity < m:
        raise ValueError(f"{name} has multiplicity {cover.multiplicity}, need at least {m}")


def _level_mask(d: int, k: int, cfg: PercConfig) -> int:
    mask = 0
    for v in vertices_of_weight(k, cfg):
        mask |= 1 << v
    return mask


def two_level_construction(d: int, r: int, f1: CoverFamily) -> VertexSet:
    """Blocks of ``f1`` at weight r plus the full level r-2.

    ``f1`` must be a (d, r, r-1) cover of multiplicity at least 1, and
    r >= 2, d >= 2r.  The returned set has exactly
    ``f1.n_blocks + C(d, r-2)`` vertices.
    """
    if r < 2:
        raise ValueError(f"need r >= 2, got r={r}")
    if d < 2 * r:
        raise ValueError(f"need d >= 2r, got d={d}, r={r}")
    _check_cover(f1, d, k=r, t=r - 1, m=1, name="f1")
    cfg = PercConfig(d, r)
    block_mask = 0
    for b in f1.blocks:
        block_mask |= 1 << b
    level = _level_mask(d, r - 2, cfg)
    # Weights r and r-2 differ, so the union is disjoint.
    assert block_mask & level == 0
    out = VertexSet(d, block_mask | level)
    assert out.size == f1.n_blocks + math.comb(d, r - 2)
    return out


def three_level_construction(d: int, r: int, f1: CoverFamily, f2: CoverFamily) -> VertexSet:
    """Exact cover at weight r, double cover at weight r-1, full level r-3.

    ``f1`` must be an exact (d, r, r-1, 1) cover (each (r-1)-subset in
    exactly one block) and ``f2`` a (d, r-1, r-2) cover of multiplicity
    at least 2; needs r >= 3.  The returned set has exactly
    ``f1.n_blocks + f2.n_blocks + C(d, r-3)`` vertices.
    """
    if r < 3:
        raise ValueError(f"need r >= 3, got r={r}")
    _check_cover(f1, d, k=r, t=r - 1, m=1, name="f1")
    if not f1.exact or f1.multiplicity != 1:
        raise ValueError("f1 must be an exact multiplicity-1 cover")
    _check_cover(f2, d, k=r - 1, t=r - 2, m=2, name="f2")
    cfg = PercConfig(d, r)
    mask1 = 0
    for b in f1.blocks:
        mask1 |= 1 << b
    mask2 = 0
    for b in f2.blocks:
        mask2 |= 1 << b
    level = _level_mask(d, r - 3, cfg)
    # Three distinct weights: r, r-1, r-3.
    assert mask1 & mask2 == 0 and (mask1 | mask2) & level == 0
    out = VertexSet(d, mask1 | mask2 | level)
    assert out.size == f1.n_blocks + f2.n_blocks + math.comb(d, r - 3)
    return out


@dataclass(frozen=True)
class BoundReport:
    """Exact rational lower bound on the minimum percolating set size."""

    d: int
    r: int
    exact_value: Fraction
    ceiling: int


def exact_lower_bound(d: int, r: int) -> BoundReport:
    """Closed-form lower bound on the minimum percolating set size of Q_d.

    Evaluates ``2^(r-1) + sum_{j=1}^{r-1} C(d-j-1, r-j) * j * 2^(j-1) / r``
    as an exact fraction (with C(a, b) = 0 whenever a < b) and takes the
    ceiling.  Requires d >= r >= 1.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got r={r}")
    if d < r:
        raise ValueError(f"need d >= r, got d={d}, r={r}")
    total = Fraction(1 << (r - 1))
    for j in range(1, r):
        total += Fraction(math.comb(d - j - 1, r - j) * j * (1 << (j - 1)), r)
    return BoundReport(d=d, r=r, exact_value=total, ceiling=math.ceil(total))


def brute_force_min(cfg: PercConfig, size_limit: int) -> tuple[int, VertexSet]:
    """Exhaustive minimum percolating set size on a tiny cube, with witness.

    Enumerates candidate sets in increasing size, and within one size in
    lexicographic order of the sorted code tuple, so the returned witness
    is the deterministic first minimum.  Guarded to d <= 4.
    """
    if cfg.d > 4:
        raise ValueError(f"exhaustive search is guarded to d <= 4, got d={cfg.d}")
    if size_limit < 0:
        raise ValueError("size_limit must be non-negative")
    n = cfg.n_vertices
    full = cfg.full_mask
    for s in range(min(size_limit, n) + 1):
        for combo in combinations(range(n), s):
            mask = 0
            for c in combo:
                mask |= 1 << c
            if closure_mask(mask, cfg) == full:
                return s, VertexSet(cfg.d, mask)
    raise ValueError(f"no percolating set of size <= {size_limit} exists in Q_{cfg.d}")
