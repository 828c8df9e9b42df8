"""Covering designs over the coordinate set of Q_d.

A block is a k-subset of the d coordinates, encoded as a weight-k vertex
code (bit i set means coordinate i+1 belongs to the block).  A
(d, k, t, m) cover is a family of distinct blocks such that every
t-subset of the coordinates lies in at least m blocks; it is exact when
every t-subset lies in exactly m blocks (for m = 1 this is a Steiner
system).  :class:`CoverFamily` re-verifies the covering property by
direct enumeration on construction, so a value of this type is always a
certified cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .cube import MAX_DIMENSION

GREEDY_ENUMERATION_GUARD = 10**7
GREEDY_WORK_GUARD = 5 * 10**7
EXACT_SEARCH_GUARD = 10**4
VERIFY_GUARD = 10**6


def _codes_of_weight(d: int, k: int) -> list[int]:
    """Weight-k codes on d bits in ascending order (Gosper's hack)."""
    if k == 0:
        return [0]
    out = []
    v = (1 << k) - 1
    limit = 1 << d
    while v < limit:
        out.append(v)
        low = v & -v
        ripple = v + low
        v = ripple | (((v ^ ripple) >> 2) // low)
    return out


def _subset_codes(block: int, t: int) -> list[int]:
    """Codes of the t-subsets of a block, given as a coordinate-set code."""
    bits = [i for i in range(block.bit_length()) if (block >> i) & 1]
    out = []
    for sub in combinations(bits, t):
        code = 0
        for i in sub:
            code |= 1 << i
        out.append(code)
    return out


def coverage_counts(d: int, t: int, blocks) -> dict[int, int]:
    """How many of the given blocks contain each t-subset of [d]."""
    counts = {code: 0 for code in _codes_of_weight(d, t)}
    for b in blocks:
        for sub in _subset_codes(b, t):
            counts[sub] += 1
    return counts


@dataclass(frozen=True)
class CoverFamily:
    """A verified (d, k, t, m) covering design.

    Construction re-checks every invariant by enumeration: block weights,
    distinctness, the multiplicity floor on all C(d, t) t-subsets, and
    uniformity when ``exact`` is claimed.  An invalid family cannot be
    instantiated.
    """

    ground_d: int
    block_size: int
    covered_size: int
    multiplicity: int
    blocks: tuple[int, ...]
    exact: bool

    def __post_init__(self) -> None:
        d, k, t, m = self.ground_d, self.block_size, self.covered_size, self.multiplicity
        if not 1 <= d <= MAX_DIMENSION:
            raise ValueError(f"ground set size d={d} out of range (1..{MAX_DIMENSION})")
        if not 0 <= t < k <= d:
            raise ValueError(f"need 0 <= t < k <= d, got k={k}, t={t}, d={d}")
        if m < 1:
            raise ValueError(f"multiplicity m={m} must be at least 1")
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if len(set(self.blocks)) != len(self.blocks):
            raise ValueError("blocks must be distinct")
        for b in self.blocks:
            if b < 0 or b >> d or b.bit_count() != k:
                raise ValueError(f"block code {b} is not a weight-{k} subset of {d} coordinates")
        if math.comb(d, t) > VERIFY_GUARD:
            raise ValueError(
                f"cover verification would enumerate C({d},{t}) > {VERIFY_GUARD} subsets"
            )
        counts = coverage_counts(d, t, self.blocks)
        short = sum(1 for c in counts.values() if c < m)
        if short:
            raise ValueError(
                f"not a cover: {short} of {len(counts)} {t}-subsets lie in fewer than {m} blocks"
            )
        if self.exact and any(c != m for c in counts.values()):
            raise ValueError("exact flag set but some subset is covered more than m times")

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)


def greedy_cover(d: int, k: int, t: int, m: int) -> CoverFamily:
    """Build a (d, k, t, m) cover by the greedy deficiency rule.

    Repeatedly adds the unused block that covers the most residual
    deficiency (t-subsets still needing more coverage), breaking ties
    toward the smallest block code.  The result is verified but usually
    not exact.
    """
    if not 0 <= t < k <= d:
        raise ValueError(f"need 0 <= t < k <= d, got k={k}, t={t}, d={d}")
    if d > MAX_DIMENSION:
        raise ValueError(f"ground set size d={d} exceeds the cap {MAX_DIMENSION}")
    if m < 1:
        raise ValueError(f"multiplicity m={m} must be at least 1")
    per_subset = math.comb(d - t, k - t)
    if m > per_subset:
        raise ValueError(
            f"infeasible: a {t}-subset lies in only C({d - t},{k - t}) = {per_subset} blocks, "
            f"fewer than m={m}"
        )
    n_blocks = math.comb(d, k)
    if n_blocks > GREEDY_ENUMERATION_GUARD:
        raise ValueError(f"C({d},{k}) = {n_blocks} exceeds the enumeration guard")
    if n_blocks * math.comb(k, t) > GREEDY_WORK_GUARD:
        raise ValueError("cover instance too large for the greedy builder")

    tsubs = _codes_of_weight(d, t)
    index = {code: i for i, code in enumerate(tsubs)}
    blocks = _codes_of_weight(d, k)
    block_cov = [tuple(index[c] for c in _subset_codes(b, t)) for b in blocks]

    deficiency = [m] * len(tsubs)
    remaining = m * len(tsubs)
    used = [False] * len(blocks)
    chosen: list[int] = []
    while remaining > 0:
        best_gain = 0
        best_bi = -1
        for bi, cov in enumerate(block_cov):
            if used[bi]:
                continue
            gain = 0
            for ti in cov:
                if deficiency[ti] > 0:
                    gain += 1
            if gain > best_gain:
                best_gain = gain
                best_bi = bi
        # Feasibility (m <= C(d-t, k-t)) guarantees an unused block with
        # positive gain exists while any deficiency remains.
        assert best_gain > 0
        used[best_bi] = True
        chosen.append(blocks[best_bi])
        for ti in block_cov[best_bi]:
            if deficiency[ti] > 0:
                deficiency[ti] -= 1
                remaining -= 1

    counts = coverage_counts(d, t, chosen)
    is_exact = all(c == m for c in counts.values())
    return CoverFamily(d, k, t, m, tuple(chosen), exact=is_exact)


def exact_cover_search(d: int, k: int, t: int) -> Optional[CoverFamily]:
    """Find a cover where every t-subset lies in exactly one block.

    Exhaustive backtracking: always branches on the uncovered t-subset of
    smallest code and tries its candidate blocks in ascending code order,
    so the first solution found is deterministic and a ``None`` return
    certifies that no exact cover exists.
    """
    if not 0 <= t < k <= d:
        raise ValueError(f"need 0 <= t < k <= d, got k={k}, t={t}, d={d}")
    if d > MAX_DIMENSION:
        raise ValueError(f"ground set size d={d} exceeds the cap {MAX_DIMENSION}")
    n_tsubs = math.comb(d, t)
    if n_tsubs > EXACT_SEARCH_GUARD:
        raise ValueError(
            f"search space too large: C({d},{t}) = {n_tsubs} exceeds {EXACT_SEARCH_GUARD}"
        )

    tsubs = _codes_of_weight(d, t)
    index = {code: i for i, code in enumerate(tsubs)}
    blocks = _codes_of_weight(d, k)
    block_cov = [tuple(index[c] for c in _subset_codes(b, t)) for b in blocks]
    containing: list[list[int]] = [[] for _ in tsubs]
    for bi, cov in enumerate(block_cov):
        for ti in cov:
            containing[ti].append(bi)

    covered = bytearray(len(tsubs))
    chosen: list[int] = []

    def extend() -> bool:
        target = -1
        for ti in range(len(tsubs)):
            if not covered[ti]:
                target = ti
                break
        if target < 0:
            return True
        for bi in containing[target]:
            cov = block_cov[bi]
            if any(covered[ti] for ti in cov):
                continue
            for ti in cov:
                covered[ti] = 1
            chosen.append(blocks[bi])
            if extend():
                return True
            chosen.pop()
            for ti in cov:
                covered[ti] = 0
        return False

    if extend():
        return CoverFamily(d, k, t, 1, tuple(chosen), exact=True)
    return None
