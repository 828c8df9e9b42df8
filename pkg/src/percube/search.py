"""Reward-guided stochastic local search for small percolating sets.

A candidate set S is scored by ``reward(S) = -|S| + 2 * (|closure(S)| -
2^d)``.  The second term is zero exactly when S percolates and a steep
penalty otherwise, so among percolating sets the reward is just the
negated size and any percolating set outranks any non-percolating one of
within-penalty size.  A sweep walks the vertex codes in order, proposes
random membership flips, and keeps a flip only when it strictly improves
the reward.  A bounded pool of the best candidates found so far feeds the
next round of sweeps.

Determinism: every sweep draws from its own ``random.Random`` stream
derived from the search seed and the global sweep ordinal, and pool
insertion is serialized in the driving process.  Running with more
workers changes wall time, never results.
"""

from __future__ import annotations

import bisect
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from .cube import PercConfig, VertexSet, require_conforming
from .percolation import closure_mask

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SearchParams:
    """Tunable knobs for sweeps and pool management.

    ``forced`` vertices are pinned members: they must be present in every
    candidate and are never offered for flipping.  ``forbidden`` vertices
    are never offered either, but their membership is left as given.
    ``stall_limit`` ends the search after that many consecutive sweeps
    without an improvement of the best pooled reward; ``None`` disables
    the stall cutoff.
    """

    flip_probability: float = 0.30
    forbidden: frozenset[int] = field(default_factory=frozenset)
    forced: frozenset[int] = field(default_factory=frozenset)
    stall_limit: Optional[int] = 200
    pool_capacity: int = 100
    rng_seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        object.__setattr__(self, "forced", frozenset(self.forced))
        if not 0.0 <= self.flip_probability <= 1.0:
            raise ValueError("flip_probability must lie in [0, 1]")
        if self.forbidden & self.forced:
            raise ValueError("forbidden and forced vertex sets overlap")
        if self.stall_limit is not None and self.stall_limit < 1:
            raise ValueError("stall_limit must be at least 1 (or None)")
        if self.pool_capacity < 1:
            raise ValueError("pool_capacity must be at least 1")
        if not isinstance(self.rng_seed, int):
            raise TypeError("rng_seed must be an integer")


def reward(candidate: VertexSet, cfg: PercConfig) -> int:
    """Score of a candidate; equal to ``-len(candidate)`` iff it percolates."""
    require_conforming(candidate, cfg)
    closed = closure_mask(candidate.mask, cfg)
    return -candidate.size + 2 * (closed.bit_count() - cfg.n_vertices)


@dataclass(frozen=True)
class PoolEntry:
    vset: VertexSet
    reward: int


class SearchDatabase:
    """Bounded pool of the best distinct candidates seen so far.

    Entries are kept sorted by reward (descending), breaking ties toward
    smaller sets and then lexicographically by member codes, so iteration
    order and eviction are deterministic.  Identical sets are stored once.
    """

    def __init__(self, cfg: PercConfig, capacity: int = 100) -> None:
        if capacity < 1:
            raise ValueError("capacity must be at least 1")
        self.cfg = cfg
        self.capacity = capacity
        self._entries: list[PoolEntry] = []
        self._keys: list[tuple] = []
        self._masks: set[int] = set()

    def insert(self, candidate: VertexSet) -> bool:
        """Add a copy of ``candidate``; returns True when it is retained.

        A duplicate of a stored set is ignored, and an entry that lands
        past the capacity cutoff is dropped immediately.
        """
        require_conforming(candidate, self.cfg)
        if candidate.mask in self._masks:
            return False
        stored = candidate.copy()
        rew = reward(stored, self.cfg)
        key = (-rew, stored.size, tuple(stored.codes()))
        i = bisect.bisect_left(self._keys, key)
        self._entries.insert(i, PoolEntry(stored, rew))
        self._keys.insert(i, key)
        self._masks.add(stored.mask)
        if len(self._entries) > self.capacity:
            dropped = self._entries.pop()
            self._keys.pop()
            self._masks.discard(dropped.vset.mask)
            if dropped.vset.mask == stored.mask:
                return False
        return True

    @property
    def best(self) -> PoolEntry:
        if not self._entries:
            raise ValueError("database is empty")
        return self._entries[0]

    @property
    def entries(self) -> tuple[PoolEntry, ...]:
        """Snapshot in rank order.  Treat the contained sets as read-only."""
        return tuple(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[PoolEntry]:
        return iter(self._entries)

    def __contains__(self, candidate: VertexSet) -> bool:
        return candidate.mask in self._masks


def derive_stream_seed(seed: int, ordinal: int) -> int:
    """Seed for the RNG stream of sweep number ``ordinal`` (64-bit mix)."""
    x = (seed + (ordinal + 1) * 0x9E3779B97F4A7C15) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


def sweep(
    candidate: VertexSet, cfg: PercConfig, params: SearchParams, rng: random.Random
) -> VertexSet:
    """One greedy pass of randomized single-vertex flips over a candidate.

    Visits every vertex code in ascending order; each code outside
    ``forced`` and ``forbidden`` is proposed for flipping with probability
    ``flip_probability``, and a proposed flip is kept only when it
    strictly increases the reward.  The input set is not modified.
    """
    require_conforming(candidate, cfg)
    n = cfg.n_vertices
    for v in params.forbidden | params.forced:
        if not 0 <= v < n:
            raise ValueError(f"pinned vertex code {v} out of range for Q_{cfg.d}")
    for v in params.forced:
        if v not in candidate:
            raise ValueError(f"forced vertex {v} missing from the candidate")
    skip = params.forbidden | params.forced
    cur = candidate.copy()
    closed = closure_mask(cur.mask, cfg)
    cur_rew = -cur.size + 2 * (closed.bit_count() - n)
    cur_perc = closed == cfg.full_mask
    p = params.flip_probability
    for code in range(n):
        if code in skip:
            continue
        if rng.random() >= p:
            continue
        adding = code not in cur
        if adding and cur_perc:
            # Growing a percolating set drops the reward by exactly 1.
            continue
        cur.toggle(code)
        closed = closure_mask(cur.mask, cfg)
        new_rew = -cur.size + 2 * (closed.bit_count() - n)
        if new_rew > cur_rew:
            cur_rew = new_rew
            cur_perc = closed == cfg.full_mask
        else:
            cur.toggle(code)
    return cur


def random_start(cfg: PercConfig, rng: Optional[random.Random] = None) -> VertexSet:
    """Starting candidate for a fresh search: the full vertex set.

    The full cube trivially percolates, so the search begins inside the
    feasible region and sweeps carve it down.  ``rng`` is accepted for
    signature stability but the start is deterministic.
    """
    return VertexSet.full(cfg.d)


def _sweep_task(d: int, r: int, mask: int, params: SearchParams, stream_seed: int) -> int:
    cfg = PercConfig(d, r)
    result = sweep(VertexSet(d, mask), cfg, params, random.Random(stream_seed))
    return result.mask


def _run_batch(
    sets: list[VertexSet],
    cfg: PercConfig,
    params: SearchParams,
    base_ordinal: int,
    executor: Optional[ProcessPoolExecutor],
) -> list[VertexSet]:
    seeds = [derive_stream_seed(params.rng_seed, base_ordinal + i) for i in range(len(sets))]
    if executor is None:
        return [
            sweep(s, cfg, params, random.Random(seed)) for s, seed in zip(sets, seeds)
        ]
    futures = [
        executor.submit(_sweep_task, cfg.d, cfg.r, s.mask, params, seed)
        for s, seed in zip(sets, seeds)
    ]
    return [VertexSet(cfg.d, f.result()) for f in futures]


def local_search(
    db: SearchDatabase,
    cfg: PercConfig,
    params: SearchParams,
    *,
    max_sweeps: Optional[int] = None,
    max_seconds: Optional[float] = None,
    jobs: int = 1,
    on_sweep: Optional[Callable[[int, int], None]] = None,
) -> SearchDatabase:
    """Drive sweeps from the pool until a budget or the stall cutoff hits.

    Runs in passes: each pass snapshots the pool, sweeps every snapshot
    entry with its own derived RNG stream (in parallel when ``jobs > 1``),
    then merges results back in sweep order.  Because a sweep depends only
    on its snapshot entry and its stream, the outcome is identical for any
    ``jobs`` value.  ``on_sweep(ordinal, best_reward)`` is called after
    each merged sweep.  Returns ``db``, which is modified in place.
    """
    if db.cfg != cfg:
        raise ValueError("database configuration does not match cfg")
    if len(db) == 0:
        raise ValueError("search database is empty; seed it with at least one candidate")
    if max_sweeps is not None and max_sweeps < 0:
        raise ValueError("max_sweeps must be non-negative")
    if max_seconds is not None and max_seconds < 0:
        raise ValueError("max_seconds must be non-negative")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")

    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        ordinal = 0
        stall = 0
        best = db.best.reward
        while True:
            if max_sweeps is not None and ordinal >= max_sweeps:
                break
            if deadline is not None and time.monotonic() >= deadline:
                break
            batch = [e.vset for e in db.entries]
            if max_sweeps is not None:
                batch = batch[: max_sweeps - ordinal]
            results = _run_batch(batch, cfg, params, ordinal, executor)
            stop = False
            for res in results:
                db.insert(res)
                now_best = db.best.reward
                if now_best > best:
                    best = now_best
                    stall = 0
                else:
                    stall += 1
                if on_sweep is not None:
                    on_sweep(ordinal, best)
                ordinal += 1
                if params.stall_limit is not None and stall >= params.stall_limit:
                    stop = True
                    break
                if deadline is not None and time.monotonic() >= deadline:
                    stop = True
                    break
            if stop:
                break
    finally:
        if executor is not None:
            executor.shutdown()
    return db


def refine(
    candidates: Iterable[VertexSet],
    cfg: PercConfig,
    params: SearchParams,
    *,
    max_sweeps: Optional[int] = None,
    max_seconds: Optional[float] = None,
    jobs: int = 1,
    on_sweep: Optional[Callable[[int, int], None]] = None,
) -> SearchDatabase:
    """Pool up externally supplied candidates and improve them in place."""
    db = SearchDatabase(cfg, capacity=params.pool_capacity)
    count = 0
    for cand in candidates:
        db.insert(cand)
        count += 1
    if count == 0:
        raise ValueError("refine needs at least one candidate")
    return local_search(
        db,
        cfg,
        params,
        max_sweeps=max_sweeps,
        max_seconds=max_seconds,
        jobs=jobs,
        on_sweep=on_sweep,
    )
