"""Vertices and vertex sets of the d-dimensional hypercube.

A vertex of Q_d is encoded as an integer in [0, 2^d) whose bit i holds
coordinate i.  Two vertices are adjacent when their codes differ in exactly
one bit.  Sets of vertices are stored bit-densely: a single arbitrary
precision integer in which bit v records membership of the vertex with
code v.  At the dimension cap of 26 a set occupies 2^26 bits, which is
8 MiB, and every set operation stays a handful of wide integer ops.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

MAX_DIMENSION = 26

VertexId = int


@dataclass(frozen=True)
class PercConfig:
    """Problem instance: dimension ``d`` and infection threshold ``r``.

    Immutable and hashable, so it can key caches.  Derived quantities
    (vertex count, per-axis shift masks) are computed lazily and cached
    on first use.
    """

    d: int
    r: int

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or not isinstance(self.r, int):
            raise TypeError("d and r must be integers")
        if not 1 <= self.d <= MAX_DIMENSION:
            raise ValueError(
                f"dimension d={self.d} out of range: need 1 <= d <= {MAX_DIMENSION}"
            )
        if not 1 <= self.r <= self.d:
            raise ValueError(f"threshold r={self.r} out of range: need 1 <= r <= d={self.d}")

    @property
    def n_vertices(self) -> int:
        return 1 << self.d

    @cached_property
    def full_mask(self) -> int:
        """Membership mask with every vertex present (2^d one bits)."""
        return (1 << self.n_vertices) - 1

    @cached_property
    def axis_masks(self) -> tuple[tuple[int, int], ...]:
        """Per-coordinate ``(shift, low_half)`` pairs for neighbor shifts.

        For axis i, ``low_half`` marks the vertex codes whose bit i is 0.
        Shifting a membership mask by ``shift = 2^i`` under this mask moves
        every vertex across axis i in one direction; the two directions
        together enumerate all neighbors along that axis.
        """
        n = self.n_vertices
        out = []
        for i in range(self.d):
            shift = 1 << i
            m = (1 << shift) - 1
            width = 2 * shift
            while width < n:
                m |= m << width
                width <<= 1
            out.append((shift, m))
        return tuple(out)


def make_config(d: int, r: int) -> PercConfig:
    """Validated constructor for :class:`PercConfig`."""
    return PercConfig(d, r)


class VertexSet:
    """Mutable subset of the vertices of Q_d.

    Carries its own dimension; operations that combine a set with a
    :class:`PercConfig` check that the dimensions agree.  Membership lives
    in ``mask`` (bit v set iff vertex v is in the set) and the popcount is
    cached and maintained incrementally.
    """

    __slots__ = ("d", "_mask", "_size")

    def __init__(self, d: int, mask: int = 0) -> None:
        if not 1 <= d <= MAX_DIMENSION:
            raise ValueError(f"dimension d={d} out of range: need 1 <= d <= {MAX_DIMENSION}")
        if mask < 0:
            raise ValueError("membership mask must be non-negative")
        if mask >> (1 << d):
            raise ValueError(f"membership mask has bits beyond the 2^{d} vertices of Q_{d}")
        self.d = d
        self._mask = mask
        self._size = mask.bit_count()

    @classmethod
    def empty(cls, d: int) -> "VertexSet":
        return cls(d, 0)

    @classmethod
    def full(cls, d: int) -> "VertexSet":
        return cls(d, (1 << (1 << d)) - 1)

    @classmethod
    def from_codes(cls, d: int, codes: Iterable[VertexId]) -> "VertexSet":
        mask = 0
        limit = 1 << d
        for c in codes:
            if not 0 <= c < limit:
                raise ValueError(f"vertex code {c} out of range for Q_{d}")
            mask |= 1 << c
        return cls(d, mask)

    @property
    def mask(self) -> int:
        return self._mask

    @property
    def size(self) -> int:
        return self._size

    def __len__(self) -> int:
        return self._size

    def __bool__(self) -> bool:
        return self._mask != 0

    def __contains__(self, code: VertexId) -> bool:
        return 0 <= code < (1 << self.d) and (self._mask >> code) & 1 == 1

    def _check_code(self, code: VertexId) -> None:
        if not 0 <= code < (1 << self.d):
            raise ValueError(f"vertex code {code} out of range for Q_{self.d}")

    def add(self, code: VertexId) -> None:
        self._check_code(code)
        bit = 1 << code
        if not self._mask & bit:
            self._mask |= bit
            self._size += 1

    def remove(self, code: VertexId) -> None:
        """Remove ``code``; raises :class:`KeyError` if absent."""
        self._check_code(code)
        bit = 1 << code
        if not self._mask & bit:
            raise KeyError(code)
        self._mask ^= bit
        self._size -= 1

    def discard(self, code: VertexId) -> None:
        self._check_code(code)
        bit = 1 << code
        if self._mask & bit:
            self._mask ^= bit
            self._size -= 1

    def toggle(self, code: VertexId) -> bool:
        """Flip membership of ``code``; returns True when it is now present."""
        self._check_code(code)
        bit = 1 << code
        self._mask ^= bit
        if self._mask & bit:
            self._size += 1
            return True
        self._size -= 1
        return False

    def codes(self) -> Iterator[VertexId]:
        """Member codes in ascending order."""
        m = self._mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def copy(self) -> "VertexSet":
        return VertexSet(self.d, self._mask)

    def conforms_to(self, cfg: PercConfig) -> bool:
        return self.d == cfg.d

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.d == other.d and self._mask == other._mask

    def __hash__(self) -> int:
        return hash((self.d, self._mask))

    def __repr__(self) -> str:
        if self._size <= 12:
            body = "{" + ", ".join(str(c) for c in self.codes()) + "}"
        else:
            body = f"<{self._size} vertices>"
        return f"VertexSet(d={self.d}, {body})"


def require_conforming(s: VertexSet, cfg: PercConfig) -> None:
    """Raise unless ``s`` lives on the same cube as ``cfg``."""
    if not s.conforms_to(cfg):
        raise ValueError(f"vertex set on Q_{s.d} does not match configuration d={cfg.d}")


def neighbors(code: VertexId, cfg: PercConfig) -> list[VertexId]:
    """The d codes adjacent to ``code``, in axis order."""
    if not 0 <= code < cfg.n_vertices:
        raise ValueError(f"vertex code {code} out of range for Q_{cfg.d}")
    return [code ^ (1 << i) for i in range(cfg.d)]


def weight(code: VertexId) -> int:
    """Number of 1 coordinates of a vertex code."""
    if code < 0:
        raise ValueError("vertex code must be non-negative")
    return code.bit_count()


def vertices_of_weight(k: int, cfg: PercConfig) -> Iterator[VertexId]:
    """All codes of Hamming weight ``k`` in Q_d, in ascending order.

    Uses the standard bit trick for stepping to the next integer with the
    same popcount, so enumeration is constant work per vertex.
    """
    if not 0 <= k <= cfg.d:
        raise ValueError(f"weight k={k} out of range: need 0 <= k <= d={cfg.d}")
    if k == 0:
        yield 0
        return
    v = (1 << k) - 1
    limit = cfg.n_vertices
    while v < limit:
        yield v
        low = v & -v
        ripple = v + low
        v = ripple | (((v ^ ripple) >> 2) // low)


def random_vertex_set(d: int, density: float, rng: random.Random) -> VertexSet:
    """Sample each vertex independently with probability ``density``."""
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    mask = 0
    for v in range(1 << d):
        if rng.random() < density:
            mask |= 1 << v
    return VertexSet(d, mask)
