"""r-neighbor bootstrap dynamics on the hypercube.

An infected set grows in synchronous rounds: a healthy vertex becomes
infected as soon as at least r of its d neighbors are infected, and
infection is permanent.  ``step`` applies one round, ``closure`` iterates
to the fixed point, ``percolates`` asks whether the fixed point is the
whole cube.

The engine is bit-parallel.  One round on a membership mask costs d
masked shifts to enumerate neighbors, a carry-save accumulation of the d
neighbor indicators into ceil(log2(d+1)) bit planes, and a bit-sliced
comparison of those planes against r.  Every operation is a wide integer
op on the 2^d-bit mask, so no per-vertex Python loop runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cube import PercConfig, VertexSet, require_conforming


def _neighbor_count_planes(mask: int, cfg: PercConfig) -> list[int]:
    """Binary counter planes of per-vertex infected-neighbor counts.

    Plane j holds bit j of the count, so a vertex's count is read across
    planes.  Built with a carry-save adder: each axis contributes one
    indicator mask that ripples through the planes.
    """
    planes: list[int] = []
    for shift, low_half in cfg.axis_masks:
        carry = ((mask >> shift) & low_half) | ((mask & low_half) << shift)
        for j in range(len(planes)):
            if not carry:
                break
            both = planes[j] & carry
            planes[j] ^= carry
            carry = both
        if carry:
            planes.append(carry)
    return planes


def _at_least_r(planes: list[int], cfg: PercConfig) -> int:
    """Mask of vertices whose plane-encoded count is >= r.

    Bit-sliced magnitude comparison, most significant plane first: ``ge``
    collects vertices already strictly above r on some higher bit, ``eq``
    tracks those still tied with r's prefix.
    """
    r = cfg.r
    width = max(len(planes), r.bit_length())
    ge = 0
    eq = cfg.full_mask
    for j in range(width - 1, -1, -1):
        plane = planes[j] if j < len(planes) else 0
        if (r >> j) & 1:
            eq &= plane
        else:
            ge |= eq & plane
            eq &= ~plane & cfg.full_mask
    return ge | eq


def step_mask(mask: int, cfg: PercConfig) -> int:
    """One synchronous round applied to a raw membership mask."""
    planes = _neighbor_count_planes(mask, cfg)
    return mask | _at_least_r(planes, cfg)


def step(current: VertexSet, cfg: PercConfig) -> VertexSet:
    """Infected set after one round.  Monotone: the input is a subset."""
    require_conforming(current, cfg)
    return VertexSet(cfg.d, step_mask(current.mask, cfg))


def step_reference(current: VertexSet, cfg: PercConfig) -> VertexSet:
    """Per-vertex reference for ``step``; slow but directly readable."""
    require_conforming(current, cfg)
    mask = current.mask
    out = mask
    for v in range(cfg.n_vertices):
        if (mask >> v) & 1:
            continue
        count = sum((mask >> (v ^ (1 << i))) & 1 for i in range(cfg.d))
        if count >= cfg.r:
            out |= 1 << v
    return VertexSet(cfg.d, out)


def closure_mask(mask: int, cfg: PercConfig) -> int:
    """Fixed point of ``step_mask`` starting from ``mask``."""
    while True:
        nxt = step_mask(mask, cfg)
        if nxt == mask:
            return mask
        mask = nxt


@dataclass(frozen=True)
class ClosureTrace:
    """Full record of one run to the fixed point.

    ``sizes[t]`` is the number of infected vertices after t rounds, with
    ``sizes[0]`` the initial size and ``sizes[-1]`` the final size.
    ``rounds`` counts the strictly growing steps, so ``len(sizes) ==
    rounds + 1``.
    """

    sizes: tuple[int, ...]
    final_set: VertexSet
    percolated: bool
    rounds: int


def closure(initial: VertexSet, cfg: PercConfig) -> ClosureTrace:
    """Run rounds until nothing new gets infected and record the history."""
    require_conforming(initial, cfg)
    mask = initial.mask
    sizes = [mask.bit_count()]
    while True:
        nxt = step_mask(mask, cfg)
        if nxt == mask:
            break
        mask = nxt
        sizes.append(mask.bit_count())
    final = VertexSet(cfg.d, mask)
    return ClosureTrace(
        sizes=tuple(sizes),
        final_set=final,
        percolated=mask == cfg.full_mask,
        rounds=len(sizes) - 1,
    )


def percolates(initial: VertexSet, cfg: PercConfig) -> bool:
    """Does the closure of ``initial`` reach the entire cube?"""
    require_conforming(initial, cfg)
    return closure_mask(initial.mask, cfg) == cfg.full_mask
