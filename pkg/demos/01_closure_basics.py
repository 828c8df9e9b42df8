"""Infection dynamics on a small hypercube, step by step.

A vertex of the d-cube becomes infected once at least r of its d
neighbors are infected, and never recovers.  This script seeds three
vertices of the 3-cube and watches the infection spread to the whole
cube, then shows a seed that stalls.
"""

from percube import VertexSet, closure, make_config, step

cfg = make_config(3, 2)
print(f"cube dimension {cfg.d}, threshold {cfg.r}, {cfg.n_vertices} vertices")

seed = VertexSet.from_codes(3, [0, 3, 5])
print(f"\nseed codes: {list(seed.codes())}")

current = seed
for round_no in range(1, 5):
    nxt = step(current, cfg)
    if nxt == current:
        print(f"round {round_no}: fixpoint reached")
        break
    newly = sorted(set(nxt.codes()) - set(current.codes()))
    print(f"round {round_no}: {current.size} -> {nxt.size} infected, new codes {newly}")
    current = nxt

trace = closure(seed, cfg)
print(f"\nclosure trace sizes: {list(trace.sizes)}")
print(f"percolated: {trace.percolated} after {trace.rounds} rounds")

# Two antipodal vertices are not enough at threshold 2: every healthy
# vertex sees at most one infected neighbor, so nothing ever ignites.
stuck = VertexSet.from_codes(3, [0, 7])
trace = closure(stuck, cfg)
print(f"\nseed {list(stuck.codes())} stalls at {trace.final_set.size} of {cfg.n_vertices} vertices")
