"""The two on-disk formats and the corpus export pipeline.

Vertex sets travel either as a tuple list (one set per file, human
readable) or as training lines (one set per line, fixed-width binary
words).  The corpus exporter filters a search pool by size window and
re-verifies percolation before writing anything.
"""

import tempfile
from pathlib import Path

from percube import (
    SearchDatabase,
    SearchParams,
    VertexSet,
    closure,
    emit_training_line,
    emit_tuple_format,
    export_corpus,
    export_trace,
    local_search,
    make_config,
    parse_candidate_line,
    parse_tuple_format,
    random_start,
)

cfg = make_config(4, 2)
s = VertexSet.from_codes(4, [0, 5, 10, 15])

# Tuple format: coordinate tuples, least significant axis first.
text = emit_tuple_format(s)
print(f"tuple format of codes {list(s.codes())}:\n  {text}")
assert parse_tuple_format(text) == s

# Line format: one d-character binary word per member.
line = emit_training_line(s)
print(f"line format:\n  {line!r}")
back, dropped = parse_candidate_line(line, cfg)
assert back == s and dropped == 0

# Parsing lines is deliberately tolerant: malformed words are dropped
# and counted instead of aborting the whole line.
noisy = "0000 1x10 0101 001\n"
back, dropped = parse_candidate_line(noisy, cfg)
print(f"\nnoisy line {noisy!r} -> codes {list(back.codes())}, {dropped} words dropped")

# A small search, then a corpus export of every percolating set whose
# size falls inside a window.
params = SearchParams(rng_seed=3, stall_limit=60)
db = SearchDatabase(cfg, capacity=params.pool_capacity)
db.insert(random_start(cfg))
local_search(db, cfg, params, max_sweeps=200)

with tempfile.TemporaryDirectory() as tmp:
    corpus_path = Path(tmp) / "corpus.txt"
    written = export_corpus(db, (1, 8), corpus_path)
    lines = corpus_path.read_text(encoding="utf-8").splitlines()
    print(f"\nexported {written} percolating sets of size 1..8")
    for ln in lines[:3]:
        print(f"  {ln}")

    # Infection traces land in a two-column CSV.
    trace_path = Path(tmp) / "trace.csv"
    export_trace(closure(db.best.vset, cfg), trace_path)
    print(f"\ntrace of the best set:\n{trace_path.read_text(encoding='utf-8')}")
