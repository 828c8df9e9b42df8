"""Serialization formats, corpus and trace export, and set summaries.

Two text formats are spoken here.

Tuple format: a bracketed list of parenthesized 0/1 tuples, one tuple per
vertex, uniform arity d, entry i holding coordinate i (bit i-1 of the
code).  Whitespace between tokens is free, duplicates collapse, and the
dimension is inferred from the first tuple.  Malformed input raises
:class:`ParseError` carrying the character offset.

Line format: one set per line; each member is a d-character 0/1 word
(coordinate 1 first), members sorted by ascending code and joined by
single spaces; a blank line is the empty set.  Writing is bit-exact and
deterministic.  Reading is tolerant: tokens that are not exactly d
characters of 0/1 are dropped and counted, never fatal.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Union

from .cube import MAX_DIMENSION, PercConfig, VertexSet, require_conforming
from .percolation import ClosureTrace, closure, percolates
from .search import SearchDatabase

PathLike = Union[str, "os.PathLike[str]"]


class ParseError(ValueError):
    """Rejected input, with the character offset of the offending token."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at offset {position})")
        self.position = position


@dataclass(frozen=True)
class SetReport:
    """Summary of one candidate set under one configuration.

    ``rounds`` counts the growth rounds of the closure (0 for a fixed
    point); ``total_steps`` is the 1-based count of distinct infected-set
    states, so ``total_steps == rounds + 1`` always.
    """

    d: int
    r: int
    size: int
    percolates: bool
    rounds: int
    total_steps: int
    independent: bool
    trace_sizes: tuple[int, ...]


def independence_check(s: VertexSet, cfg: PercConfig) -> bool:
    """True iff no two members are adjacent (Hamming distance 1)."""
    require_conforming(s, cfg)
    m = s.mask
    for shift, low_half in cfg.axis_masks:
        # Any member whose axis-i neighbor is also a member shows up here.
        if ((m >> shift) & low_half) & m:
            return False
    return True


_TOKEN = re.compile(r"\d+|\S")


def parse_tuple_format(text: str) -> VertexSet:
    """Parse the tuple format; the dimension is inferred from the text."""
    tokens = _TOKEN.finditer(text)
    toks: list[tuple[str, int]] = [(m.group(), m.start()) for m in tokens]
    end = len(text)
    i = 0

    def fail(message: str, at: int) -> None:
        raise ParseError(message, at)

    if not toks or toks[0][0] != "[":
        fail("expected '[' to open the list", toks[0][1] if toks else end)
    i = 1
    if i >= len(toks):
        fail("unterminated list", end)
    if toks[i][0] == "]":
        fail("empty list", toks[i][1])

    arity: int | None = None
    mask = 0
    while True:
        tok, at = toks[i] if i < len(toks) else (None, end)
        if tok != "(":
            fail(f"expected '(' to open a tuple, found {tok!r}", at)
        tuple_at = at
        i += 1
        entries: list[int] = []
        while True:
            tok, at = toks[i] if i < len(toks) else (None, end)
            if tok is None:
                fail("unterminated tuple", end)
            if tok == ")":
                if not entries:
                    fail("empty tuple", at)
                i += 1
                break
            if tok == ",":
                fail("expected an entry before ','", at)
            if not tok.isdigit():
                fail(f"unexpected character {tok!r} in tuple", at)
            if tok not in ("0", "1"):
                fail(f"non-binary entry {tok!r}", at)
            entries.append(int(tok))
            i += 1
            tok, at = toks[i] if i < len(toks) else (None, end)
            if tok is None:
                fail("unterminated tuple", end)
            if tok == ",":
                i += 1
                continue
            if tok == ")":
                i += 1
                break
            fail(f"expected ',' or ')' after an entry, found {tok!r}", at)
        if arity is None:
            arity = len(entries)
            if arity > MAX_DIMENSION:
                fail(f"tuple arity {arity} exceeds the dimension cap {MAX_DIMENSION}", tuple_at)
        elif len(entries) != arity:
            fail(f"ragged arity: expected {arity} entries, found {len(entries)}", tuple_at)
        code = 0
        for bit, e in enumerate(entries):
            if e:
                code |= 1 << bit
        mask |= 1 << code
        tok, at = toks[i] if i < len(toks) else (None, end)
        if tok is None:
            fail("unterminated list; expected ',' or ']'", end)
        if tok == ",":
            i += 1
            continue
        if tok == "]":
            i += 1
            break
        fail(f"expected ',' or ']' after a tuple, found {tok!r}", at)
    if i < len(toks):
        fail(f"unexpected trailing content {toks[i][0]!r}", toks[i][1])
    return VertexSet(arity, mask)


def emit_tuple_format(s: VertexSet) -> str:
    """Render a non-empty set in the tuple format (inverse of the parser)."""
    if s.size == 0:
        raise ValueError("the empty set has no tuple-format rendering")
    parts = []
    for code in s.codes():
        parts.append("(" + ", ".join(str((code >> i) & 1) for i in range(s.d)) + ")")
    return "[" + ", ".join(parts) + "]"


def emit_training_line(s: VertexSet) -> str:
    """One line-format record; bit-exact contract used by the corpus files."""
    words = []
    for code in s.codes():
        words.append("".join("1" if (code >> i) & 1 else "0" for i in range(s.d)))
    return " ".join(words) + "\n"


def parse_candidate_line(line: str, cfg: PercConfig) -> tuple[VertexSet, int]:
    """Tolerant line-format reader: (set, count of dropped tokens)."""
    mask = 0
    dropped = 0
    d = cfg.d
    for tok in line.split():
        if len(tok) == d and not tok.strip("01"):
            # Coordinate 1 is printed first, so the code reads reversed.
            mask |= 1 << int(tok[::-1], 2)
        else:
            dropped += 1
    return VertexSet(d, mask), dropped


def export_corpus(db: SearchDatabase, size_window: tuple[int, int], path: PathLike) -> int:
    """Write percolating pool entries within the size window; returns count.

    Each written entry is re-verified with the engine, so the produced
    corpus never contains a non-percolating set.
    """
    lo, hi = size_window
    if lo > hi:
        raise ValueError(f"empty size window: lo={lo} > hi={hi}")
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for entry in db.entries:
            s = entry.vset
            if not lo <= s.size <= hi:
                continue
            if not percolates(s, db.cfg):
                continue
            fh.write(emit_training_line(s))
            count += 1
    return count


def export_trace(trace: ClosureTrace, path: PathLike) -> None:
    """Write the closure history as CSV with header ``step,infected``.

    Steps are numbered from 1 (the initial set), one row per recorded
    state, LF line endings.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("step,infected\n")
        for step_no, infected in enumerate(trace.sizes, start=1):
            fh.write(f"{step_no},{infected}\n")


def summarize(s: VertexSet, cfg: PercConfig) -> SetReport:
    """Closure plus independence in one report."""
    require_conforming(s, cfg)
    tr = closure(s, cfg)
    return SetReport(
        d=cfg.d,
        r=cfg.r,
        size=s.size,
        percolates=tr.percolated,
        rounds=tr.rounds,
        total_steps=tr.rounds + 1,
        independent=independence_check(s, cfg),
        trace_sizes=tr.sizes,
    )
