"""Command-line workflow: verify, analyze, search, construct, bound,
oracle, export-corpus, refine, trace.

Exit status contract: 0 on success (and "percolates" for verify), 1 when
verification answers no, 2 for usage or input errors, 3 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import replace
from pathlib import Path

from .analysis import (
    ParseError,
    emit_training_line,
    export_corpus,
    export_trace,
    parse_candidate_line,
    parse_tuple_format,
    summarize,
)
from .constructions import (
    brute_force_min,
    exact_lower_bound,
    three_level_construction,
    two_level_construction,
)
from .covers import exact_cover_search, greedy_cover
from .cube import VertexSet, make_config
from .percolation import closure, percolates
from .search import SearchDatabase, SearchParams, local_search, random_start, refine

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise UsageError(f"--window must be lo:hi, got {text!r}")
    try:
        window = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--window must be lo:hi with integers, got {text!r}") from None
    if window[0] > window[1]:
        raise UsageError(f"--window is empty: {window[0]} > {window[1]}")
    return window


def _search_params(args: argparse.Namespace) -> SearchParams:
    stall = None if args.stall == 0 else args.stall
    try:
        return SearchParams(
            flip_probability=args.flip_prob,
            stall_limit=stall,
            pool_capacity=args.pool,
            rng_seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _require_budget(args: argparse.Namespace) -> None:
    if args.budget_sweeps is None and args.budget_seconds is None:
        raise UsageError("an explicit budget is required: --budget-sweeps or --budget-seconds")
    if args.budget_sweeps is not None and args.budget_sweeps < 0:
        raise UsageError("--budget-sweeps must be non-negative")
    if args.budget_seconds is not None and args.budget_seconds < 0:
        raise UsageError("--budget-seconds must be non-negative")


def _load_single_set(path: str, cfg) -> tuple[VertexSet, int]:
    """Read one set, auto-detecting the format by a leading '['."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"--in: {exc}") from None
    if text.lstrip().startswith("["):
        s = parse_tuple_format(text)
        if s.d != cfg.d:
            raise UsageError(f"--d is {cfg.d} but the input file encodes d={s.d}")
        return s, 0
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) > 1:
        raise UsageError(
            f"--in holds {len(lines)} sets; this command expects exactly one"
        )
    s, dropped = parse_candidate_line(lines[0] if lines else "", cfg)
    return s, dropped


def _load_candidate_lines(path: str, cfg) -> tuple[list[VertexSet], int]:
    """Read a multi-set line-format file (or every file in a directory)."""
    p = Path(path)
    if p.is_dir():
        files = sorted(q for q in p.iterdir() if q.is_file())
        if not files:
            raise UsageError(f"--in directory {path} contains no files")
    else:
        files = [p]
    sets: list[VertexSet] = []
    dropped = 0
    for f in files:
        try:
            text = f.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"--in: {exc}") from None
        for line in text.splitlines():
            s, bad = parse_candidate_line(line, cfg)
            dropped += bad
            if s.size or line.strip() == "":
                sets.append(s)
    return sets, dropped


def _write_pool(db: SearchDatabase, path: str) -> int:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for entry in db.entries:
            fh.write(emit_training_line(entry.vset))
    return len(db)


def _print_optimality(size: int, d: int, r: int) -> None:
    report = exact_lower_bound(d, r)
    if size == report.ceiling:
        print(f"optimal: size {size} equals the exact lower bound {report.ceiling}")


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = make_config(args.d, args.r)
    s, dropped = _load_single_set(args.infile, cfg)
    if dropped:
        print(f"note: dropped {dropped} malformed token(s)", file=sys.stderr)
    ok = percolates(s, cfg)
    print(f"percolates: {'yes' if ok else 'no'}, size {s.size}")
    if ok:
        _print_optimality(s.size, cfg.d, cfg.r)
    return EXIT_OK if ok else EXIT_NO


def _cmd_analyze(args: argparse.Namespace) -> int:
    cfg = make_config(args.d, args.r)
    s, dropped = _load_single_set(args.infile, cfg)
    if dropped:
        print(f"note: dropped {dropped} malformed token(s)", file=sys.stderr)
    rep = summarize(s, cfg)
    print(f"d {rep.d}  r {rep.r}")
    print(f"size {rep.size}")
    print(f"percolates {'yes' if rep.percolates else 'no'}")
    print(f"rounds {rep.rounds}")
    print(f"steps {rep.total_steps}")
    print(f"independent {'yes' if rep.independent else 'no'}")
    print("trace " + ",".join(str(x) for x in rep.trace_sizes))
    if rep.percolates:
        _print_optimality(rep.size, cfg.d, cfg.r)
    if args.outfile:
        export_trace(closure(s, cfg), args.outfile)
        print(f"trace written to {args.outfile}")
    return EXIT_OK


def _cmd_search(args: argparse.Namespace) -> int:
    cfg = make_config(args.d, args.r)
    params = _search_params(args)
    _require_budget(args)
    if args.starts < 1:
        raise UsageError("--starts must be at least 1")
    merged = SearchDatabase(cfg, capacity=params.pool_capacity)
    for i in range(args.starts):
        run_params = replace(params, rng_seed=params.rng_seed + i)
        db = SearchDatabase(cfg, capacity=params.pool_capacity)
        db.insert(random_start(cfg))
        local_search(
            db,
            cfg,
            run_params,
            max_sweeps=args.budget_sweeps,
            max_seconds=args.budget_seconds,
            jobs=args.jobs,
        )
        for entry in db.entries:
            merged.insert(entry.vset)
    best = merged.best
    perc = best.reward == -best.vset.size
    print(
        f"best size {best.vset.size}, reward {best.reward}, "
        f"percolates {'yes' if perc else 'no'}"
    )
    if perc:
        _print_optimality(best.vset.size, cfg.d, cfg.r)
    if args.outfile:
        n = _write_pool(merged, args.outfile)
        print(f"wrote {n} sets to {args.outfile}")
    return EXIT_OK


def _cmd_construct(args: argparse.Namespace) -> int:
    cfg = make_config(args.d, args.r)
    d, r = cfg.d, cfg.r
    if args.construction == "two-level":
        if args.cover == "greedy":
            f1 = greedy_cover(d, r, r - 1, 1)
        else:
            f1 = exact_cover_search(d, r, r - 1)
            if f1 is None:
                raise UsageError(f"no exact (d={d}, k={r}, t={r - 1}) cover exists")
        built = two_level_construction(d, r, f1)
        print(f"cover blocks {f1.n_blocks} (exact {'yes' if f1.exact else 'no'})")
        print(f"level {r - 2} vertices {math.comb(d, r - 2)}")
    else:
        if args.cover != "exact":
            raise UsageError("three-level requires --cover exact (the top cover must be exact)")
        f1 = exact_cover_search(d, r, r - 1)
        if f1 is None:
            raise UsageError(f"no exact (d={d}, k={r}, t={r - 1}) cover exists")
        f2 = greedy_cover(d, r - 1, r - 2, 2)
        counting = math.ceil(2 * math.comb(d, r - 2) / math.comb(r - 1, r - 2))
        built = three_level_construction(d, r, f1, f2)
        print(f"exact cover blocks {f1.n_blocks}")
        print(f"double cover blocks {f2.n_blocks} (counting lower bound {counting})")
        print(f"level {r - 3} vertices {math.comb(d, r - 3)}")
    if not percolates(built, cfg):
        print(
            "internal error: construction output fails to percolate; this is a bug",
            file=sys.stderr,
        )
        return EXIT_INTERNAL
    print(f"size {built.size}, percolates yes")
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(emit_training_line(built))
        print(f"wrote the set to {args.outfile}")
    return EXIT_OK


def _cmd_bound(args: argparse.Namespace) -> int:
    cfg = make_config(args.d, args.r)
    report = exact_lower_bound(cfg.d, cfg.r)
    print(f"{report.exact_value} → {report.ceiling}")
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    cfg = make_config(args.d, args.r)
    limit = cfg.n_vertices if args.size_limit is None else args.size_limit
    minimum, witness = brute_force_min(cfg, limit)
    print(f"minimum {minimum}")
    print("witness " + emit_training_line(witness).rstrip("\n"))
    return EXIT_OK


def _cmd_export_corpus(args: argparse.Namespace) -> int:
    cfg = make_config(args.d, args.r)
    window = _parse_window(args.window)
    sets, dropped = _load_candidate_lines(args.infile, cfg)
    if not sets:
        raise UsageError("--in contained no candidate sets")
    db = SearchDatabase(cfg, capacity=max(1, len(sets)))
    for s in sets:
        db.insert(s)
    written = export_corpus(db, window, args.outfile)
    print(
        f"wrote {written} sets to {args.outfile} "
        f"(candidates {len(sets)}, malformed tokens dropped {dropped})"
    )
    return EXIT_OK


def _cmd_refine(args: argparse.Namespace) -> int:
    cfg = make_config(args.d, args.r)
    params = _search_params(args)
    _require_budget(args)
    sets, dropped = _load_candidate_lines(args.infile, cfg)
    if not sets:
        raise UsageError("--in contained no candidate sets")
    print(f"candidates {len(sets)}, malformed tokens dropped {dropped}")
    db = refine(
        sets,
        cfg,
        params,
        max_sweeps=args.budget_sweeps,
        max_seconds=args.budget_seconds,
        jobs=args.jobs,
    )
    best = db.best
    perc = best.reward == -best.vset.size
    print(
        f"best size {best.vset.size}, reward {best.reward}, "
        f"percolates {'yes' if perc else 'no'}"
    )
    if args.outfile:
        n = _write_pool(db, args.outfile)
        print(f"wrote {n} sets to {args.outfile}")
    return EXIT_OK


def _cmd_trace(args: argparse.Namespace) -> int:
    cfg = make_config(args.d, args.r)
    s, dropped = _load_single_set(args.infile, cfg)
    if dropped:
        print(f"note: dropped {dropped} malformed token(s)", file=sys.stderr)
    tr = closure(s, cfg)
    export_trace(tr, args.outfile)
    print(
        f"steps {tr.rounds + 1}, final {tr.final_set.size}, "
        f"percolates {'yes' if tr.percolated else 'no'}; trace written to {args.outfile}"
    )
    return EXIT_OK


def _add_dims(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, required=True, help="cube dimension")
    p.add_argument("--r", type=int, required=True, help="infection threshold")


def _add_search_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="base RNG seed (default 0)")
    p.add_argument("--budget-sweeps", type=int, default=None, help="sweep budget")
    p.add_argument(
        "--budget-seconds", type=float, default=None, help="wall-clock budget in seconds"
    )
    p.add_argument(
        "--flip-prob", type=float, default=0.30, help="per-vertex flip probability (default 0.30)"
    )
    p.add_argument("--pool", type=int, default=100, help="database capacity (default 100)")
    p.add_argument(
        "--stall",
        type=int,
        default=200,
        help="stop after this many sweeps without improvement; 0 disables (default 200)",
    )
    p.add_argument(
        "--jobs",
        type=int,
        default=_default_jobs(),
        help="parallel sweep workers (default: available cores); results do not depend on it",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="percube",
        description="Bootstrap percolation on hypercubes: verify, search, construct, bound.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check whether an input set percolates")
    _add_dims(p)
    p.add_argument("--in", dest="infile", required=True, help="set file (tuple or line format)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("analyze", help="full report: size, rounds, independence, trace")
    _add_dims(p)
    p.add_argument("--in", dest="infile", required=True, help="set file (tuple or line format)")
    p.add_argument("--out", dest="outfile", default=None, help="optional trace CSV path")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("search", help="multi-start local search from the full cube")
    _add_dims(p)
    _add_search_opts(p)
    p.add_argument(
        "--starts",
        type=int,
        default=1,
        help="independent runs (seeds seed, seed+1, ...); each gets the full budget",
    )
    p.add_argument("--out", dest="outfile", default=None, help="write the pool in line format")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("construct", help="build a cover-based percolating set")
    _add_dims(p)
    p.add_argument(
        "--construction",
        choices=("two-level", "three-level"),
        required=True,
        help="two-level: cover blocks + full level r-2; three-level: exact cover + double cover + full level r-3",
    )
    p.add_argument(
        "--cover",
        choices=("greedy", "exact"),
        default="greedy",
        help="how to build the top cover (default greedy)",
    )
    p.add_argument("--out", dest="outfile", default=None, help="write the set in line format")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("bound", help="exact lower bound on the minimum percolating set size")
    _add_dims(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("oracle", help="exhaustive minimum on tiny cubes (d <= 4)")
    _add_dims(p)
    p.add_argument("--size-limit", type=int, default=None, help="largest size to try")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("export-corpus", help="filter sets into a training corpus")
    _add_dims(p)
    p.add_argument("--in", dest="infile", required=True, help="line-format file or directory")
    p.add_argument("--window", required=True, help="size window lo:hi")
    p.add_argument("--out", dest="outfile", required=True, help="corpus path")
    p.set_defaults(func=_cmd_export_corpus)

    p = sub.add_parser("refine", help="local search seeded from a candidate file")
    _add_dims(p)
    _add_search_opts(p)
    p.add_argument("--in", dest="infile", required=True, help="candidate file (tolerant parse)")
    p.add_argument("--out", dest="outfile", default=None, help="write the pool in line format")
    p.set_defaults(func=_cmd_refine)

    p = sub.add_parser("trace", help="closure trace of an input set to CSV")
    _add_dims(p)
    p.add_argument("--in", dest="infile", required=True, help="set file (tuple or line format)")
    p.add_argument("--out", dest="outfile", required=True, help="trace CSV path")
    p.set_defaults(func=_cmd_trace)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
