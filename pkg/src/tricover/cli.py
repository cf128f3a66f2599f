"""``tricover`` command line.

Exit status: 0 on success or verified coverage, 1 on a coverage failure,
2 on usage or input errors.  Human output goes to stdout, progress to
stderr, JSON only where ``--json PATH`` asks for it (``-`` for stdout).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from tricover.combinatorics import MAX_GROUND, block_elements, make_block
from tricover.construction import (
    BlockListError,
    ConstructionParams,
    Tag,
    build_family,
    format_block_list,
    group_elements,
    parse_grouping,
    read_block_list,
)

log = logging.getLogger("tricover")

EXIT_OK, EXIT_UNCOVERED, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    p: int = 15
    include_base: bool = True
    family: str | None = None
    workers: int = 1
    chunk_size: int = 1 << 20
    seed: int = 0
    json: str | None = None
    verbose: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            subcommand=args.command,
            n=getattr(args, "n", None),
            p=getattr(args, "p", None) or 15,
            include_base=not getattr(args, "no_base", False),
            family=getattr(args, "family", None),
            workers=getattr(args, "workers", 1),
            chunk_size=getattr(args, "chunk_size", 1 << 20),
            seed=getattr(args, "seed", 0),
            json=getattr(args, "json", None),
            verbose=args.verbose,
        )


def _emit_json(payload: dict, dest: str | None) -> None:
    if dest is None:
        return
    text = json.dumps(payload, indent=2) + "\n"
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")


def _params(args: argparse.Namespace) -> ConstructionParams:
    p = args.p
    if p is None:
        n = getattr(args, "n", None)
        if n is not None:
            if n > MAX_GROUND:
                raise ValueError(f"n = {n} exceeds {MAX_GROUND}")
            if n % 4:
                raise ValueError(f"the pair-triple construction needs n divisible by 4, got {n}")
            p = n // 4
        else:
            p = 15
    return ConstructionParams(p, include_base_blocks=not args.no_base)


def _load_family(args: argparse.Namespace):
    if args.builtin == bool(args.family):
        raise ValueError("give exactly one of --builtin or --family PATH")
    if args.builtin:
        fam = build_family(_params(args))
        if args.n is not None and args.n != fam.n:
            raise ValueError(f"builtin family lives on n = {fam.n}, not {args.n}")
        return fam
    if args.n is not None and args.n > MAX_GROUND:
        raise ValueError(f"n = {args.n} exceeds {MAX_GROUND}")
    return read_block_list(args.family, args.n)


def cmd_generate(args: argparse.Namespace) -> int:
    fam = build_family(_params(args))
    text = format_block_list(fam, distinct=args.distinct)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        out = sys.stdout
    else:
        sys.stdout.write(text)
        out = sys.stderr
    distinct = len(fam.distinct_blocks())
    print(
        f"n={fam.n} PairA={fam.count(Tag.PAIR_A)} PairC={fam.count(Tag.PAIR_C)} "
        f"Base={fam.count(Tag.BASE)} tagged={len(fam)} distinct={distinct} "
        f"written={distinct if args.distinct else len(fam)}",
        file=out,
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from tricover.verifier import verify_exhaustive

    if args.n is not None and args.n > MAX_GROUND:
        raise ValueError(f"n = {args.n} exceeds {MAX_GROUND}")
    fam = _load_family(args)
    strategy = args.strategy
    if strategy == "auto":
        strategy = "witness" if args.builtin and args.mode == "full" else "scan"
    report = verify_exhaustive(
        fam, fam.n, mode=args.mode, strategy=strategy, workers=args.workers, chunk_size=args.chunk_size
    )
    print(report.summary())
    _emit_json(report.to_dict(), args.json)
    return EXIT_OK if report.covered else EXIT_UNCOVERED


def cmd_witness(args: argparse.Namespace) -> int:
    from tricover.witness import find_witness

    params = _params(args)
    res = find_witness(make_block(args.elements, params.n), params)
    if args.json != "-":
        print(f"S = {sorted(args.elements)}")
        print(f"side {res.side.value}, pairs {list(res.pair_indices)}")
        print(f"witness block {block_elements(res.block)}, |S & B| = {res.intersection}")
    _emit_json(res.to_dict(), args.json)
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    from tricover.bounds import bounds_summary

    if not 6 <= args.n <= MAX_GROUND:
        raise ValueError(f"n must lie in [6, {MAX_GROUND}], got {args.n}")
    summary = bounds_summary(n=args.n)
    if args.json != "-":
        print(summary.summary())
    _emit_json(summary.to_dict(), args.json)
    return EXIT_OK


def cmd_obstruct(args: argparse.Namespace) -> int:
    from tricover.partition import distribution, find_balanced_obstruction, max_within_group_intersection
    from tricover.verifier import covered_by

    grouping = group_elements(parse_grouping(args.grouping), args.n)
    s = find_balanced_obstruction(grouping)
    profile = distribution(s, grouping)
    within = max_within_group_intersection(s, grouping)
    fam = build_family(ConstructionParams(args.n // 4)) if args.n % 4 == 0 else None
    cover = None if fam is None else covered_by(fam, s)
    payload = {
        "grouping": [list(g) for g in grouping.base_indices],
        "group_sizes": list(grouping.sizes),
        "subset": block_elements(s),
        "distribution": list(profile.counts),
        "max_within_group_intersection": within,
        "covered_by_full_family": cover is not None,
        "covering_block": None if cover is None else block_elements(cover),
    }
    if args.json != "-":
        print(f"grouping {payload['grouping']} (sizes {payload['group_sizes']})")
        print(f"balanced subset {payload['subset']} distribution {payload['distribution']}")
        print(f"max within-group pair-triple intersection: {within}")
        if cover is None:
            print("full family: n/a" if fam is None else "full family: NOT covered")
        else:
            print(f"full family: covered by {block_elements(cover)}")
    _emit_json(payload, args.json)
    return EXIT_OK


def cmd_prune(args: argparse.Namespace) -> int:
    from tricover.construction import write_block_list
    from tricover.optimizer import prune_redundant, prune_search

    fam = _load_family(args)
    result = prune_redundant(fam, fam.n, order="given", workers=args.workers)
    payload: dict = {"given_order": result.to_dict()}
    best = result
    if args.restarts > 0:
        search = prune_search(fam, fam.n, restarts=args.restarts, seed=args.seed, workers=args.workers)
        payload["search"] = search.to_dict()
        if search.best is not None and len(search.family) < len(best.family):
            best = search.best
    payload["seed"] = args.seed
    payload["best_size"] = len(best.family)
    print(f"input blocks: {len(fam)}")
    print(f"given order: {len(result.family)} blocks")
    if "search" in payload:
        print(f"restart sizes (seed {args.seed}): {payload['search']['restart_sizes']}")
    print(f"best: {len(best.family)} blocks, verified uncovered = {best.report.uncovered_count}")
    if args.out:
        write_block_list(best.family, args.out)
    _emit_json(payload, args.json)
    return EXIT_OK if best.report.covered else EXIT_UNCOVERED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tricover", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def construction_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--p", type=int, default=None, help="pairs per half (default 15, n = 4p)")
        p.add_argument("--no-base", action="store_true", help="omit the consecutive base blocks")

    def family_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--family", help="block-list file")
        p.add_argument("--builtin", action="store_true", help="use the constructed family")
        p.add_argument("--n", type=int, default=None, help="ground-set size")
        construction_flags(p)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--json", metavar="PATH")

    g = sub.add_parser("generate", help="write the constructed family as a block list")
    construction_flags(g)
    g.add_argument("--distinct", action="store_true", help="drop repeated blocks")
    g.add_argument("--out", metavar="PATH")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check every 6-subset is met in >= 3 points")
    family_flags(v)
    v.add_argument("--mode", choices=("full", "histogram"), default="full")
    v.add_argument("--strategy", choices=("auto", "scan", "witness"), default="auto")
    v.add_argument("--chunk-size", type=int, default=1 << 20)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("witness", help="constructive witness block for one 6-subset")
    w.add_argument("elements", type=int, nargs=6)
    construction_flags(w)
    w.add_argument("--json", metavar="PATH")
    w.set_defaults(func=cmd_witness)

    b = sub.add_parser("bounds", help="counting bounds for the minimum family size")
    b.add_argument("--n", type=int, default=60)
    b.add_argument("--json", metavar="PATH")
    b.set_defaults(func=cmd_bounds)

    o = sub.add_parser("obstruct", help="balanced (2,2,2) subset for a three-group split")
    o.add_argument("--grouping", default="1-3;4-6;7-10", help="base-block indices, e.g. '1,2,3;4-6;7-10'")
    o.add_argument("--n", type=int, default=60)
    o.add_argument("--json", metavar="PATH")
    o.set_defaults(func=cmd_obstruct)

    pr = sub.add_parser("prune", help="remove redundant blocks, keeping coverage")
    family_flags(pr)
    pr.add_argument("--restarts", type=int, default=0, help="extra random-order passes")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--out", metavar="PATH", help="write the reduced family here")
    pr.set_defaults(func=cmd_prune)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    config = RunConfig.from_args(args)
    log.debug("config %s", config)
    try:
        return args.func(args)
    except (ValueError, BlockListError, OSError) as exc:
        from tricover.optimizer import NotCoveringError

        if isinstance(exc, NotCoveringError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_UNCOVERED
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
