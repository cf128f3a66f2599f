"""Exhaustive verification of the >=3-intersection covering property."""

from __future__ import annotations

import itertools
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Iterator, Sequence

import numpy as np

from tricover import kernels
from tricover.combinatorics import MAX_GROUND, Block, binomial, block_elements, popcount, unrank_subset, SubsetRank
from tricover.construction import (
    ConstructionParams,
    CoveringFamily,
    Half,
    build_pair_family,
    read_block_list,
)

log = logging.getLogger(__name__)

DEFAULT_CHUNK = 1 << 20


def rank_chunks(total: int, chunk_size: int) -> list[tuple[int, int]]:
    if chunk_size < 1:
        raise ValueError("chunk_size must be positive")
    return [(lo, min(lo + chunk_size, total)) for lo in range(0, total, chunk_size)]


def run_chunked(
    work: Callable[[int, int], object],
    total: int,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    label: str = "",
) -> list:
    """Apply ``work(lo, hi)`` to contiguous rank intervals; results come back in rank order.

    ``work`` must be a GIL-releasing kernel call for threads to overlap.
    """
    chunks = rank_chunks(total, chunk_size)
    results = []
    if workers <= 1:
        for i, (lo, hi) in enumerate(chunks):
            results.append(work(lo, hi))
            _progress(label, i + 1, len(chunks))
        return results
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for i, res in enumerate(pool.map(lambda c: work(*c), chunks)):
            results.append(res)
            _progress(label, i + 1, len(chunks))
    return results


def _progress(label: str, done: int, total: int) -> None:
    if total >= 8 and done % max(1, total // 8) == 0:
        log.info("%s: %d/%d chunks", label or "sweep", done, total)


@dataclass
class CoverageReport:
    n: int
    family_size: int
    universe_size: int
    uncovered_count: int
    first_uncovered: Block | None
    # max_B |S & B| per subset; None in full mode, whose early exit never sees the max
    max_intersection_histogram: list[int] | None
    elapsed: float
    strategy: str
    mode: str
    workers: int = 1
    chunk_size: int = DEFAULT_CHUNK

    @property
    def covered(self) -> bool:
        return self.uncovered_count == 0

    def counts(self) -> tuple:
        """Fields that must not depend on worker count or chunking."""
        return (
            self.universe_size,
            self.uncovered_count,
            self.first_uncovered,
            None if self.max_intersection_histogram is None else tuple(self.max_intersection_histogram),
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["first_uncovered"] = None if self.first_uncovered is None else block_elements(self.first_uncovered)
        d["covered"] = self.covered
        return d

    def to_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")

    def summary(self) -> str:
        lines = [
            f"strategy={self.strategy} mode={self.mode} n={self.n} blocks={self.family_size}",
            f"subsets checked: {self.universe_size:,}",
            f"uncovered: {self.uncovered_count:,}",
        ]
        if self.first_uncovered is not None:
            lines.append(f"first uncovered: {block_elements(self.first_uncovered)}")
        if self.max_intersection_histogram is not None:
            hist = ", ".join(f"{i}:{c:,}" for i, c in enumerate(self.max_intersection_histogram))
            lines.append(f"max-intersection histogram: {hist}")
        lines.append(f"elapsed: {self.elapsed:.2f}s (workers={self.workers})")
        lines.append("COVERED" if self.covered else "NOT COVERED")
        return "\n".join(lines)


def family_array(family: CoveringFamily | Sequence[Block]) -> np.ndarray:
    # contiguous uint64 so the scan walks blocks sequentially
    return np.ascontiguousarray(np.fromiter((int(b) for b in family), dtype=np.uint64))


def _load(family: CoveringFamily | str | Path, n: int | None) -> CoveringFamily:
    if isinstance(family, (str, Path)):
        family = read_block_list(family, n)
    if n is not None and n != family.n:
        for b in family.blocks:
            if b >> n:
                raise ValueError(f"block {block_elements(b)} lies outside [1, {n}]")
        family = CoveringFamily(family.blocks, family.tags, n, family.params)
    return family


def _check_n(n: int) -> None:
    if not 6 <= n <= MAX_GROUND:
        raise ValueError(f"n must lie in [6, {MAX_GROUND}], got {n}")


def verify_exhaustive(
    family: CoveringFamily | str | Path,
    n: int | None = None,
    mode: str = "full",
    strategy: str = "scan",
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
) -> CoverageReport:
    """Check every 6-subset of [n] against the family.

    ``mode="full"`` stops at the first block meeting S in >= 3 points;
    ``mode="histogram"`` scans all blocks for every S to record the maximum
    intersection, which costs the full ``|family| * C(n, 6)`` popcounts.

    ``strategy="witness"`` applies only to families containing every
    pair-triple block on [n]; it checks the constructive witness instead of
    scanning and ignores ``mode``.
    """
    if n is not None:
        _check_n(n)
    fam = _load(family, n)
    n = fam.n
    _check_n(n)
    if mode not in ("full", "histogram"):
        raise ValueError(f"unknown mode {mode!r}")
    total = binomial(n, 6)
    start = time.perf_counter()
    if strategy == "witness":
        report = _verify_witness(fam, total, workers, chunk_size)
    elif strategy == "scan":
        blocks = family_array(fam)
        binom = kernels.BINOM
        if mode == "full":
            parts = run_chunked(
                lambda lo, hi: kernels.scan_full(blocks, n, lo, hi, binom), total, workers, chunk_size, "scan"
            )
            uncovered = sum(int(p[0]) for p in parts)
            first = next((int(p[1]) for p in parts if p[1] >= 0), -1)
            hist = None
        else:
            parts = run_chunked(
                lambda lo, hi: kernels.scan_histogram(blocks, n, lo, hi, binom), total, workers, chunk_size, "scan"
            )
            first = next((int(p[0]) for p in parts if p[0] >= 0), -1)
            hist = [int(x) for x in np.sum([p[1] for p in parts], axis=0)] if parts else [0] * 7
            uncovered = sum(hist[:3])
        report = CoverageReport(
            n=n,
            family_size=len(fam),
            universe_size=total,
            uncovered_count=uncovered,
            first_uncovered=None if first < 0 else unrank_subset(SubsetRank(first, 6, n)),
            max_intersection_histogram=hist,
            elapsed=0.0,
            strategy="scan",
            mode=mode,
        )
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    report.elapsed = time.perf_counter() - start
    report.workers = workers
    report.chunk_size = chunk_size
    return report


def _verify_witness(fam: CoveringFamily, total: int, workers: int, chunk_size: int) -> CoverageReport:
    n = fam.n
    if n % 4 or n < 12:
        raise ValueError(f"witness strategy needs n = 4p with p >= 3, got n = {n}")
    params = ConstructionParams(n // 4, include_base_blocks=False)
    members = set(fam.blocks)
    for half in Half:
        if not members.issuperset(build_pair_family(half, params)):
            raise ValueError("witness strategy needs a family containing every pair-triple block")
    from tricover.witness import witness_sweep

    sweep = witness_sweep(sorted(members), params, 0, total, workers, chunk_size)
    return CoverageReport(
        n=n,
        family_size=len(fam),
        universe_size=sweep.checked,
        uncovered_count=sweep.failures,
        first_uncovered=sweep.first_failure,
        max_intersection_histogram=None,
        elapsed=0.0,
        strategy="witness",
        mode="full",
    )


def covered_by(family: CoveringFamily | Sequence[Block], s: Block) -> Block | None:
    """First block in family order meeting ``s`` in >= 3 points."""
    for b in family:
        if popcount(b & s) >= 3:
            return b
    return None


def enumerate_block_neighborhood(b: Block, n: int) -> Iterator[Block]:
    """Each 6-subset of [n] meeting ``b`` in >= 3 points, exactly once."""
    if popcount(b) != 6 or b >> n:
        raise ValueError(f"{block_elements(b)} is not a 6-subset of [1, {n}]")
    inside = [1 << (e - 1) for e in block_elements(b)]
    outside = [1 << i for i in range(n) if not (b >> i) & 1]
    for i in range(3, 7):
        for ins in itertools.combinations(inside, i):
            base = sum(ins)
            for outs in itertools.combinations(outside, 6 - i):
                yield base | sum(outs)
