"""Shrinking a covering family by removing redundant blocks.

Per-subset cover counts live in a byte array indexed by colex rank (about
50 MB at n = 60).  A block may go when every subset in its neighbourhood is
covered at least twice.  Counts only fall as blocks go, so one pass over a
removal order already leaves a 1-minimal family.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from tricover import kernels
from tricover.combinatorics import Block, binomial, block_elements
from tricover.construction import CoveringFamily
from tricover.verifier import CoverageReport, family_array, verify_exhaustive

log = logging.getLogger(__name__)

SATURATION = 255
DEFAULT_BUDGET = 1 << 30


class NotCoveringError(ValueError):
    pass


class MemoryBudgetError(MemoryError):
    pass


@dataclass
class CoverMultiplicity:
    counts: np.ndarray
    n: int
    cap: int = SATURATION

    @property
    def covers(self) -> bool:
        return bool(self.counts.min(initial=1) >= 1) if self.counts.size else True

    def uncovered(self) -> int:
        return int(np.count_nonzero(self.counts == 0))

    def copy(self) -> "CoverMultiplicity":
        return CoverMultiplicity(self.counts.copy(), self.n, self.cap)


def build_multiplicity(
    family: CoveringFamily,
    n: int | None = None,
    cap: int = SATURATION,
    memory_budget: int = DEFAULT_BUDGET,
) -> CoverMultiplicity:
    n = family.n if n is None else n
    if not 1 <= cap <= SATURATION:
        raise ValueError(f"cap must lie in [1, {SATURATION}]")
    size = binomial(n, 6)
    if size > memory_budget:
        raise MemoryBudgetError(f"need {size:,} bytes of counters, budget is {memory_budget:,}")
    counts = np.zeros(size, dtype=np.uint8)
    kernels.add_multiplicity(counts, family_array(family), n, kernels.BINOM, cap)
    return CoverMultiplicity(counts, n, cap)


@dataclass
class Removal:
    position: int  # index in the input family
    block: Block
    tag: str
    reason: str  # "duplicate" or "redundant"

    def to_dict(self) -> dict:
        return {"position": self.position, "block": block_elements(self.block), "tag": self.tag, "reason": self.reason}


@dataclass
class PruneResult:
    family: CoveringFamily
    removed: list[Removal]
    order: str
    recounts: int = 0
    report: CoverageReport | None = None

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "input_size": len(self.family) + len(self.removed),
            "output_size": len(self.family),
            "recounts": self.recounts,
            "removed": [r.to_dict() for r in self.removed],
            "verification": None if self.report is None else self.report.to_dict(),
        }


def prune_redundant(
    family: CoveringFamily,
    n: int | None = None,
    order: str | int = "given",
    multiplicity: CoverMultiplicity | None = None,
    verify: bool = True,
    workers: int = 1,
) -> PruneResult:
    """Drop exact duplicates, then every block whose removal keeps all counts >= 1.

    ``order`` is ``"given"`` (family order) or an integer seed for a random
    removal order.  ``multiplicity`` is consumed if given.  With ``verify`` the
    result is re-checked by the scan verifier.
    """
    n = family.n if n is None else n
    mult = multiplicity if multiplicity is not None else build_multiplicity(family, n)
    if not mult.covers:
        raise NotCoveringError(f"input family leaves {mult.uncovered():,} subsets uncovered")
    blocks = family_array(family)
    alive = np.ones(len(blocks), dtype=np.bool_)
    removed: list[Removal] = []
    binom = kernels.BINOM

    seen: set[Block] = set()
    for j, b in enumerate(family.blocks):
        if b in seen:
            kernels.remove_block(mult.counts, blocks, alive, j, n, binom, mult.cap)
            removed.append(Removal(j, b, family.tags[j].value, "duplicate"))
        seen.add(b)

    if order == "given":
        sequence = np.arange(len(blocks))
        label = "given"
    else:
        sequence = np.random.default_rng(int(order)).permutation(len(blocks))
        label = f"random(seed={int(order)})"
    recounts = 0
    for j in sequence.tolist():
        if not alive[j]:
            continue
        if kernels.min_multiplicity(mult.counts, blocks[j], n, binom) >= 2:
            recounts += kernels.remove_block(mult.counts, blocks, alive, j, n, binom, mult.cap)
            removed.append(Removal(j, family.blocks[j], family.tags[j].value, "redundant"))
    keep = [j for j in range(len(blocks)) if alive[j]]
    reduced = CoveringFamily(
        tuple(family.blocks[j] for j in keep), tuple(family.tags[j] for j in keep), n, family.params
    )
    result = PruneResult(reduced, removed, label, recounts)
    log.info("pruned %d -> %d blocks (%s)", len(family), len(reduced), label)
    if verify:
        result.report = verify_exhaustive(reduced, n, mode="full", strategy="scan", workers=workers)
        if not result.report.covered:
            raise AssertionError(f"pruning broke coverage: {result.report.uncovered_count} uncovered")
    return result


@dataclass
class SearchResult:
    best: PruneResult | None
    family: CoveringFamily
    sizes: list[int] = field(default_factory=list)
    seeds: list[int] = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "restart_seeds": self.seeds,
            "restart_sizes": self.sizes,
            "best_size": len(self.family),
            "best": None if self.best is None else self.best.to_dict(),
            "elapsed": self.elapsed,
        }


def prune_search(
    family: CoveringFamily,
    n: int | None = None,
    restarts: int = 1,
    seed: int = 0,
    workers: int = 1,
) -> SearchResult:
    """Best of ``restarts`` random-order prunes; the winner is scan-verified."""
    n = family.n if n is None else n
    start = time.perf_counter()
    if restarts <= 0:
        return SearchResult(None, family)
    base = build_multiplicity(family, n)
    if not base.covers:
        raise NotCoveringError(f"input family leaves {base.uncovered():,} subsets uncovered")
    seeds = [int(x) for x in np.random.SeedSequence(seed).generate_state(restarts)]
    best: PruneResult | None = None
    sizes = []
    for i, s in enumerate(seeds):
        res = prune_redundant(family, n, order=s, multiplicity=base.copy(), verify=False)
        sizes.append(len(res.family))
        log.info("restart %d/%d seed=%d size=%d", i + 1, restarts, s, len(res.family))
        if best is None or len(res.family) < len(best.family):
            best = res
    assert best is not None
    best.report = verify_exhaustive(best.family, n, mode="full", strategy="scan", workers=workers)
    if not best.report.covered:
        raise AssertionError(f"pruning broke coverage: {best.report.uncovered_count} uncovered")
    return SearchResult(best, best.family, sizes, seeds, time.perf_counter() - start)


def is_one_minimal(family: CoveringFamily, n: int | None = None, indices: list[int] | None = None) -> list[int]:
    """Indices (among ``indices``, default all) whose lone removal keeps coverage.

    Checked by rescanning each block's neighbourhood against the other blocks,
    independently of the counter array.  An empty list means 1-minimal.
    """
    n = family.n if n is None else n
    blocks = family_array(family)
    idx = range(len(blocks)) if indices is None else indices
    return [j for j in idx if kernels.uncovered_without(blocks[j], blocks, j, n) == 0]
