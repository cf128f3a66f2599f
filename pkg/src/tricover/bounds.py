"""Counting bounds for the minimum size of a >=3-intersection family."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from tricover.combinatorics import binomial
from tricover.construction import ConstructionParams, build_family


def per_block_coverage(n: int) -> int:
    """Number of 6-subsets of [n] meeting a fixed 6-block in >= 3 points."""
    if n < 6:
        raise ValueError(f"n must be >= 6, got {n}")
    return sum(binomial(6, i) * binomial(n - 6, 6 - i) for i in range(3, 7))


def ceil_div(a: int, b: int) -> int:
    return (a + b - 1) // b


def counting_lower_bound(n: int) -> int:
    return ceil_div(binomial(n, 6), per_block_coverage(n))


@dataclass(frozen=True)
class BoundsSummary:
    n: int
    per_block_coverage: int
    universe: int
    lower_bound: int
    upper_bound_from_construction: int | None
    upper_bound_distinct: int | None

    def __post_init__(self) -> None:
        assert self.lower_bound * self.per_block_coverage >= self.universe
        assert (self.lower_bound - 1) * self.per_block_coverage < self.universe

    def to_dict(self) -> dict:
        return asdict(self)

    def summary(self) -> str:
        lines = [
            f"n = {self.n}",
            f"C(n,6) = {self.universe:,}",
            f"per-block coverage N = {self.per_block_coverage:,}",
            f"counting lower bound ceil(C(n,6)/N) = {self.lower_bound}",
        ]
        if self.upper_bound_from_construction is None:
            lines.append(f"{self.lower_bound} <= M  (no pair-triple construction for n = {self.n})")
        else:
            lines.append(f"{self.lower_bound} <= M <= {self.upper_bound_from_construction}  (tagged family)")
            lines.append(f"{self.lower_bound} <= M <= {self.upper_bound_distinct}  (distinct blocks)")
        return "\n".join(lines)


def bounds_summary(params: ConstructionParams | None = None, n: int | None = None) -> BoundsSummary:
    """Bounds for ``params``, or for a bare ``n`` (construction used when n = 4p)."""
    if params is None:
        if n is None:
            raise ValueError("give params or n")
        if n % 4 == 0 and n >= 12:
            params = ConstructionParams(n // 4, include_base_blocks=n % 6 == 0)
    if params is not None:
        n = params.n
        fam = build_family(params)
        upper, distinct = len(fam), len(fam.distinct_blocks())
    else:
        upper = distinct = None
    assert n is not None
    return BoundsSummary(
        n=n,
        per_block_coverage=per_block_coverage(n),
        universe=binomial(n, 6),
        lower_bound=counting_lower_bound(n),
        upper_bound_from_construction=upper,
        upper_bound_distinct=distinct,
    )
