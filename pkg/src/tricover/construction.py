"""The pair-triple family on [4p] and its block-list file format.

Each half of the ground set (``A = [1, 2p]``, ``C = [2p+1, 4p]``) is cut into
``p`` consecutive pairs; the family holds every union of three distinct pairs
from one half, followed by the consecutive 6-blocks ``G_1, G_2, ...``.  For
``p = 15`` this is the 920-entry family on [60].
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from tricover.combinatorics import MAX_GROUND, Block, binomial, block_elements, make_block, popcount


class Tag(str, enum.Enum):
    PAIR_A = "PairA"
    PAIR_C = "PairC"
    BASE = "Base"
    OTHER = "Other"


class Half(str, enum.Enum):
    A = "A"
    C = "C"


@dataclass(frozen=True)
class ConstructionParams:
    pairs_per_half: int = 15
    include_base_blocks: bool = True

    def __post_init__(self) -> None:
        if self.pairs_per_half < 3:
            raise ValueError(f"pairs_per_half must be >= 3, got {self.pairs_per_half}")
        if self.n > MAX_GROUND:
            raise ValueError(f"ground set 4p = {self.n} exceeds {MAX_GROUND}")
        if self.include_base_blocks and self.n % 6:
            raise ValueError(f"base blocks need 6 | n, got n = {self.n}")

    @property
    def n(self) -> int:
        return 4 * self.pairs_per_half

    @property
    def half_size(self) -> int:
        return 2 * self.pairs_per_half

    def half_mask(self, half: Half) -> Block:
        lower = (1 << self.half_size) - 1
        return lower if half is Half.A else lower << self.half_size


PAPER_PARAMS = ConstructionParams()


@dataclass(frozen=True)
class CoveringFamily:
    blocks: tuple[Block, ...]
    tags: tuple[Tag, ...]
    n: int
    params: ConstructionParams | None = None

    def __post_init__(self) -> None:
        if len(self.blocks) != len(self.tags):
            raise ValueError("blocks and tags differ in length")
        for b in self.blocks:
            if popcount(b) != 6 or b >> self.n:
                raise ValueError(f"invalid block {block_elements(b)} for n = {self.n}")

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def count(self, tag: Tag) -> int:
        return sum(t is tag for t in self.tags)

    def distinct_blocks(self) -> list[Block]:
        """Blocks with repeats removed, first occurrence kept, family order."""
        return list(dict.fromkeys(self.blocks))

    def without(self, indices: Iterable[int]) -> "CoveringFamily":
        drop = set(indices)
        keep = [i for i in range(len(self.blocks)) if i not in drop]
        return CoveringFamily(
            tuple(self.blocks[i] for i in keep), tuple(self.tags[i] for i in keep), self.n, self.params
        )

    def with_blocks(self, blocks: Iterable[Block], tag: Tag = Tag.OTHER) -> "CoveringFamily":
        extra = tuple(blocks)
        return CoveringFamily(self.blocks + extra, self.tags + (tag,) * len(extra), self.n, self.params)


@dataclass(frozen=True)
class GroupPartition:
    groups: tuple[Block, ...]
    sizes: tuple[int, ...]
    n: int
    base_indices: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        union = 0
        for g in self.groups:
            if union & g:
                raise ValueError("groups overlap")
            union |= g
        if union != (1 << self.n) - 1:
            raise ValueError("groups do not cover the ground set")


def make_pair(index: int, half: Half, params: ConstructionParams = PAPER_PARAMS) -> Block:
    """``{2i-1, 2i}`` in half A; the same shifted by ``2p`` in half C."""
    p = params.pairs_per_half
    if not 1 <= index <= p:
        raise ValueError(f"pair index {index} outside [1, {p}]")
    offset = 0 if half is Half.A else params.half_size
    return make_block((offset + 2 * index - 1, offset + 2 * index), params.n)


def build_pair_family(half: Half, params: ConstructionParams = PAPER_PARAMS) -> list[Block]:
    pairs = [make_pair(i, half, params) for i in range(1, params.pairs_per_half + 1)]
    return [a | b | c for a, b, c in itertools.combinations(pairs, 3)]


def build_base_blocks(n: int) -> list[Block]:
    if n % 6:
        raise ValueError(f"base blocks need n divisible by 6, got {n}")
    return [0b111111 << (6 * i) for i in range(n // 6)]


def build_family(params: ConstructionParams = PAPER_PARAMS) -> CoveringFamily:
    """PairA blocks (lex by pair triple), then PairC, then base blocks."""
    blocks: list[Block] = []
    tags: list[Tag] = []
    for half, tag in ((Half.A, Tag.PAIR_A), (Half.C, Tag.PAIR_C)):
        fam = build_pair_family(half, params)
        blocks += fam
        tags += [tag] * len(fam)
    if params.include_base_blocks:
        base = build_base_blocks(params.n)
        blocks += base
        tags += [Tag.BASE] * len(base)
    expected = 2 * binomial(params.pairs_per_half, 3) + (params.n // 6 if params.include_base_blocks else 0)
    assert len(blocks) == expected
    return CoveringFamily(tuple(blocks), tuple(tags), params.n, params)


def group_elements(grouping: Sequence[Iterable[int]], n: int = 60) -> GroupPartition:
    """Element-level partition from 1-based base-block index groups."""
    if n % 6:
        raise ValueError(f"base blocks need n divisible by 6, got {n}")
    nbase = n // 6
    base = build_base_blocks(n)
    index_sets = [tuple(sorted(g)) for g in grouping]
    seen: set[int] = set()
    for idx in index_sets:
        for i in idx:
            if not 1 <= i <= nbase:
                raise ValueError(f"base block index {i} outside [1, {nbase}]")
            if i in seen:
                raise ValueError(f"base block {i} appears in two groups")
            seen.add(i)
    if len(seen) != nbase:
        missing = sorted(set(range(1, nbase + 1)) - seen)
        raise ValueError(f"base blocks {missing} are not assigned to a group")
    groups = []
    for idx in index_sets:
        mask = 0
        for i in idx:
            mask |= base[i - 1]
        groups.append(mask)
    return GroupPartition(tuple(groups), tuple(len(i) for i in index_sets), n, tuple(index_sets))


def parse_grouping(spec: str) -> list[list[int]]:
    """``"1-3;4,5,6;7-10"`` -> ``[[1,2,3],[4,5,6],[7,8,9,10]]``."""
    groups = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        idx: list[int] = []
        for item in part.split(","):
            item = item.strip()
            if "-" in item:
                lo, hi = item.split("-")
                idx.extend(range(int(lo), int(hi) + 1))
            else:
                idx.append(int(item))
        groups.append(idx)
    return groups


# block-list files: one block per line, six ascending 1-based integers


def format_block_list(family: CoveringFamily, distinct: bool = False) -> str:
    lines = [f"# n={family.n}"]
    if family.params is not None:
        p = family.params
        lines.append(f"# pairs_per_half={p.pairs_per_half} include_base_blocks={str(p.include_base_blocks).lower()}")
    lines.append(f"# blocks={len(family)} " + " ".join(f"{t.value}={family.count(t)}" for t in Tag))
    seen: set[Block] = set()
    current = None
    for block, tag in zip(family.blocks, family.tags):
        if distinct:
            if block in seen:
                continue
            seen.add(block)
        if tag is not current:
            # applies to every following block up to the next tag line
            lines.append(f"# tag {tag.value}")
            current = tag
        lines.append(" ".join(map(str, block_elements(block))))
    return "\n".join(lines) + "\n"


def write_block_list(family: CoveringFamily, path: str | Path, distinct: bool = False) -> None:
    Path(path).write_text(format_block_list(family, distinct), encoding="utf-8")


class BlockListError(ValueError):
    pass


def parse_block_list(text: str, n: int | None = None) -> CoveringFamily:
    """Parse a block-list; ``n`` defaults to the ``# n=`` header, else the largest element."""
    blocks: list[Block] = []
    tags: list[Tag] = []
    header_n = None
    current_tag = Tag.OTHER
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("n="):
                header_n = int(body[2:])
            elif body.startswith("tag "):
                try:
                    current_tag = Tag(body[4:].strip())
                except ValueError:
                    raise BlockListError(f"line {lineno}: unknown tag {body[4:]!r}") from None
            continue
        try:
            elements = [int(tok) for tok in line.split()]
        except ValueError:
            raise BlockListError(f"line {lineno}: non-integer token in {line!r}") from None
        if len(elements) != 6 or sorted(set(elements)) != elements:
            raise BlockListError(f"line {lineno}: expected six ascending distinct integers, got {line!r}")
        if elements[0] < 1:
            raise BlockListError(f"line {lineno}: elements are 1-based")
        blocks.append(make_block(elements))
        tags.append(current_tag)
    if n is None:
        n = header_n if header_n is not None else max((b.bit_length() for b in blocks), default=6)
    if n > MAX_GROUND:
        raise BlockListError(f"n = {n} exceeds {MAX_GROUND}")
    for b in blocks:
        if b >> n:
            raise BlockListError(f"block {block_elements(b)} has elements outside [1, {n}]")
    return CoveringFamily(tuple(blocks), tuple(tags), n)


def read_block_list(path: str | Path, n: int | None = None) -> CoveringFamily:
    return parse_block_list(Path(path).read_text(encoding="utf-8"), n)
