"""Compiled inner loops over 6-subsets of [n], n <= 64.

Masks are uint64 throughout; mixing uint64 with int64 silently promotes to
float64 in numba, so every bit constant below is a ``np.uint64``.  All
kernels release the GIL and touch only their arguments, so distinct rank
intervals can run on separate threads.

Rank intervals are walked in colex order: unrank the first rank, then step
with Gosper's successor.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from tricover.combinatorics import binomial_table

BINOM = binomial_table()

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ZERO = np.uint64(0)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_THREE = np.uint64(3)
_S56 = np.uint64(56)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)

_JIT = dict(nogil=True, cache=True)


@njit(inline="always", **_JIT)
def popcount(x):
    x = x - ((x >> _ONE) & _M1)
    x = (x & _M2) + ((x >> _TWO) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> _S56)


@njit(inline="always", **_JIT)
def lowest_index(x):
    """0-based index of the lowest set bit of a nonzero mask."""
    return popcount((x & (~x + _ONE)) - _ONE)


@njit(inline="always", **_JIT)
def gosper_next(x):
    low = x & (~x + _ONE)
    ripple = x + low
    return (((ripple ^ x) >> _TWO) // low) | ripple


@njit(**_JIT)
def unrank6(rank, n, binom):
    mask = _ZERO
    top = n
    for i in range(6, 0, -1):
        c = top - 1
        while binom[c, i] > rank:
            c -= 1
        mask |= _ONE << np.uint64(c)
        rank -= binom[c, i]
        top = c
    return mask


@njit(inline="always", **_JIT)
def rank6(mask, binom):
    rank = np.int64(0)
    x = mask
    for i in range(1, 7):
        pos = lowest_index(x)
        rank += binom[pos, i]
        x &= x - _ONE
    return rank


@njit(**_JIT)
def scan_full(blocks, n, lo, hi, binom):
    """Early-exit coverage scan of ranks [lo, hi).

    Returns (uncovered count, first uncovered rank or -1, per-rank max
    intersection histogram of the uncovered subsets).
    """
    nb = blocks.shape[0]
    hist = np.zeros(7, dtype=np.int64)
    uncovered = np.int64(0)
    first = np.int64(-1)
    if hi <= lo:
        return uncovered, first, hist
    s = unrank6(lo, n, binom)
    for r in range(lo, hi):
        best = 0
        hit = False
        for j in range(nb):
            c = popcount(s & blocks[j])
            if c >= 3:
                hit = True
                break
            if c > best:
                best = c
        if not hit:
            uncovered += 1
            hist[best] += 1
            if first < 0:
                first = r
        if r + 1 < hi:
            s = gosper_next(s)
    return uncovered, first, hist


@njit(**_JIT)
def scan_histogram(blocks, n, lo, hi, binom):
    """Max intersection over all blocks for every rank in [lo, hi)."""
    nb = blocks.shape[0]
    hist = np.zeros(7, dtype=np.int64)
    first = np.int64(-1)
    if hi <= lo:
        return first, hist
    s = unrank6(lo, n, binom)
    for r in range(lo, hi):
        best = 0
        for j in range(nb):
            c = popcount(s & blocks[j])
            if c > best:
                best = c
                if best == 6:
                    break
        hist[best] += 1
        if best < 3 and first < 0:
            first = r
        if r + 1 < hi:
            s = gosper_next(s)
    return first, hist


@njit(inline="always", **_JIT)
def _pair_triple(side_bits, pairs_offset):
    """Witness for a half holding >= 3 elements of S (half-relative bits).

    Returns the block mask and the three 0-based pair indices, sorted.
    """
    x = side_bits
    a = lowest_index(x)
    x &= x - _ONE
    b = lowest_index(x)
    x &= x - _ONE
    c = lowest_index(x)
    ia = a // 2
    ib = b // 2
    ic = c // 2
    if ia != ib and ib != ic:
        i0, i1, i2 = ia, ib, ic
    else:
        # a, b, c ascending: only neighbours can share a pair
        u = ia
        v = ic
        r = 0
        while r == u or r == v:
            r += 1
        i0, i1, i2 = u, v, r
        if i1 < i0:
            i0, i1 = i1, i0
        if i2 < i1:
            i1, i2 = i2, i1
        if i1 < i0:
            i0, i1 = i1, i0
    block = (
        (_THREE << np.uint64(2 * i0)) | (_THREE << np.uint64(2 * i1)) | (_THREE << np.uint64(2 * i2))
    ) << np.uint64(pairs_offset)
    return block, i0, i1, i2


@njit(inline="always", **_JIT)
def witness_block(s, half_size):
    """(block, side) with side 0 for half A and 1 for half C."""
    mask_a = (_ONE << np.uint64(half_size)) - _ONE
    sa = s & mask_a
    if popcount(sa) >= 3:
        block, i0, i1, i2 = _pair_triple(sa, 0)
        return block, 0
    sc = s >> np.uint64(half_size)
    block, i0, i1, i2 = _pair_triple(sc, half_size)
    return block, 1


@njit(inline="always", **_JIT)
def _contains(sorted_blocks, b):
    lo = 0
    hi = sorted_blocks.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if sorted_blocks[mid] < b:
            lo = mid + 1
        else:
            hi = mid
    return lo < sorted_blocks.shape[0] and sorted_blocks[lo] == b


@njit(inline="always", **_JIT)
def _mix(rank, block):
    # splitmix64 finaliser over (rank, block); summed, so order-independent
    z = np.uint64(rank) * np.uint64(0x9E3779B97F4A7C15) ^ block
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(**_JIT)
def witness_range(sorted_family, n, half_size, lo, hi, binom):
    """Check the constructive witness for every rank in [lo, hi).

    Returns (failures, first failing rank or -1, witnesses on side A,
    checksum over (rank, witness) pairs, intersection-size histogram).
    A failure is a witness meeting S in < 3 points or absent from the family.
    """
    failures = np.int64(0)
    first = np.int64(-1)
    side_a = np.int64(0)
    checksum = np.uint64(0)
    hist = np.zeros(7, dtype=np.int64)
    if hi <= lo:
        return failures, first, side_a, checksum, hist
    s = unrank6(lo, n, binom)
    for r in range(lo, hi):
        block, side = witness_block(s, half_size)
        c = popcount(s & block)
        hist[c] += 1
        if side == 0:
            side_a += 1
        if c < 3 or not _contains(sorted_family, block):
            failures += 1
            if first < 0:
                first = r
        checksum += _mix(r, block)
        if r + 1 < hi:
            s = gosper_next(s)
    return failures, first, side_a, checksum, hist


@njit(**_JIT)
def witness_blocks_for(subsets, half_size):
    out = np.empty_like(subsets)
    sides = np.empty(subsets.shape[0], dtype=np.int64)
    for i in range(subsets.shape[0]):
        out[i], sides[i] = witness_block(subsets[i], half_size)
    return out, sides


@njit(**_JIT)
def _split(block, n):
    inside = np.empty(6, dtype=np.uint64)
    outside = np.empty(n - 6, dtype=np.uint64)
    ni = 0
    no = 0
    for e in range(n):
        bit = _ONE << np.uint64(e)
        if block & bit:
            inside[ni] = bit
            ni += 1
        else:
            outside[no] = bit
            no += 1
    return inside, outside


@njit(**_JIT)
def _inside_masks(inside):
    """masks[t] = union of inside[i] for the bits i of t, t < 64."""
    masks = np.zeros(64, dtype=np.uint64)
    for t in range(64):
        m = _ZERO
        for i in range(6):
            if (t >> i) & 1:
                m |= inside[i]
        masks[t] = m
    return masks


@njit(**_JIT)
def neighborhood(block, n):
    """Every 6-subset of [n] meeting ``block`` in >= 3 points, each once."""
    inside, outside = _split(block, n)
    masks = _inside_masks(inside)
    no = n - 6
    total = 0
    for i in range(3, 7):
        m = 1
        for t in range(6 - i):
            m = m * (no - t) // (t + 1)
        cin = 1
        for t in range(i):
            cin = cin * (6 - t) // (t + 1)
        total += cin * m
    out = np.empty(total, dtype=np.uint64)
    k = 0
    for t in range(64):
        inner = popcount(np.uint64(t))
        if inner < 3:
            continue
        base = masks[t]
        j = 6 - inner
        if j == 0:
            out[k] = base
            k += 1
        elif j == 1:
            for o1 in range(no):
                out[k] = base | outside[o1]
                k += 1
        elif j == 2:
            for o1 in range(no):
                for o2 in range(o1 + 1, no):
                    out[k] = base | outside[o1] | outside[o2]
                    k += 1
        else:
            for o1 in range(no):
                for o2 in range(o1 + 1, no):
                    m12 = base | outside[o1] | outside[o2]
                    for o3 in range(o2 + 1, no):
                        out[k] = m12 | outside[o3]
                        k += 1
    return out


@njit(**_JIT)
def add_multiplicity(counts, blocks, n, binom, cap):
    """counts[rank(S)] += 1 (saturating at cap) for each block meeting S in >= 3."""
    for j in range(blocks.shape[0]):
        nbr = neighborhood(blocks[j], n)
        for q in range(nbr.shape[0]):
            r = rank6(nbr[q], binom)
            if counts[r] < cap:
                counts[r] += 1


@njit(**_JIT)
def min_multiplicity(counts, block, n, binom):
    nbr = neighborhood(block, n)
    lowest = np.int64(1 << 30)
    for q in range(nbr.shape[0]):
        c = np.int64(counts[rank6(nbr[q], binom)])
        if c < lowest:
            lowest = c
            if lowest <= 1:
                break
    return lowest


@njit(**_JIT)
def exact_multiplicity(s, blocks, alive):
    c = 0
    for j in range(blocks.shape[0]):
        if alive[j] and popcount(s & blocks[j]) >= 3:
            c += 1
    return c


@njit(**_JIT)
def remove_block(counts, blocks, alive, j, n, binom, cap):
    """Drop block j, decrementing its neighbourhood; saturated counters are recounted.

    Returns the number of recounts performed.
    """
    alive[j] = False
    nbr = neighborhood(blocks[j], n)
    recounts = 0
    for q in range(nbr.shape[0]):
        r = rank6(nbr[q], binom)
        if counts[r] >= cap:
            counts[r] = min(exact_multiplicity(nbr[q], blocks, alive), cap)
            recounts += 1
        else:
            counts[r] -= 1
    return recounts


@njit(**_JIT)
def uncovered_without(block, blocks, skip, n):
    """Number of subsets meeting ``block`` in >= 3 that no other block (index != skip) covers."""
    nbr = neighborhood(block, n)
    nb = blocks.shape[0]
    missing = 0
    for q in range(nbr.shape[0]):
        s = nbr[q]
        hit = False
        for j in range(nb):
            if j != skip and popcount(s & blocks[j]) >= 3:
                hit = True
                break
        if not hit:
            missing += 1
    return missing


@njit(**_JIT)
def unrank_many(ranks, n, binom):
    out = np.empty(ranks.shape[0], dtype=np.uint64)
    for i in range(ranks.shape[0]):
        out[i] = unrank6(ranks[i], n, binom)
    return out


@njit(**_JIT)
def rank_many(subsets, binom):
    out = np.empty(subsets.shape[0], dtype=np.int64)
    for i in range(subsets.shape[0]):
        out[i] = rank6(subsets[i], binom)
    return out


@njit(**_JIT)
def mix_sum(ranks, blocks):
    total = np.uint64(0)
    for i in range(ranks.shape[0]):
        total += _mix(ranks[i], blocks[i])
    return total
