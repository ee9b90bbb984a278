"""Bitmask helpers for dense index sets.

Elements and points are integers 0..n-1 throughout the package; subsets are
plain ints with bit i set iff i is a member.  Families of subsets are tuples
of masks sorted by :func:`subset_key`, which is the package-wide canonical
order.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def subset_key(mask: int) -> tuple[int, ...]:
    """Canonical sort key: lexicographic on the sorted member tuple."""
    return tuple(bits(mask))


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """Every subset of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def canonical_family(masks: Iterable[int]) -> tuple[int, ...]:
    """Dedupe and sort a family of subsets into canonical order."""
    return tuple(sorted(set(masks), key=subset_key))
