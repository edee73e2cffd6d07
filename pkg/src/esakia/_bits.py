"""Bitmask helpers: subsets of {0..n-1} as Python ints."""

from collections.abc import Iterable


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def bits(mask: int):
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def points_of(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def full_mask(n: int) -> int:
    return (1 << n) - 1


def subsets(mask: int):
    """Yield all submasks of mask, ascending in the induced counter order."""
    positions = list(bits(mask))
    for counter in range(1 << len(positions)):
        sub = 0
        c = counter
        i = 0
        while c:
            if c & 1:
                sub |= 1 << positions[i]
            c >>= 1
            i += 1
        yield sub
