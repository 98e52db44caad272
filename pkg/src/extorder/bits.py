"""Bit-mask helpers. A subset of element-ids is an ``int`` whose bit ``i`` is set iff ``i`` is a member."""

from __future__ import annotations

from typing import Iterable, Iterator

MAX_ELEMENTS = 62


def bits(mask: int) -> Iterator[int]:
    """Yield the element-ids in ``mask`` in increasing id order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def full(n: int) -> int:
    return (1 << n) - 1


def submasks(mask: int) -> Iterator[int]:
    """Every subset of ``mask``, including ``0`` and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def sort_key(mask: int) -> tuple[int, int]:
    """Canonical ordering used everywhere: cardinality first, then mask value."""
    return (popcount(mask), mask)


def sorted_masks(masks: Iterable[int]) -> list[int]:
    return sorted(set(masks), key=sort_key)


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def fmt(mask: int, labels: list[str] | tuple[str, ...] | None = None) -> str:
    """Compact string form, e.g. ``{1,4}`` with 1-based ids by default."""
    if labels is None:
        return "{" + ",".join(str(i + 1) for i in bits(mask)) + "}"
    return "{" + ",".join(labels[i] for i in bits(mask)) + "}"
