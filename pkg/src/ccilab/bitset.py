"""Element sets as plain int bitmasks over a ground set {0, ..., n-1}.

Every set-valued quantity in this package (circuits, hyperplanes, classes
of a partition, ...) is an int whose bit i encodes membership of element i.
Python ints give us union/intersection/complement as single operations and
``int.bit_count()`` for cardinality; ground sets never exceed CAPACITY bits.
"""

from __future__ import annotations

from typing import Iterable, Iterator

# One machine word is plenty: the reduction machinery needs 2k-2 = 12
# elements for k = 7, catalogs stay below 16.  24 is a hard ceiling so a
# misconfigured catalog cannot silently explode subset enumerations.
DEFAULT_CAPACITY = 16
HARD_CAPACITY = 24

_capacity = DEFAULT_CAPACITY


def capacity() -> int:
    """Current ground-set capacity (max number of elements)."""
    return _capacity


def set_capacity(w: int) -> None:
    """Raise the ground-set capacity, up to the hard ceiling of 24 bits."""
    global _capacity
    if not DEFAULT_CAPACITY <= w <= HARD_CAPACITY:
        raise ValueError(f"capacity must be in [{DEFAULT_CAPACITY}, {HARD_CAPACITY}], got {w}")
    _capacity = w


def mask_of(elems: Iterable[int]) -> int:
    """Bitmask of the given element indices."""
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def indices(mask: int) -> Iterator[int]:
    """Iterate the element indices of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def index_tuple(mask: int) -> tuple[int, ...]:
    return tuple(indices(mask))


def full_mask(n: int) -> int:
    return (1 << n) - 1


def canon_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: cardinality first, then lexicographic on sorted indices."""
    return (mask.bit_count(), index_tuple(mask))


def sort_family(masks: Iterable[int]) -> tuple[int, ...]:
    """Deduplicate and sort a family of masks into canonical order."""
    return tuple(sorted(set(masks), key=canon_key))


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` (including 0 and mask itself)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def ksubsets(mask: int, k: int) -> list[int]:
    """All submasks of ``mask`` with exactly k bits, canonical order."""
    from itertools import combinations

    elems = index_tuple(mask)
    return [mask_of(c) for c in combinations(elems, k)]
