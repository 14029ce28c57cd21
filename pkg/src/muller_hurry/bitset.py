"""Vertex sets as machine-word bit masks.

A vertex set over a universe of at most 64 vertices is represented by a
plain ``int``: vertex ``v`` is a member iff bit ``1 << v`` is set.  All
set algebra is therefore ordinary integer bit twiddling; these helpers
only cover the handful of operations that are awkward to inline.
"""

from __future__ import annotations

from typing import Iterable, Iterator

MAX_VERTICES = 64


def bit(v: int) -> int:
    return 1 << v


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def full_mask(n: int) -> int:
    """Mask of the dense universe {0, ..., n-1}."""
    return (1 << n) - 1


def members(mask: int) -> tuple[int, ...]:
    """Vertices of a mask in ascending order."""
    return tuple(iter_members(mask))


def iter_members(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def size(mask: int) -> int:
    return mask.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_set(mask: int, names: tuple[str, ...] | None = None) -> str:
    if names is None:
        parts = [str(v) for v in iter_members(mask)]
    else:
        parts = [names[v] for v in iter_members(mask)]
    return "{" + ",".join(parts) + "}"
