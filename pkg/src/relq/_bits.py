"""Small helpers for subsets encoded as Python ints (bit i set <=> element i present)."""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def iter_bits(m: int) -> Iterator[int]:
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


def bits(m: int) -> list[int]:
    return list(iter_bits(m))


def full(n: int) -> int:
    return (1 << n) - 1


def popcount(m: int) -> int:
    return m.bit_count()


def spread(m: int, stride: int) -> int:
    """Move bit i of ``m`` to bit ``i * stride``.

    Multiplying the result by a mask narrower than ``stride`` yields the
    outer product of the two masks in row-major pair encoding.
    """
    out = 0
    for i in iter_bits(m):
        out |= 1 << (i * stride)
    return out


def subsets(m: int) -> Iterator[int]:
    """All submasks of ``m``, including 0 and ``m`` itself."""
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m
