"""Finite closure spaces given by an explicit intersection-closed family."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from ._bits import full, iter_bits, mask_of
from .order import OrderError, Poset


class ClosureError(ValueError):
    pass


def intersection_closure(sets: Iterable[int], ground: int) -> tuple[int, ...]:
    """Close a family of masks under binary intersection and add ``ground``."""
    family = {ground} | set(sets)
    frontier = list(family)
    while frontier:
        new = []
        for a in frontier:
            for b in list(family):
                c = a & b
                if c not in family:
                    family.add(c)
                    new.append(c)
        frontier = new
    return tuple(sorted(family, key=lambda m: (m.bit_count(), m)))


@dataclass(frozen=True)
class SpaceProperties:
    unbounded: bool
    uniquely_bounded: bool
    t0: bool
    polarized: bool
    bottom: int
    # specialization preorder: below[x] = closure of {x}
    specialization: tuple[int, ...]
    non_closed_polars: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ClosureSpace:
    """Ground set ``0..n-1`` with its closed sets stored explicitly."""

    labels: tuple[str, ...]
    closed: tuple[int, ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ClosureError(f"duplicate point label in {self.labels!r}")
        fam = set(self.closed)
        if full(n) not in fam:
            raise ClosureError("the ground set must be closed")
        for a in self.closed:
            if a >> n:
                raise ClosureError("closed set out of range")
            for b in self.closed:
                if a & b not in fam:
                    raise ClosureError("closed family is not intersection-closed")

    @classmethod
    def from_generators(cls, n: int, sets: Iterable[Iterable[int] | int],
                        labels: Sequence[str] | None = None) -> "ClosureSpace":
        masks = []
        for s in sets:
            m = s if isinstance(s, int) else mask_of(s)
            if m >> n:
                raise ClosureError(f"point out of range in generator {s!r}")
            masks.append(m)
        labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        return cls(labels, intersection_closure(masks, full(n)))

    @classmethod
    def discrete(cls, n: int, labels: Sequence[str] | None = None) -> "ClosureSpace":
        return cls.from_generators(n, [full(n) & ~(1 << i) for i in range(n)], labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def ground(self) -> int:
        return full(self.n)

    def __repr__(self) -> str:
        return f"ClosureSpace({list(self.labels)!r}, {len(self.closed)} closed sets)"

    @cached_property
    def _closed_set(self) -> frozenset[int]:
        return frozenset(self.closed)

    def is_closed(self, m: int) -> bool:
        return m in self._closed_set

    def closure(self, m: int) -> int:
        out = self.ground
        for c in self.closed:
            if m & ~c == 0:
                out &= c
        return out

    @cached_property
    def bottom(self) -> int:
        return self.closure(0)

    @cached_property
    def point_closures(self) -> tuple[int, ...]:
        return tuple(self.closure(1 << x) for x in range(self.n))

    def polar(self, x: int) -> int:
        pc, bot = self.point_closures, self.bottom
        return mask_of(y for y in range(self.n) if pc[x] & pc[y] == bot)

    @cached_property
    def properties(self) -> SpaceProperties:
        pc = self.point_closures
        bad = tuple(x for x in range(self.n) if not self.is_closed(self.polar(x)))
        return SpaceProperties(
            unbounded=self.bottom == 0,
            uniquely_bounded=self.bottom.bit_count() == 1,
            t0=len(set(pc)) == self.n,
            polarized=not bad,
            bottom=self.bottom,
            specialization=pc,
            non_closed_polars=bad,
        )

    def specialization_poset(self) -> Poset:
        if not self.properties.t0:
            raise ClosureError("specialization order is only a preorder (space is not T0)")
        return Poset(self.labels, self.point_closures)

    def set_label(self, m: int) -> str:
        return "{" + " ".join(self.labels[i] for i in iter_bits(m)) + "}"

    def lattice(self) -> Poset:
        """The closed sets ordered by inclusion; index ``k`` is ``closed[k]``."""
        return self._lattice

    @cached_property
    def _lattice(self) -> Poset:
        cl = self.closed
        down = tuple(mask_of(j for j, d in enumerate(cl) if d & ~c == 0) for c in cl)
        return Poset(tuple(self.set_label(c) for c in cl), down)

    def subspace(self, m: int) -> tuple["ClosureSpace", tuple[int, ...]]:
        keep = tuple(iter_bits(m))
        where = {old: new for new, old in enumerate(keep)}

        def remap(c):
            return mask_of(where[i] for i in iter_bits(c & m))

        closed = intersection_closure((remap(c) for c in self.closed), full(len(keep)))
        return ClosureSpace(tuple(self.labels[i] for i in keep), closed), keep

    def coreflection(self) -> tuple["ClosureSpace", tuple[int, ...]]:
        """The unbounded subspace on the points outside the least closed set."""
        return self.subspace(self.ground & ~self.bottom)


def principal_ideal_space(p: Poset) -> ClosureSpace:
    """Closure space of a complete lattice whose closed sets are its principal ideals."""
    if not p.is_complete_lattice:
        raise OrderError("principal ideal space needs a complete lattice")
    return ClosureSpace(p.labels, tuple(sorted(set(p.down), key=lambda m: (m.bit_count(), m))))
