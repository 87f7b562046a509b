"""Augmented posets, their ideal completions, truncation and bottom distributivity.

A family of subsets is either an explicit set of masks or one of the two
symbolic selections ``"powerset"`` (all subsets) and ``"nonempty"`` (all
nonempty subsets).  The symbolic kinds keep the power-set case cheap on
carriers where listing ``2**n`` masks would be wasteful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from ._bits import full, iter_bits, mask_of, subsets
from .closure import ClosureSpace
from .order import Poset

EXPLICIT, POWERSET, NONEMPTY = "explicit", "powerset", "nonempty"


@dataclass(frozen=True, eq=False)
class AugmentedPoset:
    poset: Poset
    kind: str = POWERSET
    sets: frozenset[int] = field(default_factory=frozenset)
    name: str = ""

    def __post_init__(self):
        if self.kind not in (EXPLICIT, POWERSET, NONEMPTY):
            raise ValueError(f"unknown family kind {self.kind!r}")
        carrier = self.poset.carrier
        for s in self.sets:
            if s & ~carrier:
                raise ValueError("family member out of range")

    # family constructors ------------------------------------------------

    @classmethod
    def explicit(cls, poset: Poset, sets: Iterable[int | Iterable[int]], name: str = "") -> "AugmentedPoset":
        masks = frozenset(s if isinstance(s, int) else mask_of(s) for s in sets)
        return cls(poset, EXPLICIT, masks, name)

    @classmethod
    def powerset(cls, poset: Poset) -> "AugmentedPoset":
        return cls(poset, POWERSET, frozenset(), "powerset")

    @classmethod
    def finite(cls, poset: Poset) -> "AugmentedPoset":
        # every subset of a finite carrier is finite
        return cls(poset, POWERSET, frozenset(), "finite")

    @classmethod
    def singletons(cls, poset: Poset) -> "AugmentedPoset":
        return cls.explicit(poset, (1 << i for i in range(poset.n)), "singletons")

    @classmethod
    def empty(cls, poset: Poset) -> "AugmentedPoset":
        return cls(poset, EXPLICIT, frozenset(), "empty")

    @classmethod
    def empty_set_only(cls, poset: Poset) -> "AugmentedPoset":
        return cls(poset, EXPLICIT, frozenset({0}), "emptyset")

    @classmethod
    def directed(cls, poset: Poset) -> "AugmentedPoset":
        sets = [m for m in subsets(poset.carrier) if m and _is_directed(poset, m)]
        return cls.explicit(poset, sets, "directed")

    @classmethod
    def chains(cls, poset: Poset) -> "AugmentedPoset":
        sets = [m for m in subsets(poset.carrier) if m and _is_chain(poset, m)]
        return cls.explicit(poset, sets, "chains")

    @classmethod
    def binary(cls, poset: Poset) -> "AugmentedPoset":
        sets = [(1 << i) | (1 << j) for i, j in combinations(range(poset.n), 2)]
        return cls.explicit(poset, sets, "binary")

    def with_family(self, other: "AugmentedPoset") -> "AugmentedPoset":
        """Union of the two families over the same poset."""
        if other.poset is not self.poset:
            raise ValueError("families live on different posets")
        kinds = {self.kind, other.kind}
        if POWERSET in kinds:
            return AugmentedPoset(self.poset, POWERSET, frozenset(), "powerset")
        if NONEMPTY in kinds:
            empty = 0 in self.sets or 0 in other.sets
            return AugmentedPoset(self.poset, POWERSET if empty else NONEMPTY, frozenset())
        return AugmentedPoset(self.poset, EXPLICIT, self.sets | other.sets)

    # family access -------------------------------------------------------

    @property
    def n(self) -> int:
        return self.poset.n

    def members(self) -> Iterator[int]:
        if self.kind == EXPLICIT:
            yield from sorted(self.sets)
        else:
            for m in subsets(self.poset.carrier):
                if m or self.kind == POWERSET:
                    yield m

    def contains(self, m: int) -> bool:
        if self.kind == POWERSET:
            return True
        if self.kind == NONEMPTY:
            return m != 0
        return m in self.sets

    def dotted(self) -> list[int]:
        """The family together with all singletons, deduplicated."""
        singles = {1 << i for i in range(self.n)}
        return sorted(set(self.members()) | singles)

    # ideals ----------------------------------------------------------------

    @cached_property
    def _step_cache(self) -> dict[int, int]:
        return {}

    @cached_property
    def _cut_of_members(self) -> tuple[tuple[int, int], ...]:
        return tuple((y, self.poset.cut(y)) for y in self.sets)

    def ideal_step(self, m: int) -> int:
        """One application of the preclosure: union of cuts of dotted members inside ``m``."""
        cache = self._step_cache
        if m in cache:
            return cache[m]
        p = self.poset
        if self.kind == POWERSET or (self.kind == NONEMPTY and m):
            out = p.cut(m) | p.down_closure(m)
        else:
            out = p.down_closure(m)
            for y, cy in self._cut_of_members:
                if y & ~m == 0:
                    out |= cy
        cache[m] = out
        return out

    def ideal_closure(self, m: int) -> int:
        while True:
            nxt = self.ideal_step(m)
            if nxt == m:
                return m
            m = nxt

    def is_ideal(self, m: int) -> bool:
        return self.ideal_step(m) == m

    @cached_property
    def bottom(self) -> int:
        """The least ideal; empty or a single element."""
        return self.ideal_closure(0)

    @cached_property
    def ideals(self) -> tuple[int, ...]:
        p = self.poset
        found = [d for d in p.down_sets() if self.is_ideal(d)]
        return tuple(sorted(found, key=lambda m: (m.bit_count(), m)))

    def ideal_system(self) -> ClosureSpace:
        return ClosureSpace(self.poset.labels, self.ideals)

    # bottom distributivity ------------------------------------------------------

    def polar(self, x: int) -> int:
        p, bot = self.poset, self.bottom
        dx = p.down[x]
        return mask_of(y for y in range(p.n) if dx & p.down[y] & ~bot == 0)

    def bottom_distributive(self) -> bool:
        """Every polar is an ideal; cross-checked against the witness form."""
        by_polars = all(self.is_ideal(self.polar(x)) for x in range(self.n))
        assert by_polars == (self.bottom_distributivity_witness() is None)
        return by_polars

    def bottom_distributivity_witness(self) -> tuple[int, int] | None:
        """A pair ``(a, Y)`` with ``a`` in cut(Y) minus the bottom yet disjoint from ``down(Y)``."""
        p, bot = self.poset, self.bottom
        rest = p.carrier & ~bot
        for y in self.members():
            dy = p.down_closure(y)
            for a in iter_bits(p.cut(y) & rest):
                if p.down[a] & dy & rest == 0:
                    return a, y
        return None

    # truncation -------------------------------------------------------------

    def truncate(self) -> tuple["AugmentedPoset", tuple[int, ...]]:
        """Remove the least ideal; return the truncated structure and its index map."""
        bot = self.bottom
        sub, keep = self.poset.subposet(self.poset.carrier & ~bot)
        if self.kind == EXPLICIT:
            where = {old: new for new, old in enumerate(keep)}
            sets = set()
            for x in self.sets:
                rest = x & ~bot
                if rest or bot == 0:
                    sets.add(mask_of(where[i] for i in iter_bits(rest)))
            return AugmentedPoset(sub, EXPLICIT, frozenset(sets), self.name), keep
        kind = self.kind if bot == 0 else NONEMPTY
        return AugmentedPoset(sub, kind, frozenset(), self.name), keep

    def describe(self) -> str:
        return self.name or (self.kind if self.kind != EXPLICIT else f"{len(self.sets)} sets")


def _is_directed(p: Poset, m: int) -> bool:
    for i in iter_bits(m):
        for j in iter_bits(m):
            if not p.up[i] & p.up[j] & m:
                return False
    return True


def _is_chain(p: Poset, m: int) -> bool:
    return all(p.leq(i, j) or p.leq(j, i) for i in iter_bits(m) for j in iter_bits(m))


def macneille_family(p: Poset) -> tuple[int, ...]:
    """All cuts of ``p``."""
    return tuple(sorted({p.cut(m) for m in subsets(p.carrier)}))


def alexandroff_family(p: Poset) -> tuple[int, ...]:
    return tuple(p.down_sets())


def ideal_lattice_iso(ap: AugmentedPoset) -> dict[int, int]:
    """The map ``I -> I minus bottom`` from ideals of ``ap`` to ideals of its truncation."""
    trunc, keep = ap.truncate()
    where = {old: new for new, old in enumerate(keep)}
    return {i: mask_of(where[x] for x in iter_bits(i & ~ap.bottom)) for i in ap.ideals}


__all__ = [
    "AugmentedPoset", "EXPLICIT", "POWERSET", "NONEMPTY",
    "macneille_family", "alexandroff_family", "ideal_lattice_iso", "full",
]
