"""Finite posets: down-sets, cuts, joins, polars and structural properties.

Elements are indexed ``0..n-1``; labels are only for presentation.  Subsets
of a poset are int bitmasks (see :mod:`relq._bits`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as _cartesian
from typing import Iterable, Sequence

from ._bits import bits, full, iter_bits, mask_of


class OrderError(ValueError):
    """Raised for malformed orders (duplicate labels, cycles, unknown labels)."""


@dataclass(frozen=True)
class PosetProperties:
    complete_lattice: bool
    pseudocomplemented: bool
    atomic: bool
    atomistic: bool
    distributive: bool
    boolean: bool
    atoms: tuple[int, ...]
    bottom: int | None
    top: int | None
    # elements whose polar has no greatest element
    missing_pseudocomplements: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Poset:
    """An immutable finite partial order.

    ``down[i]`` is the bitmask of all ``j`` with ``j <= i``.
    """

    labels: tuple[str, ...]
    down: tuple[int, ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise OrderError(f"duplicate label in {self.labels!r}")
        if len(self.down) != n:
            raise OrderError("down table does not match label count")
        for i, d in enumerate(self.down):
            if not d >> i & 1:
                raise OrderError(f"relation is not reflexive at {self.labels[i]!r}")
            if d >> n:
                raise OrderError("down table references elements out of range")
            for j in iter_bits(d):
                if j != i and self.down[j] >> i & 1:
                    raise OrderError(
                        f"cycle between {self.labels[i]!r} and {self.labels[j]!r}")
                if self.down[j] & ~d:
                    raise OrderError("relation is not transitive")

    # construction -----------------------------------------------------

    @classmethod
    def from_covers(cls, labels: Sequence[str], covers: Iterable[tuple[str, str]]) -> "Poset":
        """Reflexive-transitive closure of the given ``(lower, upper)`` pairs."""
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            dup = next(x for x in labels if labels.count(x) > 1)
            raise OrderError(f"duplicate label {dup!r}")
        pos = {x: i for i, x in enumerate(labels)}
        below = [1 << i for i in range(len(labels))]
        for lo, hi in covers:
            for x in (lo, hi):
                if x not in pos:
                    raise OrderError(f"unknown label {x!r}")
            below[pos[hi]] |= 1 << pos[lo]
        # transitive closure by propagation until stable
        changed = True
        while changed:
            changed = False
            for i in range(len(labels)):
                acc = below[i]
                for j in iter_bits(below[i]):
                    acc |= below[j]
                if acc != below[i]:
                    below[i] = acc
                    changed = True
        for i, d in enumerate(below):
            for j in iter_bits(d):
                if j != i and below[j] >> i & 1:
                    raise OrderError(f"cycle through {labels[i]!r} and {labels[j]!r}")
        return cls(labels, tuple(below))

    @classmethod
    def from_leq(cls, labels: Sequence[str], leq) -> "Poset":
        """Build from a boolean matrix (anything indexable as ``leq[i][j]``)."""
        n = len(labels)
        down = tuple(mask_of(j for j in range(n) if leq[j][i]) for i in range(n))
        return cls(tuple(str(x) for x in labels), down)

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls.from_covers([str(i) for i in range(n)], [(str(i), str(i + 1)) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n: int, labels: Sequence[str] | None = None) -> "Poset":
        labels = tuple(labels) if labels else tuple(chr(ord("a") + i) for i in range(n))
        return cls(labels, tuple(1 << i for i in range(n)))

    @classmethod
    def powerset(cls, atoms: Sequence[str]) -> "Poset":
        k = len(atoms)
        names = []
        for m in range(1 << k):
            names.append("".join(atoms[i] for i in iter_bits(m)) or "0")
        if k > 0:
            names[-1] = "1" if k > 1 else names[-1]
        down = tuple(mask_of(s for s in range(1 << k) if s & m == s) for m in range(1 << k))
        return cls(tuple(names), down)

    # basic access ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Poset({list(self.labels)!r})"

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._pos[str(label)]
        except KeyError:
            raise OrderError(f"unknown label {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(x) for x in labels)

    def names(self, m: int) -> list[str]:
        return [self.labels[i] for i in iter_bits(m)]

    @cached_property
    def up(self) -> tuple[int, ...]:
        return tuple(mask_of(j for j in range(self.n) if self.down[j] >> i & 1) for i in range(self.n))

    @property
    def carrier(self) -> int:
        return full(self.n)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def covers(self) -> list[tuple[int, int]]:
        """Pairs ``(i, j)`` where ``j`` covers ``i``."""
        out = []
        for j in range(self.n):
            strict = self.down[j] & ~(1 << j)
            for i in iter_bits(strict):
                if not any(k != i and self.down[k] >> i & 1 for k in iter_bits(strict)):
                    out.append((i, j))
        return out

    # closure operators on subsets --------------------------------------

    def down_closure(self, m: int) -> int:
        out = 0
        for i in iter_bits(m):
            out |= self.down[i]
        return out

    def up_closure(self, m: int) -> int:
        out = 0
        for i in iter_bits(m):
            out |= self.up[i]
        return out

    def upper_bounds(self, m: int) -> int:
        out = self.carrier
        for i in iter_bits(m):
            out &= self.up[i]
        return out

    def lower_bounds(self, m: int) -> int:
        out = self.carrier
        for i in iter_bits(m):
            out &= self.down[i]
        return out

    def cut(self, m: int) -> int:
        """Intersection of all principal ideals containing ``m``.

        With no upper bound at all the intersection is empty and the whole
        carrier is returned.
        """
        out = self.carrier
        for y in iter_bits(self.upper_bounds(m)):
            out &= self.down[y]
        return out

    def is_down_set(self, m: int) -> bool:
        return self.down_closure(m) == m

    def down_sets(self) -> list[int]:
        """All down-sets, in increasing numeric order."""
        found = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for d in frontier:
                for i in range(self.n):
                    if not d >> i & 1 and self.down[i] & ~(1 << i) & ~d == 0:
                        e = d | 1 << i
                        if e not in found:
                            found.add(e)
                            nxt.append(e)
            frontier = nxt
        return sorted(found)

    # bounds ------------------------------------------------------------

    def least_of(self, m: int) -> int | None:
        for i in iter_bits(m):
            if m & ~self.up[i] == 0:
                return i
        return None

    def greatest_of(self, m: int) -> int | None:
        for i in iter_bits(m):
            if m & ~self.down[i] == 0:
                return i
        return None

    def join(self, m: int) -> int | None:
        return self.least_of(self.upper_bounds(m))

    def meet(self, m: int) -> int | None:
        return self.greatest_of(self.lower_bounds(m))

    def join2(self, i: int, j: int) -> int | None:
        return self.least_of(self.up[i] & self.up[j])

    def meet2(self, i: int, j: int) -> int | None:
        return self.greatest_of(self.down[i] & self.down[j])

    @cached_property
    def bottom(self) -> int | None:
        return self.least_of(self.carrier)

    @cached_property
    def top(self) -> int | None:
        return self.greatest_of(self.carrier)

    # polars -------------------------------------------------------------

    def polar(self, x: int) -> int:
        """Elements ``y`` with ``down(x) & down(y)`` equal to the cut of the empty set."""
        zero = self.cut(0)
        dx = self.down[x]
        return mask_of(y for y in range(self.n) if dx & self.down[y] == zero)

    def pseudocomplement(self, x: int) -> int | None:
        return self.greatest_of(self.polar(x))

    # structure ----------------------------------------------------------

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        rest = self.carrier & ~self.cut(0)
        return tuple(i for i in iter_bits(rest) if self.down[i] & rest == 1 << i)

    @cached_property
    def properties(self) -> PosetProperties:
        n = self.n
        bottom, top = self.bottom, self.top
        lattice = n > 0 and bottom is not None and top is not None and all(
            self.join2(i, j) is not None and self.meet2(i, j) is not None
            for i in range(n) for j in range(i + 1, n))
        missing = tuple(x for x in range(n) if self.pseudocomplement(x) is None)
        atoms = self.atoms
        atom_mask = mask_of(atoms)
        rest = self.carrier & ~self.cut(0)
        atomic = all(self.down[x] & atom_mask for x in iter_bits(rest))
        atomistic = all(self.join(self.down[x] & atom_mask) == x for x in range(n))
        distributive = lattice and all(
            self.meet2(a, self.join2(b, c)) == self.join2(self.meet2(a, b), self.meet2(a, c))
            for a, b, c in _cartesian(range(n), repeat=3))
        complemented = lattice and all(
            any(self.meet2(x, y) == bottom and self.join2(x, y) == top for y in range(n))
            for x in range(n))
        return PosetProperties(
            complete_lattice=lattice,
            pseudocomplemented=not missing,
            atomic=atomic,
            atomistic=atomistic,
            distributive=distributive,
            boolean=bool(distributive and complemented),
            atoms=atoms,
            bottom=bottom,
            top=top,
            missing_pseudocomplements=missing,
        )

    @property
    def is_complete_lattice(self) -> bool:
        return self.properties.complete_lattice

    # derived posets -----------------------------------------------------

    def dual(self) -> "Poset":
        return Poset(self.labels, self.up)

    def subposet(self, m: int) -> tuple["Poset", tuple[int, ...]]:
        """Induced order on ``m``; returns the subposet and its index map."""
        keep = tuple(bits(m))
        where = {old: new for new, old in enumerate(keep)}
        down = tuple(mask_of(where[j] for j in iter_bits(self.down[i] & m)) for i in keep)
        return Poset(tuple(self.labels[i] for i in keep), down), keep

    def relabel(self, labels: Sequence[str]) -> "Poset":
        return Poset(tuple(labels), self.down)

    def permuted(self, perm: Sequence[int]) -> "Poset":
        """Poset with element ``i`` renamed to position ``perm[i]``."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        labels = tuple(self.labels[inv[p]] for p in range(n))
        down = tuple(mask_of(perm[j] for j in iter_bits(self.down[inv[p]])) for p in range(n))
        return Poset(labels, down)


def product(a: Poset, b: Poset) -> Poset:
    """Componentwise order on pairs, pair ``(i, j)`` at index ``i * len(b) + j``."""
    m = b.n
    labels = tuple(f"({x},{y})" for x in a.labels for y in b.labels)
    down = []
    for i in range(a.n):
        for j in range(b.n):
            d = 0
            for i2 in iter_bits(a.down[i]):
                d |= b.down[j] << (i2 * m)
            down.append(d)
    return Poset(labels, tuple(down))


def is_isomorphic(p: Poset, q: Poset) -> bool:
    from .corpus import canonical_form
    return p.n == q.n and canonical_form(p) == canonical_form(q)
