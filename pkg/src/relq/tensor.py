"""Tensors between closure spaces and augmented posets.

Relations are int bitmasks over a ``p x q`` grid with pair ``(a, b)`` at bit
``a * q + b``.  Two kinds of base are provided:

* :class:`SpaceProduct` holds the tensors of two closure spaces: relations whose
  row and column slices are all closed.
* :class:`TensorBase` holds the truncated tensor product of two augmented
  posets.  Its carriers are the posets with their least ideal removed, and it
  adds the rectangle operator ``t`` and its fixpoint ``closure``.

Both enumerate their tensors with NextClosure over the slice closure, which
does not involve ``t`` and so serves as an independent reference.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from ._bits import full, iter_bits, mask_of, spread, subsets
from .closure import ClosureSpace, principal_ideal_space
from .completions import EXPLICIT, AugmentedPoset
from .order import Poset

DEFAULT_MAX_TENSORS = 4096


class TensorError(ValueError):
    pass


class GuardExceeded(RuntimeError):
    """Raised when an enumeration would exceed the configured tensor bound."""

    def __init__(self, bound: int, what: str = "tensors"):
        super().__init__(
            f"more than {bound} {what}; raise the bound with --max-tensors N "
            f"or the RELQ_MAX_TENSORS environment variable")
        self.bound = bound


def max_tensors(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("RELQ_MAX_TENSORS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise TensorError(f"RELQ_MAX_TENSORS is not an integer: {env!r}") from None
    return DEFAULT_MAX_TENSORS


def next_closure(n: int, close: Callable[[int], int], guard: int | None = None) -> list[int]:
    """All closed subsets of an ``n``-bit universe in lectic order (Ganter)."""
    bound = max_tensors(guard)
    a = close(0)
    out = [a]
    while a != full(n):
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                a &= ~bit
                continue
            b = close(a | bit)
            if b & (bit - 1) & ~a == 0:
                a = b
                break
        else:  # pragma: no cover - the full set is always closed
            break
        out.append(a)
        if len(out) > bound:
            raise GuardExceeded(bound)
    return out


class ProductBase:
    """Grid of ``p x q`` pairs with a closure operator on each axis."""

    p: int
    q: int
    left_labels: tuple[str, ...]
    right_labels: tuple[str, ...]

    def left_close(self, m: int) -> int:
        raise NotImplementedError

    def right_close(self, m: int) -> int:
        raise NotImplementedError

    # grid helpers ----------------------------------------------------------

    @property
    def size(self) -> int:
        return self.p * self.q

    @property
    def top(self) -> int:
        return full(self.size)

    def bit(self, a: int, b: int) -> int:
        return 1 << (a * self.q + b)

    def pairs(self, r: int) -> list[tuple[int, int]]:
        q = self.q
        return [divmod(k, q) for k in iter_bits(r)]

    def from_pairs(self, pairs: Iterable[tuple[int, int]]) -> int:
        q = self.q
        return mask_of(a * q + b for a, b in pairs)

    def row(self, r: int, a: int) -> int:
        return (r >> (a * self.q)) & full(self.q)

    def col(self, r: int, b: int) -> int:
        out, q = 0, self.q
        r >>= b
        for a in range(self.p):
            if r >> (a * q) & 1:
                out |= 1 << a
        return out

    def rect(self, xs: int, ys: int) -> int:
        return spread(xs, self.q) * ys

    def transpose(self, r: int) -> int:
        p, q = self.p, self.q
        return mask_of(b * p + a for a, b in self.pairs(r))

    def pair_label(self, a: int, b: int) -> str:
        return f"({self.left_labels[a]},{self.right_labels[b]})"

    def format(self, r: int) -> str:
        return "{" + " ".join(self.pair_label(a, b) for a, b in self.pairs(r)) + "}"

    # tensors -----------------------------------------------------------------

    def is_tensor(self, r: int) -> bool:
        """Every row slice and every column slice is closed."""
        for a in range(self.p):
            row = self.row(r, a)
            if self.right_close(row) != row:
                return False
        for b in range(self.q):
            col = self.col(r, b)
            if self.left_close(col) != col:
                return False
        return True

    def slice_closure(self, r: int) -> int:
        """Least tensor containing ``r``, by closing rows and columns until stable."""
        p, q = self.p, self.q
        rows = [self.row(r, a) for a in range(p)]
        while True:
            changed = False
            for a in range(p):
                c = self.right_close(rows[a])
                if c != rows[a]:
                    rows[a] = c
                    changed = True
            for b in range(q):
                col = mask_of(a for a in range(p) if rows[a] >> b & 1)
                c = self.left_close(col)
                if c != col:
                    for a in iter_bits(c & ~col):
                        rows[a] |= 1 << b
                    changed = True
            if not changed:
                return mask_of_rows(rows, q)

    def enumerate(self, guard: int | None = None) -> "TensorFamily":
        return TensorFamily(self, next_closure(self.size, self.slice_closure, guard))

    @cached_property
    def family(self) -> "TensorFamily":
        """The tensor family under the default guard (cached)."""
        return self.enumerate()


def mask_of_rows(rows: Sequence[int], q: int) -> int:
    out = 0
    for a, row in enumerate(rows):
        out |= row << (a * q)
    return out


# closure spaces --------------------------------------------------------------


class SpaceProduct(ProductBase):
    """Tensor product of two closure spaces on the full product of their points."""

    def __init__(self, left: ClosureSpace, right: ClosureSpace):
        self.left, self.right = left, right
        self.p, self.q = left.n, right.n
        self.left_labels, self.right_labels = left.labels, right.labels
        self._lc: dict[int, int] = {}
        self._rc: dict[int, int] = {}

    def left_close(self, m: int) -> int:
        c = self._lc.get(m)
        if c is None:
            c = self._lc[m] = self.left.closure(m)
        return c

    def right_close(self, m: int) -> int:
        c = self._rc.get(m)
        if c is None:
            c = self._rc[m] = self.right.closure(m)
        return c

    @cached_property
    def cross(self) -> int:
        """The least tensor: ``(bottom_A x UB) | (UA x bottom_B)``."""
        return self.rect(self.left.bottom, full(self.q)) | self.rect(full(self.p), self.right.bottom)

    def pure(self, x: int, y: int) -> int:
        return self.rect(self.left.point_closures[x], self.right.point_closures[y]) | self.cross

    def is_tensor_rect(self, r: int) -> bool:
        """Rectangle form: ``X x Y`` inside ``r`` forces ``cl X x cl Y`` inside ``r``.

        Only maximal rectangles need checking; empty sides are included, so
        the cross is forced too.
        """
        for ys in subsets(full(self.q)):
            xs = mask_of(x for x in range(self.p) if ys & ~self.row(r, x) == 0)
            if self.rect(self.left.closure(xs), self.right.closure(ys)) & ~r:
                return False
        return True

    def truncated(self) -> "SpaceProduct":
        """Tensor product of the unbounded coreflections."""
        return SpaceProduct(self.left.coreflection()[0], self.right.coreflection()[0])

    def strip(self, t: int) -> int:
        """``T -> T minus the cross``, reindexed onto the coreflections."""
        lk = list(iter_bits(full(self.p) & ~self.left.bottom))
        rk = list(iter_bits(full(self.q) & ~self.right.bottom))
        qq = len(rk)
        out = 0
        for i, a in enumerate(lk):
            for j, b in enumerate(rk):
                if t & self.bit(a, b):
                    out |= 1 << (i * qq + j)
        return out

    def unstrip(self, t: int) -> int:
        lk = list(iter_bits(full(self.p) & ~self.left.bottom))
        rk = list(iter_bits(full(self.q) & ~self.right.bottom))
        qq = len(rk)
        out = self.cross
        for k in iter_bits(t):
            i, j = divmod(k, qq)
            out |= self.bit(lk[i], rk[j])
        return out


def lattice_iso_h(prod: SpaceProduct, t: int) -> tuple["TensorBase", int]:
    """``h(T) = {(X, Y) closed : X x Y inside T}`` as a full tensor of the closed-set lattices."""
    if not prod.is_tensor(t):
        raise TensorError("argument is not a tensor")
    lat = closed_lattice_product(prod)
    ca, cb = prod.left.closed, prod.right.closed
    out = 0
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            if prod.rect(x, y) & ~t == 0:
                out |= lat.bit(i, j)
    return lat, out


def lattice_iso_h_inverse(prod: SpaceProduct, big: int) -> int:
    """Inverse of :func:`lattice_iso_h`: ``{(x, y) : h(x (x) y) inside the argument}``."""
    out = 0
    for x in range(prod.p):
        for y in range(prod.q):
            _, hp = lattice_iso_h(prod, prod.pure(x, y))
            if hp & ~big == 0:
                out |= prod.bit(x, y)
    return out


_lattice_products: dict[int, SpaceProduct] = {}


def closed_lattice_product(prod: SpaceProduct) -> SpaceProduct:
    """Space product of the principal-ideal spaces of the two closed-set lattices."""
    key = id(prod)
    hit = _lattice_products.get(key)
    if hit is None or hit._owner is not prod:
        hit = SpaceProduct(principal_ideal_space(prod.left.lattice()),
                           principal_ideal_space(prod.right.lattice()))
        hit._owner = prod
        _lattice_products[key] = hit
    return hit


def truncated_lattice_iso(prod: SpaceProduct, t: int) -> tuple["TensorBase", int]:
    """The truncated variant: closed pairs ``(X, Y)`` away from the bottoms, ``X x Y`` inside ``T``."""
    base = lattice_tensor_base(prod)
    lk, rk = base.left_keep, base.right_keep
    ca, cb = prod.left.closed, prod.right.closed
    out = 0
    for i, x in enumerate(lk):
        for j, y in enumerate(rk):
            if prod.rect(ca[x], cb[y]) & ~t == 0:
                out |= base.bit(i, j)
    return base, out


def truncated_lattice_iso_inverse(prod: SpaceProduct, small: int) -> int:
    base = lattice_tensor_base(prod)
    lk, rk = base.left_keep, base.right_keep
    ca, cb = prod.left.closed, prod.right.closed
    out = prod.cross
    for i, j in base.pairs(small):
        out |= prod.rect(ca[lk[i]], cb[rk[j]])
    return out


_lattice_families: dict[int, tuple[ClosureSpace, AugmentedPoset]] = {}


def lattice_family(space: ClosureSpace) -> AugmentedPoset:
    """The closed-set lattice of a space with the power-set family, one object per space."""
    hit = _lattice_families.get(id(space))
    if hit is None or hit[0] is not space:
        hit = _lattice_families[id(space)] = (space, AugmentedPoset.powerset(space.lattice()))
    return hit[1]


def lattice_tensor_base(prod: SpaceProduct) -> "TensorBase":
    return BASES.get(lattice_family(prod.left), lattice_family(prod.right))


# augmented posets ------------------------------------------------------------


class TensorBase(ProductBase):
    """Truncated tensor product of two augmented posets."""

    def __init__(self, left: AugmentedPoset, right: AugmentedPoset):
        self.left, self.right = left, right
        self.lt, self.left_keep = left.truncate()
        self.rt, self.right_keep = right.truncate()
        self.p, self.q = self.lt.n, self.rt.n
        self.left_labels = self.lt.poset.labels
        self.right_labels = self.rt.poset.labels

    def __repr__(self) -> str:
        return (f"TensorBase({list(self.left.poset.labels)}/{self.left.describe()}, "
                f"{list(self.right.poset.labels)}/{self.right.describe()})")

    def left_close(self, m: int) -> int:
        return self.lt.ideal_closure(m)

    def right_close(self, m: int) -> int:
        return self.rt.ideal_closure(m)

    # order -------------------------------------------------------------------

    def principal(self, a: int, b: int) -> int:
        """``down (a, b)`` in the truncated product: the pure tensor of ``(a, b)``."""
        return self.rect(self.lt.poset.down[a], self.rt.poset.down[b])

    def pure_tensor(self, x: str | int, y: str | int) -> int:
        """Pure tensor of two elements of the original carriers."""
        a = self._truncated_index(self.left, self.left_keep, x)
        b = self._truncated_index(self.right, self.right_keep, y)
        return self.principal(a, b)

    @staticmethod
    def _truncated_index(ap: AugmentedPoset, keep, x) -> int:
        i = ap.poset.index(x) if isinstance(x, str) else x
        if ap.bottom >> i & 1:
            raise TensorError(f"{ap.poset.labels[i]!r} lies in the least ideal and has no truncated pure tensor")
        return keep.index(i)

    def down_closure(self, r: int) -> int:
        out = 0
        for a, b in self.pairs(r):
            out |= self.principal(a, b)
        return out

    def is_down_set(self, r: int) -> bool:
        return self.down_closure(r) == r

    def down_sets(self) -> Iterable[int]:
        """All lower relations, generated by recursion on a maximal pair."""
        down = [self.principal(a, b) for a in range(self.p) for b in range(self.q)]
        up = [0] * self.size
        for k, d in enumerate(down):
            for j in iter_bits(d):
                up[j] |= 1 << k

        def rec(avail: int, acc: int):
            if not avail:
                yield acc
                return
            k = avail.bit_length() - 1
            yield from rec(avail & ~up[k], acc)
            yield from rec(avail & ~down[k], acc | down[k])

        yield from rec(self.top, 0)

    # rectangle operator -------------------------------------------------------

    @cached_property
    def _left_generators(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(X, cut X)`` indexing the rectangles used by ``t``.

        For symbolic families only antichains are needed, since both the cut
        and the common row set of ``X`` depend only on its maximal elements.
        """
        lt = self.lt
        po = lt.poset
        if lt.kind == EXPLICIT:
            xs = lt.dotted()
        else:
            xs = [m for m in antichains(po) if m or lt.contains(0)]
        return tuple((x, po.cut(x)) for x in xs)

    def t(self, r: int) -> int:
        """One step of the rectangle operator on a lower relation."""
        q = self.q
        fq = full(q)
        rows = [(r >> (a * q)) & fq for a in range(self.p)]
        out = 0
        step = self.rt.ideal_step
        for xs, cx in self._left_generators:
            w = fq
            for a in iter_bits(xs):
                w &= rows[a]
                if not w:
                    break
            if xs and not w:
                continue
            dw = step(w)
            if dw and cx:
                out |= spread(cx, q) * dw
        return out

    def is_tensor_rect(self, r: int) -> bool:
        """Down-set whose rectangles over the dotted families propagate to cut rectangles."""
        if not self.is_down_set(r):
            return False
        lpo, rpo = self.lt.poset, self.rt.poset
        left = [x for x in self.lt.dotted()]
        right = [y for y in self.rt.dotted()]
        for x in left:
            for y in right:
                box = self.rect(x, y)
                if box & ~r == 0 and self.rect(lpo.cut(x), rpo.cut(y)) & ~r:
                    return False
        return True

    def closure(self, r: int) -> int:
        """Least tensor above a relation, by iterating ``t`` on its down-closure."""
        r = self.down_closure(r)
        while True:
            n = self.t(r)
            if n == r:
                return r
            r = n

    def t_iterates(self, r: int, k: int) -> list[int]:
        out = [self.down_closure(r)]
        for _ in range(k):
            out.append(self.t(out[-1]))
        return out

    # batched operator for sweeps ------------------------------------------------

    @cached_property
    def _right_step_table(self) -> np.ndarray:
        if self.q > 20:
            raise TensorError("right carrier too large for a step lookup table")
        step = self.rt.ideal_step
        return np.array([step(m) for m in range(1 << self.q)], dtype=np.uint64)

    def t_rows_batch(self, rows: np.ndarray) -> np.ndarray:
        """Apply ``t`` to many relations at once; ``rows`` has shape ``(count, p)``."""
        rows = np.asarray(rows, dtype=np.uint64)
        table = self._right_step_table
        fq = np.uint64(full(self.q))
        out = np.zeros_like(rows)
        for xs, cx in self._left_generators:
            w = np.full(rows.shape[0], fq, dtype=np.uint64)
            for a in iter_bits(xs):
                w &= rows[:, a]
            dw = table[w.astype(np.int64)]
            if xs:
                dw = np.where(w == 0, np.uint64(0), dw)
            for a in iter_bits(cx):
                out[:, a] |= dw
        return out

    def closure_rows_batch(self, rows: np.ndarray) -> np.ndarray:
        """Iterate ``t`` on many lower relations at once until each row set is stable."""
        cur = np.array(rows, dtype=np.uint64).reshape(-1, self.p)
        active = np.arange(cur.shape[0])
        while active.size:
            nxt = self.t_rows_batch(cur[active])
            moved = (nxt != cur[active]).any(axis=1)
            cur[active] = nxt
            active = active[moved]
        return cur

    def to_rows(self, rels: Iterable[int]) -> np.ndarray:
        return np.array([[self.row(r, a) for a in range(self.p)] for r in rels],
                        dtype=np.uint64).reshape(-1, self.p)

    def from_rows(self, rows: np.ndarray) -> list[int]:
        q = self.q
        return [mask_of_rows([int(v) for v in line], q) for line in rows]

    # the full (untruncated) form --------------------------------------------------

    @cached_property
    def full_base(self) -> SpaceProduct:
        return SpaceProduct(self.left.ideal_system(), self.right.ideal_system())

    def to_full(self, t: int) -> int:
        fb = self.full_base
        out = fb.cross
        for a, b in self.pairs(t):
            out |= fb.bit(self.left_keep[a], self.right_keep[b])
        return out

    def from_full(self, t: int) -> int:
        fb = self.full_base
        out = 0
        for a, x in enumerate(self.left_keep):
            for b, y in enumerate(self.right_keep):
                if t & fb.bit(x, y):
                    out |= self.bit(a, b)
        return out

    def full_pure_tensor(self, x: int, y: int) -> int:
        """``down (x, y)`` together with the obligatory cross, in the full form."""
        fb = self.full_base
        return fb.rect(self.left.poset.down[x], self.right.poset.down[y]) | fb.cross

    # maps ---------------------------------------------------------------------------

    def galois_map(self, t: int) -> tuple[int, ...]:
        """``x -> max(row of x in the full form)``; needs the right family to be the power set."""
        full_t = self.to_full(t)
        fb = self.full_base
        po = self.right.poset
        out = []
        for x in range(self.left.n):
            row = fb.row(full_t, x)
            m = po.greatest_of(row)
            if m is None or po.down[m] != row:
                raise TensorError(
                    f"row of {self.left.poset.labels[x]!r} has no maximum; not a tensor of this form")
            out.append(m)
        return tuple(out)

    def tensor_of_map(self, f: Sequence[int]) -> int:
        """``{(x, y) in the truncated carriers : f(x) >= y}``."""
        po = self.right.poset
        out = 0
        for a, x in enumerate(self.left_keep):
            for b, y in enumerate(self.right_keep):
                if po.leq(y, f[x]):
                    out |= self.bit(a, b)
        return out


def antichains(po: Poset) -> list[int]:
    """All antichains of a poset, including the empty one."""
    out = []

    def rec(i: int, acc: int, blocked: int):
        if i == po.n:
            out.append(acc)
            return
        rec(i + 1, acc, blocked)
        if not blocked >> i & 1:
            rec(i + 1, acc | 1 << i, blocked | po.down[i] | po.up[i])

    rec(0, 0, 0)
    return out


# enumerated families -----------------------------------------------------------


def unique_rows(flat: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """``np.unique(flat, axis=0)`` with inverse; packs each row set into one word when it fits."""
    p = flat.shape[1]
    if p * q <= 64:
        shifts = (np.arange(p, dtype=np.uint64) * np.uint64(q))
        keys = np.bitwise_or.reduce(flat << shifts, axis=1) if p else np.zeros(len(flat), np.uint64)
        _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
        return flat[first], inverse.reshape(-1)
    uniq, inverse = np.unique(flat, axis=0, return_inverse=True)
    return uniq, inverse.reshape(-1)


class TensorFamily:
    """All tensors of a base, canonically ordered and named ``R0..Rk``."""

    def __init__(self, base: ProductBase, masks: Iterable[int]):
        self.base = base
        ms = sorted(set(masks), key=lambda m: (m.bit_count(), list(iter_bits(m))))
        self.masks: tuple[int, ...] = tuple(ms)
        self.index: dict[int, int] = {m: i for i, m in enumerate(ms)}

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.masks)

    def __contains__(self, m: int) -> bool:
        return m in self.index

    def name(self, m: int) -> str:
        return f"R{self.index[m]}"

    @cached_property
    def matrix(self) -> np.ndarray:
        """Boolean membership matrix of shape ``(N, p*q)``."""
        n = self.base.size
        out = np.zeros((len(self.masks), n), dtype=bool)
        for i, m in enumerate(self.masks):
            for k in iter_bits(m):
                out[i, k] = True
        return out

    @cached_property
    def grids(self) -> np.ndarray:
        return self.matrix.reshape(len(self.masks), self.base.p, self.base.q)

    @cached_property
    def leq(self) -> np.ndarray:
        """``leq[i, j]`` iff tensor ``i`` is contained in tensor ``j``."""
        m = self.matrix.astype(np.int32)
        return (m @ (1 - m).T) == 0

    def least_above(self, r: int) -> int:
        """Intersection of every enumerated tensor containing ``r``."""
        out = self.base.top
        for m in self.masks:
            if r & ~m == 0:
                out &= m
        return out

    def least_above_batch(self, rel: np.ndarray) -> np.ndarray:
        """Rows of ``rel`` (bool, shape ``(k, p*q)``) mapped to the least enclosing tensors."""
        rel = np.asarray(rel, dtype=np.int32)
        miss = (1 - self.matrix.astype(np.int32))
        enclosing = (rel @ miss.T) == 0
        return (enclosing.astype(np.int32) @ miss) == 0

    @cached_property
    def join_table(self) -> np.ndarray:
        """``join_table[i, j]`` is the least tensor above both; closes unions when the base can batch."""
        base = self.base
        if not isinstance(base, TensorBase) or base.q > 20 or base.p == 0:
            return self.join_table_by_order()
        n = len(self.masks)
        rows = base.to_rows(self.masks)
        out = np.empty((n, n), dtype=np.int32)
        cache: dict[bytes, int] = {}
        chunk = max(1, 400_000 // max(1, n * base.p))
        for start in range(0, n, chunk):
            stop = min(n, start + chunk)
            flat = (rows[start:stop, None, :] | rows[None, :, :]).reshape(-1, base.p)
            uniq, inverse = unique_rows(flat, base.q)
            keys = [u.tobytes() for u in uniq]
            todo = [k for k, key in enumerate(keys) if key not in cache]
            if todo:
                closed = base.closure_rows_batch(uniq[todo])
                for k, line in zip(todo, base.from_rows(closed)):
                    cache[keys[k]] = self.index[line]
            lookup = np.array([cache[key] for key in keys], dtype=np.int32)
            out[start:stop] = lookup[inverse.reshape(-1)].reshape(stop - start, n)
        return out

    def join_table_by_order(self) -> np.ndarray:
        """Joins read off the inclusion order: the smallest common upper bound."""
        n = len(self.masks)
        sizes = np.array([m.bit_count() for m in self.masks])
        le = self.leq
        out = np.empty((n, n), dtype=np.int32)
        big = sizes.max() + 1 if n else 1
        for i in range(n):
            ub = le[i][None, :] & le
            cost = np.where(ub, sizes[None, :], big)
            out[i] = cost.argmin(axis=1)
        return out

    @cached_property
    def meet_table(self) -> np.ndarray:
        idx = self.index
        n = len(self.masks)
        out = np.empty((n, n), dtype=np.int32)
        for i, a in enumerate(self.masks):
            for j, b in enumerate(self.masks):
                out[i, j] = idx[a & b]
        return out

    def as_poset(self) -> Poset:
        le = self.leq
        n = len(self.masks)
        down = tuple(mask_of(j for j in range(n) if le[j, i]) for i in range(n))
        return Poset(tuple(f"R{i}" for i in range(n)), down)

    @cached_property
    def bottom_mask(self) -> int:
        """The least tensor; empty in the truncated form, the cross in the full form."""
        out = self.base.top
        for m in self.masks:
            out &= m
        return out

    @cached_property
    def _disjoint(self) -> np.ndarray:
        """``[i, j]`` iff tensors ``i`` and ``j`` meet in the least tensor."""
        m = self.matrix.astype(np.int32)
        inner = m * (1 - np.array([self.bottom_mask >> k & 1 for k in range(m.shape[1])], dtype=np.int32))
        return (inner @ inner.T) == 0

    def pseudocomplement(self, i: int) -> int | None:
        """Index of the largest tensor meeting tensor ``i`` in the least one, if there is one."""
        union = 0
        for j in np.flatnonzero(self._disjoint[i]):
            union |= self.masks[j]
        join = self.least_above(union)
        if join & self.masks[i] & ~self.bottom_mask:
            return None
        return self.index[join]

    def pseudocomplement_witness(self) -> int | None:
        """A tensor index without pseudocomplement, or ``None``."""
        for i in range(len(self.masks)):
            if self.pseudocomplement(i) is None:
                return i
        return None

    def atoms(self) -> list[int]:
        le = self.leq
        nz = [i for i in range(len(self.masks)) if self.masks[i]]
        return [i for i in nz if not any(le[j, i] and j != i for j in nz)]


def universal_extension(prod: SpaceProduct, f: Mapping[tuple[int, int], int] | Sequence[Sequence[int]],
                        target: Poset, t: int) -> int:
    """``f`` extended to a tensor: the join of ``f`` over its pairs."""
    table = _table(prod, f)
    bad = separate_continuity_violation(prod, table, target)
    if bad is not None:
        raise TensorError(f"map is not separately continuous: {bad}")
    vals = mask_of(table[a][b] for a, b in prod.pairs(t))
    j = target.join(vals)
    if j is None:
        raise TensorError("target has no join for the image")
    return j


def _table(prod: ProductBase, f) -> list[list[int]]:
    if isinstance(f, Mapping):
        return [[f[(a, b)] for b in range(prod.q)] for a in range(prod.p)]
    return [list(r) for r in f]


def separate_continuity_violation(prod: SpaceProduct, table, target: Poset) -> str | None:
    """First slice whose preimage of a principal ideal is not closed, described as text."""
    for c in range(target.n):
        below = target.down[c]
        for a in range(prod.p):
            pre = mask_of(b for b in range(prod.q) if below >> table[a][b] & 1)
            if not prod.right.is_closed(pre):
                return f"row {prod.left.labels[a]} under {target.labels[c]}"
        for b in range(prod.q):
            pre = mask_of(a for a in range(prod.p) if below >> table[a][b] & 1)
            if not prod.left.is_closed(pre):
                return f"column {prod.right.labels[b]} under {target.labels[c]}"
    return None


@dataclass(frozen=True)
class Bases:
    """Cache of truncated bases keyed by augmented-poset identity."""

    store: dict

    def get(self, left: AugmentedPoset, right: AugmentedPoset) -> TensorBase:
        key = (id(left), id(right))
        hit = self.store.get(key)
        if hit is None or hit.left is not left or hit.right is not right:
            hit = self.store[key] = TensorBase(left, right)
        return hit


BASES = Bases({})
