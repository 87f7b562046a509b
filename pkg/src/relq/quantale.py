"""Relation products, the tensor-closed product, residuals, quantale and nucleus predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as _cartesian
from typing import Callable, Sequence

import numpy as np

from ._bits import full, iter_bits, mask_of, spread
from .closure import principal_ideal_space
from .completions import AugmentedPoset
from .order import Poset
from .tensor import BASES, SpaceProduct, TensorBase, TensorError, TensorFamily, unique_rows


def relation_product(r: int, s: int, p: int, q: int, m: int) -> int:
    """``{(a, c) : a r b and b s c}`` for ``r`` on ``p x q`` and ``s`` on ``q x m``."""
    out = 0
    fm = full(m)
    for b in range(q):
        srow = (s >> (b * m)) & fm
        if not srow:
            continue
        col = 0
        rb = r >> b
        for a in range(p):
            if rb >> (a * q) & 1:
                col |= 1 << a
        if col:
            out |= spread(col, m) * srow
    return out


def transpose(r: int, p: int, q: int) -> int:
    out = 0
    for k in iter_bits(r):
        a, b = divmod(k, q)
        out |= 1 << (b * p + a)
    return out


def _check_middle(left: TensorBase, right: TensorBase) -> None:
    if left.right.poset is not right.left.poset or left.right_keep != right.left_keep:
        raise TensorError("carrier mismatch: the middle carriers of the two bases differ")


def compose_base(left: TensorBase, right: TensorBase) -> TensorBase:
    _check_middle(left, right)
    return BASES.get(left.left, right.right)


def product_in(left: TensorBase, right: TensorBase, r: int, s: int) -> int:
    _check_middle(left, right)
    return relation_product(r, s, left.p, left.q, right.q)


def odot(left: TensorBase, right: TensorBase, r: int, s: int) -> int:
    """``t-closure(R . S)`` in the base with the outer families of the two operands."""
    target = compose_base(left, right)
    return target.closure(relation_product(r, s, left.p, left.q, right.q))


# residuals on the down-set quantale -----------------------------------------


def residual_right(po: Poset, r: int, t: int) -> int:
    """``R -> T = {(a, b) : R(down a) x {b} inside T}`` for lower relations on ``po x po``."""
    n = po.n
    cols = [mask_of(c for c in range(n) if r >> (c * n + d) & 1) for d in range(n)]
    tcols = [mask_of(c for c in range(n) if t >> (c * n + b) & 1) for b in range(n)]
    out = 0
    for a in range(n):
        need = 0
        for d in iter_bits(po.down[a]):
            need |= cols[d]
        for b in range(n):
            if need & ~tcols[b] == 0:
                out |= 1 << (a * n + b)
    return out


def residual_left(po: Poset, t: int, s: int) -> int:
    """``T <- S = {(a, b) : {a} x (down b)S inside T}``."""
    n = po.n
    fn = full(n)
    rows = [(s >> (d * n)) & fn for d in range(n)]
    out = 0
    for b in range(n):
        need = 0
        for d in iter_bits(po.down[b]):
            need |= rows[d]
        for a in range(n):
            if need & ~((t >> (a * n)) & fn) == 0:
                out |= 1 << (a * n + b)
    return out


def brute_residuals(elements: Sequence[int], mult: Callable[[int, int], int], r: int, t: int):
    """Largest ``S`` with ``R.S`` inside ``T`` and largest ``S'`` with ``S'.R`` inside ``T``, by search."""
    right = 0
    left = 0
    for s in elements:
        if mult(r, s) & ~t == 0:
            right |= s
        if mult(s, r) & ~t == 0:
            left |= s
    return right, left


# finite quantales ---------------------------------------------------------------


@dataclass
class QuantaleReport:
    prequantale: bool
    associative: bool
    annihilates: bool
    units: list[int]
    commutative: bool
    distributivity_witness: tuple | None = None
    associativity_witness: tuple | None = None
    commutativity_witness: tuple | None = None

    @property
    def quantale(self) -> bool:
        return self.prequantale and self.associative

    @property
    def unital(self) -> bool:
        return bool(self.units)


class FiniteQuantale:
    """A finite complete lattice (indices ``0..n-1``) with a multiplication table."""

    def __init__(self, lattice: Poset, mult: np.ndarray, names: Sequence[str] | None = None):
        if not lattice.is_complete_lattice:
            raise TensorError("quantale carrier must be a complete lattice")
        mult = np.asarray(mult, dtype=np.int32)
        if mult.shape != (lattice.n, lattice.n):
            raise TensorError("multiplication table is not total")
        self.lattice = lattice
        self.mult = mult
        self.names = tuple(names) if names else lattice.labels

    @property
    def n(self) -> int:
        return self.lattice.n

    @cached_property
    def join(self) -> np.ndarray:
        n, lat = self.n, self.lattice
        return np.array([[lat.join2(i, j) for j in range(n)] for i in range(n)], dtype=np.int32)

    @cached_property
    def meet(self) -> np.ndarray:
        n, lat = self.n, self.lattice
        return np.array([[lat.meet2(i, j) for j in range(n)] for i in range(n)], dtype=np.int32)

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    def leq(self, i: int, j: int) -> bool:
        return self.lattice.leq(i, j)

    def join_of(self, idx) -> int:
        return self.lattice.join(mask_of(int(i) for i in idx))

    def meet_of(self, idx) -> int:
        return self.lattice.meet(mask_of(int(i) for i in idx))

    def checks(self) -> QuantaleReport:
        return table_checks(self.mult, self.join, self.bottom)

    def residual_right(self, x: int, z: int) -> int:
        """``x -> z``: the join of all ``y`` with ``x . y <= z``."""
        return self.join_of(y for y in range(self.n) if self.leq(self.mult[x, y], z))

    def residual_left(self, z: int, y: int) -> int:
        """``z <- y``: the join of all ``x`` with ``x . y <= z``."""
        return self.join_of(x for x in range(self.n) if self.leq(self.mult[x, y], z))


def table_checks(mult: np.ndarray, join: np.ndarray, bottom: int,
                 generators: Sequence[int] | None = None) -> QuantaleReport:
    """Finite reduction: distributivity over binary joins and the empty join, associativity, units.

    When ``generators`` join-generate the lattice, binary joins are only
    split against a generator, and associativity (given both distributive
    laws) is only checked on triples of generators.
    """
    n = mult.shape[0]
    dist_w = assoc_w = comm_w = None
    annihilates = bool((mult[bottom, :] == bottom).all() and (mult[:, bottom] == bottom).all())
    if not annihilates:
        k = int(np.flatnonzero((mult[bottom, :] != bottom) | (mult[:, bottom] != bottom))[0])
        dist_w = ("bottom", k)
    # with join-generators it suffices to split off one generator at a time
    cols = np.arange(n) if generators is None else np.asarray(generators, dtype=np.intp)
    jcols = join[:, cols]
    for a in range(n):
        if dist_w is not None:
            break
        for side, line in (("right", mult[:, a]), ("left", mult[a])):
            lhs = line[jcols]
            rhs = join[line[:, None], line[cols][None, :]]
            if not np.array_equal(lhs, rhs):
                b, c = map(int, np.argwhere(lhs != rhs)[0])
                dist_w = (side, a, b, int(cols[c]))
                break
    if dist_w is None and generators is not None:
        gen = np.asarray(generators, dtype=np.intp)
        sub = mult[np.ix_(gen, gen)]
        for ia, a in enumerate(gen):
            lhs = mult[sub[ia]][:, gen]      # (a.b).c
            rhs = mult[a][sub]               # a.(b.c)
            if not np.array_equal(lhs, rhs):
                jb, jc = map(int, np.argwhere(lhs != rhs)[0])
                assoc_w = (int(a), int(gen[jb]), int(gen[jc]))
                break
    else:
        for a in range(n):
            lhs = mult[mult[a]]          # (a.b).c
            rhs = mult[a][mult]          # a.(b.c)
            if not np.array_equal(lhs, rhs):
                b, c = map(int, np.argwhere(lhs != rhs)[0])
                assoc_w = (a, b, c)
                break
    ident = np.arange(n)
    units = [e for e in range(n) if (mult[e] == ident).all() and (mult[:, e] == ident).all()]
    bad = np.argwhere(mult != mult.T)
    if len(bad):
        comm_w = tuple(map(int, bad[0]))
    return QuantaleReport(
        prequantale=dist_w is None,
        associative=assoc_w is None,
        annihilates=annihilates,
        units=units,
        commutative=comm_w is None,
        distributivity_witness=dist_w,
        associativity_witness=assoc_w,
        commutativity_witness=comm_w,
    )


def shrink_distributivity(mult: np.ndarray, join: np.ndarray, sizes: Sequence[int], le: np.ndarray,
                          w: tuple) -> tuple:
    """Replace each tensor in a distributivity witness by a smaller one while it still fails."""
    side, a, b, c = w

    def fails(a, b, c):
        if side == "left":
            return mult[a, join[b, c]] != join[mult[a, b], mult[a, c]]
        return mult[join[b, c], a] != join[mult[b, a], mult[c, a]]

    cur = [a, b, c]
    order = sorted(range(len(sizes)), key=lambda i: sizes[i])
    improved = True
    while improved:
        improved = False
        for pos in range(3):
            for cand in order:
                if sizes[cand] >= sizes[cur[pos]]:
                    break
                if not le[cand, cur[pos]]:
                    continue
                trial = list(cur)
                trial[pos] = cand
                if fails(*trial):
                    cur = trial
                    improved = True
                    break
    return (side, *cur)


# the tensor quantale of one base --------------------------------------------------


def odot_table(left: TensorBase, right: TensorBase, lfam: TensorFamily | None = None,
               rfam: TensorFamily | None = None, tfam: TensorFamily | None = None,
               guard: int | None = None) -> tuple[TensorFamily, np.ndarray]:
    """All products ``R (.) S`` for ``R`` over ``left`` and ``S`` over ``right``, as indices."""
    target = compose_base(left, right)
    lfam = lfam if lfam is not None else left.enumerate(guard)
    rfam = rfam if rfam is not None else right.enumerate(guard)
    tfam = tfam if tfam is not None else target.enumerate(guard)
    n, m = len(lfam), len(rfam)
    out = np.empty((n, m), dtype=np.int32)
    if target.p == 0 or target.q == 0:
        out[:] = tfam.index[0]
        return tfam, out
    gl = lfam.grids.astype(np.float32)
    gr = rfam.grids.astype(np.float32)
    weights = np.left_shift(np.uint64(1), np.arange(target.q, dtype=np.uint64))
    cache: dict[bytes, int] = {}
    chunk = max(1, 400_000 // max(1, m * target.p * max(1, target.q)))
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        prods = np.tensordot(gl[start:stop], gr, axes=([2], [1])) > 0     # (i, a, j, c)
        packed = (prods.astype(np.uint64) * weights).sum(axis=-1, dtype=np.uint64)
        flat = packed.transpose(0, 2, 1).reshape(-1, target.p)
        uniq, inverse = unique_rows(flat, target.q)
        keys = [u.tobytes() for u in uniq]
        todo = [k for k, key in enumerate(keys) if key not in cache]
        if todo:
            closed = target.closure_rows_batch(uniq[todo])
            for k, line in zip(todo, target.from_rows(closed)):
                cache[keys[k]] = tfam.index[line]
        lookup = np.array([cache[key] for key in keys], dtype=np.int32)
        out[start:stop] = lookup[inverse].reshape(stop - start, m)
    return tfam, out


class TensorQuantale:
    """Truncated tensors of ``B_X (x) B_Y`` with the product ``t-closure(R . S)``."""

    def __init__(self, base: TensorBase, family: TensorFamily | None = None, guard: int | None = None):
        if base.left.poset is not base.right.poset or base.left_keep != base.right_keep:
            raise TensorError("a tensor quantale needs equal truncated carriers on both sides")
        self.base = base
        self.family = family if family is not None else base.enumerate(guard)

    @property
    def n(self) -> int:
        return len(self.family)

    @cached_property
    def table(self) -> np.ndarray:
        """``table[i, j]`` is the index of ``R_i (.) R_j``."""
        return odot_table(self.base, self.base, self.family, self.family, self.family)[1]

    def mult(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    @cached_property
    def principal_indices(self) -> list[int]:
        base, idx = self.base, self.family.index
        return [idx[base.principal(a, b)] for a in range(base.p) for b in range(base.q)]

    def checks(self) -> QuantaleReport:
        return self._report

    @cached_property
    def _report(self) -> QuantaleReport:
        return table_checks(self.table, self.family.join_table, 0, self.principal_indices)

    def as_quantale(self) -> FiniteQuantale:
        return FiniteQuantale(self.family.as_poset(), self.table)

    def shrink(self, w: tuple) -> tuple:
        fam = self.family
        return shrink_distributivity(self.table, fam.join_table, [m.bit_count() for m in fam.masks],
                                     fam.leq, w)

    def identity_candidate(self) -> int:
        """``I_A = {(a, a) : a an atom}`` in the truncated carrier."""
        return self.base.from_pairs((a, a) for a in truncated_atoms(self.base))


def truncated_atoms(base: TensorBase) -> list[int]:
    """Atoms of the left poset as indices of the truncated carrier, i.e. its minimal elements."""
    where = {old: new for new, old in enumerate(base.left_keep)}
    return [where[a] for a in base.left.poset.atoms if a in where]


def relation_quantale(po: Poset) -> tuple[FiniteQuantale, list[int]]:
    """All lower relations on ``po x po`` with union, intersection and the relation product."""
    base = TensorBase(AugmentedPoset.empty(po), AugmentedPoset.empty(po))
    rels = sorted(base.down_sets(), key=lambda m: (m.bit_count(), list(iter_bits(m))))
    index = {m: i for i, m in enumerate(rels)}
    n = po.n
    lat = Poset(tuple(f"Q{i}" for i in range(len(rels))),
                tuple(mask_of(j for j, s in enumerate(rels) if s & ~r == 0) for r in rels))
    mult = np.array([[index[relation_product(r, s, n, n, n)] for s in rels] for r in rels], dtype=np.int32)
    return FiniteQuantale(lat, mult), rels


# prenuclei and nuclei ----------------------------------------------------------


@dataclass
class NucleusReport:
    preclosure: bool
    prenucleus: bool
    nucleus: bool
    fixpoints: list[int]
    quantic_quotient: bool
    induced: np.ndarray | None
    induced_is_quantale: bool
    witness: tuple | None = None

    @property
    def quotient_conditions_agree(self) -> bool:
        """Residuation-closed fixpoints and the induced product being a quantale coincide."""
        return self.quantic_quotient == self.induced_is_quantale


def nucleus_checks(q: FiniteQuantale, j: Sequence[int]) -> NucleusReport:
    """Prenucleus, nucleus and quantic-quotient predicates for an endo-map table ``j``."""
    n = q.n
    j = [int(v) for v in j]
    leq = q.leq
    pre = all(leq(x, j[x]) for x in range(n)) and all(
        leq(j[x], j[y]) for x in range(n) for y in range(n) if leq(x, y))
    if not pre:
        raise TensorError("map is not a preclosure (must be extensive and isotone)")
    m, jn = q.mult, q.join
    witness = None
    prenucleus = True
    for x, y in _cartesian(range(n), repeat=2):
        if not leq(jn[m[x, j[y]], m[j[x], y]], j[m[x, y]]):
            prenucleus, witness = False, (x, y)
            break
    idem = all(j[j[x]] == j[x] for x in range(n))
    nucleus = prenucleus and idem
    fix = [x for x in range(n) if j[x] == x]
    qq = is_quantic_quotient(q, fix)
    induced = None
    induced_ok = False
    if _meet_closed(q, fix):
        induced, induced_ok = induced_multiplication(q, fix)
    return NucleusReport(pre, prenucleus, nucleus, fix, qq, induced, induced_ok, witness)


def _meet_closed(q: FiniteQuantale, s: Sequence[int]) -> bool:
    ss = set(s)
    if q.top not in ss:
        return False
    return all(int(q.meet[a, b]) in ss for a in s for b in s)


def is_quantic_quotient(q: FiniteQuantale, s: Sequence[int]) -> bool:
    """Closed under meets and under both residuations by arbitrary elements."""
    if not _meet_closed(q, s):
        return False
    ss = set(s)
    for x in range(q.n):
        for t in s:
            if q.residual_right(x, t) not in ss or q.residual_left(t, x) not in ss:
                return False
    return True


def induced_multiplication(q: FiniteQuantale, s: Sequence[int]) -> tuple[np.ndarray, bool]:
    """``x ._S y = meet{t in S : x.y <= t}`` on a meet-closed ``S``; reports whether it is a quantale."""
    s = sorted(s)
    pos = {v: i for i, v in enumerate(s)}
    k = len(s)

    def close(v):
        return q.meet_of(t for t in s if q.leq(v, t))

    table = np.array([[pos[close(int(q.mult[a, b]))] for b in s] for a in s], dtype=np.int32)
    join = np.array([[pos[close(int(q.join[a, b]))] for b in s] for a in s], dtype=np.int32)
    bottom = pos[close(q.bottom)]
    rep = table_checks(table, join, bottom)
    ok = rep.prequantale and rep.associative
    # the empty join of S is its least element, which need not annihilate when S lacks the bottom
    return table, ok and k > 0


def least_closure_table(q: FiniteQuantale, s: Sequence[int]) -> list[int]:
    return [q.meet_of(t for t in s if q.leq(x, t)) for x in range(q.n)]


# composition of antitone maps --------------------------------------------------------


def is_antitone(f: Sequence[int], a: Poset, b: Poset) -> bool:
    return all(b.leq(f[y], f[x]) for x in range(a.n) for y in range(a.n) if a.leq(x, y))


@dataclass
class CompositionResult:
    composite: tuple[int, ...]
    via_full: tuple[int, ...]
    via_truncated: tuple[int, ...]
    generating: int
    closed: int
    space: SpaceProduct = field(repr=False)


_space_cache: dict = {}


def _full_product(a: Poset, c: Poset) -> SpaceProduct:
    key = (id(a), id(c))
    hit = _space_cache.get(key)
    if hit is None or hit[0] is not a or hit[1] is not c:
        hit = (a, c, SpaceProduct(principal_ideal_space(a), principal_ideal_space(c)), {})
        _space_cache[key] = hit
    return hit[2]


def galois_compose(f: Sequence[int], g: Sequence[int], a: Poset, b: Poset, c: Poset,
                   cache: dict | None = None) -> CompositionResult:
    """``g (.) f``: close the generated relation to a tensor and read off row maxima.

    Computed twice: by slice closure of the full relation, and through the
    truncated tensors with ``t``.  Raises if they disagree.
    """
    for name, h, dom, cod in (("f", f, a, b), ("g", g, b, c)):
        if len(h) != dom.n:
            raise TensorError(f"{name} is not total")
        if not is_antitone(h, dom, cod):
            raise TensorError(f"{name} is not antitone")
    if b.bottom is None:
        raise TensorError("middle lattice needs a least element")
    space = _full_product(a, c)
    middle = [y for y in range(b.n) if y != b.bottom]
    gen = 0
    for x in range(a.n):
        for z in range(c.n):
            if any(b.leq(y, f[x]) and c.leq(z, g[y]) for y in middle):
                gen |= space.bit(x, z)
    memo = cache if cache is not None else {}
    key = ("full", id(space), gen)
    closed = memo.get(key)
    if closed is None:
        closed = memo[key] = space.slice_closure(gen)
    via_full = tuple(c.join(space.row(closed, x)) for x in range(a.n))

    pa, pb, pc = AugmentedPoset.powerset(a), AugmentedPoset.powerset(b), AugmentedPoset.powerset(c)
    ab, bc = BASES.get(_cached_ap(pa, a), _cached_ap(pb, b)), BASES.get(_cached_ap(pb, b), _cached_ap(pc, c))
    ac = compose_base(ab, bc)
    rel = relation_product(ab.tensor_of_map(f), bc.tensor_of_map(g), ab.p, ab.q, bc.q)
    key = ("trunc", id(ac), rel)
    tr = memo.get(key)
    if tr is None:
        tr = memo[key] = ac.closure(rel)
    via_trunc = ac.galois_map(tr)
    if via_full != via_trunc:
        raise AssertionError(f"composition routes disagree: {via_full} vs {via_trunc}")
    return CompositionResult(via_full, via_full, via_trunc, gen, closed, space)


_ap_cache: dict = {}


def _cached_ap(ap: AugmentedPoset, po: Poset) -> AugmentedPoset:
    key = id(po)
    hit = _ap_cache.get(key)
    if hit is None or hit.poset is not po:
        _ap_cache[key] = hit = ap
    return hit


def step_composite(f: Sequence[int], g: Sequence[int], a: Poset, b: Poset, c: Poset) -> tuple[int, ...]:
    """Closed form on chains: top at 0, ``s`` on ``(0, r]``, bottom above ``r``."""
    bot_b = b.bottom
    r = a.join(mask_of(x for x in range(a.n) if f[x] != bot_b))
    s = c.join(mask_of(g[y] for y in range(b.n) if y != bot_b))
    out = []
    for x in range(a.n):
        if x == a.bottom:
            out.append(c.top)
        elif a.leq(x, r):
            out.append(s)
        else:
            out.append(c.bottom)
    return tuple(out)


def degenerate_full_product(base: TensorBase, r: int, s: int) -> int:
    """Full-form closure of the full-form relation product, which collapses to the top."""
    fb = base.full_base
    fr, fs = base.to_full(r), base.to_full(s)
    rel = relation_product(fr, fs, fb.p, fb.q, fb.q)
    return fb.slice_closure(rel)


class SpaceQuantale:
    """Tensors of the unbounded coreflections of ``A x A`` with ``R (.) S`` the closure of ``R . S``."""

    def __init__(self, space, guard: int | None = None):
        self.space = space
        self.prod = SpaceProduct(space, space).truncated()
        self.family = self.prod.enumerate(guard)

    @property
    def n(self) -> int:
        return len(self.family)

    @cached_property
    def table(self) -> np.ndarray:
        prod, fam = self.prod, self.family
        k = prod.p
        cache: dict[int, int] = {}
        out = np.empty((len(fam), len(fam)), dtype=np.int32)
        for i, r in enumerate(fam.masks):
            for j, s in enumerate(fam.masks):
                rel = relation_product(r, s, k, k, k)
                hit = cache.get(rel)
                if hit is None:
                    hit = cache[rel] = fam.index[prod.slice_closure(rel)]
                out[i, j] = hit
        return out

    @cached_property
    def principal_indices(self) -> list[int]:
        prod, idx = self.prod, self.family.index
        return [idx[prod.pure(x, y)] for x in range(prod.p) for y in range(prod.q)]

    def checks(self) -> QuantaleReport:
        return self._report

    @cached_property
    def _report(self) -> QuantaleReport:
        return table_checks(self.table, self.family.join_table, self.family.index[0] if 0 in self.family
                            else 0, self.principal_indices)


def relation_quantale_iso(table: np.ndarray, le: np.ndarray, bottom: int) -> tuple[int, dict[int, int]] | None:
    """Decide whether a finite quantale is isomorphic to all relations on some set.

    Any isomorphism sends atoms to singleton relations, and the idempotent
    atoms to the diagonal pairs, so the map is forced up to a permutation of
    the set.  Returns ``(size, element -> relation mask)`` or None.
    """
    n = table.shape[0]
    nz = [i for i in range(n) if i != bottom]
    atoms = [i for i in nz if not any(le[j, i] and j != i for j in nz)]
    diag = [e for e in atoms if table[e, e] == e]
    k = len(diag)
    if len(atoms) != k * k or n != 1 << (k * k):
        return None
    where = {e: i for i, e in enumerate(diag)}
    code: dict[int, int] = {}
    for x in atoms:
        src = [e for e in diag if table[e, x] == x]
        dst = [e for e in diag if table[x, e] == x]
        if len(src) != 1 or len(dst) != 1:
            return None
        code[x] = where[src[0]] * k + where[dst[0]]
    if len(set(code.values())) != k * k:
        return None
    rho = {}
    for i in range(n):
        rho[i] = sum(1 << code[a] for a in atoms if le[a, i])
    if len(set(rho.values())) != n:
        return None
    for i in range(n):
        for j in range(n):
            if (rho[i] & ~rho[j] == 0) != bool(le[i, j]):
                return None
            if rho[int(table[i, j])] != relation_product(rho[i], rho[j], k, k, k):
                return None
    return k, rho


def preclosures(q: FiniteQuantale, limit: int = 200_000):
    """All extensive isotone endo-maps of the carrier, by backtracking in a linear extension."""
    lat = q.lattice
    n = lat.n
    order = sorted(range(n), key=lambda i: lat.down[i].bit_count())
    val = [-1] * n
    count = 0

    def rec(k):
        nonlocal count
        if k == n:
            count += 1
            if count > limit:
                raise TensorError("too many preclosures to enumerate")
            yield tuple(val)
            return
        x = order[k]
        for v in iter_bits(lat.up[x]):
            if all(lat.leq(val[y], v) for y in iter_bits(lat.down[x]) if y != x):
                val[x] = v
                yield from rec(k + 1)
        val[x] = -1

    yield from rec(0)


def quotient_equivalences(q: FiniteQuantale) -> list[tuple[int, dict[str, bool]]]:
    """For every subset of the carrier: prenucleus fixpoints, nucleus range, residuation, induced product."""
    n = q.n
    pre_fix, nuc_range = set(), set()
    m, jn = q.mult, q.join
    for j in preclosures(q):
        ok = True
        for x in range(n):
            for y in range(n):
                if not q.leq(jn[m[x, j[y]], m[j[x], y]], j[m[x, y]]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        fix = sum(1 << x for x in range(n) if j[x] == x)
        pre_fix.add(fix)
        if all(j[j[x]] == j[x] for x in range(n)):
            nuc_range.add(fix)
    out = []
    for s in range(1 << n):
        members = list(iter_bits(s))
        vals = {
            "prenucleus-fixpoints": s in pre_fix,
            "nucleus-range": s in nuc_range,
            "residuation-closed": is_quantic_quotient(q, members),
            "induced-quantale": _meet_closed(q, members) and induced_multiplication(q, members)[1],
        }
        out.append((s, vals))
    return out
