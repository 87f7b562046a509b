"""The eight equivalent conditions for a pair of families on one poset.

Every condition is computed on its own terms so that the comparison between
them means something.  The two nucleus conditions reduce, exactly, to a
check over principal factors and maximal co-factors; ``prenucleus_brute``
does the same check over all pairs and is used to validate the reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ._bits import full, iter_bits
from .completions import AugmentedPoset
from .order import Poset
from .quantale import TensorQuantale, relation_product, residual_left, residual_right
from .tensor import BASES, GuardExceeded, TensorBase, TensorError

LABELS = {
    "a": "bottom-distributive for the union family",
    "b": "t is a prenucleus",
    "c": "closure of t is a nucleus",
    "d": "tensors form a quantic quotient",
    "e": "tensors form a quantale",
    "f": "tensor lattice is pseudocomplemented",
    "g": "some prenucleus above t fixes the empty relation",
    "h": "canonical orthogonality embeddings exist",
}


class BottomMismatch(TensorError):
    pass


@dataclass
class ConditionReport:
    values: dict[str, bool]
    witnesses: dict[str, object] = field(default_factory=dict)
    tensors: int = 0
    base: TensorBase | None = field(default=None, repr=False)
    quantale: TensorQuantale | None = field(default=None, repr=False)

    @property
    def agree(self) -> bool:
        return len(set(self.values.values())) == 1

    def disagreements(self) -> list[tuple[str, str]]:
        keys = sorted(self.values)
        return [(x, y) for i, x in enumerate(keys) for y in keys[i + 1:]
                if self.values[x] != self.values[y]]


def square_base(xf: AugmentedPoset, yf: AugmentedPoset) -> TensorBase:
    if xf.poset is not yf.poset:
        raise TensorError("both families must live on the same poset")
    if xf.bottom != yf.bottom:
        raise BottomMismatch("the two families have different least ideals")
    return BASES.get(xf, yf)


def _truncated_polar(po: Poset, b: int) -> int:
    db = po.down[b]
    return sum(1 << m for m in range(po.n) if not po.down[m] & db)


def prenucleus_reduced(base: TensorBase, j: Callable[[int], int]) -> tuple | None:
    """First violation of ``j(x).y | x.j(y) <= j(x.y)`` on the down-set quantale, or None.

    Only principal ``y`` (resp. ``x``) and the largest partner with a given
    product need checking, because the product distributes over unions and
    ``j`` is isotone.
    """
    po = base.lt.poset
    n = po.n
    allm = full(n)
    for w in po.down_sets():
        for b in range(n):
            pol = _truncated_polar(po, b)
            jx = j(base.rect(w, allm) | base.rect(allm, pol))
            hit = 0
            for a in range(n):
                if base.row(jx, a) & po.down[b]:
                    hit |= 1 << a
            for c in range(n):
                lhs = base.rect(hit, po.down[c])
                if lhs & ~j(base.rect(w, po.down[c])):
                    return ("left", w, b, c)
            jy = j(base.rect(allm, w) | base.rect(pol, allm))
            hit = 0
            for d in iter_bits(po.down[b]):
                hit |= base.row(jy, d)
            for a in range(n):
                lhs = base.rect(po.down[a], hit)
                if lhs & ~j(base.rect(po.down[a], w)):
                    return ("right", w, b, a)
    return None


def prenucleus_brute(base: TensorBase, j: Callable[[int], int]) -> tuple | None:
    n = base.p
    rels = list(base.down_sets())
    for x in rels:
        jx = j(x)
        for y in rels:
            xy = relation_product(x, y, n, n, n)
            both = relation_product(jx, y, n, n, n) | relation_product(x, j(y), n, n, n)
            if both & ~j(xy):
                return (x, y)
    return None


def _principals(base: TensorBase) -> list[int]:
    return [base.principal(a, b) for a in range(base.p) for b in range(base.q)]


def quotient_witness(base: TensorBase, tensors) -> tuple | None:
    """A tensor and a principal relation whose residual leaves the tensors."""
    po = base.lt.poset
    members = set(tensors)
    for s in tensors:
        for p in _principals(base):
            r = residual_right(po, p, s)
            if r not in members:
                return ("right", p, s, r)
            l = residual_left(po, s, p)
            if l not in members:
                return ("left", s, p, l)
    return None


def least_quotient_escape(base: TensorBase) -> int | None:
    """Generate the least quantic quotient containing the empty relation.

    Returns the first generated relation that is not a tensor, or None when
    the whole quotient stays inside the tensors.
    """
    po = base.lt.poset
    prin = _principals(base)
    top = base.top
    seen = {0, top}
    frontier = [0, top]
    while frontier:
        new = []
        for s in frontier:
            cands = [residual_right(po, p, s) for p in prin] + [residual_left(po, s, p) for p in prin]
            for v in cands:
                if v not in seen:
                    if base.closure(v) != v:
                        return v
                    seen.add(v)
                    new.append(v)
        for v in new:
            for u in list(seen):
                m = u & v
                if m not in seen:
                    if base.closure(m) != m:
                        return m
                    seen.add(m)
                    new.append(m)
        frontier = new
    return None


def canonical_embedding_witness(base: TensorBase, tq: TensorQuantale) -> tuple | None:
    """Check the embeddings ``x -> down(b0, x)`` and ``y -> down(y, b0)`` into the tensor prequantale."""
    if base.p == 0:
        return None
    rep = tq.checks()
    if not rep.prequantale:
        return ("not a prequantale", rep.distributivity_witness)
    xf = base.left
    po = xf.poset
    bot = xf.bottom
    keep = base.left_keep
    where = {old: new for new, old in enumerate(keep)}
    b0 = 0
    fam = tq.family

    def g(x):
        return 0 if bot >> x & 1 else base.principal(b0, where[x])

    def h(y):
        return 0 if bot >> y & 1 else base.principal(where[y], b0)

    for x in range(po.n):
        for y in range(po.n):
            if (g(x) & ~g(y) == 0) != po.leq(x, y) or (h(x) & ~h(y) == 0) != po.leq(x, y):
                return ("not an order embedding", x, y)
    for t in fam.masks:
        pre_g = bot | sum(1 << x for x in range(po.n) if not bot >> x & 1 and g(x) & ~t == 0)
        pre_h = bot | sum(1 << y for y in range(po.n) if not bot >> y & 1 and h(y) & ~t == 0)
        if not base.right.is_ideal(pre_g) or not xf.is_ideal(pre_h):
            return ("not ideal continuous", t)
    for x in range(po.n):
        for y in range(po.n):
            orth = po.down[x] & po.down[y] & ~bot == 0
            prod = tq.mult(fam.index[g(x)], fam.index[h(y)])
            if orth != (prod == 0):
                return ("orthogonality mismatch", x, y)
    return None


def equivalent_conditions(xf: AugmentedPoset, yf: AugmentedPoset, guard: int | None = None) -> ConditionReport:
    """Evaluate (a) through (h) for the families ``xf`` (left) and ``yf`` (right)."""
    base = square_base(xf, yf)
    vals: dict[str, bool] = {}
    wit: dict[str, object] = {}

    union = xf.with_family(yf)
    vals["a"] = union.bottom_distributive()
    if not vals["a"]:
        wit["a"] = union.bottom_distributivity_witness()

    for key, j in (("b", base.t), ("c", base.closure)):
        w = prenucleus_reduced(base, j)
        vals[key] = w is None
        if w is not None:
            wit[key] = w

    fam = base.enumerate(guard)
    w = quotient_witness(base, fam.masks)
    vals["d"] = w is None
    if w is not None:
        wit["d"] = w

    tq = TensorQuantale(base, fam)
    rep = tq.checks()
    vals["e"] = rep.quantale
    if not rep.prequantale:
        w = rep.distributivity_witness
        wit["e"] = w if w[0] == "bottom" else tq.shrink(w)
    elif not rep.associative:
        wit["e"] = ("associativity",) + rep.associativity_witness

    pw = fam.pseudocomplement_witness()
    vals["f"] = pw is None
    if pw is not None:
        wit["f"] = pw

    esc = least_quotient_escape(base)
    vals["g"] = esc is None
    if esc is not None:
        wit["g"] = esc

    w = canonical_embedding_witness(base, tq)
    vals["h"] = w is None
    if w is not None:
        wit["h"] = w
    return ConditionReport(vals, wit, len(fam), base, tq)


__all__ = [
    "LABELS", "BottomMismatch", "ConditionReport", "GuardExceeded", "square_base",
    "prenucleus_reduced", "prenucleus_brute", "quotient_witness", "least_quotient_escape",
    "canonical_embedding_witness", "equivalent_conditions",
]
