"""Brute-force references, the text report format and the witness searches.

Nothing here shares code with the fast paths it is compared against beyond
the bit encoding of relations: the rectangle operator is recomputed from its
definition over all pairs of family members, least tensors come from
intersecting an enumerated family, and residuals from a search over the
carrier.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from ._bits import iter_bits
from .completions import NONEMPTY, POWERSET, AugmentedPoset
from .order import Poset
from .tensor import BASES, TensorBase, TensorFamily

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


# report format -------------------------------------------------------------


@dataclass
class MemberResult:
    """Verdict for one corpus member.

    ``recheck`` re-derives the violation from ``witness`` alone and returns
    True when it is still there.
    """

    name: str
    verdict: str
    lines: list[str] = field(default_factory=list)
    witness: object = None
    recheck: Callable[[], bool] | None = None


@dataclass
class SuiteReport:
    suite: str
    members: list[MemberResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def add(self, member: MemberResult) -> MemberResult:
        self.members.append(member)
        return member

    @property
    def passed(self) -> int:
        return sum(m.verdict == PASS for m in self.members)

    @property
    def total(self) -> int:
        return sum(m.verdict != SKIP for m in self.members)

    @property
    def skipped(self) -> list[str]:
        return [m.name for m in self.members if m.verdict == SKIP]

    @property
    def failed(self) -> list[MemberResult]:
        return [m for m in self.members if m.verdict == FAIL]

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def text(self) -> str:
        out = []
        for m in self.members:
            out.append(f"MEMBER {m.name} {self.suite} {m.verdict}")
            out.extend("  " + line for line in m.lines)
        out.extend(f"# {note}" for note in self.notes)
        out.append(f"# elapsed {self.seconds:.2f}s")
        out.append(f"SUITE {self.suite} {self.passed}/{self.total}")
        return "\n".join(out)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


# formatting ------------------------------------------------------------------


def fmt_set(po: Poset, m: int) -> str:
    return "{" + " ".join(po.labels[i] for i in iter_bits(m)) + "}"


def maximal_pairs(base: TensorBase, r: int) -> list[tuple[int, int]]:
    lpo, rpo = base.lt.poset, base.rt.poset
    pairs = base.pairs(r)
    return [(a, b) for a, b in pairs
            if not any((c, d) != (a, b) and lpo.leq(a, c) and rpo.leq(b, d) for c, d in pairs)]


def fmt_lower(base: TensorBase, r: int) -> str:
    """A lower relation by its generators: ``{}``, ``down(a,b)`` or ``down{(a,b) (c,d)}``."""
    if not r:
        return "{}"
    gens = maximal_pairs(base, r)
    if len(gens) == 1:
        return "down" + base.pair_label(*gens[0])
    return "down{" + " ".join(base.pair_label(a, b) for a, b in gens) + "}"


# brute-force references ---------------------------------------------------------


def brute_least_tensor(base, r: int, family: TensorFamily | None = None, guard: int | None = None) -> int:
    """Intersection of all enumerated tensors containing ``r``."""
    fam = family if family is not None else base.enumerate(guard)
    out = base.top
    for t in fam.masks:
        if r & ~t == 0:
            out &= t
    return out


def brute_t(base: TensorBase, r: int) -> int:
    """``t(R)``: union of ``cut X x cut Y`` over dotted family members with ``X x Y`` inside ``R``."""
    lpo, rpo = base.lt.poset, base.rt.poset
    out = 0
    xs = base.lt.dotted()
    if base.rt.kind in (POWERSET, NONEMPTY):
        # right sides closed under subsets: only the largest admissible Y matters
        for x in xs:
            y = (1 << base.q) - 1
            for a in iter_bits(x):
                y &= base.row(r, a)
            if y or base.rt.kind == POWERSET:
                out |= base.rect(lpo.cut(x), rpo.cut(y))
        return out
    ys = base.rt.dotted()
    for x in xs:
        for y in ys:
            if base.rect(x, y) & ~r == 0:
                out |= base.rect(lpo.cut(x), rpo.cut(y))
    return out


def brute_closure(base: TensorBase, r: int) -> int:
    r = base.down_closure(r)
    while True:
        n = base.down_closure(r | brute_t(base, r))
        if n == r:
            return r
        r = n


# lower relations as row arrays ------------------------------------------------------


def down_set_rows(base: TensorBase) -> np.ndarray:
    """Every lower relation of the truncated product as an array of row masks.

    A lower relation is an antitone assignment of down-sets of the right
    carrier to the left elements, built one left element at a time along a
    linear extension.
    """
    lpo, rpo = base.lt.poset, base.rt.poset
    p = base.p
    rights = np.array(rpo.down_sets(), dtype=np.uint64)
    order = sorted(range(p), key=lambda a: lpo.down[a].bit_count())
    full_q = np.uint64((1 << base.q) - 1)
    cur = np.zeros((1, p), dtype=np.uint64)
    for a in order:
        # elements below a come earlier in the order and bound its row from above
        bound = np.full(cur.shape[0], full_q, dtype=np.uint64)
        for b in iter_bits(lpo.down[a]):
            if b != a:
                bound &= cur[:, b]
        ok = (rights[None, :] & ~bound[:, None]) == 0
        src, choice = np.nonzero(ok)
        nxt = cur[src].copy()
        nxt[:, a] = rights[choice]
        cur = nxt
    return cur


def sample_down_set_rows(base: TensorBase, count: int, seed: int, max_gens: int = 6) -> np.ndarray:
    """Seeded random lower relations: down-closures of up to ``max_gens`` random pairs."""
    rng = np.random.default_rng(seed)
    lpo, rpo = base.lt.poset, base.rt.poset
    p, q = base.p, base.q
    below = np.array([[lpo.leq(x, a) for x in range(p)] for a in range(p)], dtype=bool)
    rdown = np.array(rpo.down, dtype=np.uint64)
    rows = np.zeros((count, p), dtype=np.uint64)
    ks = rng.integers(1, max_gens + 1, size=count)
    for g in range(max_gens):
        a = rng.integers(0, p, size=count)
        b = rng.integers(0, q, size=count)
        use = ks > g
        add = np.where(below[a] & use[:, None], rdown[b][:, None], np.uint64(0))
        rows |= add
    return rows


# idempotency of t -------------------------------------------------------------------


@dataclass
class IdempotencyResult:
    base: TensorBase
    examined: int
    witnesses: int
    exhaustive: bool
    smallest: int | None
    shrunk: int | None


def _rows_differ(base: TensorBase, rows: np.ndarray) -> np.ndarray:
    t1 = base.t_rows_batch(rows)
    t2 = base.t_rows_batch(t1)
    return (t1 != t2).any(axis=1)


def shrink_idempotency_witness(base: TensorBase, r: int) -> int:
    """Remove maximal pairs one at a time while ``t(R) != t(t(R))`` persists."""
    def bad(x):
        tx = base.t(x)
        return base.t(tx) != tx

    improved = True
    while improved:
        improved = False
        for a, b in maximal_pairs(base, r):
            smaller = r & ~base.bit(a, b)
            if bad(smaller):
                r = smaller
                improved = True
                break
    return r


def idempotency_witness_search(base: TensorBase, samples: int | None = None, seed: int = 0,
                               chunk: int = 1 << 16) -> IdempotencyResult:
    """Look for lower relations with ``t(R) != t(t(R))``.

    Exhaustive when ``samples`` is None, otherwise a seeded sample of that size.
    """
    rows = down_set_rows(base) if samples is None else sample_down_set_rows(base, samples, seed)
    found = 0
    best = None
    for start in range(0, rows.shape[0], chunk):
        part = rows[start:start + chunk]
        hit = np.flatnonzero(_rows_differ(base, part))
        found += hit.size
        for r in base.from_rows(part[hit]):
            if best is None or (r.bit_count(), r) < (best.bit_count(), best):
                best = r
    shrunk = shrink_idempotency_witness(base, best) if best is not None else None
    return IdempotencyResult(base, int(rows.shape[0]), found, samples is None, best, shrunk)


# the eight-element boolean replay ----------------------------------------------------


@dataclass
class BooleanReplay:
    base: TensorBase
    relation: int
    t1: int
    t2: int
    closure: int
    oracle_t1: int
    oracle_t2: int
    oracle_closure: int
    expected_t1: int
    top_pair: tuple[int, int]

    @property
    def fast_matches_oracle(self) -> bool:
        return (self.t1, self.t2, self.closure) == (self.oracle_t1, self.oracle_t2, self.oracle_closure)

    @property
    def t1_matches_expected(self) -> bool:
        return self.t1 == self.expected_t1

    def contains_top_pair(self, r: int) -> bool:
        return bool(r & self.base.bit(*self.top_pair))

    def lines(self) -> list[str]:
        b = self.base
        yn = {True: "yes", False: "no"}
        return [
            f"R = {fmt_lower(b, self.relation)}",
            f"t(R) = {fmt_lower(b, self.t1)}",
            f"t(t(R)) = {fmt_lower(b, self.t2)}",
            f"closure(R) = {fmt_lower(b, self.closure)}",
            f"fast path equals oracle: {yn[self.fast_matches_oracle]}",
            f"t(R) equals down{{(x,x*) : x atom}}: {yn[self.t1_matches_expected]}",
            f"(1,1) in t(t(R)): {yn[self.contains_top_pair(self.t2)]}",
            f"(1,1) in closure(R): {yn[self.contains_top_pair(self.closure)]}",
            f"t idempotent on R: {yn[self.t1 == self.t2]}",
        ]


def boolean_replay(po: Poset | None = None) -> BooleanReplay:
    """Atoms ``M`` of an eight-element boolean algebra and ``R = down{(x, y) in M x M : x != y}``."""
    if po is None:
        po = Poset.powerset("abc")
    ap = AugmentedPoset.powerset(po)
    base = BASES.get(ap, ap)
    where = {old: new for new, old in enumerate(base.left_keep)}
    atoms = [where[a] for a in po.atoms]
    rel = base.down_closure(base.from_pairs((x, y) for x in atoms for y in atoms if x != y))
    expected = base.down_closure(base.from_pairs((where[a], where[po.pseudocomplement(a)]) for a in po.atoms))
    t1 = base.t(rel)
    t2 = base.t(t1)
    cl = base.closure(rel)
    o1 = base.down_closure(brute_t(base, rel))
    o2 = base.down_closure(brute_t(base, o1))
    oc = brute_least_tensor(base, rel)
    top = where[po.top]
    return BooleanReplay(base, rel, t1, t2, cl, o1, o2, oc, expected, (top, top))


__all__ = [
    "PASS", "FAIL", "SKIP", "MemberResult", "SuiteReport", "Timer", "fmt_set", "fmt_lower",
    "maximal_pairs", "brute_least_tensor", "brute_t", "brute_closure", "down_set_rows",
    "sample_down_set_rows", "IdempotencyResult", "idempotency_witness_search",
    "shrink_idempotency_witness", "BooleanReplay", "boolean_replay",
]
