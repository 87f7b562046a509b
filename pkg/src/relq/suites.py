"""Verification suites: each compares independently computed conditions member by member.

Every suite appends ``MemberResult`` records to a ``SuiteReport``.  A member
that would exceed the enumeration guard is reported as SKIP, never dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from ._bits import full, iter_bits, mask_of
from .closure import ClosureSpace
from .completions import AugmentedPoset, alexandroff_family, ideal_lattice_iso, macneille_family
from .conditions import LABELS, BottomMismatch, ConditionReport, equivalent_conditions
from .corpus import (closure_spaces_of_size, curated, generate_corpus, named, posets_of_size,
                     sample_spaces)
from .oracle import (FAIL, PASS, SKIP, MemberResult, SuiteReport, Timer, boolean_replay,
                     brute_least_tensor, brute_t, fmt_lower, fmt_set, idempotency_witness_search,
                     sample_down_set_rows)
from .order import Poset
from .quantale import (FiniteQuantale, SpaceQuantale, TensorQuantale, brute_residuals, compose_base,
                       galois_compose, induced_multiplication, is_antitone, least_closure_table,
                       nucleus_checks, odot, odot_table, quotient_equivalences, relation_product,
                       relation_quantale, relation_quantale_iso, residual_left, residual_right,
                       step_composite, table_checks, truncated_atoms)
from .tensor import (BASES, GuardExceeded, SpaceProduct, TensorBase, TensorError, lattice_iso_h,
                     lattice_iso_h_inverse, lattice_tensor_base, truncated_lattice_iso,
                     truncated_lattice_iso_inverse)


@dataclass
class SuiteOptions:
    max_size: int | None = None
    seed: int = 0
    guard: int | None = None
    samples: int | None = None

    def size(self, default: int) -> int:
        return default if self.max_size is None else self.max_size


@dataclass(frozen=True)
class Suite:
    id: str
    title: str
    run: Callable[[SuiteReport, SuiteOptions], None]


SUITES: dict[str, Suite] = {}


def suite(sid: str, title: str):
    def deco(fn):
        SUITES[sid] = Suite(sid, title, fn)
        return fn
    return deco


def run_suite(sid: str, max_size: int | None = None, seed: int = 0, guard: int | None = None,
              samples: int | None = None) -> SuiteReport:
    if sid not in SUITES:
        raise KeyError(f"unknown suite {sid!r}; known: {', '.join(sorted(SUITES))}")
    rep = SuiteReport(sid)
    with Timer() as tm:
        SUITES[sid].run(rep, SuiteOptions(max_size, seed, guard, samples))
    rep.seconds = tm.seconds
    return rep


# shared helpers ----------------------------------------------------------------


def yn(v: bool) -> str:
    return "yes" if v else "no"


def guarded(rep: SuiteReport, name: str, fn: Callable[[], MemberResult]) -> MemberResult:
    try:
        m = fn()
    except GuardExceeded as exc:
        m = MemberResult(name, SKIP, [f"skipped: {exc}"])
    except BottomMismatch as exc:
        m = MemberResult(name, SKIP, [f"skipped: {exc}"])
    m.name = name
    return rep.add(m)


def equivalence(name: str, values: dict[str, bool], witnesses: Iterable[str] = (),
                recheck: Callable[[], bool] | None = None) -> MemberResult:
    """PASS iff all values coincide; otherwise the two sides are listed."""
    agree = len(set(values.values())) <= 1
    lines = ["values " + " ".join(f"{k}={yn(v)}" for k, v in values.items())]
    if not agree:
        yes = [k for k, v in values.items() if v]
        no = [k for k, v in values.items() if not v]
        lines.append(f"disagreement: holds for {' '.join(yes)}; fails for {' '.join(no)}")
    lines.extend(witnesses)
    return MemberResult(name, PASS if agree else FAIL, lines, witness=dict(values),
                        recheck=None if agree else recheck)


def lattice_members(max_size: int) -> list[tuple[str, Poset]]:
    out = [(m.name, m.poset) for m in generate_corpus(max_size) if m.poset.is_complete_lattice]
    return out


def poset_members(max_size: int, with_curated: bool = True) -> list[tuple[str, Poset]]:
    return [(m.name, m.poset) for m in generate_corpus(max_size, with_curated, lattices_only=False)]


def family_of(po: Poset, kind: str) -> AugmentedPoset:
    makers = {
        "powerset": AugmentedPoset.powerset, "finite": AugmentedPoset.finite,
        "directed": AugmentedPoset.directed, "chains": AugmentedPoset.chains,
        "singletons": AugmentedPoset.singletons, "empty": AugmentedPoset.empty,
        "emptyset": AugmentedPoset.empty_set_only,
    }
    return makers[kind](po)


_families: dict = {}


def cached_family(po: Poset, kind: str) -> AugmentedPoset:
    """One augmented poset per (poset, kind), so bases and caches are shared."""
    key = (id(po), kind)
    hit = _families.get(key)
    if hit is None or hit.poset is not po:
        hit = _families[key] = family_of(po, kind)
    return hit


# witness descriptions for the eight conditions ------------------------------------


def describe_condition(key: str, w, rep: ConditionReport, po: Poset) -> str:
    base = rep.base
    lab = po.labels
    if key == "a":
        a, y = w
        return f"witness a: {lab[a]} lies in cut{fmt_set(po, y)} but meets its down-set only in the bottom"
    if key in "bc":
        side, wm, b, c = w
        lt = base.lt.poset
        return (f"witness {key}: {side} factor over W={fmt_set(lt, wm)} "
                f"fails at {lt.labels[b]}, {lt.labels[c]}")
    if key == "d":
        side, x, y, r = w
        return f"witness d: {side} residual of {fmt_lower(base, x)} and {fmt_lower(base, y)} is {fmt_lower(base, r)}, not a tensor"
    if key == "e":
        return "witness e: " + describe_product_witness(rep.quantale, w)
    if key == "f":
        return f"witness f: {fmt_lower(base, rep.quantale.family.masks[w])} has no pseudocomplement"
    if key == "g":
        return f"witness g: the least quotient generates {fmt_lower(base, w)}, not a tensor"
    return f"witness h: {w[0]}"


def describe_product_witness(tq: TensorQuantale, w) -> str:
    fam, base = tq.family, tq.base
    t = fam.masks
    f = lambda i: fmt_lower(base, t[i])
    kind = w[0]
    if kind == "bottom":
        return f"the empty relation does not annihilate {f(w[1])}"
    if kind == "associativity":
        a, b, c = w[1:]
        lhs = tq.mult(tq.mult(a, b), c)
        rhs = tq.mult(a, tq.mult(b, c))
        return f"({f(a)} (.) {f(b)}) (.) {f(c)} = {f(lhs)} but {f(a)} (.) ({f(b)} (.) {f(c)}) = {f(rhs)}"
    a, b, c = w[1:]
    j = fam.join_table
    if kind == "right":
        lhs = tq.mult(int(j[b, c]), a)
        rhs = int(j[tq.mult(b, a), tq.mult(c, a)])
        return (f"({f(b)} v {f(c)}) (.) {f(a)} = {f(lhs)} but "
                f"{f(b)} (.) {f(a)} v {f(c)} (.) {f(a)} = {f(rhs)}")
    lhs = tq.mult(a, int(j[b, c]))
    rhs = int(j[tq.mult(a, b), tq.mult(a, c)])
    return (f"{f(a)} (.) ({f(b)} v {f(c)}) = {f(lhs)} but "
            f"{f(a)} (.) {f(b)} v {f(a)} (.) {f(c)} = {f(rhs)}")


def recheck_product_witness(base: TensorBase, w, masks) -> bool:
    """Recompute a distributivity or associativity failure from relations alone."""
    n = base.p

    def dot(r, s):
        return base.closure(relation_product(r, s, n, n, n))

    def join(r, s):
        return base.closure(r | s)

    kind = w[0]
    if kind == "bottom":
        x = masks[w[1]]
        return dot(0, x) != 0 or dot(x, 0) != 0
    a, b, c = (masks[i] for i in w[1:])
    if kind == "associativity":
        return dot(dot(a, b), c) != dot(a, dot(b, c))
    if kind == "right":
        return dot(join(b, c), a) != join(dot(b, a), dot(c, a))
    return dot(a, join(b, c)) != join(dot(a, b), dot(a, c))


def condition_member(name: str, xf: AugmentedPoset, yf: AugmentedPoset, guard, extra=None) -> MemberResult:
    rep = equivalent_conditions(xf, yf, guard)
    po = xf.poset
    values = dict(extra or {})
    values.update({k: rep.values[k] for k in sorted(rep.values)})
    lines = [f"tensors {rep.tensors}"]
    for k in sorted(rep.witnesses):
        lines.append(describe_condition(k, rep.witnesses[k], rep, po))

    def recheck():
        return not equivalent_conditions(xf, yf, guard).agree

    m = equivalence(name, values, lines, recheck)
    if "e" in rep.witnesses and m.verdict == PASS:
        m.witness = {"values": values, "product": rep.witnesses["e"]}
    return m


# example table ------------------------------------------------------------------------

REFERENCE_TENSORS = (
    (),
    ((1, 1),),
    ((1, 1), (1, 2)),
    ((1, 1), (2, 1)),
    ((1, 1), (1, 2), (2, 1)),
    ((1, 1), (1, 2), (2, 1), (2, 2)),
)

REFERENCE_TABLE = (
    (0, 0, 0, 0, 0, 0),
    (0, 1, 2, 1, 2, 2),
    (0, 1, 2, 1, 2, 2),
    (0, 3, 5, 3, 5, 5),
    (0, 3, 5, 3, 5, 5),
    (0, 3, 5, 3, 5, 5),
)


def chain3_quantale() -> TensorQuantale:
    po = named("CHAIN3")
    ap = cached_family(po, "powerset")
    return TensorQuantale(BASES.get(ap, ap))


def render_table(tq: TensorQuantale) -> str:
    n = tq.n
    names = [f"R{i}" for i in range(n)]
    w = max(len(s) for s in names) + 1
    head = "(.)".ljust(w) + "|" + "".join(s.rjust(w) for s in names)
    lines = [head, "-" * len(head)]
    for i in range(n):
        lines.append(names[i].ljust(w) + "|" + "".join(names[tq.mult(i, j)].rjust(w) for j in range(n)))
    return "\n".join(lines)


def render_family(tq_or_fam) -> list[str]:
    fam = tq_or_fam.family if isinstance(tq_or_fam, TensorQuantale) else tq_or_fam
    return [f"R{i} = {fam.base.format(m)}" for i, m in enumerate(fam.masks)]


@suite("example-table", "products of the 3-chain tensors against a reference table")
def _example_table(rep: SuiteReport, o: SuiteOptions) -> None:
    tq = chain3_quantale()
    base, fam = tq.base, tq.family
    po = base.lt.poset
    expected = [base.from_pairs((po.index(str(a)), po.index(str(b))) for a, b in pairs)
               for pairs in REFERENCE_TENSORS]
    lines = render_family(tq) + render_table(tq).splitlines()
    names_ok = list(fam.masks) == expected
    cells = [(i, j) for i in range(6) for j in range(6) if tq.mult(i, j) != REFERENCE_TABLE[i][j]] if names_ok else []
    chk = tq.checks()
    nc = tq.mult(2, 3) == 1 and tq.mult(3, 2) == 5
    lines += [
        f"tensors match reference names: {yn(names_ok)}",
        f"cells equal to reference table: {36 - len(cells) if names_ok else 0}/36",
        f"associative: {yn(chk.associative)}",
        f"distributive: {yn(chk.prequantale)}",
        f"non-commutative via R2 (.) R3 = R{tq.mult(2, 3)}, R3 (.) R2 = R{tq.mult(3, 2)}: {yn(nc)}",
        f"units: {chk.units or 'none'}",
    ]
    ok = names_ok and not cells and chk.quantale and nc and not chk.units
    for i, j in cells[:5]:
        lines.append(f"mismatch R{i} (.) R{j} = R{tq.mult(i, j)}, expected R{REFERENCE_TABLE[i][j]}")
    rep.add(MemberResult("CHAIN3", PASS if ok else FAIL, lines, witness=cells,
                         recheck=None if ok else (lambda: chain3_quantale().table.tolist() != [list(r) for r in REFERENCE_TABLE])))


# the eight conditions with power-set families ---------------------------------------------


@suite("pseudocomplemented-quantale",
       "complete lattices: pseudocomplemented iff the tensor product is a quantale, and the other conditions")
def _pc_quantale(rep: SuiteReport, o: SuiteOptions) -> None:
    for name, po in lattice_members(o.size(6)):
        ap = cached_family(po, "powerset")
        extra = {"pseudocomplemented": po.properties.pseudocomplemented}
        guarded(rep, name, lambda: condition_member(name, ap, ap, o.guard, extra))
    rep.notes.append("conditions: " + "; ".join(f"{k} = {v}" for k, v in sorted(LABELS.items())))


FAMILY_PAIRS = {
    "directed": [("empty", "directed"), ("directed", "directed"), ("singletons", "directed")],
    "finite": [("finite", "finite"), ("emptyset", "finite")],
}


def _families_suite(rep: SuiteReport, o: SuiteOptions, groups: list[str]) -> None:
    both_sides = []
    for name, po in poset_members(o.size(4)):
        for group in groups:
            for lk, rk in FAMILY_PAIRS[group]:
                xf, yf = cached_family(po, lk), cached_family(po, rk)
                mname = f"{name}[{lk},{rk}]"
                m = guarded(rep, mname, lambda: condition_member(mname, xf, yf, o.guard))
                if m.verdict != SKIP and m.witness.get("a") and not po.properties.pseudocomplemented:
                    both_sides.append(mname)
                    m.lines.append("bottom-distributive for the union family, yet not pseudocomplemented")
    rep.notes.append(f"distributive but not pseudocomplemented: {' '.join(both_sides) or 'none'}")


@suite("distributive-directed", "partial families: directed subsets on the right")
def _dist_directed(rep, o):
    _families_suite(rep, o, ["directed"])


@suite("distributive-finite", "partial families: finite subsets on the right")
def _dist_finite(rep, o):
    _families_suite(rep, o, ["finite"])


@suite("distributive-families", "partial families: directed and finite subsets")
def _dist_all(rep, o):
    _families_suite(rep, o, ["directed", "finite"])


# units ------------------------------------------------------------------------------------


def _union(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def _unit_member(name: str, po: Poset, guard) -> MemberResult:
    ap = cached_family(po, "powerset")
    base = BASES.get(ap, ap)
    tq = TensorQuantale(base, base.enumerate(guard))
    fam = tq.family
    chk = tq.checks()
    ia = tq.identity_candidate()
    ident = np.arange(tq.n)
    ia_neutral = ia in fam.index and bool(
        (tq.table[fam.index[ia]] == ident).all() and (tq.table[:, fam.index[ia]] == ident).all())
    values = {
        "atomistic": po.properties.atomistic,
        "I_A-neutral": ia_neutral,
        "has-neutral": chk.unital,
    }
    lines = [f"I_A = {base.format(ia)}", f"neutral elements: {[f'R{u}' for u in chk.units] or 'none'}"]
    # atoms of the tensor lattice are the principal tensors of pairs of atoms
    at = truncated_atoms(base)
    expected = sorted(fam.index[base.principal(a, b)] for a in at for b in at)
    atoms_ok = sorted(fam.atoms()) == expected
    lines.append(f"tensor atoms are principal tensors of atom pairs: {yn(atoms_ok)}")
    # every tensor is the least tensor above the atoms it contains
    atom_masks = [fam.masks[i] for i in fam.atoms()]
    lattice_atomistic = all(
        base.closure(_union(a for a in atom_masks if a & ~t == 0)) == t for t in fam.masks)
    if values["atomistic"]:
        lines.append(f"tensor lattice atomistic: {yn(lattice_atomistic)}")
    if po.bottom is not None and po.top is not None and ia in fam.index:
        ia_map = tuple(po.top if x == po.bottom else x if x in po.atoms else po.bottom for x in range(po.n))
        try:
            corr = base.galois_map(ia) == ia_map
            lines.append(f"i_A corresponds to I_A: {yn(corr)}")
        except TensorError as exc:
            corr = False
            lines.append(f"i_A corresponds to I_A: no ({exc})")
        lines.append(f"i_A antitone: {yn(is_antitone(ia_map, po, po))}")
    m = equivalence(name, values, lines)
    if not atoms_ok or (values["atomistic"] and not lattice_atomistic):
        m.verdict = FAIL
        m.lines.append("atom structure of the tensor lattice differs from the prediction")
        m.witness = {"atoms": fam.atoms(), "expected": expected}
    return m


@suite("unit-atomistic", "atomistic iff I_A is neutral iff some neutral element exists")
def _unit_atomistic(rep: SuiteReport, o: SuiteOptions) -> None:
    for name, po in poset_members(o.size(4)):
        guarded(rep, name, lambda: _unit_member(name, po, o.guard))


def relation_iso_check(tq: TensorQuantale, samples: int = 1000, seed: int = 0):
    """Isomorphism to all relations on the atoms, with a seeded triple sample on top of the exhaustive pairs."""
    fam = tq.family
    found = relation_quantale_iso(tq.table, fam.leq, 0)
    if found is None:
        return None, 0
    k, rho = found
    rng = np.random.default_rng(seed)
    n = tq.n
    triples = rng.integers(0, n, size=(samples, 3))
    bad = 0
    for a, b, c in triples:
        lhs = rho[tq.mult(tq.mult(int(a), int(b)), int(c))]
        rhs = relation_product(relation_product(rho[int(a)], rho[int(b)], k, k, k), rho[int(c)], k, k, k)
        bad += lhs != rhs
    return found, int(bad)


def _boolean_member(name: str, po: Poset, guard, seed: int) -> MemberResult:
    ap = cached_family(po, "powerset")
    base = BASES.get(ap, ap)
    tq = TensorQuantale(base, base.enumerate(guard))
    chk = tq.checks()
    props = po.properties
    found, bad = relation_iso_check(tq, seed=seed)
    values = {
        "atomic-boolean": props.atomic and props.boolean,
        "atomistic-pseudocomplemented": props.atomistic and props.pseudocomplemented,
        "unital-quantale": chk.quantale and chk.unital,
        "all-relations": found is not None and bad == 0,
    }
    lines = []
    if found is not None:
        k, rho = found
        lines.append(f"isomorphic to all relations on {k} points; sampled triples disagreeing: {bad}")
    return equivalence(name, values, lines)


@suite("boolean-unital", "complete lattices: boolean iff unital quantale iff all relations on a set")
def _boolean_unital(rep: SuiteReport, o: SuiteOptions) -> None:
    for name, po in lattice_members(o.size(6)):
        guarded(rep, name, lambda: _boolean_member(name, po, o.guard, o.seed))


# closure spaces ----------------------------------------------------------------------------


def space_members(max_points: int) -> list[tuple[str, ClosureSpace]]:
    out = []
    for n in range(1, max_points + 1):
        out.extend(closure_spaces_of_size(n).items())
    out.extend(sample_spaces().items())
    return out


@suite("discrete-unital", "unbounded T0 spaces: discrete iff the tensor quantale is unital")
def _discrete_unital(rep: SuiteReport, o: SuiteOptions) -> None:
    for name, sp in space_members(o.size(3)):
        props = sp.properties
        if not (props.unbounded and props.t0):
            continue

        def member(name=name, sp=sp):
            sq = SpaceQuantale(sp, o.guard)
            chk = sq.checks()
            discrete = len(sp.closed) == 1 << sp.n
            boolean = sp.lattice().properties.boolean

            def recheck():
                # neutral elements found from relation products, not from the table
                prod = SpaceProduct(sp, sp)
                masks = prod.enumerate(o.guard).masks
                n = sp.n

                def mul(r, t):
                    return prod.slice_closure(relation_product(r, t, n, n, n))

                units = [e for e in masks if all(mul(e, x) == x == mul(x, e) for x in masks)]
                return (bool(units) and chk.quantale) != discrete

            return equivalence(name, {"discrete": discrete, "unital-quantale": chk.quantale and chk.unital},
                               [f"tensors {sq.n}", f"closed-set lattice boolean: {yn(boolean)}"], recheck)

        guarded(rep, name, member)


@suite("polarized-quantale", "closure spaces: polarized iff the truncated tensor square is a quantale")
def _polarized_quantale(rep: SuiteReport, o: SuiteOptions) -> None:
    for name, sp in space_members(o.size(3)):
        def member(name=name, sp=sp):
            sq = SpaceQuantale(sp, o.guard)
            chk = sq.checks()
            lines = [f"tensors {sq.n}"]
            if not sp.properties.polarized:
                x = sp.properties.non_closed_polars[0]
                lines.append(f"polar of {sp.labels[x]} = {sp.set_label(sp.polar(x))} is not closed")
            return equivalence(name, {"polarized": sp.properties.polarized, "quantale": chk.quantale}, lines)

        guarded(rep, name, member)


def _lattice_pc(fam) -> bool:
    return fam.pseudocomplement_witness() is None


@suite("polarized", "pairs of spaces: polarized iff closed-set lattices and tensor products are pseudocomplemented")
def _polarized(rep: SuiteReport, o: SuiteOptions) -> None:
    spaces = space_members(o.size(2))
    for (na, a), (nb, b) in itertools.product(spaces, repeat=2):
        name = f"{na}x{nb}"

        def member(a=a, b=b, name=name):
            one = len(a.closed) == 1 or len(b.closed) == 1
            prod = SpaceProduct(a, b)
            la, lb = a.lattice(), b.lattice()
            values = {
                "polarized": (a.properties.polarized and b.properties.polarized) or one,
                "lattices-pseudocomplemented": (la.properties.pseudocomplemented and lb.properties.pseudocomplemented)
                or la.n == 1 or lb.n == 1,
                "product-pseudocomplemented": _lattice_pc(prod.enumerate(o.guard)),
                "truncated-pseudocomplemented": _lattice_pc(prod.truncated().enumerate(o.guard)),
                "lattice-product-pseudocomplemented": _lattice_pc(lattice_tensor_base(prod).enumerate(o.guard)),
            }
            return equivalence(name, values)

        guarded(rep, name, member)


# order-isomorphism checks ---------------------------------------------------------------------


def bijection_witness(src: list[int], dst: Iterable[int], fmap: Callable[[int], int],
                      inv: Callable[[int], int] | None = None) -> str | None:
    """None when ``fmap`` is an order isomorphism from ``src`` onto ``dst`` (inclusion orders)."""
    image = [fmap(t) for t in src]
    dset = set(dst)
    if len(set(image)) != len(src):
        return "not injective"
    if set(image) != dset:
        extra = sorted(set(image) - dset)
        return f"image differs from target family ({len(extra)} foreign, {len(dset - set(image))} missed)"
    for i, t in enumerate(src):
        if inv is not None and inv(image[i]) != t:
            return f"inverse fails at element {i}"
        for j, u in enumerate(src):
            if (t & ~u == 0) != (image[i] & ~image[j] == 0):
                return f"order not preserved between elements {i} and {j}"
    return None


SPACE_PAIRS = [
    ("DISCRETE2", "DISCRETE2"), ("IDEALS_CHAIN3", "IDEALS_CHAIN3"), ("NONT0", "SIERPINSKI"),
    ("SIERPINSKI", "DISCRETE2"), ("IDEALS_B4", "DISCRETE2"), ("FORK", "IDEALS_CHAIN3"),
    ("IDEALS_M3", "NONT0"),
]


@suite("space-lattice-iso", "tensor products of spaces, of closed-set lattices, and truncations agree")
def _space_lattice_iso(rep: SuiteReport, o: SuiteOptions) -> None:
    spaces = sample_spaces()
    for na, nb in SPACE_PAIRS:
        a, b = spaces[na], spaces[nb]
        name = f"{na}x{nb}"

        def member(a=a, b=b):
            prod = SpaceProduct(a, b)
            fam = prod.enumerate(o.guard)
            src = list(fam.masks)
            lat = lattice_iso_h(prod, src[0])[0]
            checks = {
                "closed-set-lattices": bijection_witness(
                    src, lat.enumerate(o.guard).masks, lambda t: lattice_iso_h(prod, t)[1],
                    lambda big: lattice_iso_h_inverse(prod, big)),
                "truncated-lattices": bijection_witness(
                    src, lattice_tensor_base(prod).enumerate(o.guard).masks,
                    lambda t: truncated_lattice_iso(prod, t)[1],
                    lambda s: truncated_lattice_iso_inverse(prod, s)),
                "coreflections": bijection_witness(
                    src, prod.truncated().enumerate(o.guard).masks, prod.strip, prod.unstrip),
            }
            base = lattice_tensor_base(prod)
            lat_fam = base.enumerate(o.guard)
            checks["full-form"] = bijection_witness(
                list(lat_fam.masks), base.full_base.enumerate(o.guard).masks, base.to_full, base.from_full)
            lines = [f"tensors {len(src)}"] + [f"{k}: {'bijective, order both ways' if v is None else v}"
                                               for k, v in checks.items()]
            ok = all(v is None for v in checks.values())
            return MemberResult(name, PASS if ok else FAIL, lines,
                                witness={k: v for k, v in checks.items() if v})

        guarded(rep, name, member)


# ideal lattices -----------------------------------------------------------------------------

FAMILY_KINDS = ("powerset", "directed", "chains", "singletons", "empty", "emptyset")


@suite("ideal-pseudocomplement", "bottom-distributive iff the ideal lattice is pseudocomplemented")
def _ideal_pc(rep: SuiteReport, o: SuiteOptions) -> None:
    for name, po in poset_members(o.size(4)):
        for kind in FAMILY_KINDS:
            ap = cached_family(po, kind)
            ideals = list(ap.ideals)
            lat = Poset(tuple(str(i) for i in range(len(ideals))),
                        tuple(mask_of(j for j, d in enumerate(ideals) if d & ~c == 0) for c in ideals))
            lines = []
            w = ap.bottom_distributivity_witness()
            if w is not None:
                lines.append(f"{po.labels[w[0]]} lies in cut{fmt_set(po, w[1])} but is orthogonal to it")
            m = equivalence(f"{name}[{kind}]", {"bottom-distributive": ap.bottom_distributive(),
                                                "ideals-pseudocomplemented": lat.properties.pseudocomplemented},
                            lines)
            trunc, keep = ap.truncate()
            iso = ideal_lattice_iso(ap)
            iso_w = bijection_witness(ideals, trunc.ideals, iso.__getitem__)
            between = set(macneille_family(po)) <= set(ideals) <= set(alexandroff_family(po))
            if kind == "powerset":
                between = between and set(ideals) == set(macneille_family(po))
            m.lines.append(f"truncation of ideals: {'order isomorphism' if iso_w is None else iso_w}")
            m.lines.append(f"cuts <= ideals <= down-sets: {yn(between)}")
            if iso_w is not None or not between:
                m.verdict = FAIL
            rep.add(m)


# product pseudocomplements -----------------------------------------------------------------


def principal_tensors(a: Poset, b: Poset) -> tuple[list[int], Callable]:
    """All down-sets of ``a x b`` whose rows and columns are principal ideals, as full bitmasks."""
    q = b.n
    out = []
    for f in itertools.product(range(q), repeat=a.n):
        if not is_antitone(f, a, b):
            continue
        t = mask_of(x * q + y for x in range(a.n) for y in range(q) if b.leq(y, f[x]))
        ok = True
        for y in range(q):
            col = mask_of(x for x in range(a.n) if t >> (x * q + y) & 1)
            g = a.greatest_of(col)
            if g is None or a.down[g] != col:
                ok = False
                break
        if ok:
            out.append(t)
    return out, (lambda x, y: x * q + y)


def _product_pc_member(na: str, a: Poset, nb: str, b: Poset) -> MemberResult:
    tensors, bit = principal_tensors(a, b)
    idx = {t: i for i, t in enumerate(tensors)}
    bottom = min(tensors, key=int.bit_count)

    def meet(s, t):
        # the lattice meet is the intersection, which is again such a tensor
        return s & t

    def pseudo(t):
        cands = [s for s in tensors if meet(s, t) == bottom]
        top = 0
        for s in cands:
            top |= s
        return top if top in idx and meet(top, t) == bottom else None

    def a_tensor(y):
        return mask_of(bit(x, z) for x in range(a.n) for z in range(b.n) if b.leq(z, y)) | bottom

    lines = []
    bad = []
    for y in range(b.n):
        s = pseudo(a_tensor(y))
        star = b.pseudocomplement(y)
        predicted = a_tensor(star) if star is not None else None
        if s != predicted:
            bad.append(b.labels[y])
    lattice_pc = all(pseudo(t) is not None for t in tensors)
    values = {
        "factors-pseudocomplemented": a.properties.pseudocomplemented and b.properties.pseudocomplemented,
        "product-pseudocomplemented": lattice_pc,
    }
    lines.append(f"tensors {len(tensors)}")
    lines.append(f"pseudocomplement of A x down(b) is A x down(b*) for every b: {yn(not bad)}")
    m = equivalence(f"{na}x{nb}", values, lines)
    if bad:
        m.verdict = FAIL
        m.lines.append(f"fails at b in {{{' '.join(bad)}}}")
        m.witness = {"elements": bad}
    return m


@suite("product-pseudocomplement", "bounded posets: the Galois tensor product is pseudocomplemented iff both factors are")
def _product_pc(rep: SuiteReport, o: SuiteOptions) -> None:
    from .corpus import bounded_extension
    members = []
    for k in range(0, o.size(5) - 1):
        for i, inner in enumerate(posets_of_size(k)):
            members.append((f"BP{k + 2}.{i}", bounded_extension(inner)))
    for na, a in members:
        for nb, b in members:
            rep.add(_product_pc_member(na, a, nb, b))


# residuals ---------------------------------------------------------------------------------


def truncated_poset(po: Poset) -> Poset:
    bot = po.bottom
    if bot is None:
        return po
    return po.subposet(po.carrier & ~(1 << bot))[0]


def _residual_member(name: str, po: Poset, samples: int | None, seed: int) -> MemberResult:
    tp = truncated_poset(po)
    n = tp.n
    base = TensorBase(AugmentedPoset.empty(tp), AugmentedPoset.empty(tp))
    rels = sorted(base.down_sets())
    mult = lambda r, s: relation_product(r, s, n, n, n)
    if samples is None:
        triples = itertools.product(range(len(rels)), repeat=3)
        count = len(rels) ** 3
    else:
        rng = np.random.default_rng(seed)
        triples = [tuple(map(int, t)) for t in rng.integers(0, len(rels), size=(samples, 3))]
        count = samples
    bad = None
    cache = {}
    for i, j, k in triples:
        r, s, t = rels[i], rels[j], rels[k]
        key = (i, k)
        if key not in cache:
            cache[key] = (residual_right(tp, r, t), brute_residuals(rels, mult, r, t)[0])
        right, bright = cache[key]
        left = residual_left(tp, t, s)
        bleft = brute_residuals(rels, mult, s, t)[1]
        adj = (mult(r, s) & ~t == 0) == (s & ~right == 0) == (r & ~left == 0)
        if right != bright or left != bleft or not adj:
            bad = (r, s, t)
            break
    lines = [f"lower relations {len(rels)}, triples checked {count}"]
    if bad is None:
        return MemberResult(name, PASS, lines)
    r, s, t = bad
    lines.append(f"mismatch at R={fmt_lower(base, r)} S={fmt_lower(base, s)} T={fmt_lower(base, t)}")

    def recheck():
        return residual_right(tp, r, t) != brute_residuals(rels, mult, r, t)[0] or \
            residual_left(tp, t, s) != brute_residuals(rels, mult, s, t)[1]

    return MemberResult(name, FAIL, lines, witness=bad, recheck=recheck)


@suite("residuals", "residual formulas against a search over lower relations")
def _residuals(rep: SuiteReport, o: SuiteOptions) -> None:
    rep.add(_residual_member("CHAIN3", named("CHAIN3"), None, o.seed))
    rep.add(_residual_member("B4", named("B4"), o.samples or 1000, o.seed))
    rep.add(_residual_member("V", named("V"), None, o.seed))


# closure of products ------------------------------------------------------------------------


def _triple_bases(names: tuple[str, str, str]) -> tuple[TensorBase, TensorBase]:
    a, b, c = (cached_family(named(n), "powerset") for n in names)
    return BASES.get(a, b), BASES.get(b, c)


@suite("closure-product", "t(R).S | R.t(S) <= t(R.S) and closure equation on a pseudocomplemented triple")
def _closure_product(rep: SuiteReport, o: SuiteOptions) -> None:
    names = ("CHAIN3", "N5", "B4")
    ab, bc = _triple_bases(names)
    ac = compose_base(ab, bc)
    rs = list(ab.down_sets())
    ss = list(bc.down_sets())
    p, m, q = ab.p, ab.q, bc.q
    t_ab = {r: ab.t(r) for r in rs}
    t_bc = {s: bc.t(s) for s in ss}
    c_ab = {r: ab.closure(r) for r in rs}
    c_bc = {s: bc.closure(s) for s in ss}
    t_ac: dict[int, int] = {}
    c_ac: dict[int, int] = {}

    def tac(x):
        if x not in t_ac:
            t_ac[x] = ac.t(x)
        return t_ac[x]

    def cac(x):
        if x not in c_ac:
            c_ac[x] = ac.closure(x)
        return c_ac[x]

    incl = eq = None
    for r in rs:
        for s in ss:
            rsp = relation_product(r, s, p, m, q)
            lhs = relation_product(t_ab[r], s, p, m, q) | relation_product(r, t_bc[s], p, m, q)
            if incl is None and lhs & ~tac(rsp):
                incl = (r, s)
            if eq is None and cac(relation_product(c_ab[r], c_bc[s], p, m, q)) != cac(rsp):
                eq = (r, s)
    lines = [f"pairs checked {len(rs) * len(ss)}"]
    for label, w in (("inclusion", incl), ("closure equation", eq)):
        lines.append(f"{label}: {'holds' if w is None else 'fails at R=' + fmt_lower(ab, w[0]) + ' S=' + fmt_lower(bc, w[1])}")
    rep.add(MemberResult("x".join(names), PASS if incl is None and eq is None else FAIL, lines,
                         witness=incl or eq))

    # empty family on one side leaves the product unchanged
    left_empty = BASES.get(AugmentedPoset.empty(ab.lt.poset), ab.rt)
    right_empty = BASES.get(bc.lt, AugmentedPoset.empty(bc.rt.poset))
    bad = None
    for r in rs:
        tr = left_empty.t(r)
        for s in ss:
            rsp = relation_product(r, s, p, m, q)
            if relation_product(tr, s, p, m, q) != rsp or relation_product(r, right_empty.t(s), p, m, q) != rsp:
                bad = (r, s)
                break
        if bad:
            break
    rep.add(MemberResult("x".join(names) + "[empty-side]", PASS if bad is None else FAIL,
                         [f"t with an empty family on the outer side leaves R.S unchanged: {yn(bad is None)}"],
                         witness=bad))

    # associativity of the products across four objects
    names4 = ("CHAIN3", "N5", "B4", "CHAIN3")
    fams = [cached_family(named(n), "powerset") for n in names4]
    b01, b12, b23 = BASES.get(fams[0], fams[1]), BASES.get(fams[1], fams[2]), BASES.get(fams[2], fams[3])

    def member():
        f02, t012 = odot_table(b01, b12, guard=o.guard)
        f13, t123 = odot_table(b12, b23, guard=o.guard)
        _, t02_3 = odot_table(compose_base(b01, b12), b23, f02, guard=o.guard)
        _, t0_13 = odot_table(b01, compose_base(b12, b23), None, f13, guard=o.guard)
        lhs = t02_3[t012]                   # ((R.S).T)[i, j, k]
        rhs = t0_13[:, t123]                # (R.(S.T))[i, j, k]
        diff = np.argwhere(lhs != rhs)
        lines = [f"triples checked {lhs.size}"]
        if len(diff):
            i, j, k = map(int, diff[0])
            lines.append(f"fails at indices {i}, {j}, {k}")
            return MemberResult("", FAIL, lines, witness=(i, j, k))
        return MemberResult("", PASS, lines)

    guarded(rep, "x".join(names4) + "[associativity]", member)


# transport along closed-set lattices ---------------------------------------------------------------


def unbounded_spaces() -> dict[str, ClosureSpace]:
    out = {}
    for name, sp in sample_spaces().items():
        if sp.properties.unbounded:
            out[name] = sp
        else:
            out[name + "^"] = sp.coreflection()[0]
    return out


TRANSPORT_TRIPLES = [
    ("DISCRETE2", "SIERPINSKI", "DISCRETE2"), ("SIERPINSKI", "NONT0", "DISCRETE2"),
    ("IDEALS_CHAIN3^", "DISCRETE2", "SIERPINSKI"), ("FORK^", "IDEALS_CHAIN3^", "DISCRETE2"),
    ("IDEALS_B4^", "SIERPINSKI", "NONT0"), ("DISCRETE2", "IDEALS_M3^", "SIERPINSKI"),
]


def _transport_member(a, b, c, samples: int, seed: int, guard) -> MemberResult:
    pab, pbc, pac = SpaceProduct(a, b), SpaceProduct(b, c), SpaceProduct(a, c)
    fab, fbc, fac = pab.enumerate(guard), pbc.enumerate(guard), pac.enumerate(guard)
    lab, lbc = lattice_tensor_base(pab), lattice_tensor_base(pbc)
    lac = compose_base(lab, lbc)
    rng = np.random.default_rng(seed)
    pairs = list(itertools.product(range(len(fab)), range(len(fbc))))
    if len(pairs) > samples:
        pick = rng.choice(len(pairs), size=samples, replace=False)
        pairs = [pairs[int(i)] for i in sorted(pick)]
    cab = {r: truncated_lattice_iso(pab, r)[1] for r in fab.masks}
    cbc = {s: truncated_lattice_iso(pbc, s)[1] for s in fbc.masks}
    cac = {t: truncated_lattice_iso(pac, t)[1] for t in fac.masks}
    bad = None
    for i, j in pairs:
        r, s = fab.masks[i], fbc.masks[j]
        rs = relation_product(r, s, a.n, b.n, c.n)
        lrs = relation_product(cab[r], cbc[s], lab.p, lab.q, lbc.q)
        t = fac.masks[int(rng.integers(0, len(fac)))]
        if ((rs & ~t) == 0) != ((lrs & ~cac[t]) == 0):
            bad = ("inclusion", r, s, t)
            break
        if cac[pac.slice_closure(rs)] != lac.closure(lrs):
            bad = ("product", r, s)
            break
    lines = [f"pairs checked {len(pairs)}"]
    if bad is None:
        return MemberResult("", PASS, lines)
    lines.append(f"{bad[0]} fails at R={pab.format(bad[1])} S={pbc.format(bad[2])}")
    return MemberResult("", FAIL, lines, witness=bad)


@suite("transport", "products of tensors commute with passing to closed-set lattices")
def _transport(rep: SuiteReport, o: SuiteOptions) -> None:
    spaces = unbounded_spaces()
    for na, nb, nc in TRANSPORT_TRIPLES:
        a, b, c = spaces[na], spaces[nb], spaces[nc]
        guarded(rep, f"{na}x{nb}x{nc}",
                lambda: _transport_member(a, b, c, o.samples or 2000, o.seed, o.guard))
    rep.notes.append("spaces marked ^ are unbounded coreflections of the sample spaces")


# nuclei and quotients ------------------------------------------------------------------------------


def small_quantales() -> dict[str, FiniteQuantale]:
    out = {}
    for name, po in (("RELATIONS_CHAIN1", Poset.chain(1)), ("RELATIONS_CHAIN2", Poset.chain(2))):
        out[name] = relation_quantale(po)[0]
    c3 = Poset.chain(3)
    meet = np.array([[min(i, j) for j in range(3)] for i in range(3)], dtype=np.int32)
    out["FRAME_CHAIN3"] = FiniteQuantale(c3, meet)
    zero = np.zeros((3, 3), dtype=np.int32)
    out["ZERO_CHAIN3"] = FiniteQuantale(c3, zero)
    b4 = Poset.powerset("pq")
    out["FRAME_B4"] = FiniteQuantale(b4, np.array([[i & j for j in range(4)] for i in range(4)], dtype=np.int32))
    out["TENSORS_CHAIN3"] = chain3_quantale().as_quantale()
    return out


def _quotient_member(name: str, q: FiniteQuantale) -> MemberResult:
    rows = quotient_equivalences(q)
    bad = [(s, v) for s, v in rows if len(set(v.values())) > 1]
    quotients = sum(all(v.values()) for _, v in rows)
    lines = [f"subsets {len(rows)}, quantic quotients {quotients}"]
    if not bad:
        return MemberResult(name, PASS, lines)
    s, v = bad[0]
    members = list(iter_bits(s))
    k = least_closure_table(q, members) if members and q.top in members else None
    lines.append(f"{len(bad)} subsets disagree; first S = {{{' '.join(q.lattice.labels[i] for i in members)}}}")
    lines.append("values " + " ".join(f"{key}={yn(val)}" for key, val in v.items()))
    if k is not None:
        for x in range(q.n):
            hit = next((y for y in range(q.n) if not q.leq(int(q.mult[k[x], k[y]]), k[int(q.mult[x, y])])), None)
            if hit is not None:
                lines.append(f"closure k onto S: k({q.lattice.labels[x]}).k({q.lattice.labels[hit]}) "
                             f"is not below k({q.lattice.labels[x]}.{q.lattice.labels[hit]})")
                break

    def recheck():
        vals = {
            "residuation": __import__("relq.quantale", fromlist=["is_quantic_quotient"]).is_quantic_quotient(q, members),
            "induced": induced_multiplication(q, members)[1] if q.top in members else False,
        }
        return vals["residuation"] != vals["induced"] or v["nucleus-range"] != vals["residuation"]

    return MemberResult(name, FAIL, lines, witness=(s, v), recheck=recheck)


@suite("nucleus-quotient", "prenucleus fixpoints, nucleus ranges, residuation-closed sets and induced quantales")
def _nucleus_quotient(rep: SuiteReport, o: SuiteOptions) -> None:
    for name, q in small_quantales().items():
        rep.add(_quotient_member(name, q))
    # the tensor closure as a nucleus on all lower relations of the truncated 3-chain
    tq = chain3_quantale()
    base = tq.base
    po = base.lt.poset
    q, rels = relation_quantale(po)
    index = {r: i for i, r in enumerate(rels)}
    j = [index[base.closure(r)] for r in rels]
    nr = nucleus_checks(q, j)
    fixed = [rels[i] for i in nr.fixpoints]
    same_set = sorted(fixed) == sorted(tq.family.masks)
    induced_ok = False
    if nr.induced is not None and same_set:
        pos = [tq.family.index[rels[i]] for i in sorted(nr.fixpoints)]
        induced_ok = all(pos[int(nr.induced[a, b])] == tq.mult(pos[a], pos[b])
                         for a in range(len(pos)) for b in range(len(pos)))
    ok = nr.nucleus and nr.quantic_quotient and same_set and induced_ok
    rep.add(MemberResult("CLOSURE_ON_LOWER_RELATIONS_CHAIN3", PASS if ok else FAIL, [
        f"nucleus: {yn(nr.nucleus)}", f"fixpoints are the {len(fixed)} tensors: {yn(same_set)}",
        f"residuation-closed: {yn(nr.quantic_quotient)}",
        f"induced product equals the tensor product table: {yn(induced_ok)}",
    ]))


@suite("down-set-quantale", "lower relations under the relation product: unital iff the order is discrete")
def _down_set_quantale(rep: SuiteReport, o: SuiteOptions) -> None:
    bound = o.guard or 256
    for name, po in poset_members(o.size(3), with_curated=False) + [("CHAIN3", named("CHAIN3")), ("V", named("V"))]:
        def member(name=name, po=po):
            count = sum(1 for _ in TensorBase(AugmentedPoset.empty(po), AugmentedPoset.empty(po)).down_sets())
            if count > bound:
                raise GuardExceeded(bound, "lower relations")
            q, rels = relation_quantale(po)
            n = po.n
            prin = [rels.index(mask_of(a * n + b for a in iter_bits(po.down[x]) for b in iter_bits(po.down[y])))
                    for x in range(n) for y in range(n)]
            chk = table_checks(q.mult, q.join, q.bottom, prin)
            discrete = all(d == 1 << i for i, d in enumerate(po.down))
            m = equivalence(name, {"discrete": discrete, "unital": chk.unital}, [f"lower relations {q.n}"])
            m.lines.append(f"quantale: {yn(chk.quantale)}")
            if not chk.quantale:
                m.verdict = FAIL
            return m

        guarded(rep, name, member)


# maps and tensors ---------------------------------------------------------------------------


def antitone_maps(a: Poset, b: Poset) -> list[tuple[int, ...]]:
    return [f for f in itertools.product(range(b.n), repeat=a.n) if is_antitone(f, a, b)]


def _galois_member(ap: AugmentedPoset, b: Poset, guard) -> MemberResult:
    a = ap.poset
    bp = cached_family(b, "powerset")
    base = BASES.get(ap, bp)
    fam = base.enumerate(guard)
    # maps whose preimages of principal filters are ideals of the family
    maps = [f for f in antitone_maps(a, b)
            if all(ap.is_ideal(mask_of(x for x in range(a.n) if b.leq(y, f[x]))) for y in range(b.n))]
    fb = base.full_base
    q = b.n
    problems = []
    from_maps = {}
    for f in maps:
        full_t = mask_of(x * q + y for x in range(a.n) for y in range(q) if b.leq(y, f[x]))
        if not fb.is_tensor(full_t):
            problems.append(f"T_f is not a tensor for f={f}")
            break
        small = base.tensor_of_map(f)
        if small != base.from_full(full_t):
            problems.append(f"truncated T_f differs for f={f}")
            break
        from_maps[small] = f
    if not problems:
        if set(from_maps) != set(fam.masks):
            problems.append(f"{len(maps)} maps but {len(fam)} tensors")
        else:
            for t in fam.masks:
                if base.galois_map(t) != from_maps[t]:
                    problems.append(f"galois map of {fmt_lower(base, t)} differs")
                    break
            else:
                for f, g in itertools.product(maps, repeat=2):
                    le_maps = all(b.leq(f[x], g[x]) for x in range(a.n))
                    if le_maps != (base.tensor_of_map(f) & ~base.tensor_of_map(g) == 0):
                        problems.append(f"order differs at f={f} g={g}")
                        break
    lines = [f"maps {len(maps)}, tensors {len(fam)}"] + problems
    return MemberResult("", PASS if not problems else FAIL, lines, witness=problems or None)


@suite("galois-roundtrip", "maps with ideal preimages correspond to tensors, in order, both ways")
def _galois_roundtrip(rep: SuiteReport, o: SuiteOptions) -> None:
    lefts = poset_members(o.size(3), with_curated=False)
    rights = [(n, p) for n, p in lattice_members(4) if p.n >= 2]
    for na, a in lefts:
        for nb, b in rights:
            for kind in ("powerset", "directed", "emptyset", "empty"):
                ap = cached_family(a, kind)
                guarded(rep, f"{na}->{nb}[{kind}]", lambda: _galois_member(ap, b, o.guard))


# finite chains ------------------------------------------------------------------------------------


@suite("chain-composition", "composites of antitone maps on finite chains")
def _chain_composition(rep: SuiteReport, o: SuiteOptions) -> None:
    top = o.size(6)
    for n in range(3, top + 1):
        po = Poset.chain(n)
        maps = antitone_maps(po, po)
        cache: dict = {}
        bad = None
        for f in maps:
            for g in maps:
                got = galois_compose(f, g, po, po, po, cache).composite
                if got != step_composite(f, g, po, po, po):
                    bad = (f, g, got)
                    break
            if bad:
                break
        lines = [f"antitone maps {len(maps)}, pairs {len(maps) ** 2}"]
        if bad:
            lines.append(f"f={bad[0]} g={bad[1]} gives {bad[2]}, closed form {step_composite(bad[0], bad[1], po, po, po)}")
        rep.add(MemberResult(f"CHAIN{n}[closed-form]", PASS if bad is None else FAIL, lines, witness=bad,
                             recheck=None if bad is None else (
                                 lambda f=bad[0], g=bad[1], po=po: galois_compose(f, g, po, po, po).composite
                                 != step_composite(f, g, po, po, po))))
        # the only antitone involution of a finite chain is the reversal
        inv = [f for f in maps if all(f[f[x]] == x for x in range(n))]
        expected = tuple(po.top for _ in range(n))
        fails = []
        for f in inv:
            for g in inv:
                got = galois_compose(f, g, po, po, po, cache).composite
                if got != expected:
                    fails.append((f, g, got))
        lines = [f"involutions {len(inv)}"]
        for f, g, got in fails[:1]:
            lines.append(f"f=g={f} gives {got}, constant top would be {expected}")
        rep.add(MemberResult(f"CHAIN{n}[involutions]", PASS if not fails else FAIL, lines,
                             witness=fails[0] if fails else None,
                             recheck=None if not fails else (
                                 lambda f=fails[0][0], g=fails[0][1], po=po, e=expected:
                                 galois_compose(f, g, po, po, po).composite != e)))


# idempotency of t --------------------------------------------------------------------------------


def _agreement_sample(base: TensorBase, seed: int, count: int = 200) -> int | None:
    """A sampled lower relation on which the batched ``t`` and the definition differ."""
    rows = sample_down_set_rows(base, count, seed)
    fast = base.from_rows(base.t_rows_batch(rows))
    for r, t in zip(base.from_rows(rows), fast):
        if t != brute_t(base, r) or t != base.t(r):
            return r
    return None


@suite("boolean-idempotency", "replay on the eight-element boolean algebra and search for t(R) != t(t(R))")
def _boolean_idempotency(rep: SuiteReport, o: SuiteOptions) -> None:
    replay = boolean_replay()
    rep.add(MemberResult("BOOL3[replay]", PASS if replay.fast_matches_oracle else FAIL, replay.lines(),
                         witness=None if replay.fast_matches_oracle else replay.relation))
    plan = [("CHAIN3", named("CHAIN3"), None), ("B4", named("B4"), None), ("B8", named("B8"), None),
            ("B16", Poset.powerset("pqrs"), o.samples or 10_000)]
    for name, po, samples in plan:
        ap = cached_family(po, "powerset")
        base = BASES.get(ap, ap)
        res = idempotency_witness_search(base, samples, o.seed)
        mismatch = _agreement_sample(base, o.seed, 200 if samples is None else 40)
        mode = "exhaustive" if res.exhaustive else f"seeded sample (seed {o.seed})"
        lines = [f"{mode}: {res.examined} lower relations, {res.witnesses} with t(R) != t(t(R))"]
        if res.shrunk is not None:
            lines.append(f"smallest witness {fmt_lower(base, res.smallest)}; shrunk {fmt_lower(base, res.shrunk)}")
        elif res.exhaustive:
            lines.append("certified: t is idempotent on every lower relation")
        lines.append(f"batched t agrees with the definition on {200 if samples is None else 40} samples: {yn(mismatch is None)}")
        rep.add(MemberResult(f"{name}[{'exhaustive' if res.exhaustive else 'sampled'}]",
                             PASS if mismatch is None else FAIL, lines,
                             witness=res.shrunk if mismatch is None else mismatch))


__all__ = ["SUITES", "Suite", "SuiteOptions", "run_suite", "REFERENCE_TABLE", "REFERENCE_TENSORS",
           "chain3_quantale", "render_table", "render_family", "relation_iso_check", "antitone_maps",
           "principal_tensors", "small_quantales", "unbounded_spaces", "describe_product_witness",
           "recheck_product_witness", "cached_family", "family_of", "truncated_poset"]
