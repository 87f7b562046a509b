"""Algebraic laws over generated structures, 1000 cases per law under a fixed seed."""

import itertools
from functools import lru_cache

from hypothesis import given, strategies as st

from conftest import ALL_LATTICE_FORMS, ALL_POSET_FORMS, ALL_SPACE_FORMS, spaces, subsets
from relq.completions import AugmentedPoset
from relq.corpus import canonical_form, from_form, generate_corpus, lattice_from_form, poset_forms
from relq.oracle import sample_down_set_rows
from relq.order import Poset
from relq.tensor import TensorBase
from relq.workspace import emit_workspace, parse_workspace

KINDS = ("powerset", "finite", "directed", "chains", "singletons", "empty")
SMALL_POSETS = [f for f in ALL_POSET_FORMS if len(f) <= 4]
SMALL_LATTICES = [f for f in ALL_LATTICE_FORMS if 2 <= len(f) <= 5]
# tensor products stay well inside the default guard on at most three elements
TINY_POSETS = [f for f in ALL_POSET_FORMS if len(f) <= 3]


@lru_cache(maxsize=None)
def family(form, kind, lattice=False):
    po = lattice_from_form(form) if lattice else from_form(form)
    return getattr(AugmentedPoset, kind)(po)


@lru_cache(maxsize=None)
def base_of(lform, lkind, rform, rkind, lattice=False):
    return TensorBase(family(lform, lkind, lattice), family(rform, rkind, lattice))


@lru_cache(maxsize=None)
def tensors(*key):
    return base_of(*key).enumerate()


@st.composite
def bases(draw, lattice=False):
    forms = SMALL_LATTICES if lattice else TINY_POSETS
    key = (draw(st.sampled_from(forms)), draw(st.sampled_from(KINDS)),
           draw(st.sampled_from(forms)), draw(st.sampled_from(KINDS)), lattice)
    return key


@st.composite
def lower_relations(draw):
    key = draw(bases())
    base = base_of(*key)
    r = base.down_closure(draw(st.integers(min_value=0, max_value=max(base.top, 0))))
    return key, r


def is_closure(close, ground, a, b):
    ca, cb = close(a), close(b)
    assert a & ~ca == 0, "extensive"
    assert close(ca) == ca, "idempotent"
    if a & ~b == 0:
        assert ca & ~cb == 0, "monotone"


# closure operators -------------------------------------------------------------


@given(spaces(), subsets(3), subsets(3))
def test_space_closure_is_a_closure_operator(sp, a, b):
    a &= sp.ground
    b &= sp.ground
    is_closure(sp.closure, sp.ground, a, b)
    assert sp.is_closed(sp.closure(a))


@given(st.sampled_from(SMALL_POSETS), subsets(4), subsets(4))
def test_cut_is_a_closure_operator(form, a, b):
    po = from_form(form)
    a &= po.carrier
    b &= po.carrier
    is_closure(po.cut, po.carrier, a, b)


@given(st.sampled_from(SMALL_POSETS), st.sampled_from(KINDS), subsets(4), subsets(4))
def test_ideal_closure_is_a_closure_operator(form, kind, a, b):
    ap = family(form, kind)
    po = ap.poset
    a, b = po.down_closure(a & po.carrier), po.down_closure(b & po.carrier)
    is_closure(ap.ideal_closure, po.carrier, a, b | a)
    assert ap.is_ideal(ap.ideal_closure(a))


@given(lower_relations(), st.integers(min_value=0))
def test_tensor_closure_is_the_least_tensor_above(kr, seed):
    key, r = kr
    base = base_of(*key)
    fam = tensors(*key)
    c = base.closure(r)
    assert c in fam
    assert r & ~c == 0
    assert base.closure(c) == c
    # least: below every tensor containing r
    t = fam.masks[seed % len(fam)]
    if r & ~t == 0:
        assert c & ~t == 0
    # t is extensive and isotone on lower relations
    tr = base.t(r)
    assert base.down_closure(r | tr) & ~c == 0


# join-density of pure tensors -------------------------------------------------


@given(bases(), st.integers(min_value=0))
def test_tensors_are_joins_of_pure_tensors(key, pick):
    base = base_of(*key)
    fam = tensors(*key)
    t = fam.masks[pick % len(fam)]
    below = 0
    for a in range(base.p):
        for b in range(base.q):
            pure = base.closure(base.principal(a, b))
            assert pure in fam
            if pure & ~t == 0:
                below |= pure
    assert fam.least_above(below) == t


# Galois round trips ---------------------------------------------------------------


@given(st.sampled_from(SMALL_POSETS), st.sampled_from(KINDS), st.sampled_from(SMALL_LATTICES),
       st.integers(min_value=0), st.integers(min_value=0))
def test_tensor_map_round_trip(aform, kind, bform, i, j):
    base = TensorBase(family(aform, kind), family(bform, "powerset", True))
    fam = base.enumerate()
    t, u = fam.masks[i % len(fam)], fam.masks[j % len(fam)]
    f, g = base.galois_map(t), base.galois_map(u)
    a, b = base.left.poset, base.right.poset
    assert all(b.leq(f[y], f[x]) for x in range(a.n) for y in range(a.n) if a.leq(x, y))
    assert base.tensor_of_map(f) == t
    pointwise = all(b.leq(f[x], g[x]) for x in range(a.n))
    assert pointwise == (t & ~u == 0)


# corpus determinism -----------------------------------------------------------------


FIVE_POSETS = [f for n in range(1, 6) for f in poset_forms(n)]


def least_relabeling(form, n):
    return min(tuple(sorted(sum(1 << perm[i] for i in range(n) if m >> i & 1) for m in form))
               for perm in itertools.permutations(range(n)))


@given(st.one_of(st.tuples(st.just("poset"), st.sampled_from(FIVE_POSETS)),
                 st.tuples(st.just("space"), st.sampled_from(ALL_SPACE_FORMS))),
       st.permutations(range(5)))
def test_canonical_forms_ignore_labeling(item, perm):
    kind, form = item
    n = len(form) if kind == "poset" else max(form).bit_length()
    perm = [p for p in perm if p < n]
    if kind == "poset":
        assert canonical_form(from_form(form).permuted(perm)) == form
    else:
        moved = tuple(sum(1 << perm[i] for i in range(n) if m >> i & 1) for m in form)
        assert least_relabeling(moved, n) == form


@given(bases(), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_seeded_samples_repeat(key, seed):
    base = base_of(*key)
    if base.p == 0 or base.q == 0:
        return
    a = sample_down_set_rows(base, 5, seed)
    b = sample_down_set_rows(base, 5, seed)
    assert (a == b).all()
    for r in base.from_rows(a):
        assert base.is_down_set(r)


def test_corpus_generation_repeats():
    first = [(m.name, m.poset.down) for m in generate_corpus(6)]
    again = [(m.name, m.poset.down) for m in generate_corpus(6)]
    assert first == again


# parse round trips ----------------------------------------------------------------

LABELS = st.sampled_from(["a", "b", "c", "d", "x1", "top", "bot", "p_q", "n-2", "e.f"])


@st.composite
def workspace_texts(draw):
    lines = []
    posets = {}
    for k in range(draw(st.integers(min_value=1, max_value=3))):
        form = draw(st.sampled_from(SMALL_POSETS))
        labels = draw(st.lists(LABELS, min_size=len(form), max_size=len(form), unique=True))
        po = Poset(tuple(labels), form)
        name = f"P{k}"
        posets[name] = po
        lines.append(f"poset {name}")
        # elements and covers in a random order
        lines.append("  elements " + " ".join(draw(st.permutations(labels))))
        cov = [f"{labels[a]}<{labels[b]}" for a, b in po.covers()]
        if cov:
            lines.append("  covers " + " ".join(draw(st.permutations(cov))))
        lines.append("end")
    if draw(st.booleans()):
        form = draw(st.sampled_from(ALL_SPACE_FORMS))
        n = max(form).bit_length()
        pts = "xyz"[:n]
        lines.append("space S  # a comment")
        lines.append("  points " + " ".join(pts))
        lines.append("  closed " + " ".join("{" + " ".join(pts[i] for i in range(n) if c >> i & 1) + "}"
                                             for c in draw(st.permutations(form))))
        lines.append("end")
    names = sorted(posets)
    for k in range(draw(st.integers(min_value=0, max_value=2))):
        pn = draw(st.sampled_from(names))
        po = posets[pn]
        lines.append(f"family F{k} on {pn}")
        if draw(st.booleans()):
            lines.append("  builtin " + draw(st.sampled_from(["@powerset", "@directed", "@finite", "@chains"])))
        else:
            sets = draw(st.lists(subsets(po.n), min_size=1, max_size=3))
            lines.append("  sets " + " ".join("{" + " ".join(po.labels[i] for i in range(po.n) if m >> i & 1) + "}"
                                              for m in sets))
        lines.append("end")
    for k in range(draw(st.integers(min_value=0, max_value=2))):
        ln, rn = draw(st.sampled_from(names)), draw(st.sampled_from(names))
        lp, rp = posets[ln], posets[rn]
        # the default family removes a least element when there is one
        lkeep = [x for i, x in enumerate(lp.labels) if i != lp.bottom]
        rkeep = [x for i, x in enumerate(rp.labels) if i != rp.bottom]
        lines.append(f"relation R{k} on {ln} {rn}")
        if lkeep and rkeep:
            pairs = draw(st.lists(st.tuples(st.sampled_from(lkeep), st.sampled_from(rkeep)), max_size=4))
            if pairs:
                lines.append("  pairs " + " ".join(f"({a},{b})" for a, b in pairs))
        lines.append("end")
    if draw(st.booleans()):
        sn, tn = draw(st.sampled_from(names)), draw(st.sampled_from(names))
        src, tgt = posets[sn], posets[tn]
        vals = [f"{x}:{draw(st.sampled_from(tgt.labels))}" for x in src.labels]
        lines.append(f"map m on {sn} {tn}")
        lines.append("  values " + " ".join(draw(st.permutations(vals))))
        lines.append("end")
    return "\n".join(lines) + "\n"


@given(workspace_texts())
def test_workspace_round_trip(text):
    ws = parse_workspace(text)
    canonical = emit_workspace(ws)
    again = parse_workspace(canonical)
    assert again == ws
    assert emit_workspace(again) == canonical
