import itertools

import numpy as np
import pytest

from relq.completions import AugmentedPoset
from relq.corpus import m3, named
from relq.order import Poset
from relq.quantale import (FiniteQuantale, TensorQuantale, brute_residuals, galois_compose,
                           induced_multiplication, is_antitone, is_quantic_quotient, nucleus_checks,
                           odot, relation_product, relation_quantale, residual_left, residual_right,
                           step_composite, transpose, truncated_atoms)
from relq.suites import REFERENCE_TABLE, chain3_quantale, truncated_poset
from relq.tensor import TensorBase, TensorError


def naive_product(r, s, p, q, m):
    out = 0
    for a, b, c in itertools.product(range(p), range(q), range(m)):
        if r >> (a * q + b) & 1 and s >> (b * m + c) & 1:
            out |= 1 << (a * m + c)
    return out


def square_quantale(po):
    ap = AugmentedPoset.powerset(po)
    return TensorQuantale(TensorBase(ap, ap))


def test_relation_product_matches_the_definition():
    rng = np.random.default_rng(3)
    for _ in range(300):
        p, q, m = (int(v) for v in rng.integers(1, 5, size=3))
        r = int(rng.integers(0, 1 << (p * q)))
        s = int(rng.integers(0, 1 << (q * m)))
        assert relation_product(r, s, p, q, m) == naive_product(r, s, p, q, m)


def test_transpose_is_an_involution():
    r = 0b101100
    assert transpose(transpose(r, 2, 3), 3, 2) == r


def test_chain3_table_matches_the_reference():
    tq = chain3_quantale()
    assert tq.table.tolist() == [list(row) for row in REFERENCE_TABLE]
    chk = tq.checks()
    assert chk.quantale and not chk.unital and not chk.commutative
    assert tq.mult(2, 3) == 1 and tq.mult(3, 2) == 5


def test_odot_is_the_least_tensor_above_the_product():
    tq = square_quantale(Poset.chain(3))
    base, fam = tq.base, tq.family
    for i, j in itertools.product(range(len(fam)), repeat=2):
        r, s = fam.masks[i], fam.masks[j]
        prod = relation_product(r, s, base.p, base.q, base.q)
        above = [t for t in fam.masks if prod & ~t == 0]
        least = min(above, key=int.bit_count)
        assert all(least & ~t == 0 for t in above)
        assert odot(base, base, r, s) == least


def test_m3_product_fails_distributivity():
    chk = square_quantale(m3()).checks()
    assert not chk.prequantale and not chk.quantale
    assert chk.distributivity_witness is not None


@pytest.mark.parametrize("name,size", [("B4", 2), ("B8", 3)])
def test_boolean_units_are_the_atom_diagonal(name, size):
    tq = square_quantale(named(name))
    chk = tq.checks()
    assert chk.unital
    diag = tq.base.from_pairs((a, a) for a in truncated_atoms(tq.base))
    assert tq.family.masks[chk.units[0]] == tq.base.down_closure(diag)
    assert len(truncated_atoms(tq.base)) == size


def test_chain3_has_no_unit():
    assert square_quantale(Poset.chain(3)).checks().units == []


def test_m3_has_a_two_sided_unit():
    # frozen from exhaustive search: the atom diagonal of M3 is neutral
    tq = square_quantale(m3())
    chk = tq.checks()
    assert len(chk.units) == 1
    assert tq.family.masks[chk.units[0]] == tq.identity_candidate()


@pytest.mark.parametrize("name", ["CHAIN3", "V", "B4"])
def test_residual_formulas_match_search(name):
    po = truncated_poset(named(name))
    q, rels = relation_quantale(po)
    n = po.n

    def mult(a, b):
        return relation_product(a, b, n, n, n)

    for r, t in itertools.product(rels, repeat=2):
        right, left = brute_residuals(rels, mult, r, t)
        assert residual_right(po, r, t) == right
        assert residual_left(po, t, r) == left


def test_down_set_quantale_unital_exactly_on_discrete_orders():
    q, _ = relation_quantale(Poset.antichain(2))
    assert q.checks().unital
    q, _ = relation_quantale(Poset.chain(2))
    assert not q.checks().unital


def test_nucleus_checks_trivial_maps():
    q, _ = relation_quantale(Poset.chain(2))
    ident = list(range(q.n))
    rep = nucleus_checks(q, ident)
    assert rep.nucleus and sorted(rep.fixpoints) == ident
    rep = nucleus_checks(q, [q.top] * q.n)
    assert rep.nucleus and rep.fixpoints == [q.top]


def test_nucleus_checks_rejects_non_extensive_maps():
    q, _ = relation_quantale(Poset.chain(2))
    with pytest.raises(TensorError):
        nucleus_checks(q, [q.bottom] * q.n)


def test_tensor_closure_is_a_nucleus_on_lower_relations():
    tq = chain3_quantale()
    base = tq.base
    q, rels = relation_quantale(base.lt.poset)
    index = {r: i for i, r in enumerate(rels)}
    rep = nucleus_checks(q, [index[base.closure(r)] for r in rels])
    assert rep.nucleus and rep.quantic_quotient
    assert sorted(rels[i] for i in rep.fixpoints) == sorted(tq.family.masks)


def test_induced_product_can_be_a_quantale_off_a_nucleus():
    # two-element chain {0, 1} inside the four-element frame: not a quotient
    lat = Poset.powerset("pq")
    meet = np.array([[lat.meet2(i, j) for j in range(4)] for i in range(4)])
    frame = FiniteQuantale(lat, meet)
    s = [lat.bottom, lat.top]
    table, ok = induced_multiplication(frame, s)
    assert ok
    assert not is_quantic_quotient(frame, s)


def test_antitone_maps_and_chain_composition():
    c4, c3 = Poset.chain(4), Poset.chain(3)
    f = (3, 2, 0, 0)
    g = (2, 1, 1, 0)
    assert is_antitone(f, c4, c4) and is_antitone(g, c4, c3)
    res = galois_compose(f, g, c4, c4, c3)
    assert res.composite == step_composite(f, g, c4, c4, c3) == (2, 1, 0, 0)


def test_galois_compose_rejects_bad_maps():
    c3 = Poset.chain(3)
    with pytest.raises(TensorError):
        galois_compose((0, 1, 2), (2, 1, 0), c3, c3, c3)


def test_composing_two_involutions_on_a_chain():
    # the order reversal composed with itself follows the step form, not constant top off 0
    c4 = Poset.chain(4)
    rev = (3, 2, 1, 0)
    res = galois_compose(rev, rev, c4, c4, c4)
    assert res.composite == step_composite(rev, rev, c4, c4, c4) == (3, 2, 2, 0)
