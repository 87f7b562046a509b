import itertools

import pytest

from relq.completions import AugmentedPoset
from relq.corpus import m3, n5, named, sample_spaces
from relq.oracle import brute_least_tensor, brute_t, down_set_rows
from relq.order import Poset
from relq.tensor import (GuardExceeded, SpaceProduct, TensorBase, TensorError, lattice_iso_h,
                         lattice_iso_h_inverse, max_tensors, next_closure, truncated_lattice_iso)


def square(po, kind="powerset"):
    ap = getattr(AugmentedPoset, kind)(po)
    return TensorBase(ap, ap)


def filtered_tensors(base):
    """Every lower relation whose rows and columns are ideals, by direct filtering."""
    out = []
    for r in base.down_sets():
        rows = all(base.rt.is_ideal(base.row(r, a)) for a in range(base.p))
        cols = all(base.lt.is_ideal(base.col(r, b)) for b in range(base.q))
        if rows and cols:
            out.append(r)
    return sorted(out)


@pytest.mark.parametrize("name,count", [
    ("CHAIN3", 6), ("CHAIN4", 20), ("B4", 16), ("N5", 43), ("M3", 50), ("V", 16),
])
def test_tensor_counts_agree_with_filtering(name, count):
    base = square(named(name))
    fam = base.enumerate()
    assert len(fam) == count
    assert sorted(fam.masks) == filtered_tensors(base)


def test_boolean_tensor_count():
    # a boolean algebra on n atoms gives all relations on n points
    assert len(square(named("B8")).enumerate()) == 2 ** 9


def test_truncated_carriers_drop_the_least_element():
    base = square(Poset.chain(3))
    assert base.p == base.q == 2
    assert base.left_keep == (1, 2)


def test_pure_tensor_of_chain_elements():
    base = square(Poset.chain(3))
    assert base.pure_tensor("1", "2") == base.from_pairs([(0, 0), (0, 1)])


def test_t_matches_definition_on_chain():
    base = square(Poset.chain(3))
    for r in base.down_sets():
        assert base.t(r) == brute_t(base, r)
        assert base.closure(r) == brute_least_tensor(base, r)


def test_batched_t_matches_scalar():
    base = square(n5())
    rows = down_set_rows(base)
    batch = base.from_rows(base.t_rows_batch(rows))
    assert batch == [base.t(r) for r in base.from_rows(rows)]


def test_down_set_rows_counts_all_lower_relations():
    base = square(named("B4"))
    assert down_set_rows(base).shape[0] == sum(1 for _ in base.down_sets()) == 48


def test_guard_trips():
    base = square(named("B8"))
    with pytest.raises(GuardExceeded):
        base.enumerate(guard=100)


def test_guard_from_environment(monkeypatch):
    monkeypatch.setenv("RELQ_MAX_TENSORS", "7")
    assert max_tensors() == 7
    monkeypatch.setenv("RELQ_MAX_TENSORS", "seven")
    with pytest.raises(TensorError):
        max_tensors()


def test_next_closure_lists_closed_sets_in_lectic_order():
    sp = sample_spaces()["FORK"]
    found = next_closure(sp.n, sp.closure)
    assert sorted(found) == sorted(sp.closed)
    assert len(found) == len(set(found))


def test_family_order_and_joins():
    fam = square(Poset.chain(3)).enumerate()
    le = fam.leq
    join = fam.join_table
    for i, j in itertools.product(range(len(fam)), repeat=2):
        k = join[i, j]
        assert le[i, k] and le[j, k]
        assert all(le[k, m] for m in range(len(fam)) if le[i, m] and le[j, m])


def test_family_pseudocomplements():
    assert square(n5()).enumerate().pseudocomplement_witness() is None
    fam = square(m3()).enumerate()
    w = fam.pseudocomplement_witness()
    assert w is not None and fam.pseudocomplement(w) is None


def test_space_product_least_tensor_is_the_cross():
    s = sample_spaces()["SIERPINSKI"]
    prod = SpaceProduct(s, s)
    fam = prod.enumerate()
    assert fam.masks[0] == prod.cross == 0
    u = sample_spaces()["IDEALS_CHAIN3"]
    prod = SpaceProduct(u, u)
    assert prod.cross != 0 and min(prod.enumerate().masks, key=int.bit_count) == prod.cross


def test_lattice_isomorphisms_round_trip():
    for name in ("DISCRETE2", "IDEALS_CHAIN3", "NONT0"):
        s = sample_spaces()[name]
        prod = SpaceProduct(s, s)
        for t in prod.enumerate().masks:
            _, big = lattice_iso_h(prod, t)
            assert lattice_iso_h_inverse(prod, big) == t
            base, small = truncated_lattice_iso(prod, t)
            assert base.is_tensor(small)


def test_galois_map_round_trip_on_chain():
    base = square(Poset.chain(4))
    for t in base.enumerate().masks:
        f = base.galois_map(t)
        assert base.tensor_of_map(f) == t
