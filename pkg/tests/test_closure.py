import pytest

from relq.closure import ClosureError, ClosureSpace, intersection_closure, principal_ideal_space
from relq.completions import AugmentedPoset, ideal_lattice_iso, macneille_family
from relq.corpus import closure_space_forms, closure_spaces_of_size, m3, n5, named, sample_spaces, vee
from relq.order import OrderError, Poset, is_isomorphic


def test_intersection_closure_adds_meets_and_ground():
    fam = intersection_closure([0b011, 0b110], 0b111)
    assert set(fam) == {0b010, 0b011, 0b110, 0b111}


def test_space_validation():
    with pytest.raises(ClosureError):
        ClosureSpace(("x", "y"), (0b01,))            # ground missing
    with pytest.raises(ClosureError):
        ClosureSpace(("x", "y", "z"), (0b011, 0b110, 0b111))  # not meet-closed


def test_sierpinski_properties():
    s = sample_spaces()["SIERPINSKI"]
    props = s.properties
    assert props.unbounded and props.t0 and props.polarized
    assert s.closure(0b10) == 0b11
    assert s.specialization_poset().leq(0, 1)


def test_non_t0_space():
    s = sample_spaces()["NONT0"]
    assert not s.properties.t0
    with pytest.raises(ClosureError):
        s.specialization_poset()


def test_principal_ideal_space_needs_a_lattice():
    sp = principal_ideal_space(Poset.chain(3))
    assert sp.bottom == 0b001 and sp.properties.uniquely_bounded
    with pytest.raises(OrderError):
        principal_ideal_space(vee())


def test_coreflection_is_unbounded():
    sp, keep = principal_ideal_space(Poset.powerset("pq")).coreflection()
    assert sp.properties.unbounded and len(keep) == 3


def test_closed_set_lattice_of_m3_ideals():
    sp = principal_ideal_space(m3())
    assert is_isomorphic(sp.lattice(), m3())
    assert not sp.properties.polarized


def test_closure_space_enumeration_counts():
    # Moore families up to relabeling on 1, 2 and 3 points
    assert [len(closure_space_forms(n)) for n in (1, 2, 3)] == [2, 5, 19]
    assert len(closure_spaces_of_size(2)) == 5


def test_powerset_family_ideals_are_down_sets():
    po = n5()
    ap = AugmentedPoset.powerset(po)
    for m in range(1 << po.n):
        assert ap.ideal_closure(po.down_closure(m)) == po.cut(m)
    assert set(ap.ideals) == {po.cut(m) for m in range(1 << po.n)}


def test_empty_family_ideals_are_down_sets():
    po = n5()
    ap = AugmentedPoset.empty(po)
    assert set(ap.ideals) == set(po.down_sets())


def test_finite_family_equals_powerset_on_finite_carriers():
    po = named("B4")
    assert set(AugmentedPoset.finite(po).ideals) == set(AugmentedPoset.powerset(po).ideals)


def test_macneille_family_is_the_cuts():
    po = vee()
    assert set(macneille_family(po)) == {po.cut(m) for m in range(1 << po.n)}


def test_directed_family_on_a_chain():
    po = Poset.chain(3)
    ap = AugmentedPoset.directed(po)
    # every down-set of a finite chain is principal or empty
    assert set(ap.ideals) == set(po.down_sets())


def test_bottom_distributivity_of_m3_fails_with_witness():
    ap = AugmentedPoset.powerset(m3())
    assert not ap.bottom_distributive()
    assert ap.bottom_distributivity_witness() is not None
    assert AugmentedPoset.powerset(n5()).bottom_distributive()


def test_ideal_lattice_iso_for_powerset_family():
    po = n5()
    ap = AugmentedPoset.powerset(po)
    iso = ideal_lattice_iso(ap)
    small, _ = ap.truncate()
    assert len(set(iso.values())) == len(iso)
    assert set(iso.values()) == set(small.ideals)


def test_truncation_drops_the_least_ideal():
    ap = AugmentedPoset.powerset(Poset.chain(3))
    small, keep = ap.truncate()
    assert small.n == 2 and keep == (1, 2)
