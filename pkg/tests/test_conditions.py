import pytest

from relq.completions import AugmentedPoset
from relq.conditions import BottomMismatch, prenucleus_brute, prenucleus_reduced, square_base, equivalent_conditions
from relq.corpus import m3, n5, named, vee
from relq.order import Poset
from relq.tensor import TensorError


def powerset_pair(po):
    ap = AugmentedPoset.powerset(po)
    return ap, ap


@pytest.mark.parametrize("po", [n5(), Poset.chain(3), named("B4")], ids=["N5", "CHAIN3", "B4"])
def test_conditions_all_hold(po):
    rep = equivalent_conditions(*powerset_pair(po))
    assert rep.agree and all(rep.values.values())
    assert rep.disagreements() == []


def test_conditions_all_fail_on_m3():
    rep = equivalent_conditions(*powerset_pair(m3()))
    assert rep.agree and not any(rep.values.values())
    assert set(rep.witnesses) == set(rep.values)


def test_partial_family_distributive_without_pseudocomplements():
    po = vee()
    assert not po.properties.pseudocomplemented
    rep = equivalent_conditions(AugmentedPoset.directed(po), AugmentedPoset.directed(po))
    assert rep.agree and rep.values["a"]


def test_reduced_prenucleus_search_matches_brute_force():
    for po in (m3(), n5(), Poset.chain(3)):
        base = square_base(*powerset_pair(po))
        assert (prenucleus_reduced(base, base.t) is None) == (prenucleus_brute(base, base.t) is None)


def test_families_must_share_the_poset_and_bottom():
    with pytest.raises(TensorError):
        square_base(AugmentedPoset.powerset(n5()), AugmentedPoset.powerset(m3()))
    po = Poset.chain(3)
    with pytest.raises(BottomMismatch):
        square_base(AugmentedPoset.powerset(po), AugmentedPoset.empty(po))
