import pytest

from relq.corpus import (CorpusError, canonical_form, curated, generate_corpus, lattice_forms,
                         m3, n5, named, poset_forms)
from relq.order import OrderError, Poset, is_isomorphic, product


def test_chain_basics():
    c = Poset.chain(4)
    assert c.bottom == 0 and c.top == 3
    assert c.join2(1, 2) == 2 and c.meet2(1, 2) == 1
    assert c.atoms == (1,)
    assert c.down_sets() == [0, 0b1, 0b11, 0b111, 0b1111]


def test_from_covers_closes_transitively():
    p = Poset.from_covers("abc", [("a", "b"), ("b", "c")])
    assert p.leq(p.index("a"), p.index("c"))
    assert not p.leq(p.index("c"), p.index("a"))


@pytest.mark.parametrize("down", [
    (0b10, 0b11),          # not reflexive
    (0b11, 0b11),          # cycle
    (0b001, 0b011, 0b110),  # not transitive
])
def test_bad_orders_rejected(down):
    with pytest.raises(OrderError):
        Poset(tuple("abc"[:len(down)]), down)


def test_duplicate_labels_rejected():
    with pytest.raises(OrderError):
        Poset(("a", "a"), (1, 2))


def test_cut_of_empty_set_is_the_bottom_ideal():
    b4 = Poset.powerset("pq")
    assert b4.cut(0) == 1 << b4.bottom
    # no least element: the empty set cuts to nothing
    anti = Poset.antichain(2)
    assert anti.cut(0) == 0


def test_cut_without_upper_bounds_is_everything():
    anti = Poset.antichain(2)
    assert anti.cut(0b11) == 0b11


def test_m3_is_not_pseudocomplemented():
    props = m3().properties
    assert props.complete_lattice and not props.distributive
    assert not props.pseudocomplemented
    assert set(props.missing_pseudocomplements) == {m3().index(x) for x in "abc"}


def test_n5_is_pseudocomplemented_but_not_distributive():
    props = n5().properties
    assert props.pseudocomplemented and not props.distributive


def test_boolean_algebras():
    for name in ("B4", "B8"):
        props = named(name).properties
        assert props.boolean and props.atomistic and props.pseudocomplemented
    assert not named("CHAIN3").properties.boolean


def test_pseudocomplement_in_b8():
    b8 = Poset.powerset("abc")
    assert b8.labels[b8.pseudocomplement(b8.index("a"))] == "bc"


def test_product_order():
    c2 = Poset.chain(2)
    sq = product(c2, c2)
    assert is_isomorphic(sq, Poset.powerset("pq"))


def test_dual_and_permutation_preserve_shape():
    p = n5()
    assert is_isomorphic(p, p.permuted([4, 3, 2, 1, 0]))
    assert p.dual().bottom == p.top


def test_poset_counts_match_known_sequence():
    # unlabeled posets: 1, 2, 5, 16, 63
    assert [len(poset_forms(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]


def test_lattice_counts_match_known_sequence():
    # unlabeled lattices: 1, 1, 1, 2, 5, 15, 53
    assert [len(lattice_forms(n)) for n in range(1, 8)] == [1, 1, 1, 2, 5, 15, 53]


def test_canonical_form_is_invariant():
    p = n5()
    assert canonical_form(p) == canonical_form(p.permuted([2, 0, 4, 1, 3]))
    assert canonical_form(p) != canonical_form(m3())


def test_corpus_names_curated_members():
    corpus = generate_corpus(5)
    names = corpus.names()
    for name in ("CHAIN3", "B4", "M3", "N5"):
        assert name in names
    assert names == generate_corpus(5).names()
    assert is_isomorphic(corpus.get("M3"), m3())


def test_corpus_limits():
    with pytest.raises(CorpusError):
        generate_corpus(8)
    with pytest.raises(CorpusError):
        named("NOPE")


def test_curated_set():
    assert set(curated()) >= {"CHAIN2", "CHAIN3", "B4", "B8", "M3", "N5", "BOOL3", "V"}
    assert named("CHAIN6").n == 6
