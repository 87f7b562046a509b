import pytest

from relq.workspace import (WorkspaceError, emit_workspace, load_workspace, parse_assignment,
                            parse_workspace, relation_pairs)


def test_fixture_parses(fixtures_dir):
    ws = load_workspace(fixtures_dir / "basic.relq")
    assert set(ws.posets) == {"C3", "M3x"}
    assert ws.spaces["Sierp"].properties.unbounded
    assert ws.families["Dir"].builtin == "@directed"
    assert ws.families["Tops"].sets == (frozenset("ab"), frozenset("bc"))
    assert ws.maps["rev"].values == {"0": "2", "1": "1", "2": "0"}


def test_emission_is_frozen(fixtures_dir):
    ws = load_workspace(fixtures_dir / "basic.relq")
    expected = (fixtures_dir / "basic.canonical.relq").read_text()
    assert emit_workspace(ws) == expected


def test_emission_round_trips(fixtures_dir):
    ws = load_workspace(fixtures_dir / "basic.relq")
    text = emit_workspace(ws)
    again = parse_workspace(text)
    assert again == ws
    assert emit_workspace(again) == text


def test_relations_are_down_closed_on_load(fixtures_dir):
    ws = load_workspace(fixtures_dir / "basic.relq")
    base, r = ws.relation("Low")
    assert relation_pairs(base, r) == {("1", "1"), ("1", "2")}


def test_relation_family_override(fixtures_dir):
    ws = load_workspace(fixtures_dir / "basic.relq")
    base, r = ws.relation("Top")
    assert base.lt.n == 3
    other, _ = ws.relation("Low", family_left="Dir")
    assert other is base  # same families, same shared base
    # the least element of C3 survives only under the directed family
    with pytest.raises(WorkspaceError, match="least ideal"):
        ws.relation("Top", family_left="@powerset")


def test_corpus_fallback():
    ws = parse_workspace("")
    assert ws.poset("CHAIN3").n == 3
    assert ws.space("SIERPINSKI").n == 2
    with pytest.raises(WorkspaceError):
        ws.poset("NOPE")


@pytest.mark.parametrize("text,line", [
    ("poset P\n  elements a b\n  covers a<c\nend\n", 3),
    ("poset P\n  elements a b\n", 1),
    ("poset P\n  elements a a\nend\n", 2),
    ("bogus X\nend\n", 1),
    ("space S\n  points x y\n  closed {x} {y}\nend\n", 3),
    ("relation R on CHAIN3 CHAIN3\n  pairs (0,1)\nend\n", 2),
    ("map f on CHAIN2 CHAIN2\n  values 0:1\nend\n", 2),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(WorkspaceError) as err:
        ws = parse_workspace(text)
        # some problems surface only on resolution
        for name in ws.maps:
            ws.map(name)
    assert err.value.line == line


def test_pair_on_the_least_ideal_is_rejected():
    with pytest.raises(WorkspaceError, match="truncated"):
        parse_workspace("relation R on CHAIN3 CHAIN3\n  pairs (0,1)\nend\n")


def test_comments_and_blank_lines_are_ignored():
    ws = parse_workspace("# leading\n\nposet P  # trailing\n  elements a b\n  covers a<b\nend\n")
    assert ws.posets["P"].leq(0, 1)


def test_parse_assignment():
    from relq.order import Poset
    c = Poset.chain(3)
    assert parse_assignment(["0:2", "1:1", "2:0"], c, c) == {"0": "2", "1": "1", "2": "0"}
    with pytest.raises(WorkspaceError):
        parse_assignment(["0:9"], c, c)
