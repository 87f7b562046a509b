"""Plain-text workspace files: posets, spaces, families, relations and maps.

A workspace is a sequence of ``end``-terminated blocks::

    # the two-element chain
    poset P
      elements a b
      covers a<b
    end

    space S
      points x y
      closed {} {x} {x y}
    end

    family D on P
      builtin @directed
    end

    family F on P
      sets {a} {a b}
    end

    relation R on P P
      family-left @powerset
      family-right F
      pairs (b,b)
    end

    map f on P P
      values a:b b:a
    end

Tokens are separated by whitespace; ``#`` starts a comment.  Relations are
down-closed on load and must avoid the least ideal of each side's family.
Names not declared in the file fall back to the built-in corpus.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ._bits import iter_bits, mask_of
from .closure import ClosureError, ClosureSpace
from .completions import AugmentedPoset
from .corpus import CorpusError, named, sample_spaces
from .order import OrderError, Poset
from .tensor import BASES, TensorBase

BUILTIN_FAMILIES = {
    "@powerset": AugmentedPoset.powerset,
    "@finite": AugmentedPoset.finite,
    "@directed": AugmentedPoset.directed,
    "@chains": AugmentedPoset.chains,
    "@singletons": AugmentedPoset.singletons,
    "@empty": AugmentedPoset.empty,
}

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")
_TOKEN = re.compile(r"\{[^}]*\}|\([^)]*\)|\S+")


class WorkspaceError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


@dataclass
class FamilyDecl:
    poset: str
    builtin: str | None = None
    sets: tuple[frozenset[str], ...] = ()


@dataclass
class RelationDecl:
    left: str
    right: str
    family_left: str = "@powerset"
    family_right: str = "@powerset"
    pairs: frozenset[tuple[str, str]] = frozenset()


@dataclass
class MapDecl:
    source: str
    target: str
    values: dict[str, str] = field(default_factory=dict)


@dataclass
class Workspace:
    posets: dict[str, Poset] = field(default_factory=dict)
    spaces: dict[str, ClosureSpace] = field(default_factory=dict)
    families: dict[str, FamilyDecl] = field(default_factory=dict)
    relations: dict[str, RelationDecl] = field(default_factory=dict)
    maps: dict[str, MapDecl] = field(default_factory=dict)
    _aug: dict = field(default_factory=dict, repr=False, compare=False)

    # lookups -----------------------------------------------------------------

    def poset(self, name: str) -> Poset:
        if name in self.posets:
            return self.posets[name]
        try:
            return named(name)
        except CorpusError:
            raise WorkspaceError(f"unknown poset {name!r}") from None

    def space(self, name: str) -> ClosureSpace:
        if name in self.spaces:
            return self.spaces[name]
        builtin = sample_spaces()
        if name in builtin:
            return builtin[name]
        raise WorkspaceError(f"unknown space {name!r}")

    def family(self, ref: str, poset: str) -> AugmentedPoset:
        """A built-in or declared family on ``poset``; one object per pair so bases are shared."""
        key = (ref, poset)
        hit = self._aug.get(key)
        if hit is not None:
            return hit
        po = self.poset(poset)
        if ref in BUILTIN_FAMILIES:
            ap = BUILTIN_FAMILIES[ref](po)
        elif ref in self.families:
            decl = self.families[ref]
            if decl.poset != poset and self.poset(decl.poset) is not po:
                raise WorkspaceError(f"family {ref!r} lives on {decl.poset!r}, not {poset!r}")
            if decl.builtin is not None:
                ap = BUILTIN_FAMILIES[decl.builtin](po)
            else:
                ap = AugmentedPoset.explicit(po, (po.mask(s) for s in decl.sets), ref)
        else:
            raise WorkspaceError(f"unknown family {ref!r}")
        self._aug[key] = ap
        return ap

    def base(self, left: str, right: str, family_left: str = "@powerset",
             family_right: str = "@powerset") -> TensorBase:
        return BASES.get(self.family(family_left, left), self.family(family_right, right))

    def relation(self, name: str, family_left: str | None = None,
                 family_right: str | None = None) -> tuple[TensorBase, int]:
        """The base of a declared relation and its mask there, with optional family overrides."""
        if name not in self.relations:
            raise WorkspaceError(f"unknown relation {name!r}")
        d = self.relations[name]
        base = self.base(d.left, d.right, family_left or d.family_left, family_right or d.family_right)
        return base, relation_mask(base, d.pairs)

    def map(self, name: str) -> tuple[Poset, Poset, tuple[int, ...]]:
        if name not in self.maps:
            raise WorkspaceError(f"unknown map {name!r}")
        d = self.maps[name]
        a, b = self.poset(d.source), self.poset(d.target)
        return a, b, tuple(b.index(d.values[x]) for x in a.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Workspace):
            return NotImplemented
        return signature(self) == signature(other)


def signature(ws: Workspace) -> tuple:
    return (
        tuple(sorted((k, p.labels, p.down) for k, p in ws.posets.items())),
        tuple(sorted((k, s.labels, tuple(sorted(s.closed))) for k, s in ws.spaces.items())),
        tuple(sorted((k, f.poset, f.builtin, tuple(sorted(tuple(sorted(s)) for s in f.sets)))
                     for k, f in ws.families.items())),
        tuple(sorted((k, r.left, r.right, r.family_left, r.family_right, tuple(sorted(r.pairs)))
                     for k, r in ws.relations.items())),
        tuple(sorted((k, m.source, m.target, tuple(sorted(m.values.items())))
                     for k, m in ws.maps.items())),
    )


def relation_mask(base: TensorBase, pairs) -> int:
    lt, rt = base.lt.poset, base.rt.poset
    for a, b in pairs:
        for v, po, side in ((a, lt, "left"), (b, rt, "right")):
            if v not in po.labels:
                raise WorkspaceError(
                    f"pair ({a},{b}) touches {v!r}, which lies in the least ideal of the {side} family")
    return base.from_pairs((lt.index(a), rt.index(b)) for a, b in pairs)


def relation_pairs(base: TensorBase, r: int) -> frozenset[tuple[str, str]]:
    lt, rt = base.lt.poset, base.rt.poset
    return frozenset((lt.labels[a], rt.labels[b]) for a, b in base.pairs(r))


# parsing --------------------------------------------------------------------------


def _tokens(line: str) -> list[str]:
    return _TOKEN.findall(line.split("#", 1)[0])


def _set(tok: str, lineno: int) -> frozenset[str]:
    if not (tok.startswith("{") and tok.endswith("}")):
        raise WorkspaceError(f"expected a set like {{a b}}, got {tok!r}", lineno)
    return frozenset(tok[1:-1].split())


def _pair(tok: str, lineno: int) -> tuple[str, str]:
    m = re.fullmatch(r"\(\s*([^,\s]+)\s*,\s*([^,\s]+)\s*\)", tok)
    if not m:
        raise WorkspaceError(f"expected a pair like (a,b), got {tok!r}", lineno)
    return m.group(1), m.group(2)


def _name(tok: str, lineno: int) -> str:
    if not _NAME.match(tok):
        raise WorkspaceError(f"bad name {tok!r}", lineno)
    return tok


@dataclass
class _Block:
    kind: str
    head: list[str]
    line: int
    body: list[tuple[int, str, list[str]]] = field(default_factory=list)

    def fields(self, allowed: set[str]) -> dict[str, tuple[int, list[str]]]:
        out: dict[str, tuple[int, list[str]]] = {}
        for lineno, key, rest in self.body:
            if key not in allowed:
                raise WorkspaceError(f"unexpected {key!r} in {self.kind} block", lineno)
            if key in out:
                prev = out[key]
                out[key] = (prev[0], prev[1] + rest)
            else:
                out[key] = (lineno, rest)
        return out


def _blocks(text: str) -> list[_Block]:
    blocks = []
    cur: _Block | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw)
        if not toks:
            continue
        if cur is None:
            if toks[0] not in ("poset", "space", "family", "relation", "map"):
                raise WorkspaceError(f"expected a block keyword, got {toks[0]!r}", lineno)
            cur = _Block(toks[0], toks[1:], lineno)
        elif toks == ["end"]:
            blocks.append(cur)
            cur = None
        else:
            cur.body.append((lineno, toks[0], toks[1:]))
    if cur is not None:
        raise WorkspaceError(f"{cur.kind} block is missing its 'end'", cur.line)
    return blocks


def parse_workspace(text: str) -> Workspace:
    """Parse and resolve a workspace; raises :class:`WorkspaceError` with a line number."""
    ws = Workspace()
    seen: dict[str, int] = {}
    for b in _blocks(text):
        if len(b.head) < 1:
            raise WorkspaceError(f"{b.kind} block needs a name", b.line)
        name = _name(b.head[0], b.line)
        if name in seen:
            raise WorkspaceError(f"{name!r} already declared on line {seen[name]}", b.line)
        seen[name] = b.line
        handler = {"poset": _poset, "space": _space, "family": _family,
                   "relation": _relation, "map": _map}[b.kind]
        handler(ws, name, b)
    return ws


def _on(b: _Block, count: int) -> list[str]:
    if len(b.head) != 2 + count or b.head[1] != "on":
        want = " ".join(["<name>", "on"] + ["<poset>"] * count)
        raise WorkspaceError(f"{b.kind} header must read '{b.kind} {want}'", b.line)
    return b.head[2:]


_RESERVED = set("<{}(),:#@")


def _check_labels(labels, lineno: int) -> None:
    seen = set()
    for x in labels:
        if _RESERVED & set(x):
            raise WorkspaceError(f"label {x!r} uses a reserved character", lineno)
        if x in seen:
            raise WorkspaceError(f"duplicate label {x!r}", lineno)
        seen.add(x)


def _poset(ws: Workspace, name: str, b: _Block) -> None:
    if len(b.head) != 1:
        raise WorkspaceError("poset header takes only a name", b.line)
    f = b.fields({"elements", "covers"})
    if "elements" not in f:
        raise WorkspaceError("poset block needs an 'elements' line", b.line)
    labels = f["elements"][1]
    _check_labels(labels, f["elements"][0])
    covers = []
    line, items = f.get("covers", (b.line, []))
    for tok in items:
        parts = tok.split("<")
        if len(parts) < 2 or not all(parts):
            raise WorkspaceError(f"expected a cover like a<b, got {tok!r}", line)
        covers.extend(zip(parts, parts[1:]))
    try:
        ws.posets[name] = Poset.from_covers(labels, covers)
    except OrderError as exc:
        raise WorkspaceError(str(exc), line) from None


def _space(ws: Workspace, name: str, b: _Block) -> None:
    if len(b.head) != 1:
        raise WorkspaceError("space header takes only a name", b.line)
    f = b.fields({"points", "closed"})
    if "points" not in f:
        raise WorkspaceError("space block needs a 'points' line", b.line)
    labels = tuple(f["points"][1])
    _check_labels(labels, f["points"][0])
    pos = {x: i for i, x in enumerate(labels)}
    line, items = f.get("closed", (b.line, []))
    closed = {(1 << len(labels)) - 1}
    for tok in items:
        s = _set(tok, line)
        bad = s - pos.keys()
        if bad:
            raise WorkspaceError(f"unknown point {sorted(bad)[0]!r}", line)
        closed.add(mask_of(pos[x] for x in s))
    try:
        ws.spaces[name] = ClosureSpace(labels, tuple(sorted(closed, key=lambda m: (m.bit_count(), m))))
    except ClosureError as exc:
        raise WorkspaceError(str(exc), line) from None


def _family(ws: Workspace, name: str, b: _Block) -> None:
    (poset,) = _on(b, 1)
    try:
        po = ws.poset(poset)
    except WorkspaceError as exc:
        raise WorkspaceError(str(exc), b.line) from None
    f = b.fields({"builtin", "sets"})
    if ("builtin" in f) == ("sets" in f):
        raise WorkspaceError("family block needs exactly one of 'builtin' or 'sets'", b.line)
    if "builtin" in f:
        line, items = f["builtin"]
        if len(items) != 1 or items[0] not in BUILTIN_FAMILIES:
            raise WorkspaceError(f"builtin must be one of {' '.join(BUILTIN_FAMILIES)}", line)
        ws.families[name] = FamilyDecl(poset, builtin=items[0])
        return
    line, items = f["sets"]
    sets = []
    for tok in items:
        s = _set(tok, line)
        bad = s - set(po.labels)
        if bad:
            raise WorkspaceError(f"unknown element {sorted(bad)[0]!r} of {poset!r}", line)
        sets.append(s)
    ws.families[name] = FamilyDecl(poset, sets=tuple(dict.fromkeys(sets)))


def _relation(ws: Workspace, name: str, b: _Block) -> None:
    left, right = _on(b, 2)
    f = b.fields({"family-left", "family-right", "pairs"})
    refs = {}
    for side in ("family-left", "family-right"):
        line, items = f.get(side, (b.line, ["@powerset"]))
        if len(items) != 1:
            raise WorkspaceError(f"{side} takes one family name", line)
        refs[side] = items[0]
    line, items = f.get("pairs", (b.line, []))
    try:
        base = ws.base(left, right, refs["family-left"], refs["family-right"])
    except WorkspaceError as exc:
        raise WorkspaceError(str(exc), b.line) from None
    lp, rp = base.left.poset, base.right.poset
    lt, rt = base.lt.poset, base.rt.poset
    pairs = []
    for tok in items:
        x, y = _pair(tok, line)
        for v, po, keep_po, side in ((x, lp, lt, "left"), (y, rp, rt, "right")):
            if v not in po.labels:
                raise WorkspaceError(f"unknown {side} element {v!r}", line)
            if v not in keep_po.labels:
                raise WorkspaceError(
                    f"pair ({x},{y}) touches {v!r}, which lies in the least ideal of the {side} family; "
                    "lower relations live on the truncated carriers", line)
        pairs.append((lt.index(x), rt.index(y)))
    mask = base.down_closure(base.from_pairs(pairs))
    ws.relations[name] = RelationDecl(left, right, refs["family-left"], refs["family-right"],
                                      relation_pairs(base, mask))


def _map(ws: Workspace, name: str, b: _Block) -> None:
    source, target = _on(b, 2)
    try:
        a, c = ws.poset(source), ws.poset(target)
    except WorkspaceError as exc:
        raise WorkspaceError(str(exc), b.line) from None
    f = b.fields({"values"})
    line, items = f.get("values", (b.line, []))
    values = parse_assignment(items, a, c, line)
    ws.maps[name] = MapDecl(source, target, values)


def parse_assignment(items: list[str], a: Poset, c: Poset, line: int | None = None) -> dict[str, str]:
    """``x:y`` tokens into a total map from the labels of ``a`` to those of ``c``."""
    values: dict[str, str] = {}
    for tok in items:
        for part in tok.split(","):
            if not part:
                continue
            x, sep, y = part.partition(":")
            if not sep:
                raise WorkspaceError(f"expected x:y, got {part!r}", line)
            if x not in a.labels:
                raise WorkspaceError(f"unknown source element {x!r}", line)
            if y not in c.labels:
                raise WorkspaceError(f"unknown target element {y!r}", line)
            if x in values and values[x] != y:
                raise WorkspaceError(f"{x!r} is assigned twice", line)
            values[x] = y
    missing = [x for x in a.labels if x not in values]
    if missing:
        raise WorkspaceError(f"map is not total: no value for {missing[0]!r}", line)
    return values


# emission --------------------------------------------------------------------------


def _fmt_set(labels) -> str:
    return "{" + " ".join(labels) + "}"


def emit_workspace(ws: Workspace) -> str:
    """Canonical text: declaration kinds in a fixed order, names sorted, relations by all pairs."""
    out = []
    for name in sorted(ws.posets):
        p = ws.posets[name]
        out.append(f"poset {name}")
        out.append("  elements " + " ".join(p.labels))
        cov = p.covers()
        if cov:
            out.append("  covers " + " ".join(f"{p.labels[a]}<{p.labels[b]}" for a, b in cov))
        out.append("end")
    for name in sorted(ws.spaces):
        s = ws.spaces[name]
        out.append(f"space {name}")
        out.append("  points " + " ".join(s.labels))
        out.append("  closed " + " ".join(_fmt_set(s.labels[i] for i in iter_bits(c)) for c in s.closed))
        out.append("end")
    for name in sorted(ws.families):
        f = ws.families[name]
        out.append(f"family {name} on {f.poset}")
        if f.builtin is not None:
            out.append(f"  builtin {f.builtin}")
        else:
            po = ws.poset(f.poset)
            sets = sorted(f.sets, key=lambda s: (len(s), sorted(po.index(x) for x in s)))
            order = {x: i for i, x in enumerate(po.labels)}
            out.append("  sets " + " ".join(_fmt_set(sorted(s, key=order.__getitem__)) for s in sets))
        out.append("end")
    for name in sorted(ws.relations):
        r = ws.relations[name]
        out.append(f"relation {name} on {r.left} {r.right}")
        out.append(f"  family-left {r.family_left}")
        out.append(f"  family-right {r.family_right}")
        lp, rp = ws.poset(r.left), ws.poset(r.right)
        pairs = sorted(r.pairs, key=lambda ab: (lp.index(ab[0]), rp.index(ab[1])))
        if pairs:
            out.append("  pairs " + " ".join(f"({a},{b})" for a, b in pairs))
        out.append("end")
    for name in sorted(ws.maps):
        m = ws.maps[name]
        src = ws.poset(m.source)
        out.append(f"map {name} on {m.source} {m.target}")
        out.append("  values " + " ".join(f"{x}:{m.values[x]}" for x in src.labels))
        out.append("end")
    text = "\n".join(out)
    return text.replace("\nend\n", "\nend\n\n") + "\n" if out else ""


def load_workspace(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace(fh.read())


__all__ = [
    "Workspace", "WorkspaceError", "FamilyDecl", "RelationDecl", "MapDecl", "BUILTIN_FAMILIES",
    "parse_workspace", "emit_workspace", "load_workspace", "parse_assignment", "relation_mask",
    "relation_pairs", "signature",
]
