"""Small posets, lattices and closure spaces used as test material.

Posets are generated up to isomorphism by adding one maximal element at a
time and keeping a single representative per canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product as _cartesian

from ._bits import iter_bits, mask_of
from .closure import ClosureSpace, principal_ideal_space
from .order import Poset

MAX_LATTICE_SIZE = 7


class CorpusError(ValueError):
    pass


def canonical_form(p: Poset) -> tuple[int, ...]:
    """Lexicographically least down table over relabelings that respect simple invariants."""
    n = p.n
    up = p.up
    inv = [(p.down[i].bit_count(), up[i].bit_count()) for i in range(n)]
    order = sorted(range(n), key=lambda i: inv[i])
    blocks: list[list[int]] = []
    for i in order:
        if blocks and inv[blocks[-1][0]] == inv[i]:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    best = None
    for choice in _cartesian(*(permutations(b) for b in blocks)):
        seq = [i for block in choice for i in block]
        pos = {old: new for new, old in enumerate(seq)}
        form = tuple(mask_of(pos[j] for j in iter_bits(p.down[i])) for i in seq)
        if best is None or form < best:
            best = form
    return best if best is not None else ()


def from_form(form: tuple[int, ...], labels=None) -> Poset:
    n = len(form)
    labels = tuple(labels) if labels is not None else tuple(chr(ord("a") + i) for i in range(n))
    return Poset(labels, form)


@lru_cache(maxsize=None)
def poset_forms(n: int) -> tuple[tuple[int, ...], ...]:
    """Canonical forms of all posets with ``n`` elements, sorted."""
    if n < 0:
        raise CorpusError("negative size")
    if n == 0:
        return ((),)
    seen = set()
    for form in poset_forms(n - 1):
        small = Poset(tuple(str(i) for i in range(n - 1)), form)
        for d in small.down_sets():
            new = Poset(tuple(str(i) for i in range(n)), form + (d | 1 << (n - 1),))
            seen.add(canonical_form(new))
    return tuple(sorted(seen))


def posets_of_size(n: int) -> list[Poset]:
    return [from_form(f) for f in poset_forms(n)]


def bounded_extension(inner: Poset) -> Poset:
    """Add a new least element ``0`` and a new greatest element ``1``."""
    k = inner.n
    labels = ("0",) + inner.labels + ("1",)
    down = [1]
    for d in inner.down:
        down.append((d << 1) | 1)
    down.append((1 << (k + 2)) - 1)
    return Poset(labels, tuple(down))


@lru_cache(maxsize=None)
def lattice_forms(n: int) -> tuple[tuple[int, ...], ...]:
    if n > MAX_LATTICE_SIZE:
        raise CorpusError(f"lattice generation is limited to {MAX_LATTICE_SIZE} elements")
    if n <= 0:
        return ()
    if n == 1:
        return ((1,),)
    out = set()
    for inner in posets_of_size(n - 2):
        lat = bounded_extension(inner)
        if lat.is_complete_lattice:
            out.add(canonical_form(lat))
    return tuple(sorted(out))


def lattice_from_form(form: tuple[int, ...]) -> Poset:
    """Label the least element ``0``, the greatest ``1`` and the rest ``a, b, ...``."""
    p = from_form(form)
    if p.n == 1:
        return p.relabel(("0",))
    bot, top = p.bottom, p.top
    letters = iter("abcdefghijklmnopqrstuvwxyz")
    labels = ["0" if i == bot else "1" if i == top else next(letters) for i in range(p.n)]
    return p.relabel(labels)


# curated members ------------------------------------------------------------


def m3() -> Poset:
    return Poset.from_covers("0abc1", [("0", "a"), ("0", "b"), ("0", "c"),
                                       ("a", "1"), ("b", "1"), ("c", "1")])


def n5() -> Poset:
    return Poset.from_covers("0abc1", [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


def vee() -> Poset:
    """Two atoms over a least element, with no top."""
    return Poset.from_covers("0ab", [("0", "a"), ("0", "b")])


@lru_cache(maxsize=None)
def curated() -> dict[str, Poset]:
    return {
        "CHAIN2": Poset.chain(2),
        "CHAIN3": Poset.chain(3),
        "CHAIN4": Poset.chain(4),
        "B4": Poset.powerset("pq"),
        "B8": Poset.powerset("pqr"),
        "M3": m3(),
        "N5": n5(),
        "ANTI2": Poset.antichain(2),
        "ANTI3": Poset.antichain(3),
        "BOOL3": Poset.powerset("abc"),
        "V": vee(),
    }


def named(name: str) -> Poset:
    if name in curated():
        return curated()[name]
    if name.startswith("CHAIN") and name[5:].isdigit():
        return Poset.chain(int(name[5:]))
    raise CorpusError(f"unknown corpus member {name!r}")


@dataclass(frozen=True)
class CorpusMember:
    name: str
    poset: Poset
    provenance: str


@dataclass(frozen=True)
class Corpus:
    members: tuple[CorpusMember, ...]

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def names(self) -> list[str]:
        return [m.name for m in self.members]

    def get(self, name: str) -> Poset:
        for m in self.members:
            if m.name == name:
                return m.poset
        raise CorpusError(f"no member named {name!r}")


def generate_corpus(max_size: int, with_curated: bool = True, lattices_only: bool = True) -> Corpus:
    """All lattices (or all posets) up to ``max_size`` elements, then the curated set.

    A generated member isomorphic to a curated one takes the curated name.
    """
    if lattices_only and max_size > MAX_LATTICE_SIZE:
        raise CorpusError(f"max_size must be at most {MAX_LATTICE_SIZE}")
    if not lattices_only and max_size > 5:
        raise CorpusError("poset generation is limited to 5 elements")
    names = {}
    if with_curated:
        for name, p in curated().items():
            names.setdefault(canonical_form(p), name)
    members = []
    used = set()
    for n in range(1, max_size + 1):
        forms = lattice_forms(n) if lattices_only else poset_forms(n)
        for k, form in enumerate(forms):
            if form in names:
                name = names[form]
                p = curated()[name]
                prov = "generated+curated"
            else:
                name = f"{'L' if lattices_only else 'P'}{n}.{k}"
                p = lattice_from_form(form) if lattices_only else from_form(form)
                prov = f"generated-exhaustive({max_size})"
            used.add(name)
            members.append(CorpusMember(name, p, prov))
    if with_curated:
        for name, p in curated().items():
            if name not in used:
                members.append(CorpusMember(name, p, "curated"))
                used.add(name)
    return Corpus(tuple(members))


def _permute_mask(m: int, perm: tuple[int, ...]) -> int:
    return mask_of(perm[i] for i in iter_bits(m))


@lru_cache(maxsize=None)
def closure_space_forms(n: int) -> tuple[tuple[int, ...], ...]:
    """All closure systems on ``n`` points up to relabeling, each as a sorted tuple of closed sets."""
    if n > 3:
        raise CorpusError("closure space generation is limited to 3 points")
    ground = (1 << n) - 1
    proper = list(range(ground))
    seen = set()
    for pick in range(1 << len(proper)):
        fam = {ground} | {proper[i] for i in iter_bits(pick)}
        if any(a & b not in fam for a in fam for b in fam):
            continue
        best = min(tuple(sorted(_permute_mask(m, perm) for m in fam))
                   for perm in permutations(range(n)))
        seen.add(best)
    return tuple(sorted(seen, key=lambda f: (len(f), f)))


def closure_spaces_of_size(n: int) -> dict[str, ClosureSpace]:
    labels = tuple("xyz"[:n])
    return {f"S{n}.{k}": ClosureSpace(labels, tuple(sorted(form, key=lambda m: (m.bit_count(), m))))
            for k, form in enumerate(closure_space_forms(n))}


def sample_spaces() -> dict[str, ClosureSpace]:
    """Closure spaces covering unbounded, bounded, T0 and non-T0 cases."""
    return {
        "DISCRETE2": ClosureSpace.discrete(2, ("x", "y")),
        "SIERPINSKI": ClosureSpace.from_generators(2, [[], [0]], ("x", "y")),
        "IDEALS_CHAIN3": principal_ideal_space(Poset.chain(3)),
        "NONT0": ClosureSpace.from_generators(3, [[], [0, 1]], ("x", "y", "z")),
        "IDEALS_B4": principal_ideal_space(Poset.powerset("pq")),
        "IDEALS_M3": principal_ideal_space(m3()),
        "FORK": ClosureSpace.from_generators(3, [[0], [0, 1], [0, 2]], ("o", "u", "v")),
    }


__all__ = [
    "CorpusError", "canonical_form", "poset_forms", "posets_of_size", "lattice_forms",
    "lattice_from_form", "curated", "named", "Corpus", "CorpusMember", "generate_corpus",
    "sample_spaces", "closure_space_forms", "closure_spaces_of_size", "m3", "n5", "vee", "bounded_extension", "MAX_LATTICE_SIZE",
]
