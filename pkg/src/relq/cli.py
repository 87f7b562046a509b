"""Command line front end: ``relq <command> ...``.

Exit status is 0 on success, 1 when a suite or check reports a failure (or
the enumeration guard trips), and 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .closure import ClosureSpace
from .corpus import CorpusError, curated, sample_spaces
from .oracle import fmt_lower, fmt_set
from .order import OrderError, Poset
from .quantale import TensorQuantale, compose_base, degenerate_full_product, is_antitone, odot
from .suites import SUITES, render_family, render_table, run_suite
from .tensor import GuardExceeded, TensorError
from .workspace import Workspace, WorkspaceError, load_workspace, parse_assignment

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _yn(v: bool) -> str:
    return "true" if v else "false"


def _workspace(args) -> Workspace:
    return load_workspace(args.workspace) if args.workspace else Workspace()


# ``--family-left directed`` is accepted as shorthand for ``@directed``
_BARE = {"powerset", "finite", "directed", "chains", "singletons", "empty"}


def _family_ref(name: str | None) -> str | None:
    return "@" + name if name in _BARE else name


# check -------------------------------------------------------------------------


def poset_report(name: str, po: Poset) -> list[str]:
    pr = po.properties
    lab = po.labels
    out = [
        f"poset {name}",
        f"elements: {' '.join(lab)}",
        f"covers: {' '.join(f'{lab[a]}<{lab[b]}' for a, b in po.covers()) or '-'}",
        f"complete-lattice: {_yn(pr.complete_lattice)}",
        f"bottom: {lab[pr.bottom] if pr.bottom is not None else '-'}",
        f"top: {lab[pr.top] if pr.top is not None else '-'}",
        f"atoms: {fmt_set(po, sum(1 << a for a in pr.atoms))}",
        f"pseudocomplemented: {_yn(pr.pseudocomplemented)}",
    ]
    if not pr.pseudocomplemented:
        out.append(f"  witness: {lab[pr.missing_pseudocomplements[0]]} has no pseudocomplement")
    else:
        pcs = [f"{lab[x]}*={lab[po.pseudocomplement(x)]}" for x in range(po.n)]
        out.append(f"  pseudocomplements: {' '.join(pcs)}")
    out += [
        f"atomic: {_yn(pr.atomic)}",
        f"atomistic: {_yn(pr.atomistic)}",
        f"distributive: {_yn(pr.distributive)}",
        f"boolean: {_yn(pr.boolean)}",
    ]
    return out


def space_report(name: str, sp: ClosureSpace) -> list[str]:
    pr = sp.properties
    out = [
        f"space {name}",
        f"points: {' '.join(sp.labels)}",
        f"closed: {' '.join(sp.set_label(c) for c in sp.closed)}",
        f"bottom: {sp.set_label(pr.bottom)}",
        f"unbounded: {_yn(pr.unbounded)}",
        f"uniquely-bounded: {_yn(pr.uniquely_bounded)}",
        f"t0: {_yn(pr.t0)}",
        f"polarized: {_yn(pr.polarized)}",
    ]
    for x in pr.non_closed_polars[:1]:
        out.append(f"  witness: polar of {sp.labels[x]} is {sp.set_label(sp.polar(x))}, not closed")
    return out


def cmd_check(args, ws: Workspace) -> int:
    if args.kind == "poset":
        print("\n".join(poset_report(args.name, ws.poset(args.name))))
    else:
        print("\n".join(space_report(args.name, ws.space(args.name))))
    return EXIT_OK


# tensors ------------------------------------------------------------------------


def _base(args, ws: Workspace, left: str, right: str):
    return ws.base(left, right, _family_ref(args.family_left) or "@powerset",
                   _family_ref(args.family_right) or "@powerset")


def cmd_tensor(args, ws: Workspace) -> int:
    base = _base(args, ws, args.left, args.right)
    fam = base.enumerate(args.max_tensors)
    if args.count:
        print(len(fam))
        return EXIT_OK
    print(f"tensors: {len(fam)}")
    for i, m in enumerate(fam.masks):
        print(f"R{i} = {fmt_lower(base, m)}")
    return EXIT_OK


def cmd_closure(args, ws: Workspace) -> int:
    base, r = ws.relation(args.relation, _family_ref(args.family_left), _family_ref(args.family_right))
    t1 = base.t(r)
    t2 = base.t(t1)
    cl = base.closure(r)
    print(f"R = {fmt_lower(base, r)}")
    print(f"t(R) = {fmt_lower(base, t1)}")
    print(f"t(t(R)) = {fmt_lower(base, t2)}")
    print(f"closure(R) = {fmt_lower(base, cl)}")
    print(f"tensor: {_yn(cl == r)}")
    return EXIT_OK


def cmd_compose(args, ws: Workspace) -> int:
    lb, r = ws.relation(args.left, _family_ref(args.family_left), None)
    rb, s = ws.relation(args.right, None, _family_ref(args.family_right))
    out = odot(lb, rb, r, s)
    target = compose_base(lb, rb)
    print(f"R = {fmt_lower(lb, r)}")
    print(f"S = {fmt_lower(rb, s)}")
    print(f"R (.) S = {fmt_lower(target, out)}")
    if args.demonstrate_degenerate:
        if lb is not rb:
            raise UsageError("--demonstrate-degenerate needs both relations on the same base")
        full = degenerate_full_product(lb, r, s)
        fb = lb.full_base
        print(f"full-form closure of R.S: {fb.format(full)}")
        print(f"equals the largest tensor: {_yn(full == fb.top)}")
    return EXIT_OK


def cmd_mult(args, ws: Workspace) -> int:
    base = _base(args, ws, args.lattice, args.lattice)
    tq = TensorQuantale(base, base.enumerate(args.max_tensors))
    if args.table:
        print("\n".join(render_family(tq)))
        print(render_table(tq))
    chk = tq.checks()
    print(f"associative: {_yn(chk.associative)}")
    print(f"distributive: {_yn(chk.prequantale)}")
    print(f"commutative: {_yn(chk.commutative)}")
    if chk.commutativity_witness:
        i, j = chk.commutativity_witness
        print(f"  witness: R{i} (.) R{j} = R{tq.mult(i, j)}, R{j} (.) R{i} = R{tq.mult(j, i)}")
    print(f"units: {' '.join(f'R{u}' for u in chk.units) or 'none'}")
    return EXIT_OK


def cmd_galois(args, ws: Workspace) -> int:
    right = args.right or args.lattice
    if args.map is not None and ":" not in args.map:
        a, b, f = ws.map(args.map)
        if a is not ws.poset(args.lattice) or b is not ws.poset(right):
            raise UsageError(f"map {args.map!r} does not go from {args.lattice} to {right}")
    else:
        a, b = ws.poset(args.lattice), ws.poset(right)
        if args.map is None:
            raise UsageError("galois needs --map x:y,...")
        vals = parse_assignment(args.map.split(","), a, b)
        f = tuple(b.index(vals[x]) for x in a.labels)
    base = _base(args, ws, args.lattice, right)
    if not is_antitone(f, a, b):
        print("map is not antitone")
        return EXIT_FAIL
    t = base.tensor_of_map(f)
    is_tensor = base.closure(t) == t
    print(f"f = {' '.join(f'{a.labels[x]}:{b.labels[f[x]]}' for x in range(a.n))}")
    print(f"T_f = {fmt_lower(base, t)}")
    print(f"tensor: {_yn(is_tensor)}")
    if not is_tensor:
        print(f"  closure(T_f) = {fmt_lower(base, base.closure(t))}")
        return EXIT_FAIL
    back = base.galois_map(t)
    print(f"map of T_f = {' '.join(f'{a.labels[x]}:{b.labels[back[x]]}' for x in range(a.n))}")
    print(f"round trip: {_yn(back == tuple(f))}")
    return EXIT_OK if back == tuple(f) else EXIT_FAIL


def cmd_verify(args, ws: Workspace) -> int:
    if args.list_suites:
        for sid in sorted(SUITES):
            print(f"{sid}: {SUITES[sid].title}")
        return EXIT_OK
    if args.suite is None:
        raise UsageError("verify needs --suite ID (or --list)")
    ids = sorted(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for sid in ids:
        if sid not in SUITES:
            raise UsageError(f"unknown suite {sid!r}; try 'relq verify --list'")
        rep = run_suite(sid, max_size=args.max_size, seed=args.seed, guard=args.max_tensors,
                        samples=args.samples)
        print(rep.text(), flush=True)
        ok = ok and rep.ok
    return EXIT_OK if ok else EXIT_FAIL


# DOT -------------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_dot(name: str, po: Poset) -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, lab in enumerate(po.labels):
        lines.append(f"  n{i} [label={_quote(lab)}];")
    for a, b in po.covers():
        lines.append(f"  n{a} -> n{b} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines)


def cmd_dot(args, ws: Workspace) -> int:
    if args.kind == "poset":
        print(poset_dot(args.name, ws.poset(args.name)))
    else:
        print(poset_dot(args.name, ws.space(args.name).lattice()))
    return EXIT_OK


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    names = " ".join(sorted(curated()))
    spaces = " ".join(sample_spaces())
    p = argparse.ArgumentParser(
        prog="relq",
        description="Tensor products of posets and their quantales of lower relations.",
        epilog=f"built-in posets: {names} CHAINn; built-in spaces: {spaces}")
    p.add_argument("-w", "--workspace", help="workspace file with posets, spaces, families, relations, maps")
    p.add_argument("--max-tensors", type=int, default=None, metavar="N",
                   help="enumeration guard (default: $RELQ_MAX_TENSORS or 4096)")
    # the global options are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", "--workspace", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--max-tensors", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def families(sp):
        sp.add_argument("--family-left", metavar="F", help="family on the left poset (default @powerset)")
        sp.add_argument("--family-right", metavar="G", help="family on the right poset (default @powerset)")

    c = command("check", help="property report for a poset or a closure space")
    c.add_argument("kind", choices=["poset", "space"])
    c.add_argument("name")
    c.set_defaults(func=cmd_check)

    t = command("tensor", help="enumerate the tensors of A (x) B")
    t.add_argument("left")
    t.add_argument("right")
    families(t)
    g = t.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true", help="list every tensor (default)")
    g.add_argument("--count", action="store_true", help="print only the number of tensors")
    t.set_defaults(func=cmd_tensor)

    cl = command("closure", help="t(R), t(t(R)) and the tensor closure of a relation")
    cl.add_argument("relation")
    families(cl)
    cl.set_defaults(func=cmd_closure)

    co = command("compose", help="the tensor product R (.) S of two relations")
    co.add_argument("left")
    co.add_argument("right")
    families(co)
    co.add_argument("--demonstrate-degenerate", action="store_true",
                    help="also close R.S in the full form, which collapses to the largest tensor")
    co.set_defaults(func=cmd_compose)

    m = command("mult", help="multiplication of the tensors of B (x) B")
    m.add_argument("lattice")
    families(m)
    m.add_argument("--table", action="store_true", help="print the full table")
    m.set_defaults(func=cmd_mult)

    ga = command("galois", help="antitone map to tensor and back")
    ga.add_argument("lattice")
    ga.add_argument("--right", help="target poset (default: the same as the source)")
    ga.add_argument("--map", help="x:y,... assignments, or the name of a workspace map")
    families(ga)
    ga.set_defaults(func=cmd_galois)

    v = command("verify", help="run a verification suite")
    v.add_argument("--suite", help="suite id, or 'all'")
    v.add_argument("--list", dest="list_suites", action="store_true", help="list suite ids")
    v.add_argument("--max-size", type=int, default=None, metavar="N")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=None, help="sample size for sampled members")
    v.set_defaults(func=cmd_verify)

    d = command("dot", help="Hasse diagram in DOT")
    d.add_argument("kind", choices=["poset", "space"])
    d.add_argument("name")
    d.set_defaults(func=cmd_dot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    saved = os.environ.get("RELQ_MAX_TENSORS")
    if args.max_tensors is not None:
        os.environ["RELQ_MAX_TENSORS"] = str(args.max_tensors)
    try:
        ws = _workspace(args)
        return args.func(args, ws)
    except (WorkspaceError, UsageError, CorpusError, OrderError) as exc:
        print(f"relq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"relq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardExceeded as exc:
        print(f"relq: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except TensorError as exc:
        print(f"relq: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        # the override applies to this invocation only
        if saved is None:
            os.environ.pop("RELQ_MAX_TENSORS", None)
        else:
            os.environ["RELQ_MAX_TENSORS"] = saved


def run_command(argv: Sequence[str]) -> tuple[int, str]:
    """Run a command and capture its standard output."""
    import contextlib
    import io
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
