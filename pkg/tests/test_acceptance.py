"""Acceptance criteria 1-10, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.
"""

import subprocess
import sys
import time
from pathlib import Path

import pytest

from relq.cli import run_command
from relq.completions import AugmentedPoset
from relq.corpus import m3, named
from relq.oracle import PASS
from relq.quantale import TensorQuantale, relation_product, truncated_atoms
from relq.suites import REFERENCE_TABLE, chain3_quantale, relation_iso_check, run_suite
from relq.tensor import TensorBase

pytestmark = pytest.mark.acceptance

HERE = Path(__file__).resolve().parent


@pytest.fixture
def announce(capsys):
    def emit(k, ok, summary):
        with capsys.disabled():
            print(f"\ncriterion {k:>2}: {'PASS' if ok else 'FAIL'}  {summary}", flush=True)
    return emit


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def verdicts(rep):
    return {m.name: m.verdict for m in rep.members}


def test_criterion_01_example_table(announce):
    (code, out), secs = timed(lambda: run_command(["mult", "CHAIN3", "--table"]))
    rows = [line for line in out.splitlines() if line.startswith("R") and "|" in line]
    cells = [[int(tok[1:]) for tok in row.split("|")[1].split()] for row in rows[:6]]
    same = sum(a == b for r1, r2 in zip(cells, REFERENCE_TABLE) for a, b in zip(r1, r2))
    tq = chain3_quantale()
    chk = tq.checks()
    witness = tq.mult(2, 3) == 1 and tq.mult(3, 2) == 5
    ok = (code == 0 and same == 36 and chk.associative and chk.prequantale and not chk.commutative
          and witness and not chk.unital and secs < 1.0)
    announce(1, ok, f"{same}/36 cells, associative={chk.associative}, distributive={chk.prequantale}, "
                    f"R2.R3=R1 vs R3.R2=R5: {witness}, units={chk.units}, {secs:.2f}s")
    assert ok


def test_criterion_02_pseudocomplemented_iff_quantale(announce):
    rep, secs = timed(lambda: run_suite("pseudocomplemented-quantale", max_size=6))
    by_name = {m.name: m for m in rep.members}
    agree = rep.ok and rep.total >= 20
    m3_lines = by_name["M3"].lines
    m3_all_fail = m3_lines[0].startswith("values pseudocomplemented=no") and "=yes" not in m3_lines[0]
    m3_witness = any("(down(a,b) v down(a,c)) (.) down(a,a) = down(a,a)" in line
                     and "= {}" in line for line in m3_lines)
    passing = all("=no" not in by_name[n].lines[0] for n in ("N5", "CHAIN2", "CHAIN3", "CHAIN4", "B4", "B8"))
    ok = agree and m3_all_fail and m3_witness and passing and secs < 60
    announce(2, ok, f"{rep.passed}/{rep.total} members agree, M3 fails all with the recorded witness: "
                    f"{m3_all_fail and m3_witness}, N5/chains/B4/B8 pass all: {passing}, {secs:.1f}s")
    assert ok


def square(po):
    ap = AugmentedPoset.powerset(po)
    return TensorQuantale(TensorBase(ap, ap))


def test_criterion_03_boolean_units(announce):
    parts = []
    ok = True
    for name, size, samples in (("B4", 2, None), ("B8", 3, 1000)):
        tq = square(named(name))
        chk = tq.checks()
        base = tq.base
        unit_mask = base.down_closure(base.from_pairs((a, a) for a in truncated_atoms(base)))
        unit_ok = chk.unital and [tq.family.masks[u] for u in chk.units] == [unit_mask]
        found, bad = relation_iso_check(tq, samples=samples or 1000, seed=0)
        iso_ok = found is not None and found[0] == size and bad == 0
        if iso_ok:
            k, rho = found
            if samples is None:
                # every one of the 16 x 16 products
                iso_ok = all(rho[tq.mult(i, j)] == relation_product(rho[i], rho[j], k, k, k)
                             for i in range(tq.n) for j in range(tq.n))
            else:
                pures = tq.principal_indices
                iso_ok = all(rho[tq.mult(i, j)] == relation_product(rho[i], rho[j], k, k, k)
                             for i in pures for j in pures)
        parts.append(f"{name}: unit I_A {unit_ok}, iso to relations on {size} points {iso_ok}")
        ok = ok and unit_ok and iso_ok
    for name, po in (("CHAIN3", named("CHAIN3")), ("M3", m3())):
        units = square(po).checks().units
        parts.append(f"{name}: units {units}")
        ok = ok and units == []
    announce(3, ok, "; ".join(parts))
    assert ok


def test_criterion_04_isomorphism_suite(announce):
    rep, secs = timed(lambda: run_suite("space-lattice-iso"))
    names = " ".join(m.name for m in rep.members)
    covers = all(s in names for s in ("DISCRETE2", "IDEALS_CHAIN3", "NONT0"))
    ok = rep.ok and rep.total >= 5 and covers and secs < 10
    announce(4, ok, f"{rep.passed}/{rep.total} space pairs bijective and order-preserving both ways, {secs:.1f}s")
    assert ok


def test_criterion_05_residuals(announce):
    rep = run_suite("residuals")
    lines = {m.name: m.lines[0] for m in rep.members}
    exhaustive = "triples checked 216" in lines.get("CHAIN3", "")
    sampled = "triples checked 1000" in lines.get("B4", "")
    ok = rep.ok and exhaustive and sampled
    announce(5, ok, f"{rep.passed}/{rep.total} members; CHAIN3 all 6^3 triples: {exhaustive}; "
                    f"B4 seeded 1000 triples: {sampled}")
    assert ok


def test_criterion_06_closure_product(announce):
    rep = run_suite("closure-product")
    v = verdicts(rep)
    ok = rep.ok and v.get("CHAIN3xN5xB4") == PASS and v.get("CHAIN3xN5xB4xCHAIN3[associativity]") == PASS
    announce(6, ok, "; ".join(f"{m.name} {m.verdict} ({m.lines[0]})" for m in rep.members))
    assert ok


def test_criterion_07_chain_composition(announce):
    rep, secs = timed(lambda: run_suite("chain-composition"))
    failed = [m for m in rep.members if m.verdict != PASS]
    detail = "; ".join(f"{m.name}: {m.lines[-1]}" for m in failed[:2])
    announce(7, rep.ok, f"{rep.passed}/{rep.total} members, {secs:.1f}s" + (f"; {detail}" if detail else ""))
    assert rep.ok, detail


def test_criterion_08_boolean_replay(announce):
    rep, secs = timed(lambda: run_suite("boolean-idempotency"))
    replay = next(m for m in rep.members if m.name.startswith("BOOL3"))
    report = "\n".join(replay.lines)
    emitted = all(key in report for key in ("t(R) =", "t(t(R)) =", "closure(R) =", "(1,1) in t(t(R))"))
    ok = rep.ok and replay.verdict == PASS and emitted and secs < 120
    announce(8, ok, f"fast path equals oracle: {replay.verdict == PASS}; report emitted: {emitted}; "
                    f"searches {rep.passed}/{rep.total}; {secs:.1f}s")
    for line in replay.lines:
        print("   ", line)
    assert ok


def test_criterion_09_partial_families(announce):
    parts = []
    ok = True
    for sid in ("distributive-directed", "distributive-finite"):
        rep = run_suite(sid)
        counted = rep.total
        witness = [n for n in rep.notes if n.startswith("distributive but not pseudocomplemented")
                   and not n.endswith(": none")]
        good = rep.ok and counted >= 10 and bool(witness)
        names = witness[0].split(": ", 1)[1].split() if witness else []
        parts.append(f"{sid} {rep.passed}/{counted} agree, skipped {len(rep.skipped)}, "
                     f"{len(names)} distributive but not pseudocomplemented (e.g. {' '.join(names[:2])})")
        ok = ok and good
    announce(9, ok, "; ".join(parts))
    assert ok


def test_criterion_10_property_suites(announce):
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", str(HERE / "test_properties.py"), "-q", "-p", "no:cacheprovider",
         "--hypothesis-show-statistics"],
        capture_output=True, text=True, cwd=HERE.parent)
    counts = [int(line.split()[1]) for line in proc.stdout.splitlines() if "passing examples" in line]
    enough = bool(counts) and min(counts) >= 1000
    ok = proc.returncode == 0 and enough
    announce(10, ok, f"{len(counts)} laws, fewest generated cases {min(counts) if counts else 0}, "
                     f"pytest exit {proc.returncode}")
    assert ok, proc.stdout[-2000:]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
