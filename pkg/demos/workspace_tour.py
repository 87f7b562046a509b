# coding: utf-8

# # A tour of the command line through a workspace file
#
# The workspace in fixtures/basic.relq declares a few posets, a space,
# families, relations and a map.  Each cell below runs one relq command
# in-process and prints what the terminal would show.

from pathlib import Path

from relq.cli import run_command

ws = str(Path(__file__).resolve().parent.parent / "fixtures" / "basic.relq")


def show(*argv):
    code, out = run_command(list(argv))
    print("$ relq", " ".join(argv), f"  (exit {code})")
    print(out)


# Disjointness on the atoms of M3: t(R) already spans the whole square
# below the top, and one more step reaches (1,1).

show("-w", ws, "closure", "Apart")

# Product of two relations on the chain.

show("-w", ws, "compose", "Low", "Low")

# An antitone map and the tensor it determines.

show("-w", ws, "galois", "C3", "--map", "rev")

# Property reports and a Hasse diagram.

show("check", "poset", "N5")
show("check", "space", "SIERPINSKI")
show("dot", "poset", "B4")

# The guard: B8 (x) B8 has 512 tensors, more than we allow here.

show("--max-tensors", "100", "tensor", "B8", "B8", "--count")
