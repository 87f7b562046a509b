# coding: utf-8

# # The quantale of the three-element chain
#
# Lower relations on CHAIN3 x CHAIN3 that are closed under the rectangle
# operator form a six-element lattice.  Multiplying two of them means taking
# the ordinary relation product and then the least tensor above it.

import numpy as np

from relq import AugmentedPoset, Poset, TensorBase, TensorQuantale

chain = Poset.chain(3)
fam = AugmentedPoset.powerset(chain)
base = TensorBase(fam, fam)
tq = TensorQuantale(base)
print("tensors:", tq.n)


# The multiplication table as an integer array.

table = np.array([[tq.mult(i, j) for j in range(tq.n)] for i in range(tq.n)])
print(table)


# Associative and distributive over joins, but not commutative, and nothing
# acts as a two-sided unit.

chk = tq.checks()
print("associative", chk.associative)
print("distributive", chk.prequantale)
print("commutative", chk.commutative)
print("units", chk.units)
print("R2 (.) R3 =", tq.mult(2, 3), " R3 (.) R2 =", tq.mult(3, 2))


# The table is not symmetric: compare it with its transpose.

print((table != table.T).sum(), "cells differ from the transpose")
