# coding: utf-8

# # Pseudocomplements versus quantale structure
#
# For a finite lattice L, the tensors of L (x) L multiply associatively and
# distribute over joins exactly when L is pseudocomplemented.  This sweep
# walks every lattice up to six elements and compares the two sides.

import time

from relq import AugmentedPoset, TensorBase, TensorQuantale
from relq.corpus import generate_corpus

start = time.perf_counter()
rows = []
for member in generate_corpus(6):
    po = member.poset
    if not po.properties.complete_lattice:
        continue
    ap = AugmentedPoset.powerset(po)
    chk = TensorQuantale(TensorBase(ap, ap)).checks()
    rows.append((member.name, po.n, po.properties.pseudocomplemented, chk.prequantale))

for name, n, pc, q in rows:
    flag = "" if pc == q else "  <-- disagreement"
    print(f"{name:12s} n={n}  pseudocomplemented={pc!s:5s}  quantale={q!s:5s}{flag}")

print(len(rows), "lattices,", sum(pc == q for _, _, pc, q in rows), "agree,",
      f"{time.perf_counter() - start:.1f}s")
