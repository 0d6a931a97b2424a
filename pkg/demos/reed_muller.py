"""Reed-Muller codes as color codes
================================

The quantum Reed-Muller code QRM(m) is the level-1 fractal color code in
m - 1 dimensions.  The certifier finds the qubit relabeling explicitly.
"""

from __future__ import annotations

from gaugecolor import color_code as cc
from gaugecolor import qrm

print(qrm.build_M(3))

for m in (3, 4, 5):
    q = qrm.build_qrm(m)
    rep = qrm.certify_equivalence(m)
    print(f"m={m}: n={q.spec.n} k={cc.logical_qubit_count(q.spec)} equivalent={rep.passed}")
    print("   column weight counts:", rep.details["column_weight_counts"])
    print("   permutation:", rep.details["permutation"])

###########################################################################
# The explicit 15-qubit matrices match CC_3(0,1) and CC_3(0,0) under one relabeling.

rep = qrm.compare_fifteen_qubit_pair()
print("explicit pair matches:", rep.passed, rep.details["checks"])
