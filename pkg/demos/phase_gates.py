"""Transversal phase gates
=======================

Check when R_n^k on a qubit set T (and R_n^-k elsewhere) acts as the logical
R_n, using the counting conditions and an exact integer phase oracle.
"""

from __future__ import annotations

from gaugecolor import color_code as cc
from gaugecolor import simplicial
from gaugecolor import transversal as tr

###########################################################################
# The 15-qubit stabilizer code with T empty: every X stabilizer element has
# weight 0 or 8, so R_3^-1 on every qubit is a logical phase gate.

code_a, code_b = cc.fifteen_qubit_pair()
print("condition (C_A):", tr.check_condition_15(code_a, [], 3).passed)
rep = tr.phase_oracle_Rn(code_a, tr.TransversalRnPlan.for_code(code_a, [], 3))
print("oracle (C_A): histogram", rep.histogram, "logical exponent", rep.details["logical_exponent"])

###########################################################################
# The subsystem partner fails; the report names an offending gauge element.

bad = tr.check_condition_15(code_b, [], 3)
print("condition (C_B):", bad.passed, "witness", bad.witnesses[0])

###########################################################################
# On CC_d(0, d-2) the two-coloring of the qubits supplies T for R_d.

for d in (2, 3, 4):
    L = simplicial.build_fractal(d, 1)
    c = cc.build_color_code(L, 0, d - 2)
    T, _ = simplicial.bipartition_indices(L)
    plan = tr.TransversalRnPlan.for_code(c, T, d)
    print(f"d={d}: R_{d} with k={plan.k}:", tr.phase_oracle_Rn(c, plan).passed)
