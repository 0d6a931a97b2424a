"""Color codes and their partial order
===================================

Every admissible pair (x, z) on a lattice gives a CSS subsystem code.
Codes with nested gauge groups can be switched between by gauge fixing.
"""

from __future__ import annotations

from gaugecolor import color_code as cc
from gaugecolor.simplicial import build_fractal

L = build_fractal(3, 1)

###########################################################################
# The catalog for d = 3 and the basic parameters of each code.

for row in cc.catalog(3):
    c = cc.build_color_code(L, row["x"], row["z"])
    print(f"{c.name}: {row['type']:<10} k={cc.logical_qubit_count(c)} "
          f"gauge qubits={cc.gauge_qubit_count(c)} distance={cc.min_distance_bruteforce(c, 4)} "
          f"max R_n={row['max_Rn']}")

###########################################################################
# Gauge containment gives the order; on one lattice it matches x <= x', z <= z'.

codes = {(x, z): cc.build_color_code(L, x, z) for x, z in [(0, 0), (0, 1), (1, 0)]}
for a in codes:
    later = [b for b in codes if a != b and cc.partial_order_leq(codes[a], codes[b])]
    print(f"CC_3{a} precedes {later}")

###########################################################################
# The explicit 15-qubit pair: a stabilizer code and a self-dual subsystem code.

code_a, code_b = cc.fifteen_qubit_pair()
print("C_A self-dual:", cc.is_self_dual(code_a), " C_B self-dual:", cc.is_self_dual(code_b))
print("C_B gauge qubits:", cc.gauge_qubit_count(code_b), " C_B precedes C_A:", cc.partial_order_leq(code_b, code_a))
