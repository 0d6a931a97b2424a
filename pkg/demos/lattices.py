"""Fractal lattices
================

Build the nested family of colored simplicial lattices, count qubits and
run the combinatorial lemma checks that every later step relies on.
"""

from __future__ import annotations

from gaugecolor import simplicial

###########################################################################
# One qubit per top-dimensional simplex.  Each new level wraps the previous
# one in an outer simplex and fills the gap with 2^(d+1) - 2 simplices.

for d in (2, 3, 4):
    sizes = [simplicial.build_fractal(d, level).n_qubits for level in (1, 2, 3)]
    print(f"d={d}: qubits per level {sizes}")

###########################################################################
# Interior simplices carry the generators.  On the 15-qubit lattice there
# are 4 interior vertices and 18 interior edges.

L = simplicial.build_fractal(3, 1)
for k in range(3):
    print(f"interior {k}-simplices:", len(simplicial.interior_simplices(L, k)))

###########################################################################
# The lemma suite: coloring, even support, intersections, disjoint unions
# and a proper two-coloring of the qubits.

report = simplicial.verify_lemmas(L)
print("lemmas pass:", report.passed, report.details["checked"])

T, Tc = simplicial.bipartition_indices(L)
print("bipartition sizes:", len(T), len(Tc))

###########################################################################
# The lattice round-trips through a compact JSON form.

text = simplicial.to_json(L)
print("json bytes:", len(text), "round trip ok:", simplicial.to_json(simplicial.from_json(text)) == text)
