"""Logical Hadamard by gauge fixing
================================

H on every qubit is not a logical gate of the 15-qubit stabilizer color
code, but it is a (dressed) logical H of the self-dual subsystem code that
precedes it.  Measuring the missing Z stabilizers and correcting brings the
state back.
"""

from __future__ import annotations

import numpy as np

from gaugecolor import color_code as cc
from gaugecolor import stab_sim as ss
from gaugecolor.pauli import PauliWord
from gaugecolor.simplicial import build_fractal

L = build_fractal(3, 1)
small, large = cc.build_color_code(L, 0, 0), cc.build_color_code(L, 0, 1)

###########################################################################
# Prepare |0> of the stabilizer code and run the protocol with a fixed seed.

state = ss.prepare_codeword(large, "gZ", 0, seed=2024)
log: list[dict] = []
ss.logical_H_protocol(small, large, state, log)
print(ss.trace_lines(log), end="")
print("logical expectations:", ss.logical_value(state))
print("all stabilizers at +1:", ss.state_satisfies(state, large.stabilizers()))

###########################################################################
# Running it again undoes it (H squared is the identity).

ss.logical_H_protocol(small, large, state)
print("back to |0>:", ss.same_state(state, ss.prepare_codeword(large, "gZ", 0)))

###########################################################################
# The same flow on the explicit-matrix pair.

code_a, code_b = cc.fifteen_qubit_pair()
state = ss.prepare_codeword(code_a, "gZ", "+", seed=5)
ss.logical_H_protocol(code_b, code_a, state)
print("explicit pair, |+> ->", ss.logical_value(state))
print("Z(Q) expectation:", state.expectation(PauliWord.z_type(np.ones(15, np.uint8))))
