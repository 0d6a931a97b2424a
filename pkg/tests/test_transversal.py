from __future__ import annotations

import cmath
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import perturbed_T
from gaugecolor import simplicial
from gaugecolor import transversal as tr
from gaugecolor.color_code import H1, build_color_code, fifteen_qubit_pair
from gaugecolor.simplicial import build_fractal


def gauge_elements(G: np.ndarray) -> set[tuple[int, ...]]:
    return {tuple((np.array(c) @ G) % 2) for c in itertools.product((0, 1), repeat=G.shape[0])}


def dense_action(c, T, n, k):
    """Apply the diagonal gate amplitude by amplitude with complex floats.

    Returns (U|0>|g_X> is a multiple of |0>|g_X>, that multiple, same for |1>).
    """
    omega = cmath.exp(2j * cmath.pi / 2**n)
    Tset = set(T)

    def phase(a):
        e = sum(k if j in Tset else -k for j in range(c.n) if a[j])
        return omega**e

    out = []
    for flip in (0, 1):
        phases = [phase([(b + flip) % 2 for b in a]) for a in gauge_elements(c.gauge_x)]
        uniform = all(abs(p - phases[0]) < 1e-9 for p in phases)
        out.append((uniform, phases[0]))
    return out


def test_intersection_numbers_of_H1():
    rows = H1.astype(np.int64)
    assert all(r.sum() == 8 for r in rows)
    assert all((a * b).sum() == 4 for a, b in itertools.combinations(rows, 2))
    assert all((a * b * c).sum() == 2 for a, b, c in itertools.combinations(rows, 3))


def test_fifteen_qubit_pair_conditions(pair_15):
    a, b = pair_15
    assert tr.check_condition_15(a, [], 3).passed
    assert tr.check_condition_13(a, [], 3).passed
    rep_b = tr.check_condition_15(b, [], 3)
    assert not rep_b.passed and rep_b.witnesses
    assert not tr.check_condition_13(b, [], 3).passed


def test_phase_oracle_fifteen_qubit_code(pair_15):
    a, _ = pair_15
    plan = tr.TransversalRnPlan.for_code(a, [], 3)
    assert plan.k == 1  # -15 is 1 mod 8
    rep = tr.phase_oracle_Rn(a, plan)
    assert rep.passed
    assert rep.histogram == {0: 16}
    assert rep.details["logical_exponent"] in (1, 7)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 200), st.integers(1, 63), st.integers(1, 8))
def test_solve_k_inverts(t, n_qubits, n):
    n_qubits = 2 * n_qubits + 1
    t = t % (n_qubits + 1)
    k = tr.solve_k(t, n_qubits, n)
    assert (k * (2 * t - n_qubits)) % 2**n == 1


def test_solve_k_rejects_even():
    with pytest.raises(ValueError):
        tr.solve_k(1, 8, 3)


CASES = [(2, 1, 0, 0, 2), (2, 2, 0, 0, 2), (2, 3, 0, 0, 2), (3, 1, 0, 1, 3), (4, 1, 0, 2, 4)]


@pytest.mark.parametrize("d,level,x,z,n", CASES)
def test_bipartition_gives_transversal_Rd(d, level, x, z, n):
    L = build_fractal(d, level)
    c = build_color_code(L, x, z)
    T, _ = simplicial.bipartition_indices(L)
    assert tr.verify_property_of_T(L, T).passed
    plan = tr.TransversalRnPlan.for_code(c, T, n)
    rep = tr.phase_oracle_Rn(c, plan)
    assert rep.passed, rep.witnesses
    (u0, p0), (u1, p1) = dense_action(c, T, n, plan.k)
    assert u0 and u1 and abs(p0 - 1) < 1e-9
    assert abs(p1 - cmath.exp(2j * cmath.pi / 2**n)) < 1e-9


@pytest.mark.parametrize("x,z,n", [(1, 0, 2), (0, 0, 2), (0, 1, 4)])
def test_levels_beyond_the_limit_fail(x, z, n):
    L = build_fractal(3, 1)
    c = build_color_code(L, x, z)
    T, _ = simplicial.bipartition_indices(L)
    assert not tr.phase_oracle_Rn(c, tr.TransversalRnPlan.for_code(c, T, n)).passed


CODES = {
    "steane": build_color_code(build_fractal(2, 1), 0, 0),
    "fifteen": build_color_code(build_fractal(3, 1), 0, 1),
    "C_B": fifteen_qubit_pair()[1],
}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(CODES)), st.integers(1, 3), st.data())
def test_conditions_agree_with_dense_oracle(name, n, data):
    c = CODES[name]
    T = sorted(data.draw(st.sets(st.integers(0, c.n - 1))))
    k = tr.solve_k(len(T), c.n, n)
    (u0, p0), _ = dense_action(c, T, n, k)
    fixed = u0 and abs(p0 - 1) < 1e-9
    assert tr.check_condition_13(c, T, n).passed == fixed
    assert tr.check_condition_15(c, T, n).passed == fixed
    rep = tr.phase_oracle_Rn(c, tr.TransversalRnPlan.for_code(c, T, n, k))
    assert set(rep.histogram) == {0} if fixed else set(rep.histogram) != {0}


def test_perturbed_T_is_caught():
    L = build_fractal(3, 1)
    c = build_color_code(L, 0, 1)
    T = perturbed_T(L)
    rep = tr.verify_property_of_T(L, T)
    assert not rep.passed and rep.witnesses
    assert not tr.check_condition_15(c, T, 3).passed
    assert not tr.phase_oracle_Rn(c, tr.TransversalRnPlan.for_code(c, T, 3)).passed


def test_property_of_T_accepts_simplices():
    L = build_fractal(2, 2)
    T, _ = simplicial.bipartition_qubits(L)
    assert tr.verify_property_of_T(L, T).passed


def test_transversal_H_and_CNOT(pair_15):
    a, b = pair_15
    assert tr.check_H_transversal(b) and not tr.check_H_transversal(a)
    for c in (a, b, CODES["steane"], CODES["fifteen"]):
        rep = tr.check_CNOT_transversal(c, c)
        assert rep.passed and all(rep.details["logical_maps"].values())
    with pytest.raises(ValueError):
        tr.check_CNOT_transversal(a, b)


def test_enumeration_guard():
    c = build_color_code(build_fractal(2, 3), 0, 0)
    assert tr.check_condition_13(c, [], 2).params["gauge_x_rank"] == 9
    big = build_color_code(build_fractal(5, 1), 0, 0)
    with pytest.raises(ValueError):
        tr.check_condition_13(big, [], 2)
    assert "subsets_checked" in tr.check_condition_15(big, [], 2).details
