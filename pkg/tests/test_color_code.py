from __future__ import annotations

import json

import numpy as np
import pytest

from conftest import truncated_stabilizer_bundle
from gaugecolor import color_code as cc
from gaugecolor import gf2
from gaugecolor.color_code import H1, H2, build_color_code, fifteen_qubit_pair
from gaugecolor.simplicial import build_fractal

LATTICES = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)]


def admissible(d):
    return [(x, z) for x in range(d - 1) for z in range(d - 1 - x)]


def test_steane_layout():
    c = build_color_code(build_fractal(2, 1), 0, 0)
    assert c.n == 7
    assert c.stab_x.shape == (3, 7) and c.stab_z.shape == (3, 7)
    assert np.array_equal(c.stab_x, c.stab_z)
    assert sorted(c.stab_x.sum(axis=1)) == [4, 4, 4]
    assert cc.logical_qubit_count(c) == 1
    assert cc.min_distance_bruteforce(c, 3) == 3


def test_fifteen_qubit_subsystem_code_shapes():
    c = build_color_code(build_fractal(3, 1), 0, 1)
    assert c.n == 15
    assert c.stab_x.shape[0] == 4
    assert c.stab_z.shape[0] == 18
    assert gf2.rank(c.stab_z) == 10
    assert gf2.rank(np.vstack([H1, H2])) == 10


@pytest.mark.parametrize("d,level", LATTICES)
def test_commutation_and_structure_for_every_admissible_pair(d, level):
    L = build_fractal(d, level)
    for x, z in admissible(d):
        c = build_color_code(L, x, z)
        assert cc.verify_commutation(c).passed
        assert cc.verify_structure(c).passed
        assert cc.logical_qubit_count(c) == 1
        assert c.is_stabilizer_code == (x + z == d - 2)


def test_fifteen_qubit_pair_parameters(pair_15):
    a, b = pair_15
    assert cc.logical_qubit_count(a) == 1 and cc.gauge_qubit_count(a) == 0
    assert cc.logical_qubit_count(b) == 1 and cc.gauge_qubit_count(b) == 6
    assert cc.min_distance_bruteforce(a, 3) == 3
    assert cc.min_distance_bruteforce(b, 3) == 3
    assert cc.is_self_dual(b) and not cc.is_self_dual(a)
    assert cc.partial_order_leq(b, a) and not cc.partial_order_leq(a, b)


def test_hamming_view_of_subsystem_code(pair_15):
    # gauge group of the subsystem code with its gauge qubits promoted to logicals: [[15,7,3]]
    _, b = pair_15
    s = gf2.rank(b.stab_x) + gf2.rank(b.stab_z)
    assert b.n - s == 7


def test_bare_distance_exceeds_dressed(pair_15):
    _, b = pair_15
    assert cc.min_distance_bruteforce(b, 3, bare=True) is None
    assert cc.min_distance_bruteforce(b, 7, bare=True) == 7


def test_centralizer_recovers_stabilizer(pair_15):
    for c in pair_15:
        sx, sz = cc.centralizer_in_gauge(c)
        assert gf2.same_row_space(sx, c.stab_x) and gf2.same_row_space(sz, c.stab_z)


def test_partial_order_on_lattices():
    L = build_fractal(3, 1)
    c00, c01, c10 = (build_color_code(L, *p) for p in [(0, 0), (0, 1), (1, 0)])
    assert cc.partial_order_leq(c00, c01) and cc.partial_order_leq(c00, c10)
    assert not cc.partial_order_leq(c01, c00)
    assert not cc.partial_order_leq(c01, c10) and not cc.partial_order_leq(c10, c01)
    L4 = build_fractal(4, 1)
    codes = {p: build_color_code(L4, *p) for p in admissible(4)}
    for a in codes:
        for b in codes:
            expected = a[0] <= b[0] and a[1] <= b[1]
            assert cc.partial_order_leq(codes[a], codes[b]) == expected


def test_partial_order_rejects_mismatched_sizes(pair_15):
    steane = build_color_code(build_fractal(2, 1), 0, 0)
    with pytest.raises(ValueError):
        cc.partial_order_leq(steane, pair_15[0])


def test_catalog_dimension_three():
    rows = cc.catalog(3)
    stab = {(r["x"], r["z"]) for r in rows if r["type"] == "stabilizer"}
    sub = {(r["x"], r["z"]) for r in rows if r["type"] == "subsystem"}
    assert stab == {(1, 0), (0, 1)} and sub == {(0, 0)}
    assert next(r for r in rows if (r["x"], r["z"]) == (0, 1))["max_Rn"] == 3


def test_invalid_parameters():
    with pytest.raises(ValueError):
        build_color_code(build_fractal(3, 1), 2, 0)
    with pytest.raises(ValueError):
        build_color_code(build_fractal(3, 1), -1, 0)


@pytest.mark.parametrize("d,level,x,z", [(2, 1, 0, 0), (3, 1, 0, 1), (3, 2, 0, 0)])
def test_bundle_round_trip(d, level, x, z):
    c = build_color_code(build_fractal(d, level), x, z)
    text = cc.to_bundle(c)
    back = cc.from_bundle(text)
    for name in cc.MATRIX_NAMES:
        assert np.array_equal(getattr(back, name), getattr(c, name))
    assert cc.to_bundle(back) == text


def test_truncated_stabilizer_row_is_caught():
    c = cc.from_bundle(truncated_stabilizer_bundle())
    rep = cc.verify_commutation(c)
    assert not rep.passed and rep.witnesses
    assert not cc.verify_structure(c).passed


def test_permuted_relabels_columns(pair_15):
    a, _ = pair_15
    perm = list(range(1, 15)) + [0]
    moved = a.permuted(perm)
    assert np.array_equal(moved.stab_x[:, perm], a.stab_x)
    assert json.loads(cc.to_bundle(moved))["n"] == 15
