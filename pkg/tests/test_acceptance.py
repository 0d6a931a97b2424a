"""End-to-end acceptance criteria, each under its own time budget.

Every test prints one line ``ACCEPTANCE <n> PASS|FAIL ...`` to the terminal.
"""

from __future__ import annotations

import contextlib
import itertools
import time

import numpy as np
import pytest

from conftest import miscolored_lattice_json, perturbed_T, truncated_stabilizer_bundle
from gaugecolor import color_code as cc
from gaugecolor import gf2, qrm, simplicial
from gaugecolor import stab_sim as ss
from gaugecolor import transversal as tr
from gaugecolor.cli import EXIT_FAIL, main
from gaugecolor.color_code import H1, H2, build_color_code
from gaugecolor.pauli import PauliWord
from gaugecolor.simplicial import build_fractal


@contextlib.contextmanager
def criterion(capsys, number: int, title: str, limit: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        with capsys.disabled():
            status = "PASS" if ok and within else "FAIL"
            print(f"\nACCEPTANCE {number} {status}  {title}  ({elapsed:.2f}s, limit {limit:g}s)")
    assert within, f"criterion {number} took {elapsed:.2f}s (limit {limit}s)"


def test_1_fractal_family_counts(capsys):
    with criterion(capsys, 1, "fractal family qubit counts", 1):
        assert [build_fractal(2, i).n_qubits for i in (1, 2, 3)] == [7, 13, 19]
        assert [build_fractal(m - 1, 1).n_qubits for m in (3, 4, 5)] == [7, 15, 31]


def test_2_fifteen_qubit_intersections(capsys):
    with criterion(capsys, 2, "15-qubit intersection numbers and R_3 oracle", 1):
        code_a, _ = cc.fifteen_qubit_pair()
        G = code_a.stab_x.astype(np.int64)
        assert G.shape[0] == 4
        assert all(g.sum() == 8 for g in G)
        assert all((a * b).sum() == 4 for a, b in itertools.combinations(G, 2))
        assert all((a * b * c).sum() == 2 for a, b, c in itertools.combinations(G, 3))
        assert tr.check_condition_15(code_a, [], 3).passed
        rep = tr.phase_oracle_Rn(code_a, tr.TransversalRnPlan.for_code(code_a, [], 3))
        assert rep.passed
        assert rep.histogram == {0: 16}
        assert rep.details["logical_exponent"] in (1, 7)


def test_3_qrm_equivalence(capsys):
    with criterion(capsys, 3, "QRM(m) = CC_{m-1}(0,m-3) for m = 3, 4, 5", 5):
        for m in (3, 4, 5):
            rep = qrm.certify_equivalence(m)
            assert rep.passed, rep.witnesses
            assert sorted(rep.details["permutation"]) == list(range(2**m - 1))
        perm = qrm.certify_equivalence(4).details["permutation"]
        cc4 = build_color_code(build_fractal(3, 1), 0, 1)
        # map the lattice code onto the QRM(4) labels, then onto the H_1 labels
        to_h1 = qrm.match_columns(qrm.build_M(4), H1)
        moved = cc4.permuted(perm).permuted(to_h1)
        assert gf2.same_row_space(moved.stab_x, H1)
        assert gf2.same_row_space(moved.stab_z, np.vstack([H1, H2]))
        assert qrm.compare_fifteen_qubit_pair().passed


def test_4_code_parameters(capsys):
    with criterion(capsys, 4, "QRM(3), QRM(4) are [[n,1,3]]; C_B has 6 gauge qubits", 60):
        for m in (3, 4):
            spec = qrm.build_qrm(m).spec
            assert cc.logical_qubit_count(spec) == 1
            assert cc.min_distance_bruteforce(spec, 3) == 3
        _, code_b = cc.fifteen_qubit_pair()
        assert cc.logical_qubit_count(code_b) == 1
        assert cc.gauge_qubit_count(code_b) == 6


def test_5_lemma_suites(capsys):
    with criterion(capsys, 5, "lattice lemma suites and commutation", 60):
        for d, level in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]:
            L = build_fractal(d, level)
            rep = simplicial.verify_lemmas(L)
            assert rep.passed, rep.witnesses
            assert not rep.details["disjoint_union_sampled"]
            T, _ = simplicial.bipartition_indices(L)
            assert tr.verify_property_of_T(L, T).passed
            for x in range(d - 1):
                for z in range(d - 1 - x):
                    assert cc.verify_commutation(build_color_code(L, x, z)).passed


def test_6_transversal_Rd(capsys):
    with criterion(capsys, 6, "transversal R_d on CC_d(0,d-2) via bipartition", 10):
        cases = [(2, lv, 0, 0, 2) for lv in (1, 2, 3)] + [(3, 1, 0, 1, 3)]
        for d, level, x, z, n in cases:
            L = build_fractal(d, level)
            c = build_color_code(L, x, z)
            T, _ = simplicial.bipartition_indices(L)
            plan = tr.TransversalRnPlan.for_code(c, T, n)
            rep = tr.phase_oracle_Rn(c, plan)
            assert rep.passed, (d, level, rep.witnesses)
            assert set(rep.histogram) == {0}


def test_7_gauge_fixing_protocol(capsys):
    with criterion(capsys, 7, "logical H by gauge fixing on 15 qubits", 1):
        L = build_fractal(3, 1)
        small, large = build_color_code(L, 0, 0), build_color_code(L, 0, 1)
        code_a, code_b = cc.fifteen_qubit_pair()
        xq = PauliWord.x_type(np.ones(15, np.uint8))
        zq = PauliWord.z_type(np.ones(15, np.uint8))
        for c_small, c_large in ((small, large), (code_b, code_a)):
            for start, observable in (("0", xq), ("+", zq)):
                traces = []
                for _ in range(2):
                    t = ss.prepare_codeword(c_large, "gZ", start, seed=17)
                    ref = t.copy()
                    log = []
                    ss.logical_H_protocol(c_small, c_large, t, log)
                    traces.append(ss.trace_lines(log))
                    assert t.expectation(observable) == 1
                    assert ss.state_satisfies(t, c_large.stabilizers())
                    ss.logical_H_protocol(c_small, c_large, t)
                    assert ss.same_state(t, ref)
                assert traces[0] == traces[1]


def test_8_partial_order_catalog(capsys):
    with criterion(capsys, 8, "d = 3 catalog and partial order", 1):
        rows = cc.catalog(3)
        assert {(r["x"], r["z"]) for r in rows if r["type"] == "stabilizer"} == {(1, 0), (0, 1)}
        assert {(r["x"], r["z"]) for r in rows if r["type"] == "subsystem"} == {(0, 0)}
        assert next(r["max_Rn"] for r in rows if (r["x"], r["z"]) == (0, 1)) == 3
        L = build_fractal(3, 1)
        c00, c01 = build_color_code(L, 0, 0), build_color_code(L, 0, 1)
        assert cc.partial_order_leq(c00, c01) and not cc.partial_order_leq(c01, c00)


@pytest.mark.parametrize("fault", ["miscoloring", "truncated stabilizer row", "perturbed T"])
def test_9_fault_injection(capsys, tmp_path, fault):
    with criterion(capsys, 9, f"fault injection: {fault}", 1):
        if fault == "miscoloring":
            path = tmp_path / "lattice.json"
            path.write_text(miscolored_lattice_json())
            rep = simplicial.verify_lemmas(simplicial.from_json(path.read_text(), check=False))
            args = ["--lattice", str(path), "--x", "0", "--z", "0"]
        elif fault == "truncated stabilizer row":
            path = tmp_path / "bundle.json"
            path.write_text(truncated_stabilizer_bundle())
            rep = cc.verify_commutation(cc.from_bundle(path.read_text()))
            args = ["--bundle", str(path)]
        else:
            L = build_fractal(3, 1)
            T = perturbed_T(L)
            rep = tr.verify_property_of_T(L, T)
            args = ["--d", "3", "--level", "1", "--x", "0", "--z", "1", "--n", "3", "--T", ",".join(map(str, T))]
        assert not rep.passed and rep.witnesses
        assert main(["verify", *args, "--out", str(tmp_path / "out"), "--quiet"]) == EXIT_FAIL
