"""Quantum Reed-Muller codes QRM(m) and their identification with level-1 fractal color codes."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import gf2
from .color_code import H1, H2, CodeSpec, build_color_code, code_from_matrices
from .gf2 import BitMatrix
from .report import Report
from .simplicial import build_fractal


def build_M(m: int) -> BitMatrix:
    """``m x (2**m - 1)`` matrix whose columns are all non-zero length-``m`` vectors.

    Built by the doubling recursion ``M_{i+1} = [[M_i, 0, M_i], [0, 1, 1]]``.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    M = np.ones((1, 1), dtype=np.uint8)
    for _ in range(m - 1):
        w = M.shape[1]
        top = np.concatenate([M, np.zeros((M.shape[0], 1), np.uint8), M], axis=1)
        bottom = np.concatenate([np.zeros(w, np.uint8), np.ones(w + 1, np.uint8)])
        M = np.vstack([top, bottom])
    return M


@dataclass(eq=False)
class QRMCode:
    m: int
    M: BitMatrix
    M_perp: BitMatrix  # basis of ker M (contains the all-ones vector)
    spec: CodeSpec


def build_qrm(m: int) -> QRMCode:
    """The ``[[2**m - 1, 1, 3]]`` stabilizer code with X checks ``M``.

    Z checks are the even-weight part of ``ker M``: the whole kernel would
    contain ``Z(Q)`` and leave no logical qubit.
    """
    if m < 3:
        raise ValueError("QRM(m) needs m >= 3")
    M = build_M(m)
    n = M.shape[1]
    M_perp = gf2.kernel_basis(M)
    Z = gf2.kernel_basis(np.vstack([M, np.ones(n, np.uint8)]))
    spec = code_from_matrices(M, Z, M, Z, name=f"QRM({m})")
    spec.provenance = {"kind": "qrm", "m": m}
    return QRMCode(m, M, M_perp, spec)


def column_key(col: np.ndarray) -> int:
    return gf2.pack_row(col)


def match_columns(A: BitMatrix, B: BitMatrix) -> list[int]:
    """Permutation ``p`` with ``A[:, j] == B[:, p[j]]``; columns of ``B`` must be distinct."""
    where = {column_key(B[:, j]): j for j in range(B.shape[1])}
    if len(where) != B.shape[1] or A.shape != B.shape:
        raise ValueError("column mismatch: matrices are not column permutations of each other")
    perm = []
    for j in range(A.shape[1]):
        key = column_key(A[:, j])
        if key not in where:
            raise ValueError(f"column mismatch: column {j} of the color code has no partner")
        perm.append(where.pop(key))
    return perm


def certify_equivalence(m: int) -> Report:
    """Certify that CC_{m-1}(0, m-3) on the level-1 fractal lattice is QRM(m) up to relabeling.

    The X stabilizer matrix of the color code has one row per interior vertex;
    its columns are matched against ``M`` by exact bit pattern.  Under the
    resulting permutation the X and Z stabilizer row spaces are compared, and
    the Z stabilizers are checked to lie inside ``ker M``.
    """
    if m < 3:
        raise ValueError("m must be at least 3")
    q = build_qrm(m)
    cc = build_color_code(build_fractal(m - 1, 1), 0, m - 3)
    rep = Report(check="qrm_equivalence", passed=True, code=cc.name, params={"m": m, "n": cc.n})
    Mp = cc.stab_x
    weights = np.bincount(Mp.sum(axis=0), minlength=m + 1)[1:].tolist()
    rep.details["column_weight_counts"] = weights
    if weights != [comb(m, k) for k in range(1, m + 1)]:
        rep.add_witness(kind="column_weights", counts=weights)
    if Mp.shape[0] != m:
        rep.add_witness(kind="x_rows", rows=int(Mp.shape[0]))
        return rep
    # any row order works: both column sets are all non-zero vectors
    perm = match_columns(Mp, q.M)
    rep.details["permutation"] = perm
    moved = cc.permuted(perm)
    checks = {
        "x_stabilizers": gf2.same_row_space(moved.stab_x, q.spec.stab_x),
        "z_stabilizers": gf2.same_row_space(moved.stab_z, q.spec.stab_z),
        "z_inside_kernel": gf2.row_space_contains(q.M_perp, moved.stab_z),
        "stabilizer_code": moved.is_stabilizer_code,
    }
    rep.details["checks"] = checks
    for name, ok in checks.items():
        if not ok:
            rep.add_witness(kind=name)
    return rep


def compare_fifteen_qubit_pair() -> Report:
    """Match the explicit 15-qubit matrices against CC_3(0,1) and CC_3(0,0) on one relabeling.

    The permutation comes from matching ``H_1`` columns to the X stabilizer
    matrix of CC_3(0,1); the same permutation is then used for the stabilizer
    group ``<H_1^X, H_1^Z, H_2^Z>`` and the gauge group ``<H_1, H_2>``.
    """
    L = build_fractal(3, 1)
    a = build_color_code(L, 0, 1)
    b = build_color_code(L, 0, 0)
    rep = Report(check="fifteen_qubit_pair", passed=True, code=a.name)
    perm = match_columns(a.stab_x, H1)
    rep.details["permutation"] = perm
    H12 = np.vstack([H1, H2])
    rep.details["rank_H1_H2"] = gf2.rank(H12)
    pa, pb = a.permuted(perm), b.permuted(perm)
    checks = {
        "stab_x=H1": gf2.same_row_space(pa.stab_x, H1),
        "stab_z=H1+H2": gf2.same_row_space(pa.stab_z, H12),
        "gauge_x=H1+H2": gf2.same_row_space(pb.gauge_x, H12),
        "gauge_z=H1+H2": gf2.same_row_space(pb.gauge_z, H12),
        "gauge_stab=H1": gf2.same_row_space(pb.stab_x, H1) and gf2.same_row_space(pb.stab_z, H1),
    }
    rep.details["checks"] = checks
    for name, ok in checks.items():
        if not ok:
            rep.add_witness(kind=name)
    return rep
