"""Transversal gates: CNOT, H and the phase gates R_n = diag(1, exp(2 pi i / 2^n)).

All phases are integers modulo ``2**n`` (the exponent of ``exp(2 pi i / 2^n)``).
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from math import comb

import numpy as np

from . import gf2
from .color_code import MATRIX_NAMES, CodeSpec, is_self_dual
from .report import Report
from .simplicial import ColoredComplex, Simplex, interior_simplices

ENUMERATION_RANK_LIMIT = 20
SUBSET_LIMIT = 10_000_000
SUBSET_SAMPLE = 200_000


def solve_k(T_size: int, n_qubits: int, n: int) -> int:
    """The unique ``k`` in ``1..2**n - 1`` with ``k * (2*T_size - n_qubits) == 1 (mod 2**n)``."""
    if n_qubits % 2 == 0:
        raise ValueError("no solution: |T| - |T^c| is even when the qubit count is even")
    if n < 1:
        raise ValueError("n must be positive")
    return pow(2 * T_size - n_qubits, -1, 2**n)


@dataclass(frozen=True)
class TransversalRnPlan:
    """Apply ``R_n**k`` to the qubits in ``T`` and ``R_n**-k`` to the rest."""

    T: tuple[int, ...]
    Tc: tuple[int, ...]
    n: int
    k: int

    @classmethod
    def for_code(cls, c: CodeSpec, T: Iterable[int], n: int, k: int | None = None) -> TransversalRnPlan:
        T = tuple(sorted(set(int(i) for i in T)))
        Tc = tuple(i for i in range(c.n) if i not in set(T))
        if k is None:
            k = solve_k(len(T), c.n, n)
        return cls(T, Tc, n, k)

    @property
    def logical_exponent(self) -> int:
        return self.k * (len(self.T) - len(self.Tc)) % 2**self.n

    def masks(self, n_qubits: int) -> tuple[np.ndarray, np.ndarray]:
        return _mask(self.T, n_qubits)


def _mask(T: Iterable[int], n_qubits: int) -> tuple[np.ndarray, np.ndarray]:
    t = np.zeros(n_qubits, dtype=np.int64)
    t[list(T)] = 1
    return t, 1 - t


def _require_enumerable(c: CodeSpec, rep: Report) -> None:
    r = gf2.rank(c.gauge_x)
    rep.params["gauge_x_rank"] = r
    if r > ENUMERATION_RANK_LIMIT:
        raise ValueError(
            f"X gauge rank {r} exceeds {ENUMERATION_RANK_LIMIT}; use check_condition_15 instead"
        )


def check_condition_13(c: CodeSpec, T: Iterable[int], n: int) -> Report:
    """``|T & G| == |T^c & G| (mod 2**n)`` for every X-type gauge element ``X(G)``."""
    T = list(T)
    rep = Report(check="condition_13", passed=True, code=c.name, params={"n": n, "T_size": len(T)})
    _require_enumerable(c, rep)
    t, tc = _mask(T, c.n)
    mod = 2**n
    count = 0
    for chunk in gf2.row_space_elements(c.gauge_x):
        diff = (chunk @ t - chunk @ tc) % mod
        bad = np.flatnonzero(diff)
        if bad.size and rep.passed:
            G = chunk[bad[0]]
            rep.add_witness(element=np.flatnonzero(G).tolist(), residue=int(diff[bad[0]]))
        count += len(chunk)
    rep.details["elements"] = count
    return rep


def check_condition_15(c: CodeSpec, T: Iterable[int], n: int, seed: int = 0) -> Report:
    """Generator-subset form: for every ``m``-subset of X gauge generators,
    ``|T & G_1 & ... & G_m| == |T^c & ...| (mod 2**(n-m+1))``, ``m = 1..n``.
    """
    T = list(T)
    rep = Report(check="condition_15", passed=True, code=c.name, params={"n": n, "T_size": len(T)})
    rows = gf2.pack_rows(c.gauge_x)
    tmask = gf2.pack_row(_mask(T, c.n)[0])
    tcmask = ((1 << c.n) - 1) ^ tmask
    g = len(rows)
    total = sum(comb(g, m) for m in range(1, n + 1))
    sampled = total > SUBSET_LIMIT
    rng = random.Random(seed)
    checked: Counter[int] = Counter()

    def subsets(m: int):
        if not sampled or m <= 2:
            return itertools.combinations(range(g), m)
        return (tuple(sorted(rng.sample(range(g), m))) for _ in range(SUBSET_SAMPLE))

    for m in range(1, min(n, g) + 1):
        mod = 2 ** (n - m + 1)
        for idx in subsets(m):
            inter = -1
            for i in idx:
                inter &= rows[i]
            checked[m] += 1
            diff = ((inter & tmask).bit_count() - (inter & tcmask).bit_count()) % mod
            if diff:
                rep.add_witness(m=m, generators=list(idx), residue=diff, modulus=mod)
    rep.details["subsets_checked"] = dict(checked)
    rep.details["sampled"] = sampled
    return rep


def verify_property_of_T(L: ColoredComplex, T: Iterable[Simplex] | Iterable[int]) -> Report:
    """Every interior simplex below the top dimension has as many qubits in T as in T^c."""
    T = list(T)
    idx = {L.qubit_index[s] if isinstance(s, tuple) else int(s) for s in T}
    tmask = sum(1 << i for i in idx)
    rep = Report(check="property_of_T", passed=True, params={"d": L.d, "T_size": len(idx)})
    checked = 0
    for k in range(L.d):
        for s in interior_simplices(L, k):
            m = L.mask(s)
            on_t = (m & tmask).bit_count()
            checked += 1
            if 2 * on_t != m.bit_count():
                rep.add_witness(simplex=s, in_T=on_t, in_Tc=m.bit_count() - on_t)
    rep.details["simplices"] = checked
    return rep


def phase_oracle_Rn(c: CodeSpec, plan: TransversalRnPlan) -> Report:
    """Exact action of the plan on the two codeword superpositions.

    ``|0>|g_X>`` is the uniform sum over X-type gauge elements ``G`` and
    ``|1>|g_X>`` its image under ``X(Q)``.  The diagonal gate multiplies basis
    state ``|a>`` by ``exp(2 pi i e(a) / 2**n)`` with
    ``e(a) = k(|T & a| - |T^c & a|)``.  The gate is the bare logical ``R_n``
    iff every ``G`` gets exponent 0 and every ``G + Q`` gets exponent 1.
    """
    rep = Report(check="phase_oracle_Rn", passed=True, code=c.name,
                 params={"n": plan.n, "k": plan.k, "T_size": len(plan.T)})
    _require_enumerable(c, rep)
    t, tc = plan.masks(c.n)
    mod = 2**plan.n
    ones = np.ones(c.n, dtype=np.int64)
    hist0: Counter[int] = Counter()
    hist1: Counter[int] = Counter()
    for chunk in gf2.row_space_elements(c.gauge_x):
        e0 = (plan.k * (chunk @ t - chunk @ tc)) % mod
        flipped = ones - chunk
        e1 = (plan.k * (flipped @ t - flipped @ tc)) % mod
        hist0.update(e0.tolist())
        hist1.update(e1.tolist())
        if rep.passed and (e0.any() or (e1 != e1[0]).any()):
            bad = int(np.flatnonzero(e0)[0]) if e0.any() else int(np.flatnonzero(e1 != e1[0])[0])
            rep.add_witness(element=np.flatnonzero(chunk[bad]).tolist(), exponent=int(e0[bad]))
    rep.histogram = dict(hist0)
    rep.details["logical_histogram"] = dict(hist1)
    uniform = len(hist1) == 1
    logical = next(iter(hist1)) if uniform else None
    rep.details["logical_exponent"] = logical
    rep.details["implements_up_to_direction"] = bool(
        rep.passed and set(hist0) == {0} and logical in (1, mod - 1)
    )
    rep.details["physical_gate"] = f"R_{plan.n}^{plan.k} on T, R_{plan.n}^{-plan.k} on T^c"
    if logical != 1:
        rep.passed = False
        if rep.witnesses == []:
            rep.witnesses.append({"logical_exponent": logical})
    return rep


def check_H_transversal(c: CodeSpec) -> bool:
    """H on every qubit swaps X and Z gauge generators, so it preserves the gauge group iff the code is self-dual."""
    return is_self_dual(c)


def check_CNOT_transversal(a: CodeSpec, b: CodeSpec) -> Report:
    """Conjugate every generator of G x G by qubit-wise CNOT and re-express the image in G x G."""
    if a.n != b.n or a.qubits != b.qubits or any(
        not np.array_equal(getattr(a, m), getattr(b, m)) for m in MATRIX_NAMES
    ):
        raise ValueError("transversal CNOT needs two identical copies of one code")
    n = a.n
    rep = Report(check="transversal_cnot", passed=True, code=a.name)
    zero = np.zeros(n, dtype=np.uint8)
    GX = np.block([[a.gauge_x, np.zeros_like(a.gauge_x)], [np.zeros_like(a.gauge_x), a.gauge_x]])
    GZ = np.block([[a.gauge_z, np.zeros_like(a.gauge_z)], [np.zeros_like(a.gauge_z), a.gauge_z]])
    space_x = gf2.RowSpace(GX, width=2 * n)
    space_z = gf2.RowSpace(GZ, width=2 * n)

    def cnot(x1, x2, z1, z2):
        return x1, x1 ^ x2, z1 ^ z2, z2

    images = 0
    for g in a.gauge_x:
        for x1, x2 in ((g, zero), (zero, g)):
            _, x2n, _, _ = cnot(x1, x2, zero, zero)
            images += 1
            if np.concatenate([x1, x2n]) not in space_x:
                rep.add_witness(kind="X", image=np.concatenate([x1, x2n]).tolist())
    for g in a.gauge_z:
        for z1, z2 in ((g, zero), (zero, g)):
            _, _, z1n, _ = cnot(zero, zero, z1, z2)
            images += 1
            if np.concatenate([z1n, z2]) not in space_z:
                rep.add_witness(kind="Z", image=np.concatenate([z1n, z2]).tolist())
    one = np.ones(n, dtype=np.uint8)
    checks = {
        "XI->XX": (cnot(one, zero, zero, zero)[:2], (one, one)),
        "IX->IX": (cnot(zero, one, zero, zero)[:2], (zero, one)),
        "ZI->ZI": (cnot(zero, zero, one, zero)[2:], (one, zero)),
        "IZ->ZZ": (cnot(zero, zero, zero, one)[2:], (one, one)),
    }
    logical_maps = {k: all(np.array_equal(p, q) for p, q in zip(got, want)) for k, (got, want) in checks.items()}
    rep.details["images_checked"] = images
    rep.details["logical_maps"] = logical_maps
    if not all(logical_maps.values()):
        rep.add_witness(kind="logical", maps=logical_maps)
    return rep

