"""Stabilizer-tableau simulation of codewords, transversal Cliffords and gauge fixing."""

from __future__ import annotations

import json
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import gf2
from .color_code import CodeSpec, is_self_dual, partial_order_leq
from .pauli import PauliWord


class Tableau:
    """Stabilizer state on ``n`` qubits with paired destabilizers.

    Rows ``0..n-1`` are destabilizers, rows ``n..2n-1`` stabilizers.  Row
    ``i`` is ``i**r[i] * X**x[i] Z**z[i]``.  Gates mutate the tableau in
    place; measurements draw from a private ``random.Random(seed)``.
    """

    def __init__(self, x: np.ndarray, z: np.ndarray, r: np.ndarray, seed: int = 0):
        self.x = x.astype(np.uint8)
        self.z = z.astype(np.uint8)
        self.r = r.astype(np.int64) % 4
        self.n = self.x.shape[1]
        self.seed = seed
        self.rng = random.Random(seed)

    @classmethod
    def zero_state(cls, n: int, seed: int = 0) -> Tableau:
        x = np.zeros((2 * n, n), dtype=np.uint8)
        z = np.zeros((2 * n, n), dtype=np.uint8)
        x[:n] = np.eye(n, dtype=np.uint8)
        z[n:] = np.eye(n, dtype=np.uint8)
        return cls(x, z, np.zeros(2 * n), seed)

    @classmethod
    def from_stabilizers(cls, gens: Sequence[PauliWord], seed: int = 0) -> Tableau:
        """Build the state stabilized by ``n`` independent, commuting, Hermitian words."""
        n = gens[0].n
        if len(gens) != n:
            raise ValueError(f"need exactly {n} generators, got {len(gens)}")
        S = np.array([g.symplectic() for g in gens], dtype=np.uint8)
        if gf2.rank(S) != n:
            raise ValueError("generators are not independent")
        for g in gens:
            if not g.is_hermitian():
                raise ValueError(f"{g} is not Hermitian")
        sx, sz = S[:, :n], S[:, n:]
        if (((sx.astype(np.int64) @ sz.T) + (sz.astype(np.int64) @ sx.T)) % 2).any():
            raise ValueError("generators do not commute")
        # destabilizer i: anticommutes with stabilizer i only, commutes with the other destabilizers
        pairing = np.concatenate([sz, sx], axis=1)
        D = np.zeros((n, 2 * n), dtype=np.uint8)
        for i in range(n):
            e = np.zeros(n, dtype=np.uint8)
            e[i] = 1
            D[i] = gf2.solve(pairing, e)
        for i in range(n):
            for j in range(i):
                if _sym(D[i], D[j], n):
                    D[i] ^= S[j]
        x = np.concatenate([D[:, :n], sx])
        z = np.concatenate([D[:, n:], sz])
        r = np.concatenate([np.zeros(n, dtype=np.int64), [g.phase for g in gens]])
        # destabilizers are kept Hermitian; their sign is irrelevant
        r[:n] = np.sum(D[:, :n].astype(np.int64) * D[:, n:], axis=1) % 4
        return cls(x, z, r, seed)

    def copy(self) -> Tableau:
        t = Tableau(self.x.copy(), self.z.copy(), self.r.copy(), self.seed)
        t.rng.setstate(self.rng.getstate())
        return t

    def row(self, i: int) -> PauliWord:
        return PauliWord(self.x[i], self.z[i], int(self.r[i]))

    def stabilizers(self) -> list[PauliWord]:
        return [self.row(self.n + i) for i in range(self.n)]

    def destabilizers(self) -> list[PauliWord]:
        return [self.row(i) for i in range(self.n)]

    # -- gates -----------------------------------------------------------

    def h(self, q: int) -> Tableau:
        self.r += 2 * (self.x[:, q] & self.z[:, q])
        self.x[:, q], self.z[:, q] = self.z[:, q].copy(), self.x[:, q].copy()
        self.r %= 4
        return self

    def s(self, q: int) -> Tableau:
        self.r += self.x[:, q]
        self.z[:, q] ^= self.x[:, q]
        self.r %= 4
        return self

    def s_dag(self, q: int) -> Tableau:
        return self.s(q).s(q).s(q)

    def cnot(self, c: int, t: int) -> Tableau:
        self.x[:, t] ^= self.x[:, c]
        self.z[:, c] ^= self.z[:, t]
        return self

    def apply_pauli(self, P: PauliWord) -> Tableau:
        anti = (self.x.astype(np.int64) @ P.z + self.z.astype(np.int64) @ P.x) % 2
        self.r = (self.r + 2 * anti) % 4
        return self

    # -- measurement -----------------------------------------------------

    def _anticommutes(self, P: PauliWord) -> np.ndarray:
        return ((self.x.astype(np.int64) @ P.z + self.z.astype(np.int64) @ P.x) % 2).astype(bool)

    def _multiply_into(self, target: int, source: int) -> None:
        """row[target] <- row[source] * row[target]."""
        sign = 2 * (int(self.z[source].astype(np.int64) @ self.x[target]) % 2)
        self.r[target] = (self.r[source] + self.r[target] + sign) % 4
        self.x[target] ^= self.x[source]
        self.z[target] ^= self.z[source]

    def _stabilizer_product(self, P: PauliWord) -> PauliWord:
        """Signed product of stabilizer rows equal to ``+-P`` (``P`` must commute with all of them)."""
        out = PauliWord.identity(self.n)
        anti = self._anticommutes(P)
        for i in range(self.n):
            if anti[i]:
                out = out * self.row(self.n + i)
        return out

    def expectation(self, P: PauliWord) -> int:
        """+1 or -1 if ``P`` is determined by the state, 0 if a measurement would be random."""
        if not P.is_hermitian():
            raise ValueError(f"{P} is not Hermitian")
        if self._anticommutes(P)[self.n:].any():
            return 0
        prod = self._stabilizer_product(P)
        if not prod.same_operator_up_to_phase(P):
            raise RuntimeError("tableau is inconsistent: commuting Pauli not in the stabilizer group")
        return 1 if prod.phase == P.phase else -1

    def measure(self, P: PauliWord) -> tuple[int, bool]:
        """Projectively measure ``P``; returns (outcome, deterministic)."""
        value = self.expectation(P)
        if value:
            return value, True
        anti = self._anticommutes(P)
        p = self.n + int(np.flatnonzero(anti[self.n:])[0])
        for i in np.flatnonzero(anti):
            if i != p:
                self._multiply_into(int(i), p)
        self.x[p - self.n], self.z[p - self.n], self.r[p - self.n] = self.x[p], self.z[p], self.r[p]
        outcome = 1 - 2 * self.rng.getrandbits(1)
        self.x[p], self.z[p] = P.x.copy(), P.z.copy()
        self.r[p] = (P.phase + (0 if outcome == 1 else 2)) % 4
        return outcome, False

    def check(self) -> None:
        """Assert the tableau invariants: commuting stabilizers and the canonical pairing."""
        n = self.n
        gram = (self.x.astype(np.int64) @ self.z.T + self.z.astype(np.int64) @ self.x.T) % 2
        expected = np.zeros((2 * n, 2 * n), dtype=np.int64)
        expected[:n, n:] = np.eye(n, dtype=np.int64)
        expected[n:, :n] = np.eye(n, dtype=np.int64)
        # destabilizers may anticommute among themselves after measurements; ignore that block
        gram[:n, :n] = 0
        if not np.array_equal(gram, expected):
            raise AssertionError("tableau lost its symplectic structure")
        if not all(self.row(n + i).is_hermitian() for i in range(n)):
            raise AssertionError("non-Hermitian stabilizer row")


def _sym(a: np.ndarray, b: np.ndarray, n: int) -> int:
    return int((a[:n].astype(np.int64) @ b[n:] + a[n:].astype(np.int64) @ b[:n]) % 2)


def measure_pauli(t: Tableau, P: PauliWord) -> tuple[int, Tableau]:
    outcome, _ = t.measure(P)
    return outcome, t


def state_satisfies(t: Tableau, gens: Iterable[PauliWord]) -> bool:
    """Every word in ``gens`` is in the stabilizer group of ``t`` with sign +1."""
    return all(t.expectation(g) == 1 for g in gens)


def same_state(a: Tableau, b: Tableau) -> bool:
    return state_satisfies(b, a.stabilizers()) and state_satisfies(a, b.stabilizers())


def tensor(a: Tableau, b: Tableau, seed: int | None = None) -> Tableau:
    """Product state of two tableaus (qubits of ``a`` first)."""
    n, m = a.n, b.n

    def block(top: np.ndarray, bottom: np.ndarray) -> np.ndarray:
        return np.block([[top, np.zeros((top.shape[0], m), np.uint8)],
                         [np.zeros((bottom.shape[0], n), np.uint8), bottom]])

    order = lambda A, B: (A[:n], B[:m], A[n:], B[m:])  # noqa: E731
    da_x, db_x, sa_x, sb_x = order(a.x, b.x)
    da_z, db_z, sa_z, sb_z = order(a.z, b.z)
    x = np.vstack([block(da_x, db_x), block(sa_x, sb_x)])
    z = np.vstack([block(da_z, db_z), block(sa_z, sb_z)])
    r = np.concatenate([a.r[:n], b.r[:m], a.r[n:], b.r[m:]])
    return Tableau(x, z, r, a.seed if seed is None else seed)


LOGICAL_STATES = {"0", "1", "+", "-"}


def codeword_generators(c: CodeSpec, basis: str = "gZ", logical: int | str = 0) -> list[PauliWord]:
    """Stabilizer generators of a codeword representative.

    ``gZ``: the uniform superposition over X-type stabilizer elements (gauge
    qubits in the +1 eigenstate of every Z-type gauge generator).  ``gX``: the
    superposition over X-type gauge elements.  ``logical`` picks
    ``|0>, |1>, |+>, |->``.
    """
    logical = str(logical)
    if basis not in ("gZ", "gX") or logical not in LOGICAL_STATES:
        raise ValueError(f"basis must be gZ/gX and logical one of {sorted(LOGICAL_STATES)}")
    A = c.stab_x if basis == "gZ" else c.gauge_x
    ones = np.ones(c.n, dtype=np.uint8)
    if gf2.in_row_space(ones, A) if A.shape[0] else False:
        raise ValueError("X(Q) lies in the X-type group; the code has no logical qubit")
    if logical in "+-":
        A = np.vstack([A, ones]) if A.shape[0] else ones.reshape(1, -1)
    X_rows = gf2.row_basis(A) if A.shape[0] else np.zeros((0, c.n), np.uint8)
    Z_rows = gf2.kernel_basis(X_rows) if X_rows.shape[0] else np.eye(c.n, dtype=np.uint8)
    gens = [PauliWord.x_type(r) for r in X_rows] + [PauliWord.z_type(r) for r in Z_rows]
    if logical == "1":
        gens = [PauliWord(g.x, g.z, g.phase + 2 * (int(g.z.sum()) % 2)) for g in gens]
    if logical == "-":
        gens = [PauliWord(g.x, g.z, g.phase + 2 * (int(g.x.sum()) % 2)) for g in gens]
    return gens


def prepare_codeword(c: CodeSpec, basis: str = "gZ", logical: int | str = 0, seed: int = 0) -> Tableau:
    """Tableau of a codeword; checked against the generators that must fix it."""
    t = Tableau.from_stabilizers(codeword_generators(c, basis, logical), seed=seed)
    required = c.stabilizers()
    required += [PauliWord.z_type(r) for r in c.gauge_z] if basis == "gZ" else [PauliWord.x_type(r) for r in c.gauge_x]
    logical = str(logical)
    if logical in "01":
        required.append(PauliWord.z_type(np.ones(c.n), 0 if logical == "0" else 2))
    else:
        required.append(PauliWord.x_type(np.ones(c.n), 0 if logical == "+" else 2))
    if not state_satisfies(t, required):
        raise ValueError("inconsistent generating set: the codeword is not fixed by all required generators")
    return t


def apply_transversal(t: Tableau, gate: str, plan: Any = None) -> Tableau:
    """Apply a single-qubit Clifford to every qubit.

    ``gate`` is one of ``H``, ``S``, ``S_dag``, ``X``, ``Z`` or ``Rn`` (with a
    :class:`~gaugecolor.transversal.TransversalRnPlan`; only ``n <= 2`` is Clifford).
    """
    if gate == "Rn":
        if plan is None:
            raise ValueError("Rn needs a plan")
        if plan.n > 2:
            raise ValueError(f"R_{plan.n} is not a Clifford gate; use the phase oracle instead")
        power = 2 ** (2 - plan.n)  # R_1 = Z = S^2, R_2 = S
        T = set(plan.T)
        for q in range(t.n):
            reps = (power * plan.k * (1 if q in T else -1)) % 4
            for _ in range(reps):
                t.s(q)
        return t
    ops = {"H": t.h, "S": t.s, "S_dag": t.s_dag}
    if gate in ops:
        for q in range(t.n):
            ops[gate](q)
        return t
    if gate in ("X", "Z"):
        ones = np.ones(t.n, dtype=np.uint8)
        return t.apply_pauli(PauliWord.x_type(ones) if gate == "X" else PauliWord.z_type(ones))
    raise ValueError(f"unsupported or non-Clifford gate {gate!r}")


def apply_cnot_pairs(a: Tableau, b: Tableau) -> Tableau:
    """Joint state of two blocks after CNOT from each qubit of ``a`` to its partner in ``b``."""
    if a.n != b.n:
        raise ValueError("blocks differ in size")
    joint = tensor(a, b)
    for q in range(a.n):
        joint.cnot(q, a.n + q)
    return joint


@dataclass
class SwitchScript:
    """Gauge-fixing plan from ``source`` into ``target``.

    ``fix_z`` / ``fix_x`` are target stabilizer rows independent of everything
    the source already stabilizes (and of each other), measured in order.
    """

    source: CodeSpec
    target: CodeSpec
    fix_z: np.ndarray = field(default_factory=lambda: np.zeros((0, 0), np.uint8))
    fix_x: np.ndarray = field(default_factory=lambda: np.zeros((0, 0), np.uint8))

    @property
    def fix_generators(self) -> list[PauliWord]:
        return [PauliWord.z_type(r) for r in self.fix_z] + [PauliWord.x_type(r) for r in self.fix_x]


def _extension(base: np.ndarray, extra: np.ndarray) -> np.ndarray:
    """Rows of ``extra`` that enlarge the span of ``base`` (greedy, in order)."""
    n = extra.shape[1]
    space = gf2.RowSpace(base, width=n) if base.shape[0] else None
    picked: list[np.ndarray] = []
    for row in extra:
        if (space is None or row not in space):
            picked.append(row)
            space = gf2.RowSpace(np.vstack([base] + picked) if base.shape[0] else np.array(picked), width=n)
    return np.array(picked, dtype=np.uint8).reshape(-1, n)


def switch_script(source: CodeSpec, target: CodeSpec) -> SwitchScript:
    """Plan the switch between two comparable codes.

    Into a code with a smaller gauge group the extra stabilizers are fixed;
    into a code with a larger gauge group nothing needs to happen.
    """
    empty = np.zeros((0, source.n), np.uint8)
    if partial_order_leq(source, target):
        return SwitchScript(source, target, _extension(source.stab_z, target.stab_z),
                            _extension(source.stab_x, target.stab_x))
    if partial_order_leq(target, source):
        return SwitchScript(source, target, empty, empty)
    raise ValueError(f"{source.name} and {target.name} are not comparable")


def _correction(script: SwitchScript, kind: str, index: int) -> np.ndarray:
    """Support of a gauge operator of the source flipping only fix row ``index``."""
    if kind == "Z":
        gauge, base, fixes = script.source.gauge_x, script.source.stab_z, script.fix_z
    else:
        gauge, base, fixes = script.source.gauge_z, script.source.stab_x, script.fix_x
    constraints = np.vstack([gf2.row_basis(base).reshape(-1, script.source.n), fixes])
    rhs = np.zeros(constraints.shape[0], dtype=np.uint8)
    rhs[constraints.shape[0] - fixes.shape[0] + index] = 1
    A = (constraints.astype(np.int64) @ gauge.T.astype(np.int64)) % 2
    y = gf2.solve(A, rhs)
    if y is None:
        raise ValueError(f"no gauge correction exists for {kind} fix generator {index}")
    return ((y.astype(np.int64) @ gauge) % 2).astype(np.uint8)


def gauge_fix(t: Tableau, script: SwitchScript, log: list[dict] | None = None) -> Tableau:
    """Measure each fix generator and undo every -1 outcome with a gauge correction."""
    step = len(log) if log is not None else 0
    for kind, rows in (("Z", script.fix_z), ("X", script.fix_x)):
        for i, row in enumerate(rows):
            P = PauliWord.z_type(row) if kind == "Z" else PauliWord.x_type(row)
            outcome, deterministic = t.measure(P)
            support: list[int] = []
            if outcome == -1:
                corr = _correction(script, kind, i)
                t.apply_pauli(PauliWord.x_type(corr) if kind == "Z" else PauliWord.z_type(corr))
                support = np.flatnonzero(corr).tolist()
            if log is not None:
                log.append({"step": step, "type": kind, "generator_index": i, "outcome": outcome,
                            "deterministic": deterministic, "correction_support": support})
            step += 1
    return t


def logical_H_protocol(c_small: CodeSpec, c_large: CodeSpec, state: Tableau,
                       log: list[dict] | None = None) -> Tableau:
    """Logical H on ``c_large`` via the self-dual ``c_small`` (``c_small`` precedes ``c_large``).

    H on every qubit acts as a dressed logical H of ``c_small``; gauge fixing
    then returns the state to the code space of ``c_large``.
    """
    if not is_self_dual(c_small):
        raise ValueError(f"{c_small.name} is not self-dual; H(Q) does not preserve its gauge group")
    if not partial_order_leq(c_small, c_large):
        raise ValueError(f"{c_small.name} does not precede {c_large.name}")
    apply_transversal(state, "H")
    return gauge_fix(state, switch_script(c_small, c_large), log)


def logical_value(t: Tableau) -> dict[str, int]:
    """Expectations of X(Q) and Z(Q) (0 means undetermined)."""
    ones = np.ones(t.n, dtype=np.uint8)
    return {"X": t.expectation(PauliWord.x_type(ones)), "Z": t.expectation(PauliWord.z_type(ones))}


def trace_lines(log: list[dict]) -> str:
    return "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in log)
