"""Color codes CC_L(x, z) and other CSS subsystem codes with one logical qubit."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import gf2
from .gf2 import BitMatrix
from .pauli import PauliWord
from .report import Report
from .simplicial import ColoredComplex, Simplex, interior_simplices, validate

MATRIX_NAMES = ("gauge_x", "gauge_z", "stab_x", "stab_z")

# The 15-qubit pair: rows of H1 are weight 8, rows of H2 weight 4.
H1 = gf2.from_text("""# rows=4 cols=15
111111110000000
111100001111000
110011001100110
101010101010101
""")
H2 = gf2.from_text("""# rows=6 cols=15
111100000000000
110011000000000
101010100000000
110000001100000
101000001010000
100010001000100
""")


@dataclass(eq=False)
class CodeSpec:
    """A CSS subsystem code given by the supports of its generators.

    Rows of ``gauge_x`` are supports of X-type gauge generators, and so on.
    ``qubits`` names the maximal simplex behind each qubit for lattice codes.
    """

    n: int
    gauge_x: BitMatrix
    gauge_z: BitMatrix
    stab_x: BitMatrix
    stab_z: BitMatrix
    name: str = ""
    provenance: dict[str, Any] = field(default_factory=lambda: {"kind": "explicit"})
    qubits: tuple[Simplex, ...] | None = None
    row_labels: dict[str, list[Simplex]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for attr in MATRIX_NAMES:
            M = np.asarray(getattr(self, attr))
            M = gf2.as_bits(M) if M.size else np.zeros((0, self.n), dtype=np.uint8)
            if M.shape[1] != self.n:
                raise ValueError(f"{attr} has width {M.shape[1]}, expected {self.n}")
            setattr(self, attr, M)

    @property
    def logical_x(self) -> PauliWord:
        return PauliWord.x_type(np.ones(self.n, dtype=np.uint8))

    @property
    def logical_z(self) -> PauliWord:
        return PauliWord.z_type(np.ones(self.n, dtype=np.uint8))

    @property
    def is_stabilizer_code(self) -> bool:
        return gf2.same_row_space(self.gauge_x, self.stab_x) and gf2.same_row_space(self.gauge_z, self.stab_z)

    def stabilizers(self) -> list[PauliWord]:
        return [PauliWord.x_type(r) for r in self.stab_x] + [PauliWord.z_type(r) for r in self.stab_z]

    def gauge_generators(self) -> list[PauliWord]:
        return [PauliWord.x_type(r) for r in self.gauge_x] + [PauliWord.z_type(r) for r in self.gauge_z]

    def permuted(self, perm: list[int] | np.ndarray, name: str | None = None) -> CodeSpec:
        """Relabel qubits: new qubit ``perm[j]`` carries old qubit ``j``."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        mats = {a: getattr(self, a)[:, inv] for a in MATRIX_NAMES}
        qubits = tuple(self.qubits[i] for i in inv) if self.qubits else None
        return CodeSpec(self.n, **mats, name=name or self.name, provenance=dict(self.provenance),
                        qubits=qubits, row_labels=dict(self.row_labels))


def _supports(L: ColoredComplex, simplices: list[Simplex]) -> BitMatrix:
    M = np.zeros((len(simplices), L.n_qubits), dtype=np.uint8)
    for r, s in enumerate(simplices):
        M[r, L.support(s)] = 1
    return M


def build_color_code(L: ColoredComplex, x: int, z: int) -> CodeSpec:
    """The color code CC_L(x, z).

    Stabilizers: X on interior ``x``-simplices and Z on interior ``z``-simplices.
    Gauge group: X on interior ``(d-2-z)``-simplices and Z on interior
    ``(d-2-x)``-simplices.  When ``x + z = d - 2`` both coincide (a stabilizer
    code); otherwise the gauge generators sit on higher simplices, whose
    smaller supports generate the stabilizer supports.
    """
    d = L.d
    if x < 0 or z < 0 or x + z > d - 2:
        raise ValueError(f"need x, z >= 0 and x + z <= d - 2 = {d - 2}; got ({x}, {z})")
    problems = validate(L)
    if problems:
        raise ValueError(f"invalid lattice: {problems[:3]}")
    dims = {"gauge_x": d - 2 - z, "gauge_z": d - 2 - x, "stab_x": x, "stab_z": z}
    labels = {name: interior_simplices(L, k) for name, k in dims.items()}
    mats = {name: _supports(L, labels[name]) for name in MATRIX_NAMES}
    kind = "stabilizer" if x + z == d - 2 else "subsystem"
    return CodeSpec(
        n=L.n_qubits,
        **mats,
        name=f"CC_{d}({x},{z})",
        provenance={"kind": "lattice", "d": d, "x": x, "z": z, "type": kind,
                    "lattice_id": _lattice_id(L)},
        qubits=tuple(L.maximal),
        row_labels=labels,
    )


def _lattice_id(L: ColoredComplex) -> str:
    return f"{L.d}:{hash((L.maximal, tuple(sorted(L.vertex_colors.items())))) & 0xFFFFFFFF:08x}"


def code_from_matrices(gauge_x, gauge_z, stab_x, stab_z, name: str = "explicit") -> CodeSpec:
    gx = gf2.as_bits(gauge_x)
    return CodeSpec(n=gx.shape[1], gauge_x=gx, gauge_z=gauge_z, stab_x=stab_x, stab_z=stab_z,
                    name=name, provenance={"kind": "explicit"})


def fifteen_qubit_pair() -> tuple[CodeSpec, CodeSpec]:
    """The [[15,1,3]] stabilizer code C_A and its self-dual subsystem partner C_B."""
    HZ = np.vstack([H1, H2])
    code_a = code_from_matrices(H1, HZ, H1, HZ, name="C_A")
    code_b = code_from_matrices(HZ, HZ, H1, H1, name="C_B")
    return code_a, code_b


def _anticommuting_pairs(A: BitMatrix, B: BitMatrix) -> list[tuple[int, int]]:
    P = (A.astype(np.int64) @ B.T.astype(np.int64)) % 2
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(P))]


def verify_commutation(c: CodeSpec) -> Report:
    """Stabilizers must commute with each other, with the gauge group and with the bare logicals."""
    rep = Report(check="commutation", passed=True, code=c.name)
    pairs = [
        ("stab_x", "stab_z", c.stab_x, c.stab_z),
        ("stab_x", "gauge_z", c.stab_x, c.gauge_z),
        ("gauge_x", "stab_z", c.gauge_x, c.stab_z),
    ]
    for a_name, b_name, A, B in pairs:
        for i, j in _anticommuting_pairs(A, B):
            rep.add_witness(x_row=(a_name, i), z_row=(b_name, j))
    ones = np.ones((1, c.n), dtype=np.uint8)
    for name in ("gauge_x", "gauge_z"):
        for i, _ in _anticommuting_pairs(getattr(c, name), ones):
            rep.add_witness(x_row=(name, i), z_row=("logical", 0))
    rep.details["gauge_anticommuting_pairs"] = len(_anticommuting_pairs(c.gauge_x, c.gauge_z))
    rep.details["logicals_anticommute"] = c.n % 2 == 1
    if c.n % 2 == 0:
        rep.add_witness(reason="X(Q) and Z(Q) commute on an even number of qubits")
    return rep


def gauge_qubit_count(c: CodeSpec) -> int:
    g = gf2.rank(c.gauge_x) + gf2.rank(c.gauge_z)
    s = gf2.rank(c.stab_x) + gf2.rank(c.stab_z)
    if (g - s) % 2:
        raise ValueError(f"gauge rank {g} and stabilizer rank {s} differ by an odd number")
    return (g - s) // 2


def logical_qubit_count(c: CodeSpec) -> int:
    """``n - s - r`` with ``s`` the stabilizer rank and ``r`` the number of gauge qubits."""
    s = gf2.rank(c.stab_x) + gf2.rank(c.stab_z)
    return c.n - s - gauge_qubit_count(c)


def centralizer_in_gauge(c: CodeSpec) -> tuple[BitMatrix, BitMatrix]:
    """Independently recompute the stabilizer: gauge elements commuting with the whole gauge group."""

    def part(G: BitMatrix, other: BitMatrix) -> BitMatrix:
        B = gf2.row_basis(G)
        if not B.shape[0]:
            return B
        coeffs = gf2.kernel_basis(((B.astype(np.int64) @ other.T.astype(np.int64)) % 2).T)
        return ((coeffs.astype(np.int64) @ B) % 2).astype(np.uint8)

    return part(c.gauge_x, c.gauge_z), part(c.gauge_z, c.gauge_x)


def verify_structure(c: CodeSpec) -> Report:
    """Stabilizer inside the gauge group and equal to its center."""
    rep = Report(check="structure", passed=True, code=c.name)
    for s_name, g_name in (("stab_x", "gauge_x"), ("stab_z", "gauge_z")):
        if not gf2.row_space_contains(getattr(c, g_name), getattr(c, s_name)):
            rep.add_witness(reason=f"{s_name} not inside {g_name}")
    cx, cz = centralizer_in_gauge(c)
    if not gf2.same_row_space(cx, c.stab_x):
        rep.add_witness(reason="X stabilizers differ from the X part of the gauge center")
    if not gf2.same_row_space(cz, c.stab_z):
        rep.add_witness(reason="Z stabilizers differ from the Z part of the gauge center")
    return rep


def _min_weight_logical(checks: BitMatrix, group: BitMatrix, n: int, w_max: int) -> int | None:
    """Smallest |e| with ``checks @ e == 0`` and ``e`` outside the row space of ``group``."""
    col_masks = [gf2.pack_row(checks[:, j]) if checks.shape[0] else 0 for j in range(n)]
    space = gf2.RowSpace(group, width=n)
    for w in range(1, w_max + 1):
        for combo in itertools.combinations(range(n), w):
            syn = 0
            for j in combo:
                syn ^= col_masks[j]
            if syn:
                continue
            if sum(1 << j for j in combo) not in space:
                return w
    return None


def min_distance_bruteforce(c: CodeSpec, w_max: int, bare: bool = False) -> int | None:
    """Exhaustive CSS distance search up to weight ``w_max``.

    Dressed convention (default): a logical error commutes with the stabilizer
    and lies outside the gauge group.  ``bare=True`` also requires commuting
    with the whole gauge group.  Returns ``None`` if nothing is found.
    """
    z_checks = c.gauge_z if bare else c.stab_z
    x_checks = c.gauge_x if bare else c.stab_x
    dx = _min_weight_logical(z_checks, c.gauge_x, c.n, w_max)
    dz = _min_weight_logical(x_checks, c.gauge_z, c.n, w_max)
    found = [d for d in (dx, dz) if d is not None]
    return min(found) if found else None


def _check_compatible(a: CodeSpec, b: CodeSpec) -> None:
    if a.n != b.n:
        raise ValueError(f"codes act on different qubit counts: {a.n} vs {b.n}")
    if a.qubits is not None and b.qubits is not None and a.qubits != b.qubits:
        raise ValueError("codes index their qubits differently")


def partial_order_leq(a: CodeSpec, b: CodeSpec) -> bool:
    """``a`` precedes ``b``: same bare logicals and the gauge group of ``b`` sits inside that of ``a``.

    Then every codeword of ``b`` is a codeword of ``a``.  For two color codes on
    one lattice this must agree with ``x <= x'`` and ``z <= z'``.
    """
    _check_compatible(a, b)
    leq = gf2.row_space_contains(a.gauge_x, b.gauge_x) and gf2.row_space_contains(a.gauge_z, b.gauge_z)
    pa, pb = a.provenance, b.provenance
    if pa.get("kind") == pb.get("kind") == "lattice" and pa.get("lattice_id") == pb.get("lattice_id"):
        expected = pa["x"] <= pb["x"] and pa["z"] <= pb["z"]
        if expected != leq:
            raise RuntimeError(f"gauge containment ({leq}) disagrees with (x,z) order ({expected})")
    return leq


def is_self_dual(c: CodeSpec) -> bool:
    return gf2.same_row_space(c.gauge_x, c.gauge_z)


def catalog(d: int | ColoredComplex) -> list[dict[str, Any]]:
    """All admissible (x, z) for dimension ``d`` with type and the highest transversal R_n level."""
    if isinstance(d, ColoredComplex):
        d = d.d
    rows = []
    for x in range(d - 1):
        for z in range(d - 1 - x):
            stab = x + z == d - 2
            rows.append({"x": x, "z": z, "type": "stabilizer" if stab else "subsystem",
                         "max_Rn": d // (x + 1) if stab else None})
    return rows


def to_bundle(c: CodeSpec) -> str:
    """JSON code bundle with matrices as 0/1 strings; byte-stable."""
    data = {
        "n": c.n,
        "name": c.name,
        "provenance": c.provenance,
        "matrices": {a: ["".join(map(str, r)) for r in getattr(c, a)] for a in MATRIX_NAMES},
        "logical_x": str(c.logical_x),
        "logical_z": str(c.logical_z),
    }
    if c.qubits is not None:
        data["qubits"] = [list(q) for q in c.qubits]
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def from_bundle(text: str) -> CodeSpec:
    data = json.loads(text)
    n = int(data["n"])

    def mat(rows: list[str]) -> BitMatrix:
        if not rows:
            return np.zeros((0, n), dtype=np.uint8)
        return np.array([[ch == "1" for ch in r] for r in rows], dtype=np.uint8)

    mats = {a: mat(data["matrices"][a]) for a in MATRIX_NAMES}
    qubits = tuple(tuple(q) for q in data["qubits"]) if "qubits" in data else None
    return CodeSpec(n=n, **mats, name=data.get("name", ""), provenance=data.get("provenance", {"kind": "explicit"}),
                    qubits=qubits)
