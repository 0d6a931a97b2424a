"""Linear algebra over GF(2).

Matrices are ``numpy`` arrays of 0/1 (``uint8``).  Internally every row is
packed into a Python ``int`` (bit ``j`` holds column ``j``) so elimination
runs on whole words instead of single entries.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np
import numpy.typing as npt

BitMatrix = npt.NDArray[np.uint8]
BitVector = npt.NDArray[np.uint8]


def as_bits(a: npt.ArrayLike, ndim: int = 2) -> npt.NDArray[np.uint8]:
    """Coerce to a 0/1 ``uint8`` array with the requested number of dimensions."""
    arr = np.asarray(a, dtype=np.int64) & 1
    if ndim == 2 and arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {arr.shape}")
    return arr.astype(np.uint8)


def pack_row(v: Iterable[int]) -> int:
    return sum(1 << int(j) for j in np.flatnonzero(np.asarray(v, dtype=np.int64) & 1))


def unpack_row(x: int, width: int) -> BitVector:
    return np.array([(x >> j) & 1 for j in range(width)], dtype=np.uint8)


def pack_rows(M: npt.ArrayLike) -> list[int]:
    return [pack_row(row) for row in as_bits(M)]


def unpack_rows(rows: Sequence[int], width: int) -> BitMatrix:
    out = np.zeros((len(rows), width), dtype=np.uint8)
    for i, x in enumerate(rows):
        out[i] = unpack_row(x, width)
    return out


def _lowbit(x: int) -> int:
    return (x & -x).bit_length() - 1


def _echelon(rows: list[int]) -> tuple[list[int], list[int]]:
    """Fully reduced echelon form of packed rows.

    Returns (basis, pivots).  Pivots are chosen leftmost-first, rows are
    processed top-down, so the output is deterministic.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if (r >> p) & 1:
                r ^= b
        if r:
            p = _lowbit(r)
            for i, b in enumerate(basis):
                if (b >> p) & 1:
                    basis[i] = b ^ r
            basis.append(r)
            pivots.append(p)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def _reduce(x: int, basis: Sequence[int], pivots: Sequence[int]) -> int:
    for b, p in zip(basis, pivots):
        if (x >> p) & 1:
            x ^= b
    return x


def rref(M: npt.ArrayLike) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form (zero rows dropped) and the pivot columns."""
    M = as_bits(M)
    basis, pivots = _echelon(pack_rows(M))
    return unpack_rows(basis, M.shape[1]), pivots


def rank(M: npt.ArrayLike) -> int:
    """Dimension of the row space of ``M``."""
    return len(_echelon(pack_rows(M))[0])


def row_basis(M: npt.ArrayLike) -> BitMatrix:
    """Rows of ``M`` that are independent of the rows above them, in order."""
    M = as_bits(M)
    basis: list[int] = []
    pivots: list[int] = []
    keep = []
    for i, r in enumerate(pack_rows(M)):
        red = _reduce(r, basis, pivots)
        if red:
            basis, pivots = _echelon(basis + [red])
            keep.append(i)
    return M[keep]


def kernel_basis(M: npt.ArrayLike) -> BitMatrix:
    """Basis ``K`` of the right null space: ``M @ K.T == 0`` (mod 2)."""
    M = as_bits(M)
    width = M.shape[1]
    basis, pivots = _echelon(pack_rows(M))
    pivot_set = set(pivots)
    free = [j for j in range(width) if j not in pivot_set]
    out = np.zeros((len(free), width), dtype=np.uint8)
    for i, f in enumerate(free):
        out[i, f] = 1
        for b, p in zip(basis, pivots):
            if (b >> f) & 1:
                out[i, p] = 1
    return out


def solve(M: npt.ArrayLike, b: npt.ArrayLike) -> BitVector | None:
    """Some ``x`` with ``M @ x == b`` (mod 2), or ``None`` if the system is inconsistent."""
    M = as_bits(M)
    b = as_bits(b, ndim=1)
    rows, width = M.shape
    if b.shape[0] != rows:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {rows}")
    aug = np.concatenate([M, b.reshape(-1, 1)], axis=1)
    basis, pivots = _echelon(pack_rows(aug))
    if pivots and pivots[-1] == width:
        return None
    x = np.zeros(width, dtype=np.uint8)
    for r, p in zip(basis, pivots):
        x[p] = (r >> width) & 1
    return x


def in_row_space(v: npt.ArrayLike, M: npt.ArrayLike) -> bool:
    M = as_bits(M)
    basis, pivots = _echelon(pack_rows(M))
    return _reduce(pack_row(as_bits(v, ndim=1)), basis, pivots) == 0


def row_space_contains(A: npt.ArrayLike, B: npt.ArrayLike) -> bool:
    """True iff every row of ``B`` lies in the row space of ``A``."""
    A = as_bits(A)
    B = as_bits(B)
    if B.shape[0] == 0:
        return True
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"width mismatch: {A.shape[1]} vs {B.shape[1]}")
    basis, pivots = _echelon(pack_rows(A))
    return all(_reduce(r, basis, pivots) == 0 for r in pack_rows(B))


def same_row_space(A: npt.ArrayLike, B: npt.ArrayLike) -> bool:
    return row_space_contains(A, B) and row_space_contains(B, A)


def express(v: npt.ArrayLike, M: npt.ArrayLike) -> BitVector | None:
    """Coefficients ``c`` with ``c @ M == v``, or ``None`` when ``v`` is outside the row space."""
    M = as_bits(M)
    return solve(M.T, as_bits(v, ndim=1))


def row_space_elements(M: npt.ArrayLike, chunk: int = 1 << 15) -> Iterable[BitMatrix]:
    """Yield every element of the row space of ``M`` in chunks, in coefficient order.

    Only independent rows are combined, so each element appears exactly once.
    """
    B = row_basis(M).astype(np.int64)
    r, width = B.shape
    total = 1 << r
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        coeffs = (idx[:, None] >> np.arange(r, dtype=np.int64)) & 1
        yield ((coeffs @ B) & 1).astype(np.uint8) if r else np.zeros((len(idx), width), dtype=np.uint8)


def to_text(M: npt.ArrayLike) -> str:
    """Check-matrix text format: a ``# rows=R cols=C`` header then one 0/1 string per row."""
    M = as_bits(M)
    lines = [f"# rows={M.shape[0]} cols={M.shape[1]}"]
    lines += ["".join("1" if b else "0" for b in row) for row in M]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> BitMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing '# rows=R cols=C' header")
    fields = dict(tok.split("=") for tok in lines[0][1:].split())
    n_rows, n_cols = int(fields["rows"]), int(fields["cols"])
    body = lines[1:]
    if len(body) != n_rows:
        raise ValueError(f"header says {n_rows} rows, found {len(body)}")
    out = np.zeros((n_rows, n_cols), dtype=np.uint8)
    for i, ln in enumerate(body):
        if len(ln) != n_cols or set(ln) - {"0", "1"}:
            raise ValueError(f"row {i} is not a 0/1 string of length {n_cols}")
        out[i] = [c == "1" for c in ln]
    return out


class RowSpace:
    """Membership oracle for the row space of a fixed matrix."""

    def __init__(self, M: npt.ArrayLike, width: int | None = None):
        M = as_bits(M)
        self.width = M.shape[1] if M.size or width is None else width
        self._basis, self._pivots = _echelon(pack_rows(M))

    @property
    def dim(self) -> int:
        return len(self._basis)

    def reduce(self, v: int | npt.ArrayLike) -> int:
        x = v if isinstance(v, int) else pack_row(as_bits(v, ndim=1))
        return _reduce(x, self._basis, self._pivots)

    def __contains__(self, v: int | npt.ArrayLike) -> bool:
        return self.reduce(v) == 0
