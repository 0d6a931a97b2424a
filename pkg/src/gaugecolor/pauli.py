"""Pauli words as (x-bits, z-bits, power of i)."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .gf2 import as_bits


@dataclass(frozen=True, eq=False)
class PauliWord:
    """The operator ``i**phase * prod_j X_j**x[j] Z_j**z[j]`` (X written left of Z on each qubit).

    With this ordering ``Y = i X Z`` has ``phase == 1``.
    """

    x: npt.NDArray[np.uint8]
    z: npt.NDArray[np.uint8]
    phase: int = 0

    def __post_init__(self) -> None:
        x = as_bits(self.x, ndim=1)
        z = as_bits(self.z, ndim=1)
        if x.shape != z.shape:
            raise ValueError(f"x and z parts differ in length: {x.size} vs {z.size}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "phase", int(self.phase) % 4)

    @classmethod
    def identity(cls, n: int) -> PauliWord:
        return cls(np.zeros(n, np.uint8), np.zeros(n, np.uint8))

    @classmethod
    def x_type(cls, support: npt.ArrayLike, phase: int = 0) -> PauliWord:
        s = as_bits(support, ndim=1)
        return cls(s, np.zeros_like(s), phase)

    @classmethod
    def z_type(cls, support: npt.ArrayLike, phase: int = 0) -> PauliWord:
        s = as_bits(support, ndim=1)
        return cls(np.zeros_like(s), s, phase)

    @classmethod
    def from_string(cls, text: str) -> PauliWord:
        """Parse e.g. ``"-XIZY"`` or ``"+iZZ"``; Y counts as ``i X Z``."""
        sign = 0
        body = text.strip()
        for prefix, val in (("+i", 1), ("-i", 3), ("i", 1), ("+", 0), ("-", 2)):
            if body.startswith(prefix):
                sign, body = val, body[len(prefix):]
                break
        x = np.array([c in "XY" for c in body], dtype=np.uint8)
        z = np.array([c in "ZY" for c in body], dtype=np.uint8)
        if set(body) - set("IXYZ_"):
            raise ValueError(f"not a Pauli string: {text!r}")
        return cls(x, z, sign + body.count("Y"))

    @property
    def n(self) -> int:
        return int(self.x.size)

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    def symplectic(self) -> npt.NDArray[np.uint8]:
        return np.concatenate([self.x, self.z])

    def commutes(self, other: PauliWord) -> bool:
        return symplectic_product(self, other) == 0

    def is_hermitian(self) -> bool:
        return (self.phase + int(self.x @ self.z)) % 2 == 0

    def __mul__(self, other: PauliWord) -> PauliWord:
        if other.n != self.n:
            raise ValueError("length mismatch")
        # X^a Z^b X^c Z^d = (-1)^{b.c} X^{a+c} Z^{b+d}
        sign = 2 * (int(self.z.astype(np.int64) @ other.x) % 2)
        return PauliWord(self.x ^ other.x, self.z ^ other.z, self.phase + other.phase + sign)

    def __neg__(self) -> PauliWord:
        return PauliWord(self.x, self.z, self.phase + 2)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PauliWord)
            and self.phase == other.phase
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def __hash__(self) -> int:
        return hash((self.x.tobytes(), self.z.tobytes(), self.phase))

    def same_operator_up_to_phase(self, other: PauliWord) -> bool:
        return np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def __str__(self) -> str:
        phase = (self.phase - int(self.x @ self.z)) % 4
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[phase]
        letters = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
        return prefix + "".join(letters[(int(a), int(b))] for a, b in zip(self.x, self.z))

    __repr__ = __str__


def symplectic_product(a: PauliWord, b: PauliWord) -> int:
    """0 if the words commute, 1 if they anticommute."""
    return int((a.x.astype(np.int64) @ b.z + a.z.astype(np.int64) @ b.x) % 2)


def product(words: Iterable[PauliWord], n: int) -> PauliWord:
    out = PauliWord.identity(n)
    for w in words:
        out = out * w
    return out
