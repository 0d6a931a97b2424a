from __future__ import annotations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugecolor.pauli import PauliWord, product, symplectic_product

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]])
Z = np.array([[1, 0], [0, -1]])


def dense(p: PauliWord) -> np.ndarray:
    """Matrix of ``i**phase * prod X^x Z^z`` built with Kronecker products."""
    out = np.array([[1.0 + 0j]])
    for xb, zb in zip(p.x, p.z):
        out = np.kron(out, (X if xb else I2) @ (Z if zb else I2))
    return (1j ** p.phase) * out


def words(n=3):
    bits = st.lists(st.integers(0, 1), min_size=n, max_size=n)
    return st.builds(lambda x, z, r: PauliWord(np.array(x), np.array(z), r), bits, bits, st.integers(0, 3))


@settings(max_examples=200, deadline=None)
@given(words(), words())
def test_product_matches_matrix_product(a, b):
    assert np.allclose(dense(a * b), dense(a) @ dense(b))


@settings(max_examples=200, deadline=None)
@given(words(), words())
def test_commutation_matches_matrices(a, b):
    A, B = dense(a), dense(b)
    assert a.commutes(b) == np.allclose(A @ B, B @ A)
    assert symplectic_product(a, b) == (0 if a.commutes(b) else 1)


@settings(max_examples=100, deadline=None)
@given(words())
def test_hermitian_flag_matches_matrix(a):
    assert a.is_hermitian() == np.allclose(dense(a), dense(a).conj().T)


def test_string_form():
    y = PauliWord.from_string("Y")
    assert np.allclose(dense(y), np.array([[0, -1j], [1j, 0]]))
    w = PauliWord.from_string("-XIZY")
    assert str(w) == "-XIZY"
    assert w.weight == 3


def test_product_of_list():
    ws = [PauliWord.from_string(s) for s in ("XX", "ZZ", "YY")]
    p = product(ws, 2)
    assert np.allclose(dense(p), dense(ws[0]) @ dense(ws[1]) @ dense(ws[2]))
