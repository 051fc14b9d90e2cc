"""Pauli matrices and multi-qubit Pauli strings."""

from __future__ import annotations

import numpy as np
import pytest

from semicoh import SIGMA, I2, PauliString, X, Y, Z, fro_norm, pauli_on


def test_pauli_algebra() -> None:
    assert fro_norm(X @ Y - 1j * Z) < 1e-15
    assert fro_norm(Y @ Z - 1j * X) < 1e-15
    assert fro_norm(Z @ X - 1j * Y) < 1e-15
    for P in (X, Y, Z):
        assert fro_norm(P @ P - I2) < 1e-15
        assert fro_norm(P - P.conj().T) < 1e-15
    assert fro_norm(X @ Y + Y @ X) < 1e-15


def test_sigma_lookup() -> None:
    assert SIGMA["X"] is X and SIGMA["Y"] is Y and SIGMA["Z"] is Z and SIGMA["I"] is I2


def test_string_matrix_matches_kron() -> None:
    s = PauliString("XIZ")
    want = np.kron(np.kron(X, I2), Z)
    assert fro_norm(s.matrix() - want) == 0.0
    assert s.n_qubits == 3
    assert s.dim == 8


def test_string_involution() -> None:
    s = PauliString("XYZY")
    M = s.matrix()
    assert fro_norm(M @ M - np.eye(16)) < 1e-14


def test_pauli_on_placement() -> None:
    s = pauli_on("Y", 1, 3)
    assert s.letters == "IYI"
    want = np.kron(np.kron(I2, Y), I2)
    assert fro_norm(s.matrix() - want) == 0.0


def test_string_composition_tracks_phase() -> None:
    a = PauliString("XY")
    b = PauliString("YX")
    prod = a @ b
    assert fro_norm(prod.matrix() - a.matrix() @ b.matrix()) < 1e-14
    # site phases i and -i cancel: XY @ YX = ZZ with phase +1
    assert prod.letters == "ZZ"
    assert abs(prod.phase - 1) < 1e-15


def test_invalid_letters_rejected() -> None:
    with pytest.raises(ValueError):
        PauliString("XQ")
    with pytest.raises(ValueError):
        PauliString("")
    with pytest.raises(ValueError):
        pauli_on("X", 5, 3)
