"""Matrix primitives: exponential, logarithm, spectral helpers, JSON I/O."""

from __future__ import annotations

import numpy as np
import pytest

from semicoh import (
    BranchCut,
    DimMismatch,
    NonDiagonalizable,
    NotHermitian,
    NotUnitary,
    SpectralData,
    anticommutator,
    commutator,
    ensure_hermitian,
    ensure_unitary,
    expm,
    fro_norm,
    herm_eig,
    kron,
    load_matrix,
    load_vector,
    logm,
    matfunc,
    matrix_from_obj,
    matrix_to_obj,
    random_hermitian,
    random_state,
    random_unitary,
    save_matrix,
    save_vector,
    stream,
    vector_from_obj,
    vector_to_obj,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)


def test_expm_pauli_rotation_closed_form() -> None:
    # exp(-i t X) = cos(t) 1 - i sin(t) X
    for t in (0.1, 0.7, 2.0):
        got = expm(-1j * t * X)
        want = np.cos(t) * np.eye(2) - 1j * np.sin(t) * X
        assert fro_norm(got - want) < 1e-14


def test_expm_hermitian_vs_series() -> None:
    rng = stream(11, 0)
    H = random_hermitian(4, rng)
    got = expm(H)
    want = np.eye(4, dtype=complex)
    term = np.eye(4, dtype=complex)
    for k in range(1, 40):
        term = term @ H / k
        want = want + term
    assert fro_norm(got - want) < 1e-12


def test_expm_general_matrix() -> None:
    # non-normal input goes through the Pade fallback
    M = np.array([[0.1, 0.9], [0.0, -0.2]], dtype=complex)
    got = expm(M)
    want = np.eye(2, dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in range(1, 40):
        term = term @ M / k
        want = want + term
    assert fro_norm(got - want) < 1e-13


def test_expm_inverse_pairs() -> None:
    rng = stream(12, 0)
    H = random_hermitian(5, rng)
    assert fro_norm(expm(1j * H) @ expm(-1j * H) - np.eye(5)) < 1e-12


def test_logm_roundtrip() -> None:
    rng = stream(13, 0)
    for i in range(5):
        U = random_unitary(4, stream(13, i))
        # keep the spectrum away from the branch cut by a small rotation
        M = np.exp(0.1j) * U
        try:
            L = logm(M)
        except BranchCut:
            continue
        assert fro_norm(expm(L) - M) < 1e-10


def test_logm_branch_cut_raises() -> None:
    with pytest.raises(BranchCut):
        logm(np.diag([-1.0, 2.0]).astype(complex))
    with pytest.raises(BranchCut):
        logm(np.diag([0.0, 1.0]).astype(complex))


def test_logm_defective_raises() -> None:
    with pytest.raises(NonDiagonalizable):
        logm(np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex))


def test_herm_eig_ascending_and_reconstruct() -> None:
    rng = stream(14, 0)
    H = random_hermitian(6, rng)
    spec = herm_eig(H)
    assert isinstance(spec, SpectralData)
    assert np.all(np.diff(spec.eigenvalues) >= 0)
    assert fro_norm(spec.reconstruct() - H) < 1e-12
    # columns are orthonormal
    V = spec.eigenvectors
    assert fro_norm(V.conj().T @ V - np.eye(6)) < 1e-12


def test_herm_eig_rejects_non_hermitian() -> None:
    with pytest.raises(NotHermitian):
        herm_eig(np.array([[0, 1], [0, 0]], dtype=complex))


def test_matfunc_square() -> None:
    rng = stream(15, 0)
    H = random_hermitian(4, rng)
    assert fro_norm(matfunc(H, lambda w: w**2) - H @ H) < 1e-12


def test_matfunc_cos_sin_identity() -> None:
    rng = stream(16, 0)
    H = random_hermitian(3, rng)
    C = matfunc(H, np.cos)
    S = matfunc(H, np.sin)
    assert fro_norm(C @ C + S @ S - np.eye(3)) < 1e-12


def test_fro_norm_known_value() -> None:
    assert abs(fro_norm(np.array([[3, 4], [0, 0]])) - 5.0) < 1e-14
    assert abs(fro_norm(np.eye(4)) - 2.0) < 1e-14


def test_commutators() -> None:
    rng = stream(17, 0)
    A = random_hermitian(4, rng)
    B = random_hermitian(4, rng)
    assert fro_norm(commutator(A, B) + commutator(B, A)) < 1e-14
    assert fro_norm(anticommutator(A, B) - anticommutator(B, A)) < 1e-14
    assert fro_norm(commutator(A, B) + anticommutator(A, B) - 2 * A @ B) < 1e-13
    with pytest.raises(DimMismatch):
        commutator(A, np.eye(3))


def test_kron_shape_and_value() -> None:
    got = kron(X, np.eye(2))
    assert got.shape == (4, 4)
    assert fro_norm(got - np.kron(X, np.eye(2))) == 0.0


def test_ensure_unitary_rejects() -> None:
    with pytest.raises(NotUnitary):
        ensure_unitary(np.array([[1, 0], [0, 2]], dtype=complex))
    ensure_unitary(np.eye(3))


def test_ensure_hermitian_rejects() -> None:
    with pytest.raises(NotHermitian):
        ensure_hermitian(np.array([[0, 1j], [1j, 0]]))
    ensure_hermitian(np.array([[0, 1j], [-1j, 0]]))


def test_matrix_json_roundtrip(tmp_path) -> None:
    rng = stream(18, 0)
    M = random_hermitian(5, rng) + 1j * 0.3 * np.eye(5)
    obj = matrix_to_obj(M)
    assert set(obj) == {"dim", "re", "im"}
    back = matrix_from_obj(obj)
    assert fro_norm(back - M) == 0.0

    path = tmp_path / "m.json"
    save_matrix(path, M)
    assert fro_norm(load_matrix(path) - M) == 0.0


def test_vector_json_roundtrip(tmp_path) -> None:
    rng = stream(19, 0)
    v = random_state(8, rng)
    back = vector_from_obj(vector_to_obj(v))
    assert np.array_equal(back, v)

    path = tmp_path / "v.json"
    save_vector(path, v)
    assert np.array_equal(load_vector(path), v)
