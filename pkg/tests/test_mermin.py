"""Mermin operator constructions, GHZ states, and the success-probability readout."""

from __future__ import annotations

import numpy as np
import pytest

from semicoh import (
    EvenOrder,
    MerminSetting,
    NotHermitian,
    NotInvolutive,
    ZeroSuccess,
    fro_norm,
    ghz_minus,
    ghz_plus,
    ghz_tilde,
    measure_mermin_circuit,
    measurement_equivalence_check,
    mermin_A,
    mermin_closed,
    mermin_recursive,
    random_setting,
    random_state,
    sample_success,
    stream,
    svetlichny,
    transfer_matrix_eval,
    xy_setting,
)
from semicoh.pauli import SIGMA


def _kron(*ops: np.ndarray) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for op in ops:
        out = np.kron(out, op)
    return out


def test_three_constructions_agree() -> None:
    for n in range(2, 6):
        rng = stream(700 + n, 0)
        for _ in range(4):
            s = random_setting(n, rng)
            rec = mermin_recursive(s)
            clo = mermin_closed(s)
            tra = transfer_matrix_eval(s)
            assert fro_norm(rec.M - clo.M) < 1e-12
            assert fro_norm(rec.M_prime - clo.M_prime) < 1e-12
            assert fro_norm(rec.M - tra.M) < 1e-12
            assert fro_norm(rec.M_prime - tra.M_prime) < 1e-12


def test_m3_four_term_expansion() -> None:
    X, Y = SIGMA["X"], SIGMA["Y"]
    want = 0.5 * (
        _kron(X, X, Y) + _kron(X, Y, X) + _kron(Y, X, X) - _kron(Y, Y, Y)
    )
    assert fro_norm(mermin_recursive(xy_setting(3)).M - want) < 1e-14


def test_spectra_on_xy_setting() -> None:
    for n in range(2, 6):
        M = mermin_recursive(xy_setting(n)).M
        eigs = np.linalg.eigvalsh(M)
        top = 2 ** ((n - 1) / 2)
        allowed = np.array([-top, 0.0, top])
        assert np.all(np.min(np.abs(eigs[:, None] - allowed[None, :]), axis=1) < 1e-10)
        assert abs(np.max(eigs) - top) < 1e-10
        A = mermin_A(n)
        eigs_a = np.linalg.eigvalsh(A)
        top_a = 2 ** (n - 1)
        allowed_a = np.array([-top_a, 0.0, top_a])
        assert np.all(
            np.min(np.abs(eigs_a[:, None] - allowed_a[None, :]), axis=1) < 1e-9
        )


def _random_anticommuting_pair(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    # two spin observables along orthogonal Bloch axes anticommute
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    w = rng.normal(size=3)
    w -= (w @ v) * v
    w /= np.linalg.norm(w)
    paulis = [SIGMA["X"], SIGMA["Y"], SIGMA["Z"]]
    a = sum(c * p for c, p in zip(v, paulis))
    ap = sum(c * p for c, p in zip(w, paulis))
    return a, ap


def test_quartic_identities() -> None:
    # the identities hold whenever each site's pair anticommutes
    for n in range(2, 6):
        rng = stream(710 + n, 0)
        settings = [
            xy_setting(n),
            MerminSetting(pairs=tuple(_random_anticommuting_pair(rng) for _ in range(n))),
        ]
        for s in settings:
            M = mermin_recursive(s).M
            M2 = M @ M
            assert fro_norm(M2 @ M2 - 2 ** (n - 1) * M2) < 1e-10
        A = mermin_A(n)
        A2 = A @ A
        assert fro_norm(A2 @ A2 - 2 ** (2 * n - 2) * A2) < 1e-8


def test_ghz_expectations() -> None:
    for n in range(2, 6):
        M = mermin_recursive(xy_setting(n)).M
        gt = ghz_tilde(n)
        assert abs((gt.conj() @ M @ gt).real - 2 ** ((n - 1) / 2)) < 1e-12
        gp = ghz_plus(n)
        assert abs((gp.conj() @ mermin_A(n) @ gp).real - 2 ** (n - 1)) < 1e-11


def test_ghz_state_components() -> None:
    for n in (2, 3, 4):
        dim = 2**n
        for state in (ghz_plus(n), ghz_minus(n), ghz_tilde(n)):
            assert abs(np.linalg.norm(state) - 1) < 1e-14
            assert np.all(np.abs(state[1:-1]) < 1e-15)
            assert abs(abs(state[0]) - 1 / np.sqrt(2)) < 1e-14
            assert abs(abs(state[dim - 1]) - 1 / np.sqrt(2)) < 1e-14
    assert abs(ghz_plus(3)[7] - 1j / np.sqrt(2)) < 1e-14
    assert abs(ghz_minus(3)[7] + 1j / np.sqrt(2)) < 1e-14
    assert abs((ghz_plus(2).conj() @ ghz_minus(2))) < 1e-14


def test_primed_operator_swaps_settings() -> None:
    s = xy_setting(3)
    swapped = MerminSetting(pairs=tuple((ap, a) for a, ap in s.pairs))
    orig = mermin_recursive(s)
    swap = mermin_recursive(swapped)
    assert fro_norm(swap.M - orig.M_prime) < 1e-13
    assert fro_norm(swap.M_prime - orig.M) < 1e-13


def test_svetlichny_is_mean_of_pair() -> None:
    for n in (3, 5):
        s = random_setting(n, stream(720 + n, 0))
        ops = mermin_recursive(s)
        assert fro_norm(svetlichny(s) - (ops.M + ops.M_prime) / 2) < 1e-13
    with pytest.raises(EvenOrder):
        svetlichny(xy_setting(4))


def test_setting_validation() -> None:
    bad_h = np.array([[1, 2], [3, 4]], dtype=complex)
    bad_i = np.diag([1.0, 2.0]).astype(complex)
    eye = np.eye(2, dtype=complex)
    with pytest.raises(NotHermitian):
        MerminSetting(pairs=((bad_h, eye),))
    with pytest.raises(NotInvolutive):
        MerminSetting(pairs=((bad_i, eye),))
    with pytest.raises(ValueError):
        mermin_A(1)
    with pytest.raises(ValueError):
        xy_setting(0)


def test_random_setting_reproducible_and_valid() -> None:
    s1 = random_setting(3, stream(77, 0))
    s2 = random_setting(3, stream(77, 0))
    for (a1, p1), (a2, p2) in zip(s1.pairs, s2.pairs):
        assert np.array_equal(a1, a2) and np.array_equal(p1, p2)
        for m in (a1, p1):
            assert fro_norm(m - m.conj().T) < 1e-12
            assert fro_norm(m @ m - np.eye(2)) < 1e-12


def test_measure_circuit_success_probability() -> None:
    for n in (3, 4):
        s = xy_setting(n)
        M = mermin_recursive(s).M
        for state in (ghz_plus(n), ghz_tilde(n)):
            p0, post, bound = measure_mermin_circuit(s, state)
            assert abs(p0 - 0.25) < 1e-12
            assert abs(np.linalg.norm(post) - 1) < 1e-12
        rng = stream(730 + n, 0)
        for _ in range(25):
            psi = random_state(2**n, rng)
            p0, post, bound = measure_mermin_circuit(s, psi)
            assert p0 <= 0.25 + 1e-12
            formula = np.linalg.norm(M @ psi) ** 2 / 2 ** (n + 1)
            assert abs(p0 - formula) < 1e-12
            assert abs(bound - 2 ** ((n - 1) / 2) * np.sqrt(4 * p0)) < 1e-12
            assert bound + 1e-12 >= abs((psi.conj() @ M @ psi).real)


def test_measure_circuit_post_state_is_normalized_image() -> None:
    s = xy_setting(3)
    M = mermin_recursive(s).M
    psi = random_state(8, stream(41, 0))
    _, post, _ = measure_mermin_circuit(s, psi)
    image = M @ psi
    image = image / np.linalg.norm(image)
    phase = post.conj() @ image
    assert abs(abs(phase) - 1) < 1e-12


def test_measure_circuit_zero_success() -> None:
    s = xy_setting(3)
    M = mermin_recursive(s).M
    w, V = np.linalg.eigh(M)
    null_vec = V[:, np.argmin(np.abs(w))].astype(complex)
    with pytest.raises(ZeroSuccess):
        measure_mermin_circuit(s, null_vec)


def test_sample_success_statistics() -> None:
    p = 0.25
    shots = 4000
    est = sample_success(p, shots, stream(9, 0))
    assert abs(est - p) < 4 * np.sqrt(p * (1 - p) / shots)
    assert sample_success(p, 500, stream(9, 0)) == sample_success(p, 500, stream(9, 0))
    with pytest.raises(ValueError):
        sample_success(1.5, 10, stream(9, 0))


def test_measurement_equivalence_on_random_states() -> None:
    rng = stream(50, 0)
    for n in (2, 3):
        for l in range(n):
            psi = random_state(2**n, rng)
            rep = measurement_equivalence_check(psi, l)
            assert rep.agree
            assert rep.tv_distance < 1e-12
            assert rep.state_distance < 1e-12
            assert abs(sum(rep.probs_ancilla) - 1) < 1e-12
            assert abs(sum(rep.probs_direct) - 1) < 1e-12
    with pytest.raises(ValueError):
        measurement_equivalence_check(random_state(8, rng), 3)
