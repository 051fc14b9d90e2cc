"""Heisenberg ring: model builder, valence bond state, ansatzes, optimizer."""

from __future__ import annotations

import numpy as np
import pytest

from semicoh import (
    AnsatzParams,
    OddLength,
    ZeroState,
    ansatz_n_params,
    build_afhm,
    exact_ground,
    fro_norm,
    h_total_action,
    hva_state,
    optimize,
    rayleigh_energy,
    stream,
    symhva_state,
    valence_bond_initial,
)
from semicoh.linalg import expm
from semicoh.pauli import SIGMA

E0_L8 = -14.604373635748695
GAP_L8 = 2.0906973803703774


def _dense_h(model) -> np.ndarray:
    H = np.zeros((model.dim, model.dim), dtype=complex)
    for strings in model.bond_terms:
        for s in strings:
            H += s.matrix()
    return H


def test_swap_identity_two_qubits() -> None:
    swap = np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    )
    bond = sum(np.kron(SIGMA[c], SIGMA[c]) for c in "XYZ")
    assert fro_norm(bond - (2 * swap - np.eye(4))) < 1e-14


def test_build_matches_pauli_sum() -> None:
    for L, periodic in ((4, True), (4, False), (6, True)):
        model = build_afhm(L, periodic=periodic)
        assert fro_norm(model.H_total - _dense_h(model)) < 1e-12
        assert fro_norm(model.H_A + model.H_B - model.H_total) == 0.0


def test_bond_layout() -> None:
    ring = build_afhm(6)
    assert ring.bonds == ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0))
    assert ring.bonds_a == (0, 2, 4)
    assert ring.bonds_b == (1, 3, 5)
    chain = build_afhm(4, periodic=False)
    assert chain.bonds == ((0, 1), (1, 2), (2, 3))
    # sublattice bonds touch disjoint sites
    for group in (ring.bonds_a, ring.bonds_b):
        sites = [s for k in group for s in ring.bonds[k]]
        assert len(sites) == len(set(sites))


def test_swap_perms_are_involutions() -> None:
    model = build_afhm(6)
    for perm in model.swap_perms:
        assert np.array_equal(perm[perm], np.arange(model.dim))


def test_length_validation() -> None:
    with pytest.raises(ValueError):
        build_afhm(1)
    with pytest.raises(ValueError):
        build_afhm(14)
    with pytest.raises(OddLength):
        build_afhm(5)


def test_l2_spectrum() -> None:
    model = build_afhm(2)
    w = np.linalg.eigvalsh(model.H_total)
    assert np.allclose(w, [-6, 2, 2, 2], atol=1e-12)


def test_exact_ground_l4_and_l8() -> None:
    e0, gap, vec = exact_ground(build_afhm(4))
    assert abs(e0 - (-8.0)) < 1e-10
    assert abs(gap - 4.0) < 1e-10
    model = build_afhm(8)
    e0, gap, vec = exact_ground(model)
    assert abs(e0 - E0_L8) < 1e-9
    assert abs(gap - GAP_L8) < 1e-9
    resid = h_total_action(model, vec) - e0 * vec
    assert np.linalg.norm(resid) < 1e-9


def test_h_total_action_matches_dense() -> None:
    model = build_afhm(6)
    psi = np.asarray(stream(60, 0).normal(size=model.dim), dtype=complex)
    psi /= np.linalg.norm(psi)
    assert np.linalg.norm(h_total_action(model, psi) - _dense_h(model) @ psi) < 1e-11


def test_valence_bond_construction() -> None:
    # independent build from explicit singlets: covering B is covering A
    # with the site labels rotated by one
    singlet = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    cov_a = np.kron(singlet, singlet)
    cov_b = cov_a.reshape(2, 2, 2, 2).transpose(1, 2, 3, 0).reshape(16)
    want = cov_a + cov_b
    want /= np.linalg.norm(want)
    got = valence_bond_initial(4)
    assert np.linalg.norm(got - want) < 1e-13


def test_valence_bond_l2_cancels() -> None:
    with pytest.raises(ZeroState):
        valence_bond_initial(2)
    with pytest.raises(OddLength):
        valence_bond_initial(3)


def test_valence_bond_energy_l8() -> None:
    model = build_afhm(8)
    e = rayleigh_energy(model, valence_bond_initial(8))
    assert abs(e - (-40 / 3)) < 1e-10


def test_ansatz_param_counts() -> None:
    assert ansatz_n_params("symHVA", 3, 8) == 6
    assert ansatz_n_params("HVA", 3, 8) == 24
    with pytest.raises(ValueError):
        AnsatzParams(kind="other", p=1, values=(0.1,))
    with pytest.raises(ValueError):
        AnsatzParams(kind="symHVA", p=2, values=(0.1, 0.2, 0.3))


def test_hva_state_matches_dense_exponential() -> None:
    model = build_afhm(4)
    thetas = stream(61, 0).normal(scale=0.3, size=len(model.bonds))
    params = AnsatzParams(kind="HVA", p=1, values=tuple(thetas))
    got = hva_state(model, params)
    gen = np.zeros((model.dim, model.dim), dtype=complex)
    for th, strings in zip(thetas, model.bond_terms):
        for s in strings:
            gen += th * s.matrix()
    want = expm(1j * gen) @ valence_bond_initial(4)
    assert np.linalg.norm(got - want) < 1e-12
    # unitary layers preserve the norm
    assert abs(np.linalg.norm(got) - 1) < 1e-12


def test_hva_two_layers_compose() -> None:
    model = build_afhm(4)
    rng = stream(62, 0)
    v1 = rng.normal(scale=0.2, size=4)
    v2 = rng.normal(scale=0.2, size=4)
    both = hva_state(model, AnsatzParams(kind="HVA", p=2, values=tuple(v1) + tuple(v2)))
    gen = lambda v: sum(  # noqa: E731
        th * s.matrix() for th, strings in zip(v, model.bond_terms) for s in strings
    )
    want = expm(1j * gen(v2)) @ expm(1j * gen(v1)) @ valence_bond_initial(4)
    assert np.linalg.norm(both - want) < 1e-12


def test_symhva_state_matches_dense() -> None:
    model = build_afhm(6)
    th1, th2 = 0.37, -0.21
    got = symhva_state(model, AnsatzParams(kind="symHVA", p=1, values=(th1, th2)))
    HA, HB = model.H_A, model.H_B
    psi0 = valence_bond_initial(6)
    t1 = expm(1j * th1 * HA) @ expm(1j * th2 * HB) @ psi0
    t2 = expm(1j * th1 * HB) @ expm(1j * th2 * HA) @ psi0
    want = (t1 + t2) / 2
    assert np.linalg.norm(got - want) < 1e-11


def test_rayleigh_energy_scale_invariant() -> None:
    model = build_afhm(4)
    psi = valence_bond_initial(4)
    assert abs(rayleigh_energy(model, psi) - rayleigh_energy(model, 3.7 * psi)) < 1e-11
    with pytest.raises(ZeroState):
        rayleigh_energy(model, np.zeros(model.dim))


def test_optimize_p0_returns_initial_energy() -> None:
    model = build_afhm(4)
    e, params, history = optimize(model, "symHVA", 0, seed=1)
    assert abs(e - rayleigh_energy(model, valence_bond_initial(4))) < 1e-12
    assert params.values == ()
    assert len(history) == 1


def test_optimize_symhva_l4_reaches_ground() -> None:
    model = build_afhm(4)
    e0, _, _ = exact_ground(model)
    e, params, history = optimize(model, "symHVA", 1, seed=7, restarts=3)
    assert abs(e - e0) / abs(e0) < 1e-8
    assert params.kind == "symHVA" and params.p == 1 and len(params.values) == 2
    assert len(history) == 3
    # the variational bound holds along every iterate
    for energies in history:
        assert np.all(energies >= e0 - 1e-10)
    # the reported energy is reproduced by the reported parameters
    assert abs(rayleigh_energy(model, symhva_state(model, params)) - e) < 1e-10


def test_optimize_hva_improves_on_initial_state() -> None:
    model = build_afhm(4)
    e0, _, _ = exact_ground(model)
    e_init = rayleigh_energy(model, valence_bond_initial(4))
    e, params, _ = optimize(model, "HVA", 1, seed=3, restarts=2)
    assert e <= e_init + 1e-12
    assert e >= e0 - 1e-10
    assert len(params.values) == len(model.bonds)
