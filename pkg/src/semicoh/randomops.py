"""Seeded random operators and states used by tests, fits, and the CLI."""

from __future__ import annotations

import numpy as np

from .linalg import fro_norm

__all__ = [
    "random_anti_hermitian",
    "random_density",
    "random_hermitian",
    "random_product_state",
    "random_state",
    "random_unitary",
]


def _ginibre(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def random_hermitian(dim: int, rng: np.random.Generator, norm: float | None = None) -> np.ndarray:
    G = _ginibre(dim, rng)
    H = (G + G.conj().T) / 2
    if norm is not None:
        H *= norm / fro_norm(H)
    return H


def random_anti_hermitian(dim: int, rng: np.random.Generator, norm: float = 1.0) -> np.ndarray:
    G = _ginibre(dim, rng)
    A = (G - G.conj().T) / 2
    return A * (norm / fro_norm(A))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    Q, R = np.linalg.qr(_ginibre(dim, rng))
    # fix the phase ambiguity of QR so the distribution is Haar
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_product_state(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    psi = np.ones(1, dtype=complex)
    for _ in range(n_qubits):
        psi = np.kron(psi, random_state(2, rng))
    return psi


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    rank = dim if rank is None else rank
    G = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real
