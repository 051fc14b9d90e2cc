"""One-ancilla symmetry gadget: block encoding of (U +/- V)/2.

The gadget is simulated by applying the branch operators directly to the
principal state; the joint ancilla-system space is never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, NotUnitary, ZeroBranch
from .linalg import as_matrix, ensure_unitary
from .tolerances import TOL

__all__ = [
    "AncillaGate",
    "GadgetOutcome",
    "apply_gadget",
    "apply_gadget_general",
    "sample_step",
    "transition_probs",
]


@dataclass(frozen=True)
class GadgetOutcome:
    ancilla_bit: int
    probability: float
    post_state: np.ndarray


@dataclass(frozen=True)
class AncillaGate:
    """General 2x2 unitary on the ancilla, entries g[a][b] = <a|G|b>."""

    g00: complex
    g01: complex
    g10: complex
    g11: complex

    def __post_init__(self) -> None:
        M = self.matrix
        defect = np.linalg.norm(M.conj().T @ M - np.eye(2))
        if defect > TOL.unitary * 2:
            raise NotUnitary(f"ancilla gate is not unitary: defect {defect:.3e}")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.g00, self.g01], [self.g10, self.g11]], dtype=complex)

    @classmethod
    def hadamard(cls) -> "AncillaGate":
        s = 1 / np.sqrt(2)
        return cls(s, s, s, -s)

    @classmethod
    def identity(cls) -> "AncillaGate":
        return cls(1, 0, 0, 1)


def _check_inputs(U: np.ndarray, V: np.ndarray, psi: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    U = ensure_unitary(U, "U")
    V = ensure_unitary(V, "V")
    if U.shape != V.shape:
        raise DimMismatch(f"U and V differ in shape: {U.shape} vs {V.shape}")
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.shape[0] != U.shape[0]:
        raise DimMismatch(f"state dim {psi.shape[0]} does not match operator dim {U.shape[0]}")
    return U, V, psi


def apply_gadget(
    U: np.ndarray, V: np.ndarray, psi: np.ndarray, ancilla_in: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized branches after the Hadamard-sandwich gadget.

    With the ancilla prepared in |0> the measured-0 branch carries
    (U+V)/2 and the measured-1 branch (U-V)/2; preparing |1> swaps them.
    """
    U, V, psi = _check_inputs(U, V, psi)
    plus = (U @ psi + V @ psi) / 2
    minus = (U @ psi - V @ psi) / 2
    if ancilla_in == 0:
        return plus, minus
    return minus, plus


def transition_probs(U: np.ndarray, V: np.ndarray, psi: np.ndarray) -> tuple[float, float]:
    """Ancilla bit-keep / bit-flip probabilities from the interference overlap."""
    U, V, psi = _check_inputs(U, V, psi)
    overlap = np.vdot(V @ psi, U @ psi)
    p00 = (1 + overlap.real) / 2
    return float(p00), float(1 - p00)


def apply_gadget_general(
    G: AncillaGate, U: np.ndarray, V: np.ndarray, psi: np.ndarray, ancilla_in: int = 0
) -> tuple[np.ndarray, np.ndarray, float]:
    """Gadget with the sandwich G ... G^dag instead of Hadamards.

    Returns the two unnormalized branches and the ancilla bit-flip
    probability 2|g00 g01|^2 (1 - Re<V^dag U>).
    """
    U, V, psi = _check_inputs(U, V, psi)
    Up = U @ psi
    Vp = V @ psi
    overlap = np.vdot(Vp, Up)
    if ancilla_in == 0:
        w00 = abs(G.g00) ** 2
        keep = w00 * Up + (1 - w00) * Vp
        flip = G.g00 * np.conj(G.g01) * (Up - Vp)
        branch0, branch1 = keep, flip
    else:
        w01 = abs(G.g01) ** 2
        keep = w01 * Up + (1 - w01) * Vp
        flip = np.conj(G.g00) * G.g01 * (Up - Vp)
        branch0, branch1 = flip, keep
    p_flip = 2 * abs(G.g00) ** 2 * abs(G.g01) ** 2 * (1 - overlap.real)
    return branch0, branch1, float(p_flip)


def sample_step(
    U: np.ndarray,
    V: np.ndarray,
    psi: np.ndarray,
    ancilla_in: int,
    rng: np.random.Generator,
) -> GadgetOutcome:
    """Draw one ancilla measurement and collapse onto the matching branch."""
    branch0, branch1 = apply_gadget(U, V, psi, ancilla_in)
    p0 = float(np.vdot(branch0, branch0).real)
    bit = 0 if rng.random() < p0 else 1
    branch = branch0 if bit == 0 else branch1
    norm = float(np.linalg.norm(branch))
    if norm < TOL.zero_branch:
        raise ZeroBranch(f"sampled branch {bit} has norm {norm:.3e}")
    probability = p0 if bit == 0 else 1 - p0
    return GadgetOutcome(ancilla_bit=bit, probability=float(probability), post_state=branch / norm)
