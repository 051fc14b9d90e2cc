"""Dense complex linear algebra: eigendecomposition, matrix functions, norms.

Operators are plain complex numpy arrays. Structural properties
(hermitian / unitary) are verified on demand by the ensure_* helpers,
which every operation uses to enforce its preconditions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BranchCut, DimMismatch, NonDiagonalizable, NotHermitian, NotUnitary
from .tolerances import TOL

__all__ = [
    "SpectralData",
    "anticommutator",
    "as_matrix",
    "commutator",
    "ensure_hermitian",
    "ensure_same_dim",
    "ensure_square",
    "ensure_unitary",
    "expm",
    "fro_norm",
    "herm_eig",
    "kron",
    "logm",
    "matfunc",
]


def as_matrix(M: np.ndarray) -> np.ndarray:
    """Coerce to a square complex 2-D array without copying when possible."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def ensure_square(M: np.ndarray) -> np.ndarray:
    return as_matrix(M)


def ensure_same_dim(A: np.ndarray, B: np.ndarray) -> None:
    if as_matrix(A).shape != as_matrix(B).shape:
        raise DimMismatch(f"dimension mismatch: {np.shape(A)} vs {np.shape(B)}")


def ensure_hermitian(M: np.ndarray, name: str = "matrix") -> np.ndarray:
    A = as_matrix(M)
    defect = np.linalg.norm(A - A.conj().T)
    if defect > TOL.hermitian * A.shape[0]:
        raise NotHermitian(f"{name} is not Hermitian: defect {defect:.3e}")
    return A


def ensure_unitary(M: np.ndarray, name: str = "matrix") -> np.ndarray:
    A = as_matrix(M)
    dim = A.shape[0]
    defect = np.linalg.norm(A.conj().T @ A - np.eye(dim))
    if defect > TOL.unitary * dim:
        raise NotUnitary(f"{name} is not unitary: defect {defect:.3e}")
    return A


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Tensor product with (i*dim_B + k, j*dim_B + l) index convention."""
    return np.kron(as_matrix(A), as_matrix(B))


@dataclass(frozen=True)
class SpectralData:
    """Ascending eigenvalues and the unitary matrix of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def herm_eig(H: np.ndarray) -> SpectralData:
    """Eigendecomposition of a Hermitian operator, eigenvalues ascending."""
    A = ensure_hermitian(H)
    w, V = np.linalg.eigh(A)
    return SpectralData(eigenvalues=w, eigenvectors=V)


def matfunc(H: np.ndarray, f) -> np.ndarray:
    """Apply a scalar function to a Hermitian operator through its spectrum."""
    spec = herm_eig(H)
    fw = np.asarray([f(w) for w in spec.eigenvalues], dtype=complex)
    V = spec.eigenvectors
    return (V * fw) @ V.conj().T


def expm(M: np.ndarray) -> np.ndarray:
    """Matrix exponential.

    (Anti-)Hermitian inputs go through an exact eigendecomposition; anything
    else falls back to scaling-and-squaring Pade.
    """
    A = as_matrix(M)
    dim = A.shape[0]
    herm_defect = np.linalg.norm(A - A.conj().T)
    if herm_defect <= TOL.hermitian * dim:
        w, V = np.linalg.eigh(A)
        return (V * np.exp(w)) @ V.conj().T
    anti_defect = np.linalg.norm(A + A.conj().T)
    if anti_defect <= TOL.hermitian * dim:
        # A = iH with H Hermitian, so exp(A) = V exp(i w) V^dag.
        w, V = np.linalg.eigh(-1j * A)
        return (V * np.exp(1j * w)) @ V.conj().T
    return scipy.linalg.expm(A)


def logm(M: np.ndarray) -> np.ndarray:
    """Principal matrix logarithm through diagonalization.

    Rejects spectra touching the closed negative real axis rather than
    silently picking a branch, and rejects ill-conditioned eigenbases.
    """
    A = as_matrix(M)
    w, V = np.linalg.eig(A)
    # distance of each eigenvalue to the set (-inf, 0]
    dist = np.where(w.real <= 0.0, np.abs(w.imag), np.abs(w))
    if np.min(dist) < TOL.branch_cut:
        raise BranchCut(
            f"eigenvalue {w[np.argmin(dist)]:.6e} lies within "
            f"{TOL.branch_cut:.0e} of the closed negative real axis"
        )
    cond = np.linalg.cond(V)
    if cond > TOL.cond_limit:
        raise NonDiagonalizable(f"eigenvector condition number {cond:.3e} exceeds {TOL.cond_limit:.0e}")
    return V @ np.diag(np.log(w)) @ np.linalg.inv(V)


def fro_norm(M: np.ndarray) -> float:
    """Frobenius norm [Tr(M^dag M)]^(1/2)."""
    return float(np.linalg.norm(np.asarray(M, dtype=complex)))


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    ensure_same_dim(A, B)
    A = as_matrix(A)
    B = as_matrix(B)
    return A @ B - B @ A


def anticommutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    ensure_same_dim(A, B)
    A = as_matrix(A)
    B = as_matrix(B)
    return A @ B + B @ A
