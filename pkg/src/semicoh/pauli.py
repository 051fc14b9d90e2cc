"""Pauli strings: symbolic letters with a unit phase, and their dense matrices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

__all__ = [
    "SIGMA",
    "I2",
    "X",
    "Y",
    "Z",
    "PauliString",
    "pauli_on",
]

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA = {"I": I2, "X": X, "Y": Y, "Z": Z}

# single-letter multiplication table: (a, b) -> (phase, letter)
_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}

_PHASES = (1 + 0j, -1 + 0j, 1j, -1j)


@dataclass(frozen=True)
class PauliString:
    """Letters over {I, X, Y, Z} with a unit phase from {+1, -1, +i, -i}."""

    letters: str
    phase: complex = 1 + 0j

    def __post_init__(self) -> None:
        if not self.letters or any(c not in "IXYZ" for c in self.letters):
            raise ValueError(f"letters must be a nonempty string over IXYZ, got {self.letters!r}")
        if not any(abs(self.phase - p) < 1e-15 for p in _PHASES):
            raise ValueError(f"phase must be a fourth root of unity, got {self.phase!r}")

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def dim(self) -> int:
        return 2 ** len(self.letters)

    def matrix(self) -> np.ndarray:
        M = reduce(np.kron, (SIGMA[c] for c in self.letters))
        return self.phase * M

    def __matmul__(self, other: "PauliString") -> "PauliString":
        if len(self.letters) != len(other.letters):
            raise ValueError("qubit counts differ")
        phase = self.phase * other.phase
        letters = []
        for a, b in zip(self.letters, other.letters):
            p, c = _MUL[(a, b)]
            phase *= p
            letters.append(c)
        return PauliString("".join(letters), phase)


def pauli_on(letter: str, site: int, n_qubits: int) -> PauliString:
    """Single-site letter embedded in an n-qubit identity string."""
    if not 0 <= site < n_qubits:
        raise ValueError(f"site {site} out of range for {n_qubits} qubits")
    letters = ["I"] * n_qubits
    letters[site] = letter
    return PauliString("".join(letters))
