"""Matrix file interchange: JSON objects {"dim": n, "re": [...], "im": [...]}.

Row-major flattening with separate real and imaginary arrays; floats are
serialized with repr so files diff bit-exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .linalg import as_matrix

__all__ = [
    "load_matrix",
    "load_vector",
    "matrix_from_obj",
    "matrix_to_obj",
    "save_matrix",
    "save_vector",
    "vector_from_obj",
    "vector_to_obj",
]


def matrix_to_obj(M: np.ndarray) -> dict:
    A = as_matrix(M)
    return {
        "dim": A.shape[0],
        "re": [float(x) for x in A.real.ravel()],
        "im": [float(x) for x in A.imag.ravel()],
    }


def matrix_from_obj(obj: dict) -> np.ndarray:
    dim = int(obj["dim"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.size != dim * dim or im.size != dim * dim:
        raise ValueError(f"entry count {re.size}/{im.size} does not match dim {dim}")
    return (re + 1j * im).reshape(dim, dim)


def save_matrix(path: str | Path, M: np.ndarray) -> None:
    Path(path).write_text(json.dumps(matrix_to_obj(M), sort_keys=True, indent=2) + "\n")


def load_matrix(path: str | Path) -> np.ndarray:
    return matrix_from_obj(json.loads(Path(path).read_text()))


def vector_to_obj(v: np.ndarray) -> dict:
    v = np.asarray(v, dtype=complex).ravel()
    return {
        "dim": v.size,
        "re": [float(x) for x in v.real],
        "im": [float(x) for x in v.imag],
    }


def vector_from_obj(obj: dict) -> np.ndarray:
    dim = int(obj["dim"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.size != dim or im.size != dim:
        raise ValueError(f"entry count {re.size}/{im.size} does not match dim {dim}")
    return re + 1j * im


def save_vector(path: str | Path, v: np.ndarray) -> None:
    Path(path).write_text(json.dumps(vector_to_obj(v), sort_keys=True, indent=2) + "\n")


def load_vector(path: str | Path) -> np.ndarray:
    return vector_from_obj(json.loads(Path(path).read_text()))
