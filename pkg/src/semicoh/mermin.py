"""Mermin polynomials: recursive, transfer-matrix, and closed-form builds,
the Svetlichny combination, GHZ eigenstructure, and the two measurement
circuits with post-selection accounting."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import EvenOrder, NotHermitian, NotInvolutive, ZeroSuccess
from .linalg import fro_norm
from .pauli import I2, X, Y, Z

__all__ = [
    "EquivalenceReport",
    "MerminOperators",
    "MerminSetting",
    "ghz_minus",
    "ghz_plus",
    "ghz_tilde",
    "measure_mermin_circuit",
    "measure_product_circuit",
    "measurement_equivalence_check",
    "mermin_A",
    "mermin_closed",
    "mermin_recursive",
    "random_setting",
    "sample_success",
    "svetlichny",
    "transfer_matrix_eval",
    "xy_setting",
]

_MAX_N = 10


@dataclass(frozen=True)
class MerminSetting:
    """n pairs of single-qubit dichotomic observables (a_l, a'_l)."""

    pairs: tuple[tuple[np.ndarray, np.ndarray], ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.pairs) <= _MAX_N:
            raise ValueError(f"need between 1 and {_MAX_N} pairs, got {len(self.pairs)}")
        checked = []
        for l, (a, ap) in enumerate(self.pairs):
            pair = []
            for name, m in (("a", a), ("a'", ap)):
                m = np.asarray(m, dtype=complex)
                if m.shape != (2, 2):
                    raise ValueError(f"{name}_{l} must be 2x2, got {m.shape}")
                if fro_norm(m - m.conj().T) > 1e-12:
                    raise NotHermitian(f"{name}_{l} is not Hermitian")
                if fro_norm(m @ m - I2) > 1e-12:
                    raise NotInvolutive(f"{name}_{l} squared is not the identity")
                pair.append(m)
            checked.append(tuple(pair))
        object.__setattr__(self, "pairs", tuple(checked))

    @property
    def n(self) -> int:
        return len(self.pairs)

    def primed_swapped(self) -> "MerminSetting":
        return MerminSetting(tuple((ap, a) for a, ap in self.pairs))


@dataclass(frozen=True)
class MerminOperators:
    M: np.ndarray
    M_prime: np.ndarray


def xy_setting(n: int) -> MerminSetting:
    return MerminSetting(tuple((X, Y) for _ in range(n)))


def random_setting(n: int, rng: np.random.Generator) -> MerminSetting:
    """Random spin axes: a = u.sigma, a' = v.sigma with unit u, v."""
    pairs = []
    for _ in range(n):
        ops = []
        for _ in range(2):
            v = rng.normal(size=3)
            v /= np.linalg.norm(v)
            ops.append(v[0] * X + v[1] * Y + v[2] * Z)
        pairs.append(tuple(ops))
    return MerminSetting(tuple(pairs))


def _kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, mats)


def mermin_A(n: int) -> np.ndarray:
    """Degree-n polynomial (1/2i)[prod(X_l + iY_l) - prod(X_l - iY_l)].

    Built both as that product difference and as the Pauli-string sum
    with an odd number of Y factors weighted by (-1)^((|y| - 1)/2);
    the two must agree, and the sum has 2^(n-1) terms.
    """
    if n < 2:
        raise ValueError("mermin_A needs n >= 2")
    plus = _kron_all([X + 1j * Y] * n)
    minus = _kron_all([X - 1j * Y] * n)
    product_form = (plus - minus) / 2j

    total = np.zeros((2**n, 2**n), dtype=complex)
    count = 0
    for mask in range(2**n):
        y_sites = [l for l in range(n) if (mask >> l) & 1]
        if len(y_sites) % 2 == 0:
            continue
        count += 1
        sign = (-1) ** ((len(y_sites) - 1) // 2)
        factors = [Y if (mask >> l) & 1 else X for l in range(n)]
        total += sign * _kron_all(factors)
    assert count == 2 ** (n - 1)
    if fro_norm(product_form - total) > 1e-12:
        raise AssertionError("product and string forms of A_n disagree")
    return product_form


def mermin_recursive(setting: MerminSetting) -> MerminOperators:
    """Upward recursion M_k = (1/2)[M_{k-1}(a_k + a'_k) + M'_{k-1}(a_k - a'_k)],
    primed mirror for M'_k, from the base pair (a_1, a'_1)."""
    (a1, ap1) = setting.pairs[0]
    M, Mp = a1, ap1
    for a, ap in setting.pairs[1:]:
        M, Mp = (
            0.5 * (np.kron(M, a + ap) + np.kron(Mp, a - ap)),
            0.5 * (np.kron(Mp, ap + a) + np.kron(M, ap - a)),
        )
    return MerminOperators(M=M, M_prime=Mp)


def mermin_closed(setting: MerminSetting) -> MerminOperators:
    """Closed form: with P1 = prod(a_l + i a'_l), P2 = prod(a'_l + i a_l)
    and prefactor (1 - i)^(n+1)/2^(n+1), M = pref (i P1 + P2) and
    M' = pref (P1 + i P2)."""
    n = setting.n
    p1 = _kron_all([a + 1j * ap for a, ap in setting.pairs])
    p2 = _kron_all([ap + 1j * a for a, ap in setting.pairs])
    pref = (1 - 1j) ** (n + 1) / 2 ** (n + 1)
    return MerminOperators(M=pref * (1j * p1 + p2), M_prime=pref * (p1 + 1j * p2))


_R = np.array([[1, 1], [-1, 1]]) / np.sqrt(2)       # exp(+i pi Y / 4)
_RD = np.array([[1, -1], [1, 1]]) / np.sqrt(2)      # exp(-i pi Y / 4)


def transfer_matrix_eval(setting: MerminSetting) -> MerminOperators:
    """Product of per-qubit transfer blocks (a_l R + a'_l R^dag)/sqrt(2)
    applied to (1, 1)^T; component 0 is M_n, component 1 is M'_n."""
    # block entries are operators on the qubits consumed so far
    P = [[np.ones((1, 1), dtype=complex), np.zeros((1, 1), dtype=complex)],
         [np.zeros((1, 1), dtype=complex), np.ones((1, 1), dtype=complex)]]
    for a, ap in setting.pairs:
        T = [[(a * _R[i, j] + ap * _RD[i, j]) / np.sqrt(2) for j in range(2)] for i in range(2)]
        P = [
            [sum(np.kron(P[i][m], T[m][j]) for m in range(2)) for j in range(2)]
            for i in range(2)
        ]
    return MerminOperators(M=P[0][0] + P[0][1], M_prime=P[1][0] + P[1][1])


def svetlichny(setting: MerminSetting) -> np.ndarray:
    """((1 - i)^n / 2^(n+1)) [prod(a_l + i a'_l) + prod(a'_l + i a_l)];
    equals (M_n + M'_n)/2. Defined for odd n only."""
    n = setting.n
    if n % 2 == 0:
        raise EvenOrder(f"the symmetric Svetlichny form needs odd n, got {n}")
    p1 = _kron_all([a + 1j * ap for a, ap in setting.pairs])
    p2 = _kron_all([ap + 1j * a for a, ap in setting.pairs])
    return (1 - 1j) ** n / 2 ** (n + 1) * (p1 + p2)


# ---------------------------------------------------------------------------
# GHZ states
# ---------------------------------------------------------------------------

def _basis_pair(n: int) -> tuple[np.ndarray, np.ndarray]:
    dim = 2**n
    e0 = np.zeros(dim, dtype=complex)
    e1 = np.zeros(dim, dtype=complex)
    e0[0] = 1
    e1[-1] = 1
    return e0, e1


def ghz_plus(n: int) -> np.ndarray:
    e0, e1 = _basis_pair(n)
    return (e0 + 1j * e1) / np.sqrt(2)


def ghz_minus(n: int) -> np.ndarray:
    e0, e1 = _basis_pair(n)
    return (e0 - 1j * e1) / np.sqrt(2)


def ghz_tilde(n: int, sign: int = +1) -> np.ndarray:
    """(|0...0> + sign e^{i pi (n-1)/4} |1...1>)/sqrt(2): the extremal
    eigenvectors of M_n in the X/Y setting."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    e0, e1 = _basis_pair(n)
    return (e0 + sign * np.exp(1j * np.pi * (n - 1) / 4) * e1) / np.sqrt(2)


# ---------------------------------------------------------------------------
# measurement circuits
# ---------------------------------------------------------------------------

def _check_state(psi: np.ndarray, dim: int) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.shape[0] != dim:
        raise ValueError(f"state dimension {psi.shape[0]} != {dim}")
    if abs(np.linalg.norm(psi) - 1) > 1e-12:
        raise ValueError("state must be normalized")
    return psi


def measure_product_circuit(
    setting: MerminSetting, psi: np.ndarray
) -> tuple[float, np.ndarray]:
    """Post-select ancilla outcome 0 on every factor (a_l + i a'_l)/2.

    Success probability p = 2^{-n} <prod(1 + (i/2)[a_l, a'_l])>, an exact
    operator identity; returns (p, normalized conditional state)."""
    n = setting.n
    psi = _check_state(psi, 2**n)
    op = _kron_all([(a + 1j * ap) / 2 for a, ap in setting.pairs])
    branch = op @ psi
    p = float(np.real(np.vdot(branch, branch)))
    if p < 1e-14:
        raise ZeroSuccess(f"post-selection probability {p:.3e} below 1e-14")
    return p, branch / np.sqrt(p)


def measure_mermin_circuit(
    setting: MerminSetting, psi: np.ndarray
) -> tuple[float, np.ndarray, float]:
    """All-zeros branch of the compiled operator 2^{-(n+1)/2} M_n.

    Returns (p0, conditional state, bound) with p0 = 2^{-(n+1)} <M_n^2>
    (at most 1/4) and bound = 2^{(n-1)/2} sqrt(4 p0) >= |<M_n>|."""
    n = setting.n
    psi = _check_state(psi, 2**n)
    M = mermin_closed(setting).M
    branch = 2 ** (-(n + 1) / 2) * (M @ psi)
    p0 = float(np.real(np.vdot(branch, branch)))
    if p0 < 1e-14:
        raise ZeroSuccess(f"all-zeros probability {p0:.3e} below 1e-14")
    bound = 2 ** ((n - 1) / 2) * np.sqrt(4 * p0)
    return p0, branch / np.sqrt(p0), float(bound)


def sample_success(p: float, shots: int, rng: np.random.Generator) -> float:
    """Shot-noise estimate of a success probability."""
    if shots < 1:
        raise ValueError("shots must be positive")
    if not 0 <= p <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return float(rng.binomial(shots, p) / shots)


@dataclass(frozen=True)
class EquivalenceReport:
    agree: bool
    tv_distance: float
    state_distance: float
    probs_ancilla: tuple[float, float]
    probs_direct: tuple[float, float]


def measurement_equivalence_check(psi: np.ndarray, l: int) -> EquivalenceReport:
    """Ancilla-mediated projection (1 +/- Z_l)/2 followed by X_l versus a
    direct computational-basis measurement of qubit l followed by X_l:
    outcome distributions and post-measurement states must coincide."""
    psi = np.asarray(psi, dtype=complex).ravel()
    dim = psi.shape[0]
    n = int(np.log2(dim))
    if 2**n != dim:
        raise ValueError(f"state dimension {dim} is not a power of 2")
    if not 0 <= l < n:
        raise ValueError(f"qubit index {l} outside [0, {n})")
    if abs(np.linalg.norm(psi) - 1) > 1e-12:
        raise ValueError("state must be normalized")

    bit = (np.arange(dim) >> (n - 1 - l)) & 1
    flip = np.arange(dim) ^ (1 << (n - 1 - l))

    # (i) gadget branches (U +/- V)/2 with U = 1, V = Z_l, then X_l
    probs_i = []
    posts_i = []
    for outcome in (0, 1):
        zsign = np.where(bit == 0, 1.0, -1.0)
        k = 0.5 * (1 + zsign) if outcome == 0 else 0.5 * (1 - zsign)
        branch = k * psi
        p = float(np.real(np.vdot(branch, branch)))
        probs_i.append(p)
        posts_i.append(branch[flip] / np.sqrt(p) if p > 1e-14 else None)

    # (ii) projective measurement of qubit l, then X_l
    probs_ii = []
    posts_ii = []
    for outcome in (0, 1):
        branch = np.where(bit == outcome, psi, 0)
        p = float(np.real(np.vdot(branch, branch)))
        probs_ii.append(p)
        posts_ii.append(branch[flip] / np.sqrt(p) if p > 1e-14 else None)

    tv = 0.5 * sum(abs(a - b) for a, b in zip(probs_i, probs_ii))
    state_dist = 0.0
    for a, b in zip(posts_i, posts_ii):
        if a is not None and b is not None:
            rho_a = np.outer(a, a.conj())
            rho_b = np.outer(b, b.conj())
            state_dist = max(state_dist, float(fro_norm(rho_a - rho_b)))
    return EquivalenceReport(
        agree=tv <= 1e-12 and state_dist <= 1e-12,
        tv_distance=float(tv),
        state_distance=state_dist,
        probs_ancilla=(probs_i[0], probs_i[1]),
        probs_direct=(probs_ii[0], probs_ii[1]),
    )
