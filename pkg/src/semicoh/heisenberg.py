"""Antiferromagnetic Heisenberg ring, variational ansatzes, and optimizer.

Each bond operator is X X + Y Y + Z Z = 2 SWAP - 1 on its pair of sites,
so bond actions are index permutations and the sublattice exponentials
factor exactly into per-bond rotations (disjoint bonds commute). The full
mixed-bond layer exponential uses a scaled Taylor series on the state,
with the chunk count set by the bound |H_bond| <= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import NonFinite, OddLength, ZeroState
from .pauli import PauliString
from .streams import stream

__all__ = [
    "AnsatzParams",
    "SpinChainModel",
    "ansatz_n_params",
    "build_afhm",
    "exact_ground",
    "h_total_action",
    "hva_state",
    "optimize",
    "rayleigh_energy",
    "symhva_state",
    "valence_bond_initial",
]

_TAYLOR_TERMS = 30
_TAYLOR_CHUNK = 4.3


@dataclass(frozen=True, eq=False)
class SpinChainModel:
    L: int
    periodic: bool
    bonds: tuple[tuple[int, int], ...]
    bond_terms: tuple[tuple[PauliString, ...], ...]
    H_A: np.ndarray
    H_B: np.ndarray
    H_total: np.ndarray
    swap_perms: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return 2**self.L

    @property
    def bonds_a(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.bonds)) if i % 2 == 0)

    @property
    def bonds_b(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.bonds)) if i % 2 == 1)

    @cached_property
    def perm_array(self) -> np.ndarray:
        return np.stack(self.swap_perms)


@dataclass(frozen=True)
class AnsatzParams:
    kind: str
    p: int
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("HVA", "symHVA"):
            raise ValueError(f"kind must be 'HVA' or 'symHVA', got {self.kind!r}")
        if self.p < 0:
            raise ValueError("p must be nonnegative")
        vals = tuple(float(v) for v in self.values)
        if self.kind == "symHVA" and len(vals) != 2 * self.p:
            raise ValueError(f"symHVA with p={self.p} needs {2 * self.p} values, got {len(vals)}")
        if self.kind == "HVA" and self.p > 0 and len(vals) % self.p != 0:
            raise ValueError(f"HVA value count {len(vals)} not a multiple of p={self.p}")
        object.__setattr__(self, "values", vals)


def ansatz_n_params(kind: str, p: int, L: int) -> int:
    return 2 * p if kind == "symHVA" else L * p


def _swap_perm(L: int, i: int, j: int) -> np.ndarray:
    """Basis-index permutation of SWAP on sites i, j (site 0 = leftmost bit)."""
    idx = np.arange(2**L)
    bi = (idx >> (L - 1 - i)) & 1
    bj = (idx >> (L - 1 - j)) & 1
    swap_mask = (bi ^ bj).astype(bool)
    flip = (1 << (L - 1 - i)) | (1 << (L - 1 - j))
    return np.where(swap_mask, idx ^ flip, idx)


def build_afhm(L: int, periodic: bool = True) -> SpinChainModel:
    """Ring (or chain) of X X + Y Y + Z Z bonds in units with coupling 1."""
    if not 2 <= L <= 12:
        raise ValueError(f"L must lie in [2, 12], got {L}")
    if L % 2 != 0:
        raise OddLength(f"L = {L} is odd: the even/odd sublattice split needs even L")
    if periodic:
        bonds = tuple((l, (l + 1) % L) for l in range(L))
    else:
        bonds = tuple((l, l + 1) for l in range(L - 1))

    def bond_strings(i: int, j: int) -> tuple[PauliString, ...]:
        out = []
        for letter in "XYZ":
            letters = ["I"] * L
            letters[i] = letter
            letters[j] = letter
            out.append(PauliString("".join(letters)))
        return tuple(out)

    perms = tuple(_swap_perm(L, i, j) for i, j in bonds)
    dim = 2**L
    eye = np.eye(dim)
    HA = np.zeros((dim, dim))
    HB = np.zeros((dim, dim))
    for k, perm in enumerate(perms):
        bond = 2 * eye[perm] - eye
        if k % 2 == 0:
            HA += bond
        else:
            HB += bond
    return SpinChainModel(
        L=L,
        periodic=periodic,
        bonds=bonds,
        bond_terms=tuple(bond_strings(i, j) for i, j in bonds),
        H_A=HA,
        H_B=HB,
        H_total=HA + HB,
        swap_perms=perms,
    )


def valence_bond_initial(L: int) -> np.ndarray:
    """Normalized sum of the two alternating singlet coverings.

    Each covering is a product of (|01> - |10>)/sqrt(2) singlets; the even
    covering pairs (0,1)(2,3)..., the odd one pairs (1,2)...(L-1,0). The
    two overlap, so the sum is normalized by its computed norm (2/3 of
    the bare sum at L = 8).
    """
    if L % 2 != 0:
        raise OddLength(f"L = {L} is odd: singlet coverings need even L")
    dim = 2**L
    idx = np.arange(dim)
    bits = (idx[:, None] >> (L - 1 - np.arange(L))) & 1  # (dim, L), site-ordered

    def covering(pairs: Sequence[tuple[int, int]]) -> np.ndarray:
        amp = np.ones(dim)
        for i, j in pairs:
            bi, bj = bits[:, i], bits[:, j]
            f = np.where((bi == 0) & (bj == 1), 1.0, np.where((bi == 1) & (bj == 0), -1.0, 0.0))
            amp = amp * f / np.sqrt(2)
        return amp

    pairs_a = [(l, l + 1) for l in range(0, L, 2)]
    pairs_b = [(l, l + 1) for l in range(1, L - 1, 2)] + [(L - 1, 0)]
    psi = covering(pairs_a) + covering(pairs_b)
    nrm = np.linalg.norm(psi)
    if nrm < 1e-14:
        raise ZeroState(f"the two singlet coverings cancel at L = {L}")
    return (psi / nrm).astype(complex)


def _h_action(model: SpinChainModel, psi: np.ndarray, which: Sequence[int]) -> np.ndarray:
    out = np.zeros_like(psi)
    for k in which:
        out += 2 * psi[model.swap_perms[k]]
    return out - len(which) * psi


def h_total_action(model: SpinChainModel, psi: np.ndarray) -> np.ndarray:
    return _h_action(model, psi, range(len(model.bonds)))


def _exp_disjoint(
    model: SpinChainModel, theta: float, psi: np.ndarray, which: Sequence[int]
) -> np.ndarray:
    # exp(i theta (2 SWAP - 1)) = e^{-i theta}(cos(2 theta) + i sin(2 theta) SWAP)
    # per bond; bonds in one sublattice are disjoint, so the product is exact.
    c, s = np.cos(2 * theta), np.sin(2 * theta)
    phase = np.exp(-1j * theta)
    for k in which:
        psi = phase * (c * psi + 1j * s * psi[model.swap_perms[k]])
    return psi


def _exp_layer(model: SpinChainModel, thetas: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """exp(i sum_l theta_l H_l) psi by scaled Taylor summation on the state."""
    thetas = np.asarray(thetas, dtype=float)
    nrm = 3 * float(np.sum(np.abs(thetas)))
    s = max(1, int(np.ceil(nrm / _TAYLOR_CHUNK)))
    perms = model.perm_array
    two_th = 2 * thetas[:, None]
    th_sum = float(np.sum(thetas))

    for _ in range(s):
        term = psi
        acc = psi.copy()
        for k in range(1, _TAYLOR_TERMS + 1):
            term = ((two_th * term[perms]).sum(axis=0) - th_sum * term) * (1j / s) / k
            acc = acc + term
        psi = acc
    return psi


def hva_state(model: SpinChainModel, params: AnsatzParams) -> np.ndarray:
    """p layers of exp(i sum_l theta_l^p H_l) on the valence-bond state."""
    if params.kind != "HVA":
        raise ValueError(f"expected HVA params, got {params.kind}")
    n_bonds = len(model.bonds)
    vals = np.asarray(params.values, dtype=float)
    if vals.size != n_bonds * params.p:
        raise ValueError(f"HVA at L={model.L} needs {n_bonds * params.p} values, got {vals.size}")
    psi = valence_bond_initial(model.L)
    for row in vals.reshape(params.p, n_bonds):
        psi = _exp_layer(model, row, psi)
    return psi


def symhva_state(model: SpinChainModel, params: AnsatzParams) -> np.ndarray:
    """p symmetrized layers (e^{i th1 H_A} e^{i th2 H_B} + e^{i th1 H_B} e^{i th2 H_A})/2
    on the valence-bond state; the result is generally unnormalized."""
    if params.kind != "symHVA":
        raise ValueError(f"expected symHVA params, got {params.kind}")
    psi = valence_bond_initial(model.L)
    a, b = model.bonds_a, model.bonds_b
    vals = np.asarray(params.values, dtype=float).reshape(params.p, 2)
    for th1, th2 in vals:
        t1 = _exp_disjoint(model, th1, _exp_disjoint(model, th2, psi, b), a)
        t2 = _exp_disjoint(model, th1, _exp_disjoint(model, th2, psi, a), b)
        psi = (t1 + t2) / 2
        if np.linalg.norm(psi) < 1e-14:
            raise ZeroState("symHVA layer annihilated the state")
    return psi


def rayleigh_energy(model: SpinChainModel, psi_tilde: np.ndarray) -> float:
    psi = np.asarray(psi_tilde, dtype=complex).ravel()
    nrm2 = float(np.real(np.vdot(psi, psi)))
    if np.sqrt(nrm2) <= 1e-14:
        raise ZeroState("cannot take a Rayleigh quotient of a null state")
    return float(np.real(np.vdot(psi, h_total_action(model, psi))) / nrm2)


def exact_ground(model: SpinChainModel) -> tuple[float, float, np.ndarray]:
    """Full diagonalization: (E0, gap to the first distinct level, ground vector)."""
    w, v = np.linalg.eigh(model.H_total)
    e0 = float(w[0])
    above = w[w > e0 + 1e-10]
    gap = float(above[0] - e0) if above.size else 0.0
    return e0, gap, v[:, 0].astype(complex)


# ---------------------------------------------------------------------------
# optimization
# ---------------------------------------------------------------------------

class _Objective:
    """Energy and central-difference gradient with prefix-state caching:
    perturbing one layer's parameter only re-applies that layer onward."""

    def __init__(self, model: SpinChainModel, kind: str, p: int, fd_step: float = 1e-6):
        self.model = model
        self.kind = kind
        self.p = p
        self.per_layer = 2 if kind == "symHVA" else len(model.bonds)
        self.fd_step = fd_step
        self.psi0 = valence_bond_initial(model.L)

    def _apply_layer(self, theta_row: np.ndarray, psi: np.ndarray) -> np.ndarray:
        if self.kind == "HVA":
            return _exp_layer(self.model, theta_row, psi)
        a, b = self.model.bonds_a, self.model.bonds_b
        th1, th2 = theta_row
        t1 = _exp_disjoint(self.model, th1, _exp_disjoint(self.model, th2, psi, b), a)
        t2 = _exp_disjoint(self.model, th1, _exp_disjoint(self.model, th2, psi, a), b)
        return (t1 + t2) / 2

    def _prefixes(self, theta: np.ndarray) -> list[np.ndarray]:
        rows = theta.reshape(self.p, self.per_layer)
        states = [self.psi0]
        for row in rows:
            states.append(self._apply_layer(row, states[-1]))
        return states

    def _energy_of(self, psi: np.ndarray) -> float:
        e = rayleigh_energy(self.model, psi)
        if not np.isfinite(e):
            raise NonFinite("energy evaluated non-finite during optimization")
        return e

    def value(self, theta: np.ndarray) -> float:
        rows = np.asarray(theta, float).reshape(self.p, self.per_layer)
        psi = self.psi0
        for row in rows:
            psi = self._apply_layer(row, psi)
        return self._energy_of(psi)

    def grad(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, float)
        states = self._prefixes(theta)
        rows = theta.reshape(self.p, self.per_layer)
        g = np.empty(theta.size)
        h = self.fd_step
        for j in range(theta.size):
            layer, off = divmod(j, self.per_layer)
            vals = []
            for sgn in (+1, -1):
                row = rows[layer].copy()
                row[off] += sgn * h
                psi = self._apply_layer(row, states[layer])
                for later in rows[layer + 1 :]:
                    psi = self._apply_layer(later, psi)
                vals.append(self._energy_of(psi))
            g[j] = (vals[0] - vals[1]) / (2 * h)
        return g


def optimize(
    model: SpinChainModel,
    kind: str,
    p: int,
    seed: int,
    restarts: int = 50,
) -> tuple[float, AnsatzParams, list[np.ndarray]]:
    """Multi-start quasi-Newton minimization of the Rayleigh energy.

    Each restart draws its start uniformly from (-pi/4, pi/4] out of its
    own stream (seed, restart index); iteration stops once the energy
    changes by less than 1e-13 for 5 consecutive iterations. Returns the
    best (energy, params, per-restart iterate-energy history); ties pick
    the lowest restart index.
    """
    if p == 0:
        e = rayleigh_energy(model, valence_bond_initial(model.L))
        return e, AnsatzParams(kind=kind, p=0, values=()), [np.array([e])]

    obj = _Objective(model, kind, p)
    n_params = obj.per_layer * p
    maxiter = 200 if kind == "symHVA" else 80
    finals: list[float] = []
    solutions: list[np.ndarray] = []
    history: list[np.ndarray] = []
    for i in range(restarts):
        u = stream(seed, i).random(n_params)
        theta0 = np.pi / 4 - u * (np.pi / 2)

        energies = [obj.value(theta0)]
        stable = 0

        def cb(xk: np.ndarray) -> None:
            nonlocal stable
            e = obj.value(xk)
            if abs(e - energies[-1]) < 1e-13:
                stable += 1
            else:
                stable = 0
            energies.append(e)
            if stable >= 5:
                raise StopIteration

        res = minimize(
            obj.value,
            theta0,
            jac=obj.grad,
            method="BFGS",
            callback=cb,
            options={"maxiter": maxiter, "gtol": 1e-12},
        )
        finals.append(float(res.fun))
        solutions.append(np.asarray(res.x, float))
        history.append(np.asarray(energies))
    best = int(np.argmin(finals))
    params = AnsatzParams(kind=kind, p=p, values=tuple(solutions[best]))
    return finals[best], params, history
