"""Spectral-projection random walks driven by the cos/sin measurement gadget.

A walk step applies K_0 = cos(Ht) or K_1 = sin(Ht) with Born probabilities
and renormalizes; eigenstates are absorbing. The shot-averaged process is
the Kraus channel rho -> K_0 rho K_0 + K_1 rho K_1, which kills energy
off-diagonals at a closed-form rate and fixes the diagonal ensemble.

All trajectory sampling is deterministic: shot i of master seed s draws
its uniforms from the counter-based stream (s, i), so batched and
one-at-a-time execution produce identical runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BranchAmbiguity,
    DegenerateSpectrum,
    DimMismatch,
    NotHermitian,
    ZeroSuccess,
)
from .linalg import SpectralData, as_matrix, ensure_hermitian, herm_eig
from .streams import stream
from .tolerances import TOL

__all__ = [
    "BornReport",
    "WalkConfig",
    "WalkTrajectory",
    "born_statistics",
    "compile_1q_walk_circuit",
    "cv_channel",
    "estimate_energy_scale",
    "iterate_channel",
    "kraus_step",
    "measured_bits",
    "one_qubit_walk",
    "qze_complements",
    "qze_survival",
    "random_schedule",
    "run_trajectory",
    "run_walk",
    "simulate_compiled_walk",
    "tris_control_error",
    "tris_decomposition",
]


@dataclass(frozen=True)
class WalkConfig:
    hamiltonian: np.ndarray
    t_schedule: np.ndarray
    n_shots: int
    seed: int
    absorption_tol: float = TOL.absorption
    reset_policy: str = "reset"

    def __post_init__(self) -> None:
        H = ensure_hermitian(self.hamiltonian, "hamiltonian")
        ts = np.asarray(self.t_schedule, dtype=float).ravel()
        if ts.size < 1 or not np.all(np.isfinite(ts)):
            raise ValueError("t_schedule must contain at least one finite time")
        if self.n_shots < 1:
            raise ValueError("n_shots must be positive")
        if not 0.0 < self.absorption_tol < 1e-4:
            raise ValueError(f"absorption_tol must lie in (0, 1e-4), got {self.absorption_tol}")
        if self.reset_policy not in ("reset", "carry"):
            raise ValueError(f"reset_policy must be 'reset' or 'carry', got {self.reset_policy!r}")
        object.__setattr__(self, "hamiltonian", H)
        object.__setattr__(self, "t_schedule", ts)

    @property
    def r(self) -> int:
        return self.t_schedule.size


@dataclass(frozen=True)
class WalkTrajectory:
    """One semicoherent run.

    `bits` are the branch labels b (0 = cos step, 1 = sin step), which are
    the measured ancilla readouts under the reset policy and their
    running XOR under the carry policy. `fidelities` holds, per step
    0..r, the fidelity to the eigenstate the run finally settles nearest
    to; absorption requires that fidelity to stay >= 1 - tol from
    `absorbed_step` through every later step.
    """

    bits: np.ndarray
    fidelities: np.ndarray
    absorbed_index: int | None
    absorbed_step: int | None
    final_state: np.ndarray
    nearest_index: int = field(default=0)


def one_qubit_walk(
    omega_plus: float, omega_minus: float, theta: float, phi: float
) -> tuple[np.ndarray, np.ndarray]:
    """Benchmark single-qubit Hamiltonian and initial state.

    H = omega_plus * 1 + omega_minus * (n.sigma) with the axis n set by the
    polar angles, so the spectrum is {omega_plus +/- omega_minus}. The
    initial state is |0>, which carries weight cos^2(theta/2) on the
    n.sigma = +1 eigenstate.
    """
    n = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    H = omega_plus * np.eye(2, dtype=complex) + omega_minus * (n[0] * sx + n[1] * sy + n[2] * sz)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    return H, psi0


def _check_distinct_magnitudes(spec: SpectralData) -> None:
    w = np.abs(spec.eigenvalues)
    scale = max(1.0, float(np.max(w, initial=0.0)))
    for i in range(w.size):
        for j in range(i + 1, w.size):
            if abs(w[i] - w[j]) <= TOL.degenerate_gap * scale:
                raise DegenerateSpectrum(
                    f"eigenvalues {spec.eigenvalues[i]:.6g} and {spec.eigenvalues[j]:.6g} "
                    "share a magnitude; the walk cannot distinguish them. "
                    "Add a constant shift to the Hamiltonian to split them."
                )


def _check_record_size(n_shots: int, r: int, dim: int) -> None:
    if n_shots * (r + 1) * dim > 2 * 10**8:
        raise ValueError("trajectory record too large; reduce shots, steps, or dimension")


def _evolve_shots(
    cfg: WalkConfig, psi0: np.ndarray, uniforms: np.ndarray, spec: SpectralData
) -> list[WalkTrajectory]:
    """Shared engine: evolve one row of `uniforms` per shot in the eigenbasis."""
    dim = spec.dim
    n_shots, r = uniforms.shape
    _check_record_size(n_shots, r, dim)
    c0 = spec.eigenvectors.conj().T @ np.asarray(psi0, dtype=complex).ravel()
    if c0.shape[0] != dim:
        raise DimMismatch("initial state dimension does not match the Hamiltonian")
    nrm = np.linalg.norm(c0)
    if abs(nrm - 1) > TOL.state_norm:
        raise ValueError(f"initial state must be normalized, norm {nrm:.6e}")

    cos_d = np.cos(np.outer(cfg.t_schedule, spec.eigenvalues))  # (r, dim)
    sin_d = np.sin(np.outer(cfg.t_schedule, spec.eigenvalues))
    C = np.tile(c0, (n_shots, 1))  # (n_shots, dim)
    probs = np.empty((n_shots, r + 1, dim))
    bits = np.empty((n_shots, r), dtype=np.int64)
    probs[:, 0, :] = np.abs(C) ** 2
    for k in range(r):
        cosC = C * cos_d[k]
        p0 = np.sum(np.abs(cosC) ** 2, axis=1)
        pick_sin = uniforms[:, k] >= p0
        bits[:, k] = pick_sin
        C = np.where(pick_sin[:, None], C * sin_d[k], cosC)
        C /= np.linalg.norm(C, axis=1, keepdims=True)
        probs[:, k + 1, :] = np.abs(C) ** 2

    final_idx = np.argmax(probs[:, -1, :], axis=1)
    out: list[WalkTrajectory] = []
    threshold = 1.0 - cfg.absorption_tol
    for s in range(n_shots):
        fid = probs[s, :, final_idx[s]]
        ok = fid >= threshold
        suffix_ok = np.flip(np.logical_and.accumulate(np.flip(ok)))
        hit = np.nonzero(suffix_ok)[0]
        absorbed_step = int(hit[0]) if hit.size else None
        absorbed_index = int(final_idx[s]) if hit.size else None
        out.append(
            WalkTrajectory(
                bits=bits[s],
                fidelities=fid,
                absorbed_index=absorbed_index,
                absorbed_step=absorbed_step,
                final_state=spec.eigenvectors @ C[s],
                nearest_index=int(final_idx[s]),
            )
        )
    return out


def run_trajectory(cfg: WalkConfig, psi0: np.ndarray, shot_index: int) -> WalkTrajectory:
    """One deterministic trajectory for stream (cfg.seed, shot_index)."""
    spec = herm_eig(cfg.hamiltonian)
    _check_distinct_magnitudes(spec)
    uniforms = stream(cfg.seed, shot_index).random(cfg.r)[None, :]
    return _evolve_shots(cfg, psi0, uniforms, spec)[0]


def run_walk(cfg: WalkConfig, psi0: np.ndarray) -> list[WalkTrajectory]:
    """All cfg.n_shots trajectories; identical to per-shot run_trajectory calls."""
    spec = herm_eig(cfg.hamiltonian)
    _check_distinct_magnitudes(spec)
    _check_record_size(cfg.n_shots, cfg.r, spec.dim)
    uniforms = np.stack([stream(cfg.seed, i).random(cfg.r) for i in range(cfg.n_shots)])
    return _evolve_shots(cfg, psi0, uniforms, spec)


def measured_bits(bits: np.ndarray, reset_policy: str) -> np.ndarray:
    """Ancilla readouts corresponding to branch labels under a reset policy."""
    bits = np.asarray(bits, dtype=np.int64)
    if reset_policy == "reset":
        return bits.copy()
    if reset_policy == "carry":
        return np.bitwise_xor.accumulate(bits, axis=-1)
    raise ValueError(f"unknown reset policy {reset_policy!r}")


# ---------------------------------------------------------------------------
# channel picture
# ---------------------------------------------------------------------------

def _check_density(rho: np.ndarray) -> np.ndarray:
    rho = ensure_hermitian(rho, "density matrix")
    tr = np.trace(rho).real
    if abs(tr - 1) > 1e-9:
        raise ValueError(f"density matrix trace {tr:.6e} != 1")
    return rho


def kraus_step(H: np.ndarray, t: float, rho: np.ndarray) -> np.ndarray:
    """One application of rho -> cos(Ht) rho cos(Ht) + sin(Ht) rho sin(Ht)."""
    spec = herm_eig(H)
    rho = _check_density(rho)
    V = spec.eigenvectors
    cw = np.cos(t * spec.eigenvalues)
    sw = np.sin(t * spec.eigenvalues)
    C = (V * cw) @ V.conj().T
    S = (V * sw) @ V.conj().T
    return C @ rho @ C + S @ rho @ S


def iterate_channel(
    H: np.ndarray, t_schedule: Sequence[float], rho0: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Iterate the channel; in the eigenbasis each off-diagonal (n, m)
    entry is multiplied by cos((w_n - w_m) t) per step, exactly."""
    spec = herm_eig(H)
    rho0 = _check_density(rho0)
    V = spec.eigenvectors
    rho_e = V.conj().T @ rho0 @ V
    gaps = spec.eigenvalues[:, None] - spec.eigenvalues[None, :]
    off_mask = ~np.eye(spec.dim, dtype=bool)

    series = [float(np.linalg.norm(rho_e[off_mask]))]
    for t in np.asarray(t_schedule, dtype=float).ravel():
        rho_e = rho_e * np.cos(gaps * t)
        series.append(float(np.linalg.norm(rho_e[off_mask])))
    rho_final = V @ rho_e @ V.conj().T
    return rho_final, np.asarray(series)


def cv_channel(H: np.ndarray, t: float, rho: np.ndarray) -> np.ndarray:
    """Continuous-variable-ancilla channel: Gaussian off-diagonal damping
    exp(-t^2 (w_n - w_m)^2 / 8) in the energy eigenbasis."""
    spec = herm_eig(H)
    rho = _check_density(rho)
    V = spec.eigenvectors
    rho_e = V.conj().T @ rho @ V
    gaps = spec.eigenvalues[:, None] - spec.eigenvalues[None, :]
    rho_e = rho_e * np.exp(-(t**2) * gaps**2 / 8)
    return V @ rho_e @ V.conj().T


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BornReport:
    """Absorption frequencies and post-warm-up branch statistics."""

    frequencies: np.ndarray          # absorbed fraction per eigenstate index
    unabsorbed_fraction: float
    p_plus: np.ndarray               # per-class mean fraction of 0 bits past warmup
    bit_ratio_series: np.ndarray     # fraction of 0 bits per step, all shots
    warmup: int


def born_statistics(
    trajectories: Sequence[WalkTrajectory],
    spectral: SpectralData,
    warmup: int = 50,
) -> BornReport:
    n_shots = len(trajectories)
    if n_shots == 0:
        raise ValueError("no trajectories")
    dim = spectral.dim
    r = trajectories[0].bits.size
    counts = np.zeros(dim)
    tail_fractions: list[list[float]] = [[] for _ in range(dim)]
    bit_matrix = np.stack([tr.bits for tr in trajectories])
    for tr in trajectories:
        if tr.absorbed_index is not None:
            counts[tr.absorbed_index] += 1
            if warmup < r:
                tail = tr.bits[warmup:]
                tail_fractions[tr.absorbed_index].append(float(np.mean(tail == 0)))
    p_plus = np.array(
        [float(np.mean(f)) if f else np.nan for f in tail_fractions]
    )
    return BornReport(
        frequencies=counts / n_shots,
        unabsorbed_fraction=float(1 - counts.sum() / n_shots),
        p_plus=p_plus,
        bit_ratio_series=np.mean(bit_matrix == 0, axis=0),
        warmup=warmup,
    )


def estimate_energy_scale(psi: np.ndarray, H: np.ndarray, t: float) -> float:
    """Energy magnitude E solving cos(2Et) = <cos(2Ht)>."""
    spec = herm_eig(H)
    radius = float(np.max(np.abs(spec.eigenvalues)))
    if abs(t) * radius >= np.pi / 2:
        raise BranchAmbiguity(
            f"|t| * spectral radius = {abs(t) * radius:.4f} >= pi/2; arccos branch ambiguous"
        )
    c = spec.eigenvectors.conj().T @ np.asarray(psi, dtype=complex).ravel()
    mean = float(np.sum(np.abs(c) ** 2 * np.cos(2 * t * spec.eigenvalues)))
    return float(np.arccos(np.clip(mean, -1.0, 1.0)) / (2 * t))


def random_schedule(
    r: int, t_min: float, t_max: float, rng: np.random.Generator
) -> np.ndarray:
    """Log-uniform random step times for the randomized-walk mode."""
    if not 0 < t_min <= t_max:
        raise ValueError("need 0 < t_min <= t_max")
    return np.exp(rng.uniform(np.log(t_min), np.log(t_max), size=r))


# ---------------------------------------------------------------------------
# QZE survival probabilities
# ---------------------------------------------------------------------------

def _qze_parts(H: np.ndarray, T: float, n: int, psi: np.ndarray):
    spec = herm_eig(H)
    c = spec.eigenvectors.conj().T @ np.asarray(psi, dtype=complex).ravel()
    p = np.abs(c) ** 2
    x = np.cos(spec.eigenvalues * T / n)
    mean_cos_n = float(np.sum(p * x**n))
    mean_cos_2n = float(np.sum(p * x ** (2 * n)))
    mu = complex(np.sum(p * np.exp(-1j * spec.eigenvalues * T / n)))
    return p, x, mean_cos_n, mean_cos_2n, mu


def qze_survival(
    H: np.ndarray, T: float, n: int, psi: np.ndarray
) -> tuple[float, float, float]:
    """Survival probabilities (S_n, S_check_n, S_tilde_n) after n pulses.

    S_n is the post-selected cos-pulse survival, S_check_n the
    unconditioned one, and S_tilde_n the projective-measurement benchmark.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _, _, mean_cos_n, mean_cos_2n, mu = _qze_parts(H, T, n, psi)
    if mean_cos_2n < 1e-300:
        raise ZeroSuccess(f"<cos^2n> = {mean_cos_2n:.3e}: all pulse weight lost")
    s = mean_cos_n**2 / mean_cos_2n
    s_check = mean_cos_n**2
    s_tilde = abs(mu) ** (2 * n)
    return float(s), float(s_check), float(s_tilde)


def _one_minus_pow(x: float, k: int) -> float:
    # 1 - x^k without cancellation for x near 1
    if x > 0.5:
        return float(-np.expm1(k * np.log(x)))
    return float(1 - x**k)


def qze_complements(
    H: np.ndarray, T: float, n: int, psi: np.ndarray
) -> tuple[float, float, float]:
    """(1 - S_n, 1 - S_check_n, 1 - S_tilde_n) computed cancellation-free,
    for extracting the large-n limits n^2(1-S), n(1-S_check), n(1-S_tilde)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p, x, mean_cos_n, mean_cos_2n, mu = _qze_parts(H, T, n, psi)
    if mean_cos_2n < 1e-300:
        raise ZeroSuccess(f"<cos^2n> = {mean_cos_2n:.3e}: all pulse weight lost")
    xn = x**n
    # var(x^n) via the pairwise form avoids the <x^2n> - <x^n>^2 cancellation
    var = 0.5 * float(np.einsum("j,k,jk->", p, p, (xn[:, None] - xn[None, :]) ** 2))
    one_minus_s = var / mean_cos_2n
    one_minus_cos_n = float(np.sum(p * np.array([_one_minus_pow(v, n) for v in x])))
    one_minus_s_check = one_minus_cos_n * (1 + mean_cos_n)
    abs_mu = abs(mu)
    one_minus_s_tilde = _one_minus_pow(abs_mu, 2 * n) if abs_mu > 0 else 1.0
    return float(one_minus_s), float(one_minus_s_check), float(one_minus_s_tilde)


# ---------------------------------------------------------------------------
# TRIS bookkeeping and control error
# ---------------------------------------------------------------------------

def tris_decomposition(
    bits: Sequence[int], t_schedule: Sequence[float]
) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Partition steps into cos / sin index sets; parity of the sin set
    decides whether the path is TRIS-coherent."""
    bits = np.asarray(bits, dtype=np.int64).ravel()
    ts = np.asarray(t_schedule, dtype=float).ravel()
    if bits.size != ts.size:
        raise DimMismatch(f"bits ({bits.size}) and schedule ({ts.size}) differ in length")
    i0 = tuple(int(i) for i in np.nonzero(bits == 0)[0])
    i1 = tuple(int(i) for i in np.nonzero(bits == 1)[0])
    return i0, i1, len(i1) % 2


def tris_control_error(
    H: np.ndarray, t: float, delta: float
) -> tuple[np.ndarray, np.ndarray]:
    """Center-of-time identity for a mistimed reversal:
    U(t) + U(-t + 2*delta) = 2 cos(H(t - delta)) [cos(H delta) - i sin(H delta)]
    with U(tau) = exp(-i H tau). Returns (lhs, rhs)."""
    spec = herm_eig(H)
    V = spec.eigenvectors
    w = spec.eigenvalues

    def u(tau: float) -> np.ndarray:
        return (V * np.exp(-1j * w * tau)) @ V.conj().T

    lhs = u(t) + u(-t + 2 * delta)
    cos_big = (V * np.cos(w * (t - delta))) @ V.conj().T
    phase = (V * (np.cos(w * delta) - 1j * np.sin(w * delta))) @ V.conj().T
    rhs = 2 * cos_big @ phase
    return lhs, rhs


# ---------------------------------------------------------------------------
# compiled circuit (two-qubit gate list)
# ---------------------------------------------------------------------------

def compile_1q_walk_circuit(
    omega_plus: float,
    omega_minus: float,
    theta: float,
    phi: float,
    t: float,
    r: int,
) -> list[tuple]:
    """Gate list for the hardware walk in the energy eigenframe.

    One prep entry, then per iteration: Hadamard on the ancilla, CX,
    a combined pair of R_z rotations (2*omega_plus*t on the ancilla,
    2*omega_minus*t on the system), CX, Hadamard, ancilla measurement --
    6 entries per iteration, 1 + 6r total. The CX-conjugated rotation
    pair realizes exp(-i t Z_a (x) H_d) with H_d = diag(omega_plus +
    omega_minus, omega_plus - omega_minus).
    """
    gates: list[tuple] = [("prep", float(theta), float(phi))]
    for _ in range(int(r)):
        gates.append(("h", "ancilla"))
        gates.append(("cx", "ancilla", "system"))
        gates.append(("rz_pair", 2 * omega_plus * t, 2 * omega_minus * t))
        gates.append(("cx", "ancilla", "system"))
        gates.append(("h", "ancilla"))
        gates.append(("measure", "ancilla"))
    return gates


def simulate_compiled_walk(
    gates: Sequence[tuple],
    n_shots: int,
    seed: int,
    absorption_tol: float = TOL.absorption,
) -> list[WalkTrajectory]:
    """Execute the compiled gate list shot by shot on the two-qubit joint
    state (ancilla never reset) and return trajectories in the walk's
    format: bits are branch labels XOR-decoded from the raw readouts."""
    h2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    n_meas = sum(1 for g in gates if g[0] == "measure")
    out: list[WalkTrajectory] = []
    for shot in range(n_shots):
        rng = stream(seed, shot)
        joint = np.zeros((2, 2), dtype=complex)  # [ancilla, system]
        raw: list[int] = []
        branch: list[int] = []
        fid_steps: list[np.ndarray] = []
        prev = 0
        for gate in gates:
            kind = gate[0]
            if kind == "prep":
                theta, phi = gate[1], gate[2]
                joint[0, 0] = np.cos(theta / 2)
                joint[0, 1] = np.exp(1j * phi) * np.sin(theta / 2)
                sys_p = np.abs(joint.sum(axis=0)) ** 2
                fid_steps.append(sys_p / sys_p.sum())
            elif kind == "h":
                joint = h2 @ joint
            elif kind == "cx":
                joint[1] = joint[1, ::-1]
            elif kind == "rz_pair":
                la, ls = gate[1], gate[2]
                pa = np.exp(np.array([-1j * la / 2, 1j * la / 2]))
                ps = np.exp(np.array([-1j * ls / 2, 1j * ls / 2]))
                joint = joint * pa[:, None] * ps[None, :]
            elif kind == "measure":
                p0 = float(np.sum(np.abs(joint[0]) ** 2))
                bit = 0 if rng.random() < p0 else 1
                sys_state = joint[bit]
                sys_state = sys_state / np.linalg.norm(sys_state)
                joint = np.zeros((2, 2), dtype=complex)
                joint[bit] = sys_state  # ancilla carries the outcome forward
                raw.append(bit)
                branch.append(bit ^ prev)
                prev = bit
                fid_steps.append(np.abs(sys_state) ** 2)
            else:
                raise ValueError(f"unknown gate {gate!r}")
        probs = np.stack(fid_steps)  # (r + 1, 2) in the eigenframe
        final_idx = int(np.argmax(probs[-1]))
        fid = probs[:, final_idx]
        ok = fid >= 1.0 - absorption_tol
        suffix_ok = np.flip(np.logical_and.accumulate(np.flip(ok)))
        hit = np.nonzero(suffix_ok)[0]
        out.append(
            WalkTrajectory(
                bits=np.asarray(branch, dtype=np.int64),
                fidelities=fid,
                absorbed_index=final_idx if hit.size else None,
                absorbed_step=int(hit[0]) if hit.size else None,
                final_state=joint.sum(axis=0),
                nearest_index=final_idx,
            )
        )
        assert len(raw) == n_meas
    return out
