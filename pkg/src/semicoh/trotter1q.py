"""Single-qubit split-evolution benchmark.

The generator is H = d1 X + d2 Y with d e^{i theta} = d1 + i d2. Exact
evolution, the symmetrized linear combination of Trotter products U_plus,
and plain second-order Trotter U_(2) all have closed forms in the Pauli
basis, so their polar data and error surfaces can be validated without
any series truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BranchCut, ZeroField
from .linalg import fro_norm
from .tolerances import TOL

__all__ = [
    "DEFAULT_T_GRID",
    "OneQubitSplit",
    "PolarReport",
    "default_t_range",
    "default_theta_range",
    "exact_u",
    "generators",
    "lctu_plus",
    "polar_matrix",
    "richardson_coefficient",
    "sweep_grid",
    "trotter2",
    "unitary_distance",
]

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)

DEFAULT_T_GRID = (0.1, 0.05, 0.025)


@dataclass(frozen=True)
class OneQubitSplit:
    """Couplings of H = d1 X + d2 Y (the d0, d3 components are fixed to 0)."""

    d1: float
    d2: float

    @property
    def d(self) -> float:
        return float(np.hypot(self.d1, self.d2))

    @property
    def theta(self) -> float:
        return float(np.angle(self.d1 + 1j * self.d2))

    @classmethod
    def from_polar(cls, d: float, theta: float) -> "OneQubitSplit":
        return cls(d1=d * np.cos(theta), d2=d * np.sin(theta))


@dataclass(frozen=True)
class PolarReport:
    """Polar data of a combined step: e^{-alpha} is the contraction factor,
    phi_plus and n_plus the rotation angle and (x, y) axis of the unitary
    part, p00 the ancilla success probability."""

    alpha: float
    phi_plus: float
    n_plus: tuple[float, float]
    p00: float

    def __post_init__(self) -> None:
        if self.alpha < -1e-15:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")
        if abs(self.p00 - np.exp(-2 * self.alpha)) > 1e-12:
            raise ValueError("p00 inconsistent with exp(-2*alpha)")


def exact_u(split: OneQubitSplit, t: float) -> np.ndarray:
    """cos(td) 1 - i sin(td) (d1 X + d2 Y)/d."""
    d = split.d
    if d == 0:
        raise ZeroField("d = 0: the exact evolution is the identity")
    return np.cos(t * d) * _I2 - 1j * np.sin(t * d) * (split.d1 * _X + split.d2 * _Y) / d


def _axis_products(split: OneQubitSplit, t: float) -> tuple[float, float, float, float]:
    return (
        float(np.cos(t * split.d1)),
        float(np.sin(t * split.d1)),
        float(np.cos(t * split.d2)),
        float(np.sin(t * split.d2)),
    )


def lctu_plus(split: OneQubitSplit, t: float) -> np.ndarray:
    """(1/2)(e^{-i t d1 X} e^{-i t d2 Y} + e^{-i t d2 Y} e^{-i t d1 X}).

    The anticommutator kills the Z component of either ordering, leaving
    c1 c2 1 - i s1 c2 X - i c1 s2 Y.
    """
    c1, s1, c2, s2 = _axis_products(split, t)
    return c1 * c2 * _I2 - 1j * s1 * c2 * _X - 1j * c1 * s2 * _Y


def trotter2(split: OneQubitSplit, t: float) -> np.ndarray:
    """e^{-i t d1 X / 2} e^{-i t d2 Y} e^{-i t d1 X / 2} in closed form."""
    c1, s1, c2, s2 = _axis_products(split, t)
    return c1 * c2 * _I2 - 1j * c2 * s1 * _X - 1j * s2 * _Y


def _check_branch(split: OneQubitSplit, t: float) -> None:
    if not (abs(t * split.d1) < np.pi / 2 and abs(t * split.d2) < np.pi / 2):
        raise BranchCut(
            f"|t d1| = {abs(t * split.d1):.4f}, |t d2| = {abs(t * split.d2):.4f}: "
            "both must stay below pi/2 for a principal-branch generator"
        )


def generators(split: OneQubitSplit, t: float) -> tuple[PolarReport, PolarReport]:
    """Polar reports (trotter2, lctu_plus) of the two combined steps.

    U_(2) is unitary (alpha = 0). U_plus contracts by e^{-alpha} with
    alpha = -log(1 - sin^2(t d1) sin^2(t d2))/2, and its unitary factor
    rotates by phi_plus about the in-plane axis n_plus; the sign of
    phi_plus is fixed by cos(phi_plus) = e^{alpha} cos(t d1) cos(t d2)
    with sin(phi_plus) >= 0 so that expm of the generator reproduces
    the step matrix.
    """
    _check_branch(split, t)
    c1, s1, c2, s2 = _axis_products(split, t)

    # second-order Trotter: already unitary
    cos2 = c1 * c2
    ax2 = np.array([c2 * s1, s2])
    n2 = np.linalg.norm(ax2)
    z2 = PolarReport(
        alpha=0.0,
        phi_plus=float(np.arccos(np.clip(cos2, -1, 1))),
        n_plus=(float(ax2[0] / n2), float(ax2[1] / n2)) if n2 > 0 else (0.0, 0.0),
        p00=1.0,
    )

    # symmetrized combination: contraction e^{-alpha} times a rotation
    nu2 = 1.0 - (s1 * s2) ** 2
    alpha = -0.5 * float(np.log(nu2))
    cosp = float(np.exp(alpha) * c1 * c2)
    axp = np.array([s1 * c2, c1 * s2])
    npn = np.linalg.norm(axp)
    zp = PolarReport(
        alpha=alpha,
        phi_plus=float(np.arccos(np.clip(cosp, -1, 1))),
        n_plus=(float(axp[0] / npn), float(axp[1] / npn)) if npn > 0 else (0.0, 0.0),
        p00=float(nu2),
    )
    return z2, zp


def polar_matrix(report: PolarReport) -> np.ndarray:
    """Rebuild e^{-alpha}(cos(phi) 1 - i sin(phi) n.sigma) from a report."""
    nx, ny = report.n_plus
    rot = np.cos(report.phi_plus) * _I2 - 1j * np.sin(report.phi_plus) * (nx * _X + ny * _Y)
    return np.exp(-report.alpha) * rot


def unitary_distance(split: OneQubitSplit, t: float) -> float:
    """Frobenius distance from U_plus to its polar unitary factor e^{alpha} U_plus."""
    _check_branch(split, t)
    _, zp = generators(split, t)
    u_plus = lctu_plus(split, t)
    return float(fro_norm((np.exp(zp.alpha) - 1.0) * u_plus))


def sweep_grid(
    t_range: Sequence[float], theta_range: Sequence[float], d: float
) -> np.ndarray:
    """Rows (t, theta, err_plus, err_trotter2), row-major over (t, theta),
    errors in Frobenius norm against the exact evolution."""
    ts = np.asarray(t_range, dtype=float).ravel()
    thetas = np.asarray(theta_range, dtype=float).ravel()
    if ts.size == 0 or thetas.size == 0:
        raise ValueError("t and theta grids must be nonempty")
    rows = np.empty((ts.size * thetas.size, 4))
    k = 0
    for t in ts:
        for theta in thetas:
            split = OneQubitSplit.from_polar(d, theta)
            u = exact_u(split, t)
            rows[k] = (
                t,
                theta,
                fro_norm(lctu_plus(split, t) - u),
                fro_norm(trotter2(split, t) - u),
            )
            k += 1
    return rows


def default_t_range(t_min: float = 1 / 64, t_max: float = 1.0, steps: int = 64) -> np.ndarray:
    return np.linspace(t_min, t_max, steps)


def default_theta_range(steps: int = 64) -> np.ndarray:
    """-pi + 2 pi k / steps for k = 1..steps; hits 0, +/- pi/2, pi when
    steps is a multiple of 4."""
    k = np.arange(1, steps + 1)
    return -np.pi + 2 * np.pi * k / steps


def richardson_coefficient(
    err: Callable[[float], float], power: int, ts: Sequence[float] = DEFAULT_T_GRID
) -> float:
    """Leading coefficient C of err(t) = C t^power + O(t^{power+2}),
    extrapolated twice over (t, t/2, t/4) to cancel the next two orders."""
    ts = tuple(float(t) for t in ts)
    if len(ts) != 3 or not (
        abs(ts[1] - ts[0] / 2) < 1e-15 and abs(ts[2] - ts[0] / 4) < 1e-15
    ):
        raise ValueError("need a (t, t/2, t/4) triple")
    est = [err(t) / t**power for t in ts]
    r1a = (4 * est[1] - est[0]) / 3
    r1b = (4 * est[2] - est[1]) / 3
    return float((16 * r1b - r1a) / 15)
