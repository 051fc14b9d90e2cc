"""BCH terms, Jordan product, symmetric generators, and the 12-row
symmetry/error classification of unitary and non-unitary processes.

Every process U(t; A, B) is classified against two symmetries:

* time reversal (TR) -- for unitary-type processes (case 1) the residual is
  U(t) - [U(-t)]^(-1); for the non-unitary combinations (case 2) it is
  U(t) - s*U(-t) with the row's sign s;
* generator inversion (I) -- U(t; A, B) - s*U(t; B, A);

plus the combined TRIS check U(t; A, B) vs the inverse (case 1) or the
sign-weighted value (case 2) of U(-t; B, A).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateGrid, DimMismatch, SingularInverse, UnknownProcess
from .linalg import as_matrix, commutator, ensure_same_dim, expm, fro_norm, logm
from .randomops import random_anti_hermitian
from .streams import stream
from .tolerances import TOL

__all__ = [
    "DEFAULT_T_GRID",
    "PROCESS_IDS",
    "SplitGenerator",
    "SymmetryErrorReport",
    "TableRow",
    "bch_terms",
    "estimate_order",
    "jordan_product",
    "process_matrix",
    "random_split",
    "symmetry_errors",
    "symmetry_table",
    "table_row",
    "u_pm",
    "z_odd",
    "z_plus",
]

DEFAULT_T_GRID = (0.2, 0.1, 0.05, 0.025, 0.0125)


@dataclass(frozen=True)
class SplitGenerator:
    """A generator split H = A + B."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self) -> None:
        A = as_matrix(self.A)
        B = as_matrix(self.B)
        if A.shape != B.shape:
            raise DimMismatch(f"split parts differ in shape: {A.shape} vs {B.shape}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @property
    def is_anti_hermitian(self) -> bool:
        tol = TOL.hermitian * self.dim
        return bool(
            np.linalg.norm(self.A + self.A.conj().T) <= tol
            and np.linalg.norm(self.B + self.B.conj().T) <= tol
        )

    @property
    def is_hermitian(self) -> bool:
        tol = TOL.hermitian * self.dim
        return bool(
            np.linalg.norm(self.A - self.A.conj().T) <= tol
            and np.linalg.norm(self.B - self.B.conj().T) <= tol
        )

    def swapped(self) -> "SplitGenerator":
        return SplitGenerator(self.B, self.A)


def random_split(dim: int = 4, seed: int = 0) -> SplitGenerator:
    """Seeded anti-Hermitian pair with unit Frobenius norms."""
    rng = stream(seed, 0)
    return SplitGenerator(
        random_anti_hermitian(dim, rng, norm=1.0),
        random_anti_hermitian(dim, rng, norm=1.0),
    )


def jordan_product(U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Commutative symmetrized product (UV + VU)/2."""
    ensure_same_dim(U, V)
    U = as_matrix(U)
    V = as_matrix(V)
    return (U @ V + V @ U) / 2


def bch_terms(g: SplitGenerator) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """First four terms of log(e^A e^B) as explicit polynomials in A, B."""
    A, B = g.A, g.B
    z1 = A + B
    z2 = (A @ B - B @ A) / 2
    A2, B2 = A @ A, B @ B
    z3 = (A2 @ B + B @ A2 + B2 @ A + A @ B2 - 2 * A @ B @ A - 2 * B @ A @ B) / 12
    z4 = (A2 @ B2 - B2 @ A2 - 2 * A @ B @ A @ B + 2 * B @ A @ B @ A) / 24
    return z1, z2, z3, z4


def z_plus(g: SplitGenerator, t: float) -> np.ndarray:
    """Generator of the symmetrized product: log(e^{tA} o e^{tB})."""
    return logm(jordan_product(expm(t * g.A), expm(t * g.B)))


def z_odd(g: SplitGenerator, t: float) -> np.ndarray:
    """Odd-degree generator: the mean of the two ordered-product logarithms."""
    Ua = expm(t * g.A)
    Ub = expm(t * g.B)
    return (logm(Ua @ Ub) + logm(Ub @ Ua)) / 2


def u_pm(g: SplitGenerator, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric / antisymmetric halves of the ordered product e^{tA}e^{tB}."""
    P = expm(t * g.A) @ expm(t * g.B)
    Q = expm(t * g.B) @ expm(t * g.A)
    return (P + Q) / 2, (P - Q) / 2


# ---------------------------------------------------------------------------
# process registry
# ---------------------------------------------------------------------------

def _exact(g: SplitGenerator, t: float) -> np.ndarray:
    return expm(t * (g.A + g.B))


def _product(g: SplitGenerator, t: float) -> np.ndarray:
    return expm(t * g.A) @ expm(t * g.B)


def _strang(g: SplitGenerator, t: float) -> np.ndarray:
    half = expm(t * g.A / 2)
    return half @ expm(t * g.B) @ half


def _jordan(g: SplitGenerator, t: float) -> np.ndarray:
    return jordan_product(expm(t * g.A), expm(t * g.B))


def _reversed_product(g: SplitGenerator, t: float) -> np.ndarray:
    # e^{-tB} e^{-tA}: the exact inverse of the ordered product
    return expm(-t * g.B) @ expm(-t * g.A)


def _combo(base: Callable, mirror: Callable, sign: int) -> Callable:
    def build(g: SplitGenerator, t: float) -> np.ndarray:
        return (base(g, t) + sign * mirror(g, t)) / 2

    return build


@dataclass(frozen=True)
class _ProcessSpec:
    process_id: str
    case: int                      # 1: TR via inverse; 2: TR via signed subtraction
    build: Callable
    s_tr: int                      # sign in the case-2 TR residual (unused for case 1)
    s_i: int                       # sign in the I residual
    s_tris: int                    # sign in the case-2 TRIS residual (unused for case 1)


_PROCESSES: dict[str, _ProcessSpec] = {}


def _register(spec: _ProcessSpec) -> None:
    _PROCESSES[spec.process_id] = spec


_register(_ProcessSpec("exact", 1, _exact, +1, +1, +1))
_register(_ProcessSpec("product", 1, _product, +1, +1, +1))
_register(_ProcessSpec("strang", 1, _strang, +1, +1, +1))
_register(_ProcessSpec("jordan", 1, _jordan, +1, +1, +1))
# time-reversal-extended combinations U(t) +/- U(-t) of the exact flow
_register(_ProcessSpec("exact_tr_even", 2, _combo(_exact, lambda g, t: _exact(g, -t), +1), +1, +1, +1))
_register(_ProcessSpec("exact_tr_odd", 2, _combo(_exact, lambda g, t: _exact(g, -t), -1), -1, +1, -1))
# the same combinations of the ordered product
_register(_ProcessSpec("product_tr_even", 2, _combo(_product, lambda g, t: _product(g, -t), +1), +1, +1, +1))
_register(_ProcessSpec("product_tr_odd", 2, _combo(_product, lambda g, t: _product(g, -t), -1), -1, -1, -1))
# combinations of the ordered product with its TRIS partner e^{-tB}e^{-tA}
_register(_ProcessSpec("product_tris_even", 2, _combo(_product, _reversed_product, +1), +1, +1, +1))
_register(_ProcessSpec("product_tris_odd", 2, _combo(_product, _reversed_product, -1), -1, -1, -1))
# combinations of the ordered product with its exchange partner e^{tB}e^{tA}
_register(_ProcessSpec("product_exchange_even", 2, _combo(_product, lambda g, t: _product(g.swapped(), t), +1), +1, +1, +1))
_register(_ProcessSpec("product_exchange_odd", 2, _combo(_product, lambda g, t: _product(g.swapped(), t), -1), -1, -1, -1))

PROCESS_IDS = tuple(_PROCESSES)


def _lookup(process_id: str) -> _ProcessSpec:
    try:
        return _PROCESSES[process_id]
    except KeyError:
        raise UnknownProcess(
            f"unknown process id {process_id!r}; expected one of {', '.join(PROCESS_IDS)}"
        ) from None


def process_matrix(process_id: str, g: SplitGenerator, t: float) -> np.ndarray:
    """Evaluate the registered process U(t; A, B)."""
    return _lookup(process_id).build(g, t)


@dataclass(frozen=True)
class SymmetryErrorReport:
    process_id: str
    t_grid: np.ndarray
    eps_TR: np.ndarray
    eps_I: np.ndarray
    fitted_order_TR: float | None   # None marks an exactly-preserved symmetry
    fitted_order_I: float | None


def estimate_order(samples: Sequence[tuple[float, float]]) -> float | None:
    """Least-squares slope of log err vs log t, or None when all errors sit
    at the exact-zero floor."""
    pts = [(float(t), float(e)) for t, e in samples]
    if len(pts) < 4:
        raise DegenerateGrid(f"need at least 4 samples, got {len(pts)}")
    ts = np.array([t for t, _ in pts])
    errs = np.array([e for _, e in pts])
    if np.any(ts <= 0) or len(set(ts.tolist())) != len(ts):
        raise DegenerateGrid("t values must be distinct and positive")
    if not np.all(errs > TOL.exact_zero):
        return None
    slope, _ = np.polyfit(np.log(ts), np.log(errs), 1)
    return float(slope)


def _tr_residual(spec: _ProcessSpec, g: SplitGenerator, t: float) -> float:
    U = spec.build(g, t)
    Um = spec.build(g, -t)
    if spec.case == 1:
        try:
            inv = np.linalg.inv(Um)
        except np.linalg.LinAlgError as exc:
            raise SingularInverse(f"cannot invert {spec.process_id} at t={-t}") from exc
        return fro_norm(U - inv)
    return fro_norm(U - spec.s_tr * Um)


def _i_residual(spec: _ProcessSpec, g: SplitGenerator, t: float) -> float:
    return fro_norm(spec.build(g, t) - spec.s_i * spec.build(g.swapped(), t))


def _tris_residual(spec: _ProcessSpec, g: SplitGenerator, t: float) -> float:
    U = spec.build(g, t)
    W = spec.build(g.swapped(), -t)
    if spec.case == 1:
        try:
            inv = np.linalg.inv(W)
        except np.linalg.LinAlgError as exc:
            raise SingularInverse(f"cannot invert {spec.process_id} at t={-t}") from exc
        return fro_norm(U - inv)
    return fro_norm(U - spec.s_tris * W)


def symmetry_errors(
    process_id: str,
    g: SplitGenerator,
    t_grid: Sequence[float] = DEFAULT_T_GRID,
) -> SymmetryErrorReport:
    """TR and I symmetry-breaking residuals over a t grid, with fitted orders."""
    spec = _lookup(process_id)
    ts = np.asarray(list(t_grid), dtype=float)
    eps_tr = np.array([_tr_residual(spec, g, t) for t in ts])
    eps_i = np.array([_i_residual(spec, g, t) for t in ts])
    return SymmetryErrorReport(
        process_id=process_id,
        t_grid=ts,
        eps_TR=eps_tr,
        eps_I=eps_i,
        fitted_order_TR=estimate_order(list(zip(ts, eps_tr))),
        fitted_order_I=estimate_order(list(zip(ts, eps_i))),
    )


@dataclass(frozen=True)
class TableRow:
    """One classification row: marks are '+'/'-' for an exactly-preserved
    symmetry with that sign ('+' for the case-1 inverse checks) and 'x' for
    a broken one; orders are '0' when exact, else the fitted slope."""

    process_id: str
    tr_mark: str
    tr_order: str
    i_mark: str
    i_order: str
    tris_mark: str


def _mark_and_order(spec_sign: int, case: int, order: float | None) -> tuple[str, str]:
    if order is None:
        mark = "+" if (case == 1 or spec_sign > 0) else "-"
        return mark, "0"
    return "x", f"{order:.3f}"


def table_row(
    process_id: str,
    g: SplitGenerator,
    t_grid: Sequence[float] = DEFAULT_T_GRID,
) -> TableRow:
    spec = _lookup(process_id)
    report = symmetry_errors(process_id, g, t_grid)
    tr_mark, tr_order = _mark_and_order(spec.s_tr, spec.case, report.fitted_order_TR)
    i_mark, i_order = _mark_and_order(spec.s_i, 2, report.fitted_order_I)
    tris = np.array([_tris_residual(spec, g, t) for t in report.t_grid])
    if np.all(tris < TOL.exact_zero):
        tris_mark = "+" if (spec.case == 1 or spec.s_tris > 0) else "-"
    else:
        tris_mark = "x"
    return TableRow(process_id, tr_mark, tr_order, i_mark, i_order, tris_mark)


def symmetry_table(
    g: SplitGenerator | None = None,
    seed: int = 7,
    t_grid: Sequence[float] = DEFAULT_T_GRID,
) -> list[TableRow]:
    """All twelve classification rows on one split (seeded random by default)."""
    if g is None:
        g = random_split(dim=4, seed=seed)
    return [table_row(pid, g, t_grid) for pid in PROCESS_IDS]
