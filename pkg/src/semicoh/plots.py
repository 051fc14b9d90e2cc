"""Figure rendering for the CLI report paths.

Figures are built with the object-oriented matplotlib API (no pyplot
state) and saved as PNG with the Software metadata field cleared, so
repeated runs with the same inputs produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from matplotlib.figure import Figure

__all__ = [
    "fig_mermin",
    "fig_qze",
    "fig_symmetry",
    "fig_trotter",
    "fig_vqe",
    "fig_walk",
]

_DPI = 150


def _save(fig: Figure, path: str | Path) -> None:
    fig.savefig(str(path), dpi=_DPI, metadata={"Software": None})


def fig_symmetry(reports: Sequence, path: str | Path) -> None:
    """Log-log reversal and inversion errors against step size per process."""
    fig = Figure(figsize=(10, 4.5))
    axes = fig.subplots(1, 2)
    for rep in reports:
        t = np.asarray(rep.t_grid)
        for ax, errs in ((axes[0], rep.eps_TR), (axes[1], rep.eps_I)):
            e = np.asarray(errs)
            mask = e > 0
            if mask.any():
                ax.loglog(t[mask], e[mask], marker="o", ms=3, lw=1, label=rep.process_id)
    axes[0].set_title("time-reversal error")
    axes[1].set_title("inversion error")
    for ax in axes:
        ax.set_xlabel("t")
        ax.set_ylabel("Frobenius error")
        ax.grid(True, which="both", alpha=0.3)
    axes[1].legend(fontsize=6, loc="lower right")
    fig.tight_layout()
    _save(fig, path)


def fig_walk(
    bitmatrix: np.ndarray,
    mean_fidelity: np.ndarray,
    bit_ratio: np.ndarray,
    path: str | Path,
) -> None:
    """Bit raster for the first shots plus per-step averages."""
    fig = Figure(figsize=(10, 4))
    axes = fig.subplots(1, 2)
    show = bitmatrix[: min(100, bitmatrix.shape[0])]
    axes[0].imshow(show, aspect="auto", interpolation="nearest", cmap="gray_r")
    axes[0].set_xlabel("step")
    axes[0].set_ylabel("shot")
    axes[0].set_title("measured bits")
    steps = np.arange(mean_fidelity.size)
    axes[1].plot(steps, mean_fidelity, lw=1.5, label="mean fidelity to final eigenstate")
    axes[1].plot(np.arange(1, bit_ratio.size + 1), bit_ratio, lw=1.5, label="fraction of 0 bits")
    axes[1].set_xlabel("step")
    axes[1].set_ylim(-0.02, 1.02)
    axes[1].grid(alpha=0.3)
    axes[1].legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def fig_trotter(
    ts: np.ndarray,
    thetas: np.ndarray,
    err_plus: np.ndarray,
    err_trotter2: np.ndarray,
    path: str | Path,
) -> None:
    """Error magnitude surfaces over (theta, t), log color scale."""
    fig = Figure(figsize=(10, 4))
    axes = fig.subplots(1, 2)
    floor = 1e-17
    vmax = max(err_plus.max(), err_trotter2.max(), 10 * floor)
    for ax, err, title in (
        (axes[0], err_plus, "symmetrized combination"),
        (axes[1], err_trotter2, "second-order Trotter"),
    ):
        m = ax.pcolormesh(
            thetas,
            ts,
            np.log10(np.maximum(err, floor)),
            shading="auto",
            vmin=np.log10(floor),
            vmax=np.log10(vmax),
        )
        ax.set_xlabel("theta")
        ax.set_ylabel("t")
        ax.set_title(title)
        fig.colorbar(m, ax=ax, label="log10 Frobenius error")
    fig.tight_layout()
    _save(fig, path)


def fig_vqe(
    per_p: Sequence[Mapping], e0: float, gap: float, path: str | Path
) -> None:
    """Best variational energy error against layer count."""
    fig = Figure(figsize=(6, 4.5))
    ax = fig.subplots()
    kinds = sorted({row["ansatz"] for row in per_p})
    for kind in kinds:
        rows = [r for r in per_p if r["ansatz"] == kind]
        ps = [r["p"] for r in rows]
        errs = [max(r["rel_error"], 1e-16) for r in rows]
        ax.semilogy(ps, errs, marker="o", label=kind)
    ax.axhline(gap / abs(e0), color="k", ls="-.", lw=1, label="first gap (relative)")
    ax.set_xlabel("layers p")
    ax.set_ylabel("relative ground-energy error")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def fig_mermin(eigenvalues: np.ndarray, path: str | Path) -> None:
    """Eigenvalue stem plot of the Mermin operator."""
    fig = Figure(figsize=(6, 4))
    ax = fig.subplots()
    w = np.sort(np.asarray(eigenvalues).real)
    ax.stem(np.arange(w.size), w)
    ax.set_xlabel("index")
    ax.set_ylabel("eigenvalue")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    _save(fig, path)


def fig_qze(
    ns: np.ndarray,
    scaled: Mapping[str, np.ndarray],
    targets: Mapping[str, float],
    path: str | Path,
) -> None:
    """Scaled survival complements against pulse count with their limits."""
    fig = Figure(figsize=(6, 4.5))
    ax = fig.subplots()
    for key, series in sorted(scaled.items()):
        line, = ax.plot(ns, series, marker="o", label=key)
        if key in targets:
            ax.axhline(targets[key], color=line.get_color(), ls=":", lw=1)
    ax.set_xlabel("pulse count n")
    ax.set_ylabel("scaled survival complement")
    ax.set_xscale("log")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path)
