"""Unified command line: symmetry-table, walk, trotter, vqe, mermin, qze.

Every run resolves its configuration as flags over --config JSON over
defaults (SEMICOH_SEED overrides the seed unconditionally), writes a
manifest echoing the fully resolved values, and emits CSV matrices plus
JSON summaries and PNG figures. Identical resolved configurations yield
byte-identical outputs.
"""

from __future__ import annotations

import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import click
import numpy as np
from click.core import ParameterSource

from . import heisenberg, mermin, plots, symforms, trotter1q, walk
from .errors import SemicohError
from .linalg import herm_eig
from .matio import load_matrix, load_vector, matrix_from_obj
from .randomops import random_state
from .streams import stream

ENV_SEED = "SEMICOH_SEED"

SQRT7 = float(np.sqrt(7.0))
NEG_SQRT3 = float(-np.sqrt(3.0))
QUARTER_PI = float(np.pi / 4)

__all__ = ["RunConfig", "main", "run"]


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    parameters: dict
    seed: int
    out_dir: Path


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        return None if math.isnan(v) else v
    if isinstance(x, Path):
        return str(x)
    return x


def _write_json(path: Path, obj) -> None:
    path.write_text(
        json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def _cell(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _write_csv(path: Path, rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        for row in rows:
            writer.writerow([_cell(c) for c in row])


def _resolve(ctx: click.Context) -> RunConfig:
    """Apply config-file values under explicit flags, then the seed env var."""
    params = {k: v for k, v in ctx.params.items() if k not in ("config", "out")}
    config_path = ctx.params.get("config")
    if config_path is not None:
        try:
            data = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise click.UsageError(f"--config file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise click.UsageError("--config must contain a JSON object")
        by_name = {p.name: p for p in ctx.command.params}
        for key, value in data.items():
            name = str(key).replace("-", "_")
            if name not in params or name in ("config", "out"):
                raise click.UsageError(f"unknown config key '{key}'")
            if ctx.get_parameter_source(name) == ParameterSource.DEFAULT:
                param = by_name[name]
                params[name] = param.type.convert(value, param, ctx)
    env = os.environ.get(ENV_SEED)
    if env is not None and "seed" in params:
        try:
            params["seed"] = int(env)
        except ValueError:
            raise click.UsageError(f"{ENV_SEED} must be an integer, got {env!r}")
    out_dir = Path(ctx.params["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    return RunConfig(
        subcommand=ctx.command.name,
        parameters=params,
        seed=int(params.get("seed", 0)),
        out_dir=out_dir,
    )


def _write_manifest(cfg: RunConfig, columns: Mapping[str, Sequence[str]]) -> None:
    _write_json(
        cfg.out_dir / "manifest.json",
        {
            "subcommand": cfg.subcommand,
            "seed": cfg.seed,
            "out_dir": str(cfg.out_dir),
            "parameters": cfg.parameters,
            "csv_columns": dict(columns),
        },
    )


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except SemicohError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)


def _common_options(fn):
    fn = click.option(
        "--config",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="JSON file of parameter overrides; explicit flags win.",
    )(fn)
    fn = click.option(
        "--out",
        type=click.Path(file_okay=False),
        default="out",
        show_default=True,
        help="Output directory.",
    )(fn)
    return fn


@click.group()
def main() -> None:
    """Semicoherent evolution toolkit."""


def run(argv: Sequence[str]) -> int:
    """Programmatic entry point returning the process exit code."""
    try:
        main.main(args=list(argv), standalone_mode=False)
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return exc.exit_code
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


# ---------------------------------------------------------------------------
# symmetry-table
# ---------------------------------------------------------------------------

@main.command("symmetry-table")
@click.option("--dim", type=int, default=4, show_default=True, help="Generator dimension.")
@click.option("--seed", type=int, default=7, show_default=True)
@click.option(
    "--t-grid",
    type=str,
    default="0.2,0.1,0.05,0.025,0.0125",
    show_default=True,
    help="Comma-separated step sizes for order fits.",
)
@_common_options
@click.pass_context
def symmetry_table_cmd(ctx: click.Context, **_kw) -> None:
    """Classify the registered split-evolution processes."""
    cfg = _resolve(ctx)
    p = cfg.parameters
    try:
        t_grid = tuple(float(s) for s in str(p["t_grid"]).split(",") if s.strip())
    except ValueError as exc:
        raise click.UsageError(f"--t-grid must be comma-separated floats: {exc}") from exc
    if not t_grid:
        raise click.UsageError("--t-grid must contain at least one value")

    def body() -> None:
        g = symforms.random_split(dim=p["dim"], seed=cfg.seed)
        reports = [symforms.symmetry_errors(pid, g, t_grid) for pid in symforms.PROCESS_IDS]
        rows = [symforms.table_row(pid, g, t_grid) for pid in symforms.PROCESS_IDS]
        _write_csv(
            cfg.out_dir / "table.csv",
            [[r.process_id, r.tr_mark, r.tr_order, r.i_mark, r.i_order, r.tris_mark] for r in rows],
        )
        plots.fig_symmetry(reports, cfg.out_dir / "symmetry_errors.png")
        _write_manifest(
            cfg,
            {"table.csv": ["process_id", "tr_mark", "tr_order", "i_mark", "i_order", "tris_mark"]},
        )

    _guard(body)


# ---------------------------------------------------------------------------
# walk
# ---------------------------------------------------------------------------

@main.command("walk")
@click.option(
    "--hamiltonian",
    type=str,
    default="builtin-1q",
    show_default=True,
    help="'builtin-1q' or a path to a matrix JSON file.",
)
@click.option("--omega-plus", type=float, default=SQRT7, show_default=True)
@click.option("--omega-minus", type=float, default=NEG_SQRT3, show_default=True)
@click.option("--theta", type=float, default=QUARTER_PI, show_default=True)
@click.option("--phi", type=float, default=QUARTER_PI, show_default=True)
@click.option("--t", type=float, default=0.5, show_default=True, help="Step time.")
@click.option("--steps", type=int, default=80, show_default=True)
@click.option("--shots", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
@click.option(
    "--reset",
    type=click.Choice(["on", "off"]),
    default="on",
    show_default=True,
    help="Ancilla reset policy: on records branch bits, off their running XOR.",
)
@_common_options
@click.pass_context
def walk_cmd(ctx: click.Context, **_kw) -> None:
    """Sample semicoherent walk trajectories and their statistics."""
    cfg = _resolve(ctx)
    p = cfg.parameters
    if p["steps"] < 1:
        raise click.UsageError("--steps must be positive")
    if p["shots"] < 1:
        raise click.UsageError("--shots must be positive")

    def body() -> None:
        if p["hamiltonian"] == "builtin-1q":
            H, psi0 = walk.one_qubit_walk(
                p["omega_plus"], p["omega_minus"], p["theta"], p["phi"]
            )
        else:
            H = load_matrix(p["hamiltonian"])
            psi0 = np.ones(H.shape[0], dtype=complex) / np.sqrt(H.shape[0])
        policy = "reset" if p["reset"] == "on" else "carry"
        wcfg = walk.WalkConfig(
            hamiltonian=H,
            t_schedule=np.full(p["steps"], p["t"]),
            n_shots=p["shots"],
            seed=cfg.seed,
            reset_policy=policy,
        )
        trajs = walk.run_walk(wcfg, psi0)
        spec_data = herm_eig(wcfg.hamiltonian)
        report = walk.born_statistics(trajs, spec_data, warmup=50)

        bits = np.stack([walk.measured_bits(tr.bits, policy) for tr in trajs])
        _write_csv(cfg.out_dir / "bitmatrix.csv", bits)
        fids = np.stack([tr.fidelities for tr in trajs])
        _write_csv(cfg.out_dir / "fidelities.csv", fids)

        two_t = 2 * p["t"]
        omega_estimates = []
        for ph in report.p_plus:
            if math.isnan(ph):
                omega_estimates.append(None)
            else:
                acos = float(np.arccos(np.clip(2 * ph - 1, -1.0, 1.0)))
                omega_estimates.append([acos / two_t, (2 * np.pi - acos) / two_t])

        rho0 = np.outer(psi0, psi0.conj())
        rho_final, coherence = walk.iterate_channel(H, wcfg.t_schedule, rho0)
        e_init = float(np.real(np.trace(rho0 @ H)))
        e_final = float(np.real(np.trace(rho_final @ H)))

        _write_json(
            cfg.out_dir / "summary.json",
            {
                "eigenvalues": spec_data.eigenvalues,
                "frequencies": report.frequencies,
                "unabsorbed_fraction": report.unabsorbed_fraction,
                "p_plus": report.p_plus,
                "omega_estimates": omega_estimates,
                "warmup": report.warmup,
                "channel_energy_initial": e_init,
                "channel_energy_final": e_final,
                "channel_offdiag_final": float(coherence[-1]),
            },
        )
        plots.fig_walk(
            bits,
            np.mean(fids, axis=0),
            report.bit_ratio_series,
            cfg.out_dir / "walk.png",
        )
        _write_manifest(
            cfg,
            {
                "bitmatrix.csv": ["bit per step, one shot per row"],
                "fidelities.csv": ["fidelity to the final eigenstate per step, one shot per row"],
            },
        )

    _guard(body)


# ---------------------------------------------------------------------------
# trotter
# ---------------------------------------------------------------------------

@main.command("trotter")
@click.option("--d", type=float, default=1.0, show_default=True, help="Coupling magnitude.")
@click.option("--t-min", type=float, default=1 / 64, show_default=True)
@click.option("--t-max", type=float, default=1.0, show_default=True)
@click.option("--t-steps", type=int, default=64, show_default=True)
@click.option("--theta-steps", type=int, default=64, show_default=True)
@_common_options
@click.pass_context
def trotter_cmd(ctx: click.Context, **_kw) -> None:
    """Error surfaces of the combined and plain second-order steps."""
    cfg = _resolve(ctx)
    p = cfg.parameters
    if p["t_steps"] < 1 or p["theta_steps"] < 1:
        raise click.UsageError("--t-steps and --theta-steps must be positive")
    if not 0 < p["t_min"] <= p["t_max"]:
        raise click.UsageError("need 0 < --t-min <= --t-max")

    def body() -> None:
        ts = trotter1q.default_t_range(p["t_min"], p["t_max"], p["t_steps"])
        thetas = trotter1q.default_theta_range(p["theta_steps"])
        rows = trotter1q.sweep_grid(ts, thetas, p["d"])
        _write_csv(cfg.out_dir / "grid.csv", rows)
        err_plus = rows[:, 2].reshape(ts.size, thetas.size)
        err_t2 = rows[:, 3].reshape(ts.size, thetas.size)
        plots.fig_trotter(ts, thetas, err_plus, err_t2, cfg.out_dir / "trotter_error.png")
        _write_manifest(cfg, {"grid.csv": ["t", "theta", "err_plus", "err_trotter2"]})

    _guard(body)


# ---------------------------------------------------------------------------
# vqe
# ---------------------------------------------------------------------------

@main.command("vqe")
@click.option("--sites", type=int, default=8, show_default=True)
@click.option(
    "--ansatz",
    type=click.Choice(["hva", "symhva"]),
    default="symhva",
    show_default=True,
)
@click.option("--layers", type=int, default=2, show_default=True, help="Largest p to run.")
@click.option("--restarts", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
@_common_options
@click.pass_context
def vqe_cmd(ctx: click.Context, **_kw) -> None:
    """Variational ground-state search on the Heisenberg ring."""
    cfg = _resolve(ctx)
    p = cfg.parameters
    if p["layers"] < 1:
        raise click.UsageError("--layers must be positive")
    if p["restarts"] < 1:
        raise click.UsageError("--restarts must be positive")
    kind = {"hva": "HVA", "symhva": "symHVA"}[p["ansatz"]]

    def body() -> None:
        model = heisenberg.build_afhm(p["sites"], periodic=True)
        e0, gap, _ = heisenberg.exact_ground(model)
        per_p = []
        history_rows = []
        for depth in range(1, p["layers"] + 1):
            best, params, history = heisenberg.optimize(
                model, kind, depth, cfg.seed, restarts=p["restarts"]
            )
            per_p.append(
                {
                    "p": depth,
                    "ansatz": kind,
                    "best_energy": best,
                    "rel_error": abs(best - e0) / abs(e0),
                    "n_params": heisenberg.ansatz_n_params(kind, depth, model.L),
                }
            )
            for restart, energies in enumerate(history):
                for it, e in enumerate(energies):
                    history_rows.append((depth, restart, it, float(e)))
        _write_json(
            cfg.out_dir / "results.json",
            {"E0_exact": e0, "gap": gap, "per_p": per_p},
        )
        _write_csv(cfg.out_dir / "history.csv", history_rows)
        plots.fig_vqe(per_p, e0, gap, cfg.out_dir / "vqe_convergence.png")
        _write_manifest(cfg, {"history.csv": ["p", "restart", "iteration", "energy"]})

    _guard(body)


# ---------------------------------------------------------------------------
# mermin
# ---------------------------------------------------------------------------

def _parse_setting(spec_str: str, n: int) -> mermin.MerminSetting:
    if spec_str == "xy":
        return mermin.xy_setting(n)
    if spec_str.startswith("random:"):
        return mermin.random_setting(n, stream(int(spec_str.split(":", 1)[1]), 0))
    if spec_str.startswith("file:"):
        data = json.loads(Path(spec_str.split(":", 1)[1]).read_text(encoding="utf-8"))
        pairs = tuple(
            (matrix_from_obj(entry["a"]), matrix_from_obj(entry["a_prime"])) for entry in data
        )
        if len(pairs) != n:
            raise click.UsageError(f"setting file holds {len(pairs)} pairs, --n is {n}")
        return mermin.MerminSetting(pairs)
    raise click.UsageError(f"--setting must be xy, random:<seed>, or file:<path>, got {spec_str!r}")


def _parse_state(spec_str: str, n: int) -> np.ndarray:
    if spec_str == "ghz+":
        return mermin.ghz_plus(n)
    if spec_str == "ghz-":
        return mermin.ghz_minus(n)
    if spec_str == "ghz-tilde":
        return mermin.ghz_tilde(n, +1)
    if spec_str.startswith("random:"):
        return random_state(2**n, stream(int(spec_str.split(":", 1)[1]), 0))
    if spec_str.startswith("file:"):
        psi = load_vector(spec_str.split(":", 1)[1])
        if psi.size != 2**n:
            raise click.UsageError(f"state file dimension {psi.size} != 2^{n}")
        return psi
    raise click.UsageError(
        f"--state must be ghz+, ghz-, ghz-tilde, random:<seed>, or file:<path>, got {spec_str!r}"
    )


@main.command("mermin")
@click.option("--n", type=int, default=3, show_default=True, help="Qubit count.")
@click.option("--setting", type=str, default="xy", show_default=True)
@click.option("--state", type=str, default="ghz-tilde", show_default=True)
@click.option("--shots", type=int, default=0, show_default=True, help="0 = exact probabilities.")
@click.option("--seed", type=int, default=7, show_default=True)
@_common_options
@click.pass_context
def mermin_cmd(ctx: click.Context, **_kw) -> None:
    """Mermin-operator expectation, success probability, and bound."""
    cfg = _resolve(ctx)
    p = cfg.parameters
    if not 1 <= p["n"] <= 10:
        raise click.UsageError("--n must lie in [1, 10]")
    if p["shots"] < 0:
        raise click.UsageError("--shots must be nonnegative")

    def body() -> None:
        n = p["n"]
        setting = _parse_setting(p["setting"], n)
        psi = _parse_state(p["state"], n)
        ops_closed = mermin.mermin_closed(setting)
        ops_rec = mermin.mermin_recursive(setting)
        ops_tm = mermin.transfer_matrix_eval(setting)
        agreement = max(
            float(np.linalg.norm(ops_closed.M - ops_rec.M)),
            float(np.linalg.norm(ops_closed.M - ops_tm.M)),
            float(np.linalg.norm(ops_closed.M_prime - ops_rec.M_prime)),
            float(np.linalg.norm(ops_closed.M_prime - ops_tm.M_prime)),
        )
        M = ops_closed.M
        expectation = float(np.real(np.vdot(psi, M @ psi)))
        p0_exact, _phi, _bound = mermin.measure_mermin_circuit(setting, psi)
        if p["shots"] > 0:
            p0 = mermin.sample_success(p0_exact, p["shots"], stream(cfg.seed, 1))
        else:
            p0 = p0_exact
        bound = float(2 ** ((n - 1) / 2) * np.sqrt(4 * p0))

        eigs = np.linalg.eigvalsh(M)
        if p["setting"] == "xy":
            extremal = 2 ** ((n - 1) / 2)
            target = np.sort(
                np.concatenate([[-extremal, extremal], np.zeros(2**n - 2)])
            )
            spectrum_check = bool(np.max(np.abs(np.sort(eigs) - target)) <= 1e-10)
        else:
            spectrum_check = None

        _write_json(
            cfg.out_dir / "report.json",
            {
                "expectation": expectation,
                "p0": p0,
                "p0_exact": p0_exact,
                "shots": p["shots"],
                "bound": bound,
                "spectrum_check": spectrum_check,
                "construction_agreement": agreement,
            },
        )
        plots.fig_mermin(eigs, cfg.out_dir / "mermin_spectrum.png")
        _write_manifest(cfg, {})

    _guard(body)


# ---------------------------------------------------------------------------
# qze
# ---------------------------------------------------------------------------

@main.command("qze")
@click.option(
    "--hamiltonian",
    type=str,
    default="builtin-1q",
    show_default=True,
    help="'builtin-1q' or a path to a matrix JSON file.",
)
@click.option("--omega-plus", type=float, default=SQRT7, show_default=True)
@click.option("--omega-minus", type=float, default=NEG_SQRT3, show_default=True)
@click.option("--theta", type=float, default=QUARTER_PI, show_default=True)
@click.option("--phi", type=float, default=QUARTER_PI, show_default=True)
@click.option("--t-total", type=float, default=1.0, show_default=True)
@click.option(
    "--n-list", type=str, default="50,100,200,400", show_default=True,
    help="Comma-separated pulse counts.",
)
@click.option("--seed", type=int, default=7, show_default=True, help="Echoed; unused.")
@_common_options
@click.pass_context
def qze_cmd(ctx: click.Context, **_kw) -> None:
    """Pulsed survival probabilities and their large-n scalings."""
    cfg = _resolve(ctx)
    p = cfg.parameters
    try:
        ns = [int(s) for s in str(p["n_list"]).split(",") if s.strip()]
    except ValueError as exc:
        raise click.UsageError(f"--n-list must be comma-separated integers: {exc}") from exc
    if not ns or any(n < 1 for n in ns):
        raise click.UsageError("--n-list needs positive integers")

    def body() -> None:
        if p["hamiltonian"] == "builtin-1q":
            H, psi = walk.one_qubit_walk(
                p["omega_plus"], p["omega_minus"], p["theta"], p["phi"]
            )
        else:
            H = load_matrix(p["hamiltonian"])
            psi = np.ones(H.shape[0], dtype=complex) / np.sqrt(H.shape[0])
        T = p["t_total"]

        spec_data = herm_eig(H)
        c = spec_data.eigenvectors.conj().T @ psi
        w = np.abs(c) ** 2
        h = T * spec_data.eigenvalues
        mh2 = float(np.sum(w * h**2))
        targets = {
            "n2_one_minus_S": (float(np.sum(w * h**4)) - mh2**2) / 4,
            "n_one_minus_S_check": mh2,
            "n_one_minus_S_tilde": mh2 - float(np.sum(w * h)) ** 2,
        }

        rows = []
        scaled = {k: [] for k in targets}
        for n in ns:
            s, s_check, s_tilde = walk.qze_survival(H, T, n, psi)
            c1, c2, c3 = walk.qze_complements(H, T, n, psi)
            rows.append((n, s, s_check, s_tilde, n**2 * c1, n * c2, n * c3))
            scaled["n2_one_minus_S"].append(n**2 * c1)
            scaled["n_one_minus_S_check"].append(n * c2)
            scaled["n_one_minus_S_tilde"].append(n * c3)
        _write_csv(cfg.out_dir / "qze.csv", rows)
        largest = rows[-1]
        _write_json(
            cfg.out_dir / "summary.json",
            {
                "targets": targets,
                "largest_n": largest[0],
                "at_largest_n": {
                    "n2_one_minus_S": largest[4],
                    "n_one_minus_S_check": largest[5],
                    "n_one_minus_S_tilde": largest[6],
                },
                "t_total": T,
            },
        )
        plots.fig_qze(
            np.asarray(ns),
            {k: np.asarray(v) for k, v in scaled.items()},
            targets,
            cfg.out_dir / "qze_scaling.png",
        )
        _write_manifest(
            cfg,
            {
                "qze.csv": [
                    "n", "S", "S_check", "S_tilde",
                    "n2_one_minus_S", "n_one_minus_S_check", "n_one_minus_S_tilde",
                ]
            },
        )

    _guard(body)


if __name__ == "__main__":
    main()
