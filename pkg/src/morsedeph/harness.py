"""Reproduction runs: measures, element decay, tau tables, sweeps, CSV output.

All emitted time axes are in omega0*t units; every number is printed with 17
significant digits so identical configs give byte-identical files.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .bath import kernel_table
from .config import RunConfig, SweepSpec
from .dynamics import DephasingMap, KernelEvaluator, coherent_state, evolve_series
from .measures import MeasureSeries, TauTable, decoherence_times, measure_series
from .oscillator import morse_wavefunction

__all__ = [
    "run_spectrum",
    "run_kernels",
    "run_measures",
    "run_compare",
    "run_tau",
    "run_tau_sweep",
    "run_wavefunction",
    "TauSweepRow",
]


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _write_csv(path, header: list[str], rows) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _out(config: RunConfig, out_dir: str | None, name: str) -> str:
    return os.path.join(out_dir if out_dir is not None else config.out_dir, name)


def run_spectrum(config: RunConfig, kind: str = "morse", out_dir: str | None = None) -> str:
    """Dump the bound-state levels as CSV (columns n, energy)."""
    spec = config.spectrum(kind)
    path = _out(config, out_dir, f"spectrum_{kind}.csv")
    _write_csv(path, ["n", "energy"], ((n, e) for n, e in enumerate(spec.levels)))
    return path


def run_kernels(config: RunConfig, out_dir: str | None = None) -> str:
    """Tabulate eta/gamma over the configured grid (t column in omega0*t)."""
    grid = config.time_grid()
    table = kernel_table(config.bath(), config.physical_times())
    path = _out(config, out_dir, "kernels.csv")
    _write_csv(path, ["t", "eta", "gamma"],
               zip(grid, table.eta, table.gamma))
    return path


def _evolved(config: RunConfig, kind: str, kernels: KernelEvaluator | None = None):
    spec = config.spectrum(kind)
    rho0 = coherent_state(config.state_spec(), spec, config.truncation_eps)
    dmap = DephasingMap(spec, kernels or KernelEvaluator(config.bath()))
    states = evolve_series(rho0, dmap, config.physical_times())
    return rho0, states


def run_measures(config: RunConfig, kind: str = "morse",
                 out_dir: str | None = None) -> tuple[MeasureSeries, str, str]:
    """Evolve the default state and write the measures and element-decay CSVs."""
    grid = config.time_grid()
    rho0, states = _evolved(config, kind)
    series = measure_series(rho0, states, grid)
    measures_path = _out(config, out_dir, f"measures_{kind}.csv")
    _write_csv(measures_path, ["t", "P", "D", "S", "Ce", "C2"],
               zip(series.times, series.P, series.D, series.S, series.Ce, series.C2))

    n_el = min(7, rho0.dim)  # plotted set: first column of the matrix
    elements_path = _out(config, out_dir, f"elements_{kind}.csv")
    header = ["t"] + [f"rho_{m}1" for m in range(1, n_el + 1)]
    rows = (
        [t] + [abs(state.entries[m, 0]) for m in range(n_el)]
        for t, state in zip(grid, states)
    )
    _write_csv(elements_path, header, rows)
    return series, measures_path, elements_path


def run_compare(config: RunConfig, out_dir: str | None = None) -> str:
    """Morse and harmonic measures side by side on one grid."""
    grid = config.time_grid()
    kernels = KernelEvaluator(config.bath())
    rho_m, states_m = _evolved(config, "morse", kernels)
    rho_h, states_h = _evolved(config, "harmonic", kernels)
    sm = measure_series(rho_m, states_m, grid)
    sh = measure_series(rho_h, states_h, grid)
    path = _out(config, out_dir, "compare.csv")
    header = ["t"] + [f"{q}_{k}" for q in ("P", "D", "S", "Ce", "C2") for k in ("morse", "harmonic")]
    rows = zip(grid, sm.P, sh.P, sm.D, sh.D, sm.S, sh.S, sm.Ce, sh.Ce, sm.C2, sh.C2)
    _write_csv(path, header, rows)
    return path


def run_tau(config: RunConfig, kind: str = "morse", out_dir: str | None = None,
            kernels: KernelEvaluator | None = None) -> tuple[TauTable, str]:
    """Decoherence-time table for one oscillator kind (tau in omega0*t units)."""
    spec = config.spectrum(kind)
    rho0 = coherent_state(config.state_spec(), spec, config.truncation_eps)
    dmap = DephasingMap(spec, kernels or KernelEvaluator(config.bath()))
    table = decoherence_times(dmap, rho0, config.tau_options())
    w0 = config.omega0
    path = _out(config, out_dir, f"tau_{kind}.csv")
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write("m,n,tau,converged\n")
        for (m, n) in table.included_pairs:
            fh.write(f"{m},{n},{_fmt(table.entries[(m, n)] * w0)},{_fmt(table.converged[(m, n)])}\n")
        fh.write(f"element,,{_fmt(table.tau_element * w0)},{_fmt(table.all_converged)}\n")
    return table, path


@dataclass(frozen=True)
class TauSweepRow:
    value: float
    tau_morse: float
    tau_harmonic: float
    converged_morse: bool
    converged_harmonic: bool


def run_tau_sweep(sweep: SweepSpec, out_dir: str | None = None) -> tuple[list[TauSweepRow], str, str]:
    """tau_element for both oscillator kinds at each swept value.

    Both kinds share one kernel cache per value (identical bath and state).
    Returns the rows plus the CSV and aligned-text paths.
    """
    rows = []
    for cfg in sweep.configs():
        kernels = KernelEvaluator(cfg.bath())
        w0 = cfg.omega0
        tab_m = _tau_table(cfg, "morse", kernels)
        tab_h = _tau_table(cfg, "harmonic", kernels)
        rows.append(TauSweepRow(
            value=getattr(cfg, sweep.parameter),
            tau_morse=tab_m.tau_element * w0,
            tau_harmonic=tab_h.tau_element * w0,
            converged_morse=tab_m.all_converged,
            converged_harmonic=tab_h.all_converged,
        ))
    base = sweep.base
    csv_path = _out(base, out_dir, f"tau_sweep_{sweep.parameter}.csv")
    _write_csv(
        csv_path,
        [sweep.parameter, "tau_morse", "tau_harmonic", "converged_morse", "converged_harmonic"],
        ((r.value, r.tau_morse, r.tau_harmonic, r.converged_morse, r.converged_harmonic)
         for r in rows),
    )
    txt_path = _out(base, out_dir, f"tau_sweep_{sweep.parameter}.txt")
    with open(txt_path, "w", newline="") as fh:
        fh.write(f"{sweep.parameter:>10s} {'morse':>14s} {'harmonic':>14s} {'converged':>10s}\n")
        for r in rows:
            conv = "yes" if (r.converged_morse and r.converged_harmonic) else "NO"
            fh.write(f"{r.value:>10.4g} {r.tau_morse:>14.6g} {r.tau_harmonic:>14.6g} {conv:>10s}\n")
    return rows, csv_path, txt_path


def _tau_table(config: RunConfig, kind: str, kernels: KernelEvaluator) -> TauTable:
    spec = config.spectrum(kind)
    rho0 = coherent_state(config.state_spec(), spec, config.truncation_eps)
    return decoherence_times(DephasingMap(spec, kernels), rho0, config.tau_options())


def run_wavefunction(config: RunConfig, x=None, out_dir: str | None = None) -> str:
    """Position-space probability density of the initial superposition state."""
    params = config.oscillator()
    spec = config.spectrum("morse")
    rho0 = coherent_state(config.state_spec(), spec, config.truncation_eps)
    c = np.sqrt(rho0.populations())
    if x is None:
        x = np.linspace(params.equilibrium - 15.0, params.equilibrium + 40.0, 2201)
    x = np.asarray(x, dtype=float)
    psi = np.zeros_like(x)
    for n in range(rho0.dim):
        psi += c[n] * morse_wavefunction(params, n, x)
    density = psi**2
    path = _out(config, out_dir, "wavefunction.csv")
    _write_csv(path, ["x", "density"], zip(x, density))
    return path
