# Coherence loss without energy exchange: populations stay frozen while
# every off-diagonal element decays as exp[-(E_n - E_m)^2 gamma(t)].
#
# Top row: survival probability and purity across four temperatures.
# Bottom row: decay of the matrix elements |rho_m1| - the farther an
# element sits from the diagonal, the faster it dies.

import matplotlib.pyplot as plt
import numpy as np

from morsedeph import (
    DephasingMap,
    KernelEvaluator,
    RunConfig,
    coherent_state,
    evolve_series,
    measure_series,
)

temperatures = (0.01, 1.0, 10.0, 100.0)
fig, axes = plt.subplots(2, len(temperatures), figsize=(16, 7), sharex=True)

for col, kT in enumerate(temperatures):
    cfg = RunConfig(kT=kT, coupling=0.01, grid_count=300)
    spectrum = cfg.spectrum("morse")
    rho0 = coherent_state(cfg.state_spec(), spectrum, cfg.truncation_eps)
    dmap = DephasingMap(spectrum, KernelEvaluator(cfg.bath()))
    grid = cfg.time_grid()
    states = evolve_series(rho0, dmap, cfg.physical_times())
    series = measure_series(rho0, states, grid)

    drift = max(np.max(np.abs(s.populations() - rho0.populations())) for s in states)
    print(f"kT={kT:<6}: population drift {drift:.1e}, "
          f"P(end)={series.P[-1]:.4f}, D(end)={series.D[-1]:.4f}")

    ax = axes[0, col]
    ax.semilogx(grid, series.P, "k-", lw=0.8, label="P(t)")
    ax.semilogx(grid, series.D, "b--", lw=1.2, label="D(t)")
    ax.set_title(f"kT = {kT}")
    ax.set_ylim(0, 1.05)
    if col == 0:
        ax.set_ylabel("survival / purity")
        ax.legend()

    ax = axes[1, col]
    markers = "os*Dhx+"
    for m in range(7):
        mags = [abs(s.entries[m, 0]) for s in states]
        ax.loglog(grid, mags, lw=0.8, marker=markers[m], markevery=30, ms=4,
                  label=f"|rho_{m+1}1|")
    ax.set_ylim(1e-6, 1.5)
    ax.set_xlabel("omega0 * t")
    if col == 0:
        ax.set_ylabel("|rho_m1(t)|")
        ax.legend(fontsize=7)

fig.tight_layout()
fig.savefig("demos_04_measures.png", dpi=120)
print("wrote demos_04_measures.png")
