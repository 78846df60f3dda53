# The initial state: a Gaussian superposition over energy levels
# centered at level 2.4 with spread 0.5, shown both as level weights and
# as its position-space probability density.

import matplotlib.pyplot as plt
import numpy as np

from morsedeph import CoherentStateSpec, OscillatorParams, coherent_state, morse_spectrum, morse_wavefunction

osc = OscillatorParams()
spectrum = morse_spectrum(osc)
rho0 = coherent_state(CoherentStateSpec(mean=2.4, spread=0.5), spectrum, trunc_eps=1e-12)

pops = rho0.populations()
print(f"levels kept after truncation: {rho0.dim}")
for n, p in enumerate(pops):
    print(f"  n={n}: population {p:.3e}")
print(f"purity Tr rho^2 = {np.sum(np.abs(rho0.entries)**2):.12f}  (pure state)")

x = np.linspace(osc.equilibrium - 12.0, osc.equilibrium + 32.0, 2000)
amps = np.sqrt(pops)
psi = sum(amps[n] * morse_wavefunction(osc, n, x) for n in range(rho0.dim))
density = psi**2
print(f"position density integrates to {np.trapezoid(density, x):.6f}")
print(f"density peaks at x = {x[np.argmax(density)]:.2f} (outer side of the well minimum)")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
ax1.bar(np.arange(rho0.dim), pops, color="tab:blue")
ax1.set_xlabel("level n")
ax1.set_ylabel("population")
ax1.set_yscale("log")
ax1.set_ylim(1e-13, 1)

ax2.plot(x, density, "k-")
ax2.axvline(osc.equilibrium, color="0.7", lw=0.8)
ax2.set_xlabel("x")
ax2.set_ylabel("|psi(x)|^2")

fig.tight_layout()
fig.savefig("demos_02_initial_state.png", dpi=120)
print("wrote demos_02_initial_state.png")
