# The anharmonic well and its bound-state ladder.
#
# The well V(x) = D_e (1 - e^{-a(x-x_e)})^2 supports finitely many levels
# whose spacing shrinks linearly with n, in contrast to the equally spaced
# harmonic ladder obtained from the curvature at the minimum.

import matplotlib.pyplot as plt
import numpy as np

from morsedeph import OscillatorParams, harmonic_spectrum, morse_potential, morse_spectrum

osc = OscillatorParams(well_depth=40.0, width=0.11, equilibrium=1.0)
print(f"curvature frequency omega0 = {osc.omega0:.6f}")
print(f"dimensionless depth        = {osc.depth_parameter:.3f}")

morse = morse_spectrum(osc)
harm = harmonic_spectrum(osc, morse.size)
print(f"bound states: n = 0 .. {morse.n_max}")
print(f"first five levels: {np.round(morse.levels[:5], 5)}")
print(f"top level {morse.levels[-1]:.4f} sits just below the dissociation energy 40")

x = np.linspace(-14.0, 80.0, 1200)
v = morse_potential(osc, x)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.5))
ax1.plot(x, v, "k-", lw=1.5, label="anharmonic well")
ax1.plot(x, 0.5 * osc.mass * osc.omega0**2 * (x - osc.equilibrium) ** 2,
         "b--", lw=1.0, label="harmonic fit at the minimum")
for e in morse.levels[::8]:
    ax1.axhline(e, color="0.8", lw=0.5, zorder=0)
ax1.set_ylim(0, 45)
ax1.set_xlabel("x")
ax1.set_ylabel("V(x)")
ax1.legend()

n = np.arange(morse.size)
ax2.plot(n[:-1], np.diff(morse.levels), "ro", ms=3, label="anharmonic gaps")
ax2.plot(n[:-1], np.diff(harm.levels), "b.", ms=3, label="harmonic gaps")
ax2.set_xlabel("n")
ax2.set_ylabel("E_{n+1} - E_n")
ax2.legend()

fig.tight_layout()
fig.savefig("demos_01_spectrum.png", dpi=120)
print("wrote demos_01_spectrum.png")
